"""Probability density of entanglement over nested eigenprojections.

A state is resolved as ``rho = sum_M Lambda_M Pi_M`` with
``Pi_M = sum_{j<=M} |psi_j><psi_j|`` and ``Lambda_M = lambda_M - lambda_{M+1}``.
Its entanglement density is ``sum_M omega_M P_M(E)`` with
``omega_M = Lambda_M / lambda_1``, where ``P_M`` is the distribution of the
pure-state concurrence over Haar-random states in ``span(Pi_M)``.
"""
from __future__ import annotations

import csv
import json
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from pathlib import Path
from typing import Optional

import numpy as np

from .states import concurrence, pure_concurrence, spectral_decompose

__all__ = [
    "NestedDecomposition",
    "nested_weights",
    "sample_haar_in_subspace",
    "EntanglementHistogram",
    "pdf_projection",
    "pdf_full",
    "FullPdf",
    "PdfFeatures",
    "pdf_features",
    "ConvexityReport",
    "convexity_bound_check",
    "weights_vs_temperature",
    "CHUNK",
]

DEGENERACY_TOL = 1e-12
CHUNK = 8192  # samples per deterministic sub-stream


@dataclass
class NestedDecomposition:
    eigenvalues: np.ndarray
    vectors: np.ndarray
    coefficients: np.ndarray
    weights: np.ndarray

    def projection(self, M: int) -> np.ndarray:
        V = self.vectors[:, :M]
        return V @ V.conj().T

    def reconstruct(self) -> np.ndarray:
        return sum(self.coefficients[M - 1] * self.projection(M) for M in range(1, 5))


def nested_weights(rho, strict: bool = True) -> NestedDecomposition:
    """Nested-projection coefficients and weights of a two-qubit state.

    Eigenvalues below ``1e-12`` are set to zero and eigenvalues closer than
    that are snapped together, so roundoff never leaves weight on a
    degenerate or empty projection.
    """
    dec = spectral_decompose(rho, strict=strict)
    lam = np.where(dec.values < DEGENERACY_TOL, 0.0, dec.values)
    for M in range(1, lam.size):
        if lam[M - 1] - lam[M] < DEGENERACY_TOL:
            lam[M] = lam[M - 1]
    coeffs = lam - np.append(lam[1:], 0.0)
    weights = coeffs / lam[0]
    return NestedDecomposition(dec.values, dec.vectors, coeffs, weights)


def _haar_coefficients(rng, n, M):
    z = rng.standard_normal((n, M)) + 1j * rng.standard_normal((n, M))
    return z / np.linalg.norm(z, axis=1, keepdims=True)


def sample_haar_in_subspace(basis, seed=None, n: Optional[int] = None):
    """Haar-random unit vector(s) in the span of the columns of ``basis``.

    Coefficients are i.i.d. standard complex Gaussians, normalized, which is
    the unitarily invariant measure on the unit sphere of the span.
    Returns one state, or an ``(n, dim)`` stack when ``n`` is given.
    """
    basis = np.asarray(basis, dtype=complex)
    if basis.ndim == 1:
        basis = basis[:, None]
    rng = np.random.default_rng(seed)
    coeffs = _haar_coefficients(rng, 1 if n is None else n, basis.shape[1])
    states = coeffs @ basis.T
    return states[0] if n is None else states


@dataclass
class EntanglementHistogram:
    edges: np.ndarray
    density: np.ndarray
    n_samples: int
    seed: Optional[int]
    max_sample: float
    weights: Optional[np.ndarray] = None
    label: str = ""

    @property
    def centers(self):
        return 0.5 * (self.edges[:-1] + self.edges[1:])

    @property
    def widths(self):
        return np.diff(self.edges)

    def integral(self) -> float:
        return float(np.sum(self.density * self.widths))

    def to_csv(self, path, metadata: Optional[dict] = None):
        """Write ``bin_left, bin_right, density`` plus a JSON sidecar."""
        path = Path(path)
        with path.open("w", newline="") as fh:
            w = csv.writer(fh)
            w.writerow(["bin_left", "bin_right", "density"])
            for lo, hi, d in zip(self.edges[:-1], self.edges[1:], self.density):
                w.writerow([repr(float(lo)), repr(float(hi)), repr(float(d))])
        side = {
            "weights": None if self.weights is None else [float(x) for x in self.weights],
            "seed": self.seed,
            "n_samples": self.n_samples,
            "max_sample": self.max_sample,
            "label": self.label,
        }
        side.update(metadata or {})
        path.with_suffix(".json").write_text(json.dumps(side, indent=2, sort_keys=True))
        return path


def _chunk_counts(basis, edges, seed_seq, n):
    rng = np.random.default_rng(seed_seq)
    c = pure_concurrence(sample_haar_in_subspace(basis, rng, n))
    counts, _ = np.histogram(np.clip(c, 0.0, 1.0), bins=edges)
    return counts, float(c.max())


def _sample_counts(basis, edges, seed, n_samples, workers):
    """Histogram counts over ``n_samples`` drawn in fixed-size sub-streams.

    Sub-stream ``k`` is seeded by ``SeedSequence(seed).spawn`` child ``k``,
    so the merged counts do not depend on ``workers``.
    """
    n_chunks = -(-n_samples // CHUNK)
    children = np.random.SeedSequence(seed).spawn(n_chunks)
    sizes = [min(CHUNK, n_samples - k * CHUNK) for k in range(n_chunks)]
    jobs = list(zip(children, sizes))
    if workers <= 1:
        results = [_chunk_counts(basis, edges, s, n) for s, n in jobs]
    else:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            results = list(pool.map(lambda job: _chunk_counts(basis, edges, *job), jobs))
    counts = np.sum([r[0] for r in results], axis=0)
    return counts, max(r[1] for r in results)


def pdf_projection(decomp: NestedDecomposition, M: int, n_samples: int = 100_000,
                   n_bins: int = 100, seed=0, workers: int = 1) -> EntanglementHistogram:
    """Monte Carlo density of concurrence over Haar states in ``span(Pi_M)``."""
    if not 1 <= M <= decomp.vectors.shape[1]:
        raise ValueError(f"projection rank M must be in 1..{decomp.vectors.shape[1]}, got {M}")
    if n_samples < 1:
        raise ValueError("n_samples must be positive")
    edges = np.linspace(0.0, 1.0, n_bins + 1)
    counts, cmax = _sample_counts(decomp.vectors[:, :M], edges, seed, n_samples, workers)
    density = counts / (n_samples * np.diff(edges))
    return EntanglementHistogram(edges, density, n_samples, seed, cmax, label=f"P{M}")


@dataclass
class FullPdf:
    histogram: EntanglementHistogram
    components: list
    decomposition: NestedDecomposition = field(repr=False)


def _component_seed(seed, M):
    # independent, reproducible stream per subspace rank
    return int(np.random.SeedSequence([0 if seed is None else seed, M]).generate_state(1)[0])


def pdf_full(rho, n_samples: int = 100_000, n_bins: int = 100, seed=0,
             workers: int = 1, strict: bool = True) -> FullPdf:
    """``sum_M omega_M P_M`` with every component sampled at ``n_samples``."""
    decomp = nested_weights(rho, strict)
    comps = [pdf_projection(decomp, M, n_samples, n_bins, _component_seed(seed, M), workers)
             for M in range(1, 5)]
    density = sum(w * h.density for w, h in zip(decomp.weights, comps))
    active = [h.max_sample for w, h in zip(decomp.weights, comps) if w > 0]
    hist = EntanglementHistogram(comps[0].edges, density, n_samples, seed,
                                 max(active), weights=decomp.weights.copy(), label="full")
    return FullPdf(hist, comps, decomp)


@dataclass
class PdfFeatures:
    e_max: float
    e_cusp: float
    density_at_max: float


def pdf_features(hist: EntanglementHistogram) -> PdfFeatures:
    """Empirical maximum entanglement, mode location and density at the maximum."""
    e_max = hist.max_sample
    k_max = min(int(np.searchsorted(hist.edges, e_max, side="right")) - 1, hist.density.size - 1)
    e_cusp = float(hist.centers[int(np.argmax(hist.density))])
    return PdfFeatures(float(e_max), min(e_cusp, e_max), float(hist.density[k_max]))


@dataclass
class ConvexityReport:
    concurrence: float
    bound: float
    two_term: float
    two_term_unnormalized: float
    projection_concurrences: np.ndarray

    @property
    def satisfied(self) -> bool:
        return self.concurrence <= self.bound + 1e-12


def convexity_bound_check(rho, decomp: Optional[NestedDecomposition] = None,
                          strict: bool = True) -> ConvexityReport:
    """Compare ``C(rho)`` with the convexity bound from the nested decomposition.

    ``rho = sum_M (M Lambda_M) (Pi_M / M)`` is a convex mixture of normalized
    projections, so ``C(rho) <= sum_M M Lambda_M C(Pi_M / M)``. Also reported:
    the two-term expression ``(l1 - l2) C(Pi_1) + (l2 - l3) C(Pi_2 / 2)``, and
    the same with ``C(Pi_2/2)`` scaled by 2 (mixture weight of ``Pi_2 / 2``).
    ``strict=False`` accepts slightly indefinite input as elsewhere.
    """
    if decomp is None:
        decomp = nested_weights(rho, strict)
    cp = np.array([concurrence(decomp.projection(M) / M) for M in range(1, 5)])
    lam = decomp.coefficients
    bound = float(np.sum(np.arange(1, 5) * lam * cp))
    two = float(lam[0] * cp[0] + lam[1] * cp[1])
    two_unnorm = float(lam[0] * cp[0] + 2 * lam[1] * cp[1])
    return ConvexityReport(concurrence(rho, strict), bound, two, two_unnorm, cp)


def weights_vs_temperature(temperatures, t, alpha, geom, bath=None, rho0=None):
    """``omega_M(T)`` for the equal-superposition input evolved to time ``t``.

    Returns an ``(n_T, 4)`` array.
    """
    from .bath import BathParams
    from .dynamics import build_transfer_array, evolve
    from .states import initial_equal_superposition

    bath = bath or BathParams()
    rho0 = initial_equal_superposition() if rho0 is None else rho0
    rows = []
    for T in temperatures:
        b = bath.replace(T=T, alpha=alpha)
        rho = evolve(rho0, build_transfer_array(t, b, geom))
        rows.append(nested_weights(rho, strict=False).weights)
    return np.array(rows).reshape(-1, 4)
