"""Two-qubit density-matrix algebra.

Basis order is ``|00>, |01>, |10>, |11>`` (indices 0..3), with bit 0 the
spin-down (-1/2) eigenstate.
"""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np

__all__ = [
    "Diagnostics",
    "validate",
    "SpectralDecomposition",
    "spectral_decompose",
    "concurrence",
    "pure_concurrence",
    "fidelity",
    "purity",
    "initial_equal_superposition",
    "bell_state",
    "projector",
    "werner_state",
    "SIGMA_Y2",
]

HERM_TOL = 1e-10
TRACE_TOL = 1e-10
PSD_TOL = 1e-9

_sy = np.array([[0, -1j], [1j, 0]])
SIGMA_Y2 = np.kron(_sy, _sy)


@dataclass
class Diagnostics:
    hermiticity: float
    trace: float
    min_eigenvalue: float
    shape_ok: bool = True

    @property
    def checks(self) -> dict:
        return {
            "shape": self.shape_ok,
            "hermiticity": self.hermiticity <= HERM_TOL,
            "trace": abs(self.trace - 1) <= TRACE_TOL,
            "positivity": self.min_eigenvalue >= -PSD_TOL,
        }

    @property
    def ok(self) -> bool:
        return all(self.checks.values())

    def failures(self):
        return [name for name, passed in self.checks.items() if not passed]


def validate(rho) -> Diagnostics:
    """Hermiticity, trace and positivity residuals of a candidate density matrix."""
    rho = np.asarray(rho, dtype=complex)
    if rho.ndim != 2 or rho.shape[0] != rho.shape[1]:
        return Diagnostics(np.inf, np.nan, -np.inf, shape_ok=False)
    herm = float(np.max(np.abs(rho - rho.conj().T)))
    evals = np.linalg.eigvalsh(0.5 * (rho + rho.conj().T))
    return Diagnostics(herm, float(np.trace(rho).real), float(evals.min()))


def _require_valid(rho, strict=True):
    rho = np.asarray(rho, dtype=complex)
    d = validate(rho)
    failed = d.failures() if strict else [f for f in d.failures() if f != "positivity"]
    if failed:
        raise ValueError(f"not a valid density matrix: {failed}")
    return rho


@dataclass
class SpectralDecomposition:
    """Eigenvalues sorted non-increasing; ``vectors[:, i]`` pairs with ``values[i]``."""

    values: np.ndarray
    vectors: np.ndarray

    def reconstruct(self) -> np.ndarray:
        return (self.vectors * self.values) @ self.vectors.conj().T


def _fix_phase(vecs, tol=1e-12):
    out = vecs.copy()
    for i in range(out.shape[1]):
        v = out[:, i]
        k = np.flatnonzero(np.abs(v) > tol)[0]
        out[:, i] = v * (abs(v[k]) / v[k])
        out[k, i] = abs(v[k])
    return out


def spectral_decompose(rho, recon_tol: float = 1e-9, strict: bool = True) -> SpectralDecomposition:
    """Hermitian eigensolve with descending order and a fixed eigenvector phase.

    Each eigenvector is rotated so its first non-negligible component is
    real and positive. Eigenvalues down to ``-1e-9`` are clamped to 0; with
    ``strict=False`` any negative eigenvalue of a Hermitian unit-trace input
    is clamped (see :func:`concurrence`).
    """
    rho = _require_valid(rho, strict)
    herm = 0.5 * (rho + rho.conj().T)
    vals, vecs = np.linalg.eigh(herm)
    order = np.argsort(-vals, kind="stable")
    vals, vecs = vals[order], _fix_phase(vecs[:, order])
    resid = np.max(np.abs(SpectralDecomposition(vals, vecs).reconstruct() - herm))
    if resid > recon_tol:
        raise np.linalg.LinAlgError(f"eigendecomposition residual {resid:.3g} above {recon_tol}")
    return SpectralDecomposition(np.where(vals < 0, 0.0, vals), vecs)


# eigenvalues of rho below this (relative to the largest) are roundoff
RANK_TOL = 1e-13
CONCURRENCE_FLOOR = 1e-12


def _wootters_values(rho):
    """Square roots of the eigenvalues of ``rho @ rho_tilde``, descending.

    With ``rho = W W^dagger`` (``W = V sqrt(Lambda)``) these are the
    singular values of ``tau = W^T (sigma_y x sigma_y) W``. Working with
    ``tau`` avoids square roots of roundoff-level eigenvalues of
    ``rho rho_tilde``, which would otherwise cost half the digits on
    rank-deficient states.
    """
    vals, vecs = np.linalg.eigh(0.5 * (rho + rho.conj().T))
    vals = np.where(vals > RANK_TOL * vals.max(), vals, 0.0)
    W = vecs * np.sqrt(vals)
    s = np.linalg.svd(W.T @ SIGMA_Y2 @ W, compute_uv=False)
    return np.sort(s)[::-1]


def concurrence(rho, strict: bool = True) -> float:
    """Wootters concurrence of a two-qubit state.

    The values ``sqrt(eig(rho @ rho_tilde))`` are obtained as singular values
    of a symmetric 4x4 matrix built from the eigen-decomposition of ``rho``
    (see :func:`_wootters_values`), so no non-Hermitian eigensolve is needed.

    With ``strict=False`` a Hermitian, unit-trace but slightly indefinite
    matrix (as produced by channels with negative damping exponents) is
    accepted; the moduli of the eigenvalues of ``rho @ rho_tilde`` are then
    taken from a general eigensolve.

    Values below ``CONCURRENCE_FLOOR`` are roundoff and are returned as 0.
    """
    rho = np.asarray(rho, dtype=complex)
    if rho.shape != (4, 4):
        raise ValueError("concurrence is defined for two-qubit (4x4) states")
    d = validate(rho)
    if d.ok:
        s = _wootters_values(rho)
    elif strict:
        raise ValueError(f"not a valid density matrix: {d.failures()}")
    else:
        rho_tilde = SIGMA_Y2 @ rho.conj() @ SIGMA_Y2
        s = np.sqrt(np.sort(np.abs(np.linalg.eigvals(rho @ rho_tilde)))[::-1])
    c = s[0] - s[1] - s[2] - s[3]
    return 0.0 if c < CONCURRENCE_FLOOR else float(min(1.0, c))


def pure_concurrence(psi):
    """``2 |a0 a3 - a1 a2|``; accepts a single state or a ``(n, 4)`` stack.

    Clipped to 1 to absorb roundoff in the normalization.
    """
    psi = np.asarray(psi, dtype=complex)
    c = np.minimum(2.0 * np.abs(psi[..., 0] * psi[..., 3] - psi[..., 1] * psi[..., 2]), 1.0)
    return float(c) if c.ndim == 0 else c


def fidelity(rho, psi) -> float:
    """``sqrt(<psi| rho |psi>)``."""
    rho = np.asarray(rho, dtype=complex)
    psi = np.asarray(psi, dtype=complex)
    overlap = np.real(psi.conj() @ rho @ psi)
    return float(np.sqrt(max(overlap, 0.0)))


def purity(rho) -> float:
    rho = np.asarray(rho, dtype=complex)
    return float(np.real(np.trace(rho @ rho)))


def projector(psi) -> np.ndarray:
    psi = np.asarray(psi, dtype=complex)
    return np.outer(psi, psi.conj())


def initial_equal_superposition() -> np.ndarray:
    """``(H x H)|00>``: every density-matrix element equals 1/4."""
    return np.full((4, 4), 0.25, dtype=complex)


_BELL = {
    1: np.array([0, 1, 1, 0]) / np.sqrt(2),
    2: np.array([1, 0, 0, -1]) / np.sqrt(2),
    3: np.array([1, 0, 0, 1]) / np.sqrt(2),
    4: np.array([0, 1, -1, 0]) / np.sqrt(2),
}


def bell_state(k: int) -> np.ndarray:
    """Bell vectors: 1 = (|01>+|10>), 2 = (|00>-|11>), 3 = (|00>+|11>), 4 = (|01>-|10>), each /sqrt 2."""
    try:
        return _BELL[k].astype(complex)
    except KeyError:
        raise ValueError(f"Bell index must be 1..4, got {k!r}") from None


def werner_state(p: float) -> np.ndarray:
    """``p |Phi+><Phi+| + (1 - p) I/4``."""
    return p * projector(bell_state(3)) + (1 - p) * np.eye(4) / 4
