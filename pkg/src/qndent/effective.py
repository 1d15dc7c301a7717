"""Bell-basis spectral diagnostics and a Gibbs-form effective Hamiltonian.

Interpretation layer only: the eigenvalues of an evolved state are read as
Boltzmann weights, ``lambda_i = exp(-beta E_i) / Z`` with ``Z = 1``, on
Bell-state levels.
"""
from __future__ import annotations

import itertools
import json
from dataclasses import dataclass, field
from pathlib import Path

import numpy as np

from .states import bell_state, spectral_decompose

__all__ = [
    "BellSpectrum",
    "bell_spectral_analysis",
    "EffectiveHamiltonian",
    "effective_hamiltonian",
    "pauli_coefficients",
    "write_report",
]

BELL_BASIS = np.column_stack([bell_state(k) for k in range(1, 5)])
# B2 and B3 span {|00>, |11>}
DEGENERATE_BLOCK = (2, 3)

_PAULI = {
    "I": np.eye(2, dtype=complex),
    "X": np.array([[0, 1], [1, 0]], dtype=complex),
    "Y": np.array([[0, -1j], [1j, 0]]),
    "Z": np.array([[1, 0], [0, -1]], dtype=complex),
}


@dataclass
class BellSpectrum:
    """Eigenvalues of a state and their overlaps with the Bell basis.

    ``overlaps[i, j] = |<B_{j+1}|v_i>|^2``. ``assignment[i]`` is the Bell
    label (1..4) matched to eigenvector ``i``, or ``"B2+B3"`` when a
    degenerate pair is matched to the ``{|00>, |11>}`` block as a whole,
    or ``None`` when no unambiguous match exists.
    """

    eigenvalues: np.ndarray
    vectors: np.ndarray = field(repr=False)
    overlaps: np.ndarray = field(repr=False)
    assignment: list

    def level(self, bell: int) -> float:
        """Eigenvalue assigned to a Bell label (block members share theirs)."""
        for lam, a in zip(self.eigenvalues, self.assignment):
            if a == bell or (a == "B2+B3" and bell in DEGENERATE_BLOCK):
                return float(lam)
        raise KeyError(f"no eigenvalue assigned to B{bell}")


def bell_spectral_analysis(rho, degeneracy_tol: float = 1e-6, match: float = 0.5,
                           strict: bool = True) -> BellSpectrum:
    dec = spectral_decompose(rho, strict=strict)
    vals, vecs = dec.values, dec.vectors
    overlaps = np.abs(vecs.conj().T @ BELL_BASIS) ** 2

    assignment = [None] * 4
    block = [b - 1 for b in DEGENERATE_BLOCK]
    groups = []
    i = 0
    while i < 4:
        j = i
        while j + 1 < 4 and vals[i] - vals[j + 1] < degeneracy_tol:
            j += 1
        groups.append(list(range(i, j + 1)))
        i = j + 1

    for grp in groups:
        if len(grp) == 2 and np.all(overlaps[np.ix_(grp, block)].sum(axis=1) > 1 - match / 2):
            for g in grp:
                assignment[g] = "B2+B3"
            continue
        for g in grp:
            best = int(np.argmax(overlaps[g]))
            if overlaps[g, best] > match:
                assignment[g] = best + 1
    return BellSpectrum(vals, vecs, overlaps, assignment)


def pauli_coefficients(H) -> dict:
    """Coefficients ``h_PQ`` with ``H = sum h_PQ P x Q``; ``h_PQ = tr(H P x Q) / 4``."""
    H = np.asarray(H, dtype=complex)
    out = {}
    for p, q in itertools.product("IXYZ", repeat=2):
        out[p + q] = complex(np.trace(H @ np.kron(_PAULI[p], _PAULI[q])) / 4)
    return out


LINEAR_TERMS = ("XI", "IX", "YI", "IY", "ZI", "IZ")


@dataclass
class EffectiveHamiltonian:
    beta: float
    energies: dict                 # Bell label -> E
    dropped: list
    matrix: np.ndarray = field(repr=False)
    pauli: dict = field(repr=False)

    @property
    def max_linear(self) -> float:
        return max(abs(self.pauli[k]) for k in LINEAR_TERMS)

    def gibbs_state(self) -> np.ndarray:
        """``exp(-beta H)`` restricted to the retained levels, normalized."""
        rho = sum(np.exp(-self.beta * E) * np.outer(bell_state(b), bell_state(b).conj())
                  for b, E in self.energies.items())
        return rho / np.trace(rho).real

    def to_dict(self) -> dict:
        return {
            "beta": self.beta,
            "energies": {f"B{b}": float(E) for b, E in self.energies.items()},
            "dropped": [f"B{b}" for b in self.dropped],
            "pauli": {k: [v.real, v.imag] for k, v in self.pauli.items()},
            "max_linear_coefficient": self.max_linear,
        }


def effective_hamiltonian(spectrum: BellSpectrum, beta: float, drop_below: float = 1e-3) -> EffectiveHamiltonian:
    """``H_eff = sum_i E_i |B_i><B_i|`` with ``E_i = -ln(lambda_i) / beta``.

    Levels with ``lambda < drop_below`` are dropped (the nearly empty
    singlet in the collective regime).
    """
    if not beta > 0:
        raise ValueError("beta must be positive")
    energies, dropped = {}, []
    for b in range(1, 5):
        try:
            lam = spectrum.level(b)
        except KeyError:
            raise ValueError(f"Bell state B{b} has no assigned eigenvalue") from None
        if lam < drop_below:
            dropped.append(b)
            continue
        energies[b] = -np.log(lam) / beta
    H = sum(E * np.outer(bell_state(b), bell_state(b).conj()) for b, E in energies.items())
    H = np.zeros((4, 4), complex) if not energies else H
    return EffectiveHamiltonian(float(beta), energies, dropped, H, pauli_coefficients(H))


def write_report(path, spectrum: BellSpectrum, ham: EffectiveHamiltonian, metadata=None):
    report = {
        "eigenvalues": [float(x) for x in spectrum.eigenvalues],
        "bell_overlaps": spectrum.overlaps.tolist(),
        "assignment": [a if a is None or isinstance(a, str) else f"B{a}" for a in spectrum.assignment],
    }
    report.update(ham.to_dict())
    report.update(metadata or {})
    Path(path).write_text(json.dumps(report, indent=2, sort_keys=True))
    return Path(path)
