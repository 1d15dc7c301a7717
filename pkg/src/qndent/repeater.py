"""Bell-pair fidelity under the QND channel and the recurrence purification map."""
from __future__ import annotations

import csv
from dataclasses import dataclass
from pathlib import Path

import numpy as np

from .bath import BathParams
from .dynamics import QubitGeometry, build_transfer_array, evolve
from .states import bell_state, fidelity, projector

__all__ = [
    "purify_step",
    "distillable",
    "PurificationState",
    "NotDistillableError",
    "iterate_purification",
    "fidelity_trajectory",
    "write_trajectory_csv",
]


class NotDistillableError(ValueError):
    pass


def purify_step(F: float) -> float:
    """One round of the two-pair recurrence protocol.

    ``F' = (F^2 + ((1-F)/3)^2) / (F^2 + 2F(1-F)/3 + 5/9 (1-F)^2)``
    """
    F = float(F)
    if not 0.0 <= F <= 1.0:
        raise ValueError(f"fidelity must lie in [0, 1], got {F}")
    q = 1.0 - F
    num = F * F + (q / 3.0) ** 2
    den = F * F + 2.0 * F * q / 3.0 + 5.0 / 9.0 * q * q
    return num / den


def distillable(F: float) -> bool:
    return F > 0.5


@dataclass
class PurificationState:
    fidelity: float
    iteration: int = 0

    def __post_init__(self):
        if not 0.0 <= self.fidelity <= 1.0:
            raise ValueError(f"fidelity must lie in [0, 1], got {self.fidelity}")

    def step(self) -> "PurificationState":
        return PurificationState(purify_step(self.fidelity), self.iteration + 1)


def iterate_purification(F0: float, n: int) -> np.ndarray:
    """``[F0, F1, ..., Fn]`` under repeated purification.

    Raises :class:`NotDistillableError` for ``F0 <= 1/2``.
    """
    if not distillable(F0):
        raise NotDistillableError(f"F0 = {F0} is not above 1/2; pairs cannot be distilled")
    state = PurificationState(F0)
    out = [state.fidelity]
    for _ in range(n):
        state = state.step()
        out.append(state.fidelity)
    return np.array(out)


def fidelity_trajectory(bell: int, times, bath: BathParams, geom: QubitGeometry) -> np.ndarray:
    """``(t, F)`` rows for a Bell pair evolving under the QND channel.

    The default pair used in the repeater discussion is ``bell=2``,
    ``(|00> - |11>)/sqrt 2``.
    """
    psi = bell_state(bell)
    rho0 = projector(psi)
    rows = []
    for t in np.asarray(times, dtype=float):
        rho = evolve(rho0, build_transfer_array(t, bath, geom))
        rows.append((t, fidelity(rho, psi)))
    return np.array(rows).reshape(-1, 2)


def write_trajectory_csv(path, table, header=("t", "F")):
    path = Path(path)
    with path.open("w", newline="") as fh:
        w = csv.writer(fh)
        w.writerow(header)
        for row in table:
            w.writerow([repr(float(x)) for x in row])
    return path
