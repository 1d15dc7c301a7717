"""
Bell-pair fidelity and purification
===================================

A Bell pair stored in the bath loses fidelity but never drops below
1/sqrt(2), because the populations stay pinned. The recurrence purification
map then pushes any pair above fidelity 1/2 back toward 1.
"""

import numpy as np

from qndent import (BathParams, QubitGeometry, Regime, distillable, fidelity_trajectory,
                    iterate_purification, purify_step)

geom = QubitGeometry.figure_default(Regime.LOCALIZED)
times = np.linspace(0.0, 10.0, 6)
for T, alpha in [(4.0, 0.0), (0.0, 2.0), (4.0, 2.0)]:
    F = fidelity_trajectory(2, times, BathParams(T=T, alpha=alpha), geom)[:, 1]
    print(f"T={T:g} alpha={alpha:g}  F = {np.round(F, 5)}")
print("floor 1/sqrt2 =", 1 / np.sqrt(2))

print("F' at the floor", purify_step(1 / np.sqrt(2)))
print("distillable(0.5)", distillable(0.5), " distillable(0.51)", distillable(0.51))
print(np.round(iterate_purification(1 / np.sqrt(2), 12), 5))
