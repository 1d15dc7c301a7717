"""
QND dephasing of two qubits
===========================

The channel multiplies each density-matrix element by a transfer factor
L_jk(t) and leaves populations untouched. This script builds the array in
both regimes, checks it against the closed-form class exponents and shows
the decoherence-free element of the collective model.
"""

import numpy as np

from qndent import (BathParams, QubitGeometry, Regime, build_transfer_array,
                    build_transfer_array_specialized, concurrence, evolve,
                    extract_symmetry_coeffs, initial_equal_superposition)

bath = BathParams(T=5.0, alpha=0.5)
loc = QubitGeometry.figure_default(Regime.LOCALIZED)
col = QubitGeometry.figure_default(Regime.COLLECTIVE)
print("localized positions ", loc.positions)
print("collective positions", col.positions)

arr = build_transfer_array(2.0, bath, loc)
np.set_printoptions(precision=4, suppress=True)
print("|L| localized, t=2\n", np.abs(arr.values))

# general construction against the closed forms
spec = build_transfer_array_specialized(2.0, bath, loc)
print("max deviation", np.abs(arr.values - spec.values).max())

# symmetry pattern and spin-flip invariance
print(extract_symmetry_coeffs(arr))

# element (|01>, |10>) is untouched in the collective regime without squeezing
for T in (1.0, 5.0, 50.0):
    L = build_transfer_array(7.0, BathParams(T=T), col).values
    print(f"T={T:4.0f}  L_12 = {L[1, 2]}")

# the product input picks up entanglement before dephasing wins
rho0 = initial_equal_superposition()
for t in (0.0, 0.5, 1.0, 2.0, 4.0):
    c_loc = concurrence(evolve(rho0, build_transfer_array(t, BathParams(T=5.0), loc)), strict=False)
    c_col = concurrence(evolve(rho0, build_transfer_array(t, BathParams(T=5.0), col)), strict=False)
    print(f"t={t:3.1f}  C localized {c_loc:.4f}  C collective {c_col:.4f}")
