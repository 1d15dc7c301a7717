"""
Concurrence and the entanglement distribution of a mixed state
===============================================================

A mixed state is split into nested projectors onto its leading
eigenvectors. Sampling Haar-random pure states inside each projector gives
an entanglement histogram, and the weighted sum describes the spread of
entanglement hidden inside the mixture.
"""

import numpy as np

from qndent import (BathParams, QubitGeometry, Regime, bell_state, build_transfer_array,
                    concurrence, convexity_bound_check, evolve, initial_equal_superposition,
                    nested_weights, pdf_features, pdf_full, projector, werner_state,
                    weights_vs_temperature)

# reference values
print("Bell        ", [concurrence(projector(bell_state(k))) for k in range(1, 5)])
print("Werner 0.5  ", concurrence(werner_state(0.5)))
print("I/4         ", concurrence(np.eye(4) / 4))

geom = QubitGeometry.figure_default(Regime.COLLECTIVE)
rho = evolve(initial_equal_superposition(), build_transfer_array(10.0, BathParams(T=50.0, alpha=0.2), geom))
dec = nested_weights(rho, strict=False)
print("eigenvalues", dec.eigenvalues)
print("weights    ", dec.weights)

full = pdf_full(rho, n_samples=50_000, n_bins=50, seed=3, strict=False)
f = pdf_features(full.histogram)
print(f"E_max {f.e_max:.4f}  mode {f.e_cusp:.3f}  integral {full.histogram.integral():.6f}")
for M, h in enumerate(full.components, 1):
    print(f"P{M}: mean concurrence {np.sum(h.centers * h.density * h.widths):.4f}")

print(convexity_bound_check(rho, dec, strict=False))

# nested weights as the bath heats up
T = np.linspace(0.0, 10.0, 6)
for regime in Regime:
    w = weights_vs_temperature(T, 5.0, 0.2, QubitGeometry.figure_default(regime))
    print(regime.value, "\n", np.round(w, 4))
