"""
Effective Hamiltonian and reproducible datasets
===============================================

At high temperature the collective steady state is diagonal in the Bell
basis, so it can be read as a Gibbs state of a Hamiltonian with no linear
Pauli terms. The last part drives the dataset harness from a config file,
as the command line does.
"""

import tempfile
from pathlib import Path

import numpy as np

from qndent import (BathParams, QubitGeometry, Regime, bell_spectral_analysis, build_transfer_array,
                    effective_hamiltonian, evolve, initial_equal_superposition, load_config)
from qndent.harness import run_figure, run_scan, write_dataset

bath = BathParams(T=50.0, alpha=0.2)
geom = QubitGeometry.figure_default(Regime.COLLECTIVE)
rho = evolve(initial_equal_superposition(), build_transfer_array(10.0, bath, geom))
spec = bell_spectral_analysis(rho, strict=False)
print("eigenvalues", np.round(spec.eigenvalues, 6), "assignment", spec.assignment)

ham = effective_hamiltonian(spec, bath.beta)
print("energies", ham.energies, "dropped", ham.dropped)
print("largest linear Pauli coefficient", ham.max_linear)

config = """
[bath]
T = 5
alpha = 0.5

[geometry]
regime = collective

[time]
start = 0
stop = 5
num = 11

[scan]
quantities = concurrence, purity, weights
"""
cfg = load_config(text=config)
scan = run_scan(cfg)
print(scan.header)
print(np.round(scan.rows, 4))

out = Path(tempfile.mkdtemp())
print(write_dataset(scan, out))
for ds in run_figure("fig3b", cfg):
    print(write_dataset(ds, out))
