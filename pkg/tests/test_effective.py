import json

import numpy as np
import pytest

from qndent.bath import BathParams
from qndent.dynamics import QubitGeometry, Regime, build_transfer_array, evolve
from qndent.effective import (LINEAR_TERMS, bell_spectral_analysis, effective_hamiltonian,
                              pauli_coefficients, write_report)
from qndent.states import bell_state, initial_equal_superposition, projector

REF = 0.5 * projector(bell_state(1)) + 0.25 * np.diag([1, 0, 0, 1]).astype(complex)


def test_reference_state():
    sp = bell_spectral_analysis(REF)
    assert np.abs(sp.eigenvalues - [0.5, 0.25, 0.25, 0]).max() < 1e-12
    assert abs(sp.overlaps[0, 0] - 1) < 1e-12
    assert abs(sp.overlaps[3, 3] - 1) < 1e-12
    assert sp.assignment == [1, "B2+B3", "B2+B3", 4]


def test_maximally_mixed_is_ambiguous():
    sp = bell_spectral_analysis(np.eye(4) / 4)
    assert np.abs(sp.eigenvalues - 0.25).max() < 1e-15


def test_overlaps_doubly_stochastic():
    rng = np.random.default_rng(0)
    z = rng.standard_normal((4, 4)) + 1j * rng.standard_normal((4, 4))
    rho = z @ z.conj().T
    sp = bell_spectral_analysis(rho / np.trace(rho))
    assert np.abs(sp.overlaps.sum(axis=0) - 1).max() < 1e-9
    assert np.abs(sp.overlaps.sum(axis=1) - 1).max() < 1e-9


def test_energies_and_linear_terms():
    beta = 0.7
    ham = effective_hamiltonian(bell_spectral_analysis(REF), beta)
    assert ham.dropped == [4]
    assert abs(ham.energies[1] - np.log(2) / beta) < 1e-12
    assert abs(ham.energies[2] - np.log(4) / beta) < 1e-12
    assert abs(ham.energies[3] - np.log(4) / beta) < 1e-12
    assert ham.max_linear < 1e-10
    double = effective_hamiltonian(bell_spectral_analysis(REF), 2 * beta)
    for b in ham.energies:
        assert abs(double.energies[b] - ham.energies[b] / 2) < 1e-12


def test_gibbs_consistency():
    ham = effective_hamiltonian(bell_spectral_analysis(REF), 1.3)
    g = ham.gibbs_state()
    lam = {b: np.real(bell_state(b).conj() @ g @ bell_state(b)) for b in ham.energies}
    assert abs(lam[1] / lam[2] - 2) < 1e-12 and abs(lam[2] / lam[3] - 1) < 1e-12


def test_pauli_expansion_roundtrip():
    rng = np.random.default_rng(1)
    H = rng.standard_normal((4, 4))
    H = H + H.T
    c = pauli_coefficients(H)
    from qndent.effective import _PAULI
    back = sum(v * np.kron(_PAULI[k[0]], _PAULI[k[1]]) for k, v in c.items())
    assert np.abs(back - H).max() < 1e-12


def test_beta_must_be_positive():
    with pytest.raises(ValueError):
        effective_hamiltonian(bell_spectral_analysis(REF), 0.0)


def test_collective_high_temperature(tmp_path):
    g = QubitGeometry.figure_default(Regime.COLLECTIVE)
    b = BathParams(T=50.0, alpha=0.2)
    rho = evolve(initial_equal_superposition(), build_transfer_array(10.0, b, g))
    sp = bell_spectral_analysis(rho, strict=False)
    assert np.abs(sp.eigenvalues - [0.5, 0.25, 0.25, 0]).max() < 0.05
    assert sp.overlaps[0, 0] >= 0.98
    ham = effective_hamiltonian(sp, b.beta)
    assert ham.max_linear < 1e-10
    path = write_report(tmp_path / "r.json", sp, ham, {"T": 50.0})
    data = json.loads(path.read_text())
    assert data["assignment"][0] == "B1" and data["T"] == 50.0
    assert set(LINEAR_TERMS) <= set(data["pauli"])
