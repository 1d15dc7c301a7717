import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from qndent.states import (bell_state, concurrence, fidelity, initial_equal_superposition,
                           projector, pure_concurrence, purity, spectral_decompose, validate,
                           werner_state)


def haar_unitary(rng, n):
    z = rng.standard_normal((n, n)) + 1j * rng.standard_normal((n, n))
    q, r = np.linalg.qr(z)
    return q * (np.diag(r) / np.abs(np.diag(r)))


def random_pure(rng):
    z = rng.standard_normal(4) + 1j * rng.standard_normal(4)
    return z / np.linalg.norm(z)


def random_state(rng, rank=4):
    z = rng.standard_normal((4, rank)) + 1j * rng.standard_normal((4, rank))
    rho = z @ z.conj().T
    return rho / np.trace(rho)


def test_validate_examples():
    assert validate(np.eye(4) / 4).ok
    assert validate(projector(bell_state(1))).ok
    d = validate(0.9 * np.eye(4) / 4)
    assert d.failures() == ["trace"]
    assert "hermiticity" in validate(np.triu(np.ones((4, 4))) / 4).failures()
    assert "positivity" in validate(np.diag([1.2, -0.2, 0, 0])).failures()
    assert "shape" in validate(np.ones(3)).failures()


def test_spectral_examples():
    d = spectral_decompose(np.eye(4) / 4)
    assert np.abs(d.values - 0.25).max() < 1e-15
    psi = bell_state(4)
    d = spectral_decompose(projector(psi))
    assert np.abs(d.values - [1, 0, 0, 0]).max() < 1e-12
    assert abs(abs(np.vdot(d.vectors[:, 0], psi)) - 1) < 1e-12
    rho = 0.5 * projector(bell_state(1)) + 0.25 * np.diag([1, 0, 0, 1])
    assert np.abs(spectral_decompose(rho).values - [0.5, 0.25, 0.25, 0]).max() < 1e-12


def test_spectral_reconstruction_and_phase():
    rng = np.random.default_rng(0)
    for _ in range(50):
        rho = random_state(rng, rng.integers(1, 5))
        d = spectral_decompose(rho)
        assert np.abs(d.reconstruct() - rho).max() < 1e-9
        assert np.all(np.diff(d.values) <= 0)
        for v in d.vectors.T:
            k = np.flatnonzero(np.abs(v) > 1e-12)[0]
            assert v[k].imag == 0 and v[k].real > 0


def test_concurrence_bell_and_product():
    for k in range(1, 5):
        assert abs(concurrence(projector(bell_state(k))) - 1) < 1e-10
    assert concurrence(initial_equal_superposition()) < 1e-12
    assert concurrence(np.eye(4) / 4) == 0.0


@pytest.mark.parametrize("p", [0.0, 0.4, 0.5, 1.0])
def test_werner_closed_form(p):
    assert abs(concurrence(werner_state(p)) - max(0.0, (3 * p - 1) / 2)) < 1e-8


def test_separable_mixtures_have_zero_concurrence():
    rng = np.random.default_rng(1)
    for _ in range(200):
        k = rng.integers(1, 6)
        w = rng.dirichlet(np.ones(k))
        rho = np.zeros((4, 4), complex)
        for wi in w:
            a = rng.standard_normal(2) + 1j * rng.standard_normal(2)
            b = rng.standard_normal(2) + 1j * rng.standard_normal(2)
            v = np.kron(a / np.linalg.norm(a), b / np.linalg.norm(b))
            rho += wi * projector(v)
        assert concurrence(rho) < 1e-7


def test_local_unitary_invariance():
    rng = np.random.default_rng(2)
    for _ in range(50):
        rho = random_state(rng, rng.integers(1, 4))
        U = np.kron(haar_unitary(rng, 2), haar_unitary(rng, 2))
        assert abs(concurrence(U @ rho @ U.conj().T) - concurrence(rho)) < 1e-8


@settings(max_examples=100, deadline=None)
@given(st.integers(0, 2**32 - 1))
def test_pure_concurrence_matches_mixed(seed):
    psi = random_pure(np.random.default_rng(seed))
    c = pure_concurrence(psi)
    assert 0 <= c <= 1
    assert abs(c - concurrence(projector(psi))) < 1e-10


def test_pure_concurrence_examples():
    assert pure_concurrence(np.array([1, 0, 0, 0])) == 0.0
    assert abs(pure_concurrence(bell_state(3)) - 1) < 1e-15
    stack = np.vstack([bell_state(k) for k in range(1, 5)])
    assert np.abs(pure_concurrence(stack) - 1).max() < 1e-15


def test_fidelity_examples():
    psi = bell_state(2)
    assert abs(fidelity(projector(psi), psi) - 1) < 1e-15
    rho = 0.5 * np.diag([1, 0, 0, 1])
    assert abs(fidelity(rho, psi) - 1 / np.sqrt(2)) < 1e-15
    for k in range(1, 5):
        assert abs(fidelity(np.eye(4) / 4, bell_state(k)) - 0.5) < 1e-15


def test_initial_state_and_bell_basis():
    rho = initial_equal_superposition()
    assert np.allclose(np.diag(rho), 0.25)
    assert abs(purity(rho) - 1) < 1e-15
    B = np.column_stack([bell_state(k) for k in range(1, 5)])
    assert np.abs(B.conj().T @ B - np.eye(4)).max() < 1e-15
    assert abs(purity(np.eye(4) / 4) - 0.25) < 1e-15
    with pytest.raises(ValueError):
        bell_state(5)


def test_indefinite_input_policy():
    rho = 0.5 * projector(bell_state(1)) + 0.25 * np.diag([1, 0, 0, 1]) + np.diag([0, 1e-6, 1e-6, 0])
    rho[1, 2] += 1e-5
    rho[2, 1] += 1e-5
    rho[0, 0] -= 1e-6
    rho[3, 3] -= 1e-6
    assert not validate(rho).ok
    with pytest.raises(ValueError):
        concurrence(rho)
    c = concurrence(rho, strict=False)
    assert 0 <= c <= 1
    assert spectral_decompose(rho, strict=False).values.min() >= 0
