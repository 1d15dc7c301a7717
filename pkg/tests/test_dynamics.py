import itertools

import numpy as np
import pytest

from qndent.bath import BathParams, integrate_bath, kernel_C, kernel_S, ohmic_spectral_density, thermal_weight
from qndent.closed_forms import build_transfer_array_specialized, element_class_exponents
from qndent.dynamics import (QubitGeometry, Regime, build_transfer_array, evolve,
                             extract_symmetry_coeffs, gamma_collective, gamma_localized,
                             lambda_localized, spin_word, theta_collective, theta_localized,
                             word_index)
from qndent.states import bell_state, initial_equal_superposition, projector, purity

LOC = QubitGeometry.figure_default(Regime.LOCALIZED)
COL = QubitGeometry.figure_default(Regime.COLLECTIVE)


def random_state(rng, rank=4):
    z = rng.standard_normal((4, rank)) + 1j * rng.standard_normal((4, rank))
    rho = z @ z.conj().T
    return rho / np.trace(rho)


def test_spin_word_bijection():
    words = [spin_word(k) for k in range(4)]
    assert words[0] == (-0.5, -0.5) and words[3] == (0.5, 0.5) and words[2] == (0.5, -0.5)
    assert [word_index(w) for w in words] == [0, 1, 2, 3]
    for k in range(8):
        assert word_index(spin_word(k, 3)) == k


def test_geometry_scales():
    g = QubitGeometry.pair(1.1, Regime.LOCALIZED, origin=0.3)
    assert abs(g.transit_time(0, 1) + 1.1) < 1e-15
    assert abs(g.t_corr1(1) - 2 * 1.4) < 1e-15
    assert abs(g.t_corr2(0, 1) - 1.7) < 1e-15
    c = QubitGeometry.pair(1.1, Regime.COLLECTIVE, origin=0.3)
    assert c.transit_time(0, 1) == 0.0 and c.t_corr1(1) == g.t_corr1(1)
    f = QubitGeometry.from_kr(1.1, 100.0, Regime.LOCALIZED)
    assert abs(f.positions[1] - 0.011) < 1e-15


def test_theta_localized_examples():
    b = BathParams(T=2.0)
    g = QubitGeometry.pair(0.3)
    t = 1.5
    assert theta_localized((1, 1), t, g, b) == 0.0
    ts = g.transit_time(0, 1)
    ref = integrate_bath(lambda w: ohmic_spectral_density(w, b) * kernel_S(w, t) * np.cos(w * ts),
                         b, time_scale=t + abs(ts))
    assert abs(theta_localized((3, 2), t, g, b) - ref) < 1e-10 * abs(ref)
    assert theta_localized((2, 3), t, g, b) == -theta_localized((3, 2), t, g, b)
    assert theta_localized((2, 1), t, g, b) == 0.0
    assert theta_localized((3, 0), t, g, b) == 0.0


def test_lambda_localized_examples():
    b = BathParams(T=1.0)
    g = QubitGeometry.pair(1.1)
    assert lambda_localized((3, 2), 0.0, g, b) == 0.0
    l32 = lambda_localized((3, 2), 2.0, g, b)
    assert l32 != 0.0
    assert abs(l32 + lambda_localized((3, 1), 2.0, g, b)) < 1e-14
    # collapsing the separation removes the phase
    g0 = QubitGeometry.pair(0.0)
    assert lambda_localized((3, 2), 2.0, g0, b) == 0.0


def test_gamma_localized_thermal_limit():
    b = BathParams(T=3.0, alpha=0.0)
    g = QubitGeometry.pair(0.05, origin=0.02)
    t = 2.0
    ts = g.transit_time(0, 1)
    base = integrate_bath(lambda w: thermal_weight(w, b) * kernel_C(w, t), b, time_scale=t)
    cross = integrate_bath(lambda w: thermal_weight(w, b) * kernel_C(w, t) * np.cos(w * ts), b,
                           time_scale=t + abs(ts))
    # d = i - j: (3,0) -> (1,1), (3,1) -> (1,0), (1,2) -> (-1,1)
    assert abs(gamma_localized((3, 0), t, g, b) - (2 * base + 2 * cross)) < 1e-10
    assert abs(gamma_localized((3, 1), t, g, b) - base) < 1e-10
    assert abs(gamma_localized((1, 2), t, g, b) - (2 * base - 2 * cross)) < 1e-10
    assert gamma_localized((2, 2), t, g, b) == 0.0


def test_squeezing_enters_only_through_sinh_block():
    g = QubitGeometry.pair(0.05, origin=0.02)
    t = 2.0
    for alpha in (0.3, 1.0):
        b0 = BathParams(T=3.0, alpha=0.0)
        b = BathParams(T=3.0, alpha=alpha)
        for idx in [(3, 0), (3, 1), (1, 2)]:
            g_th = gamma_localized(idx, t, g, b0)
            g_sq = gamma_localized(idx, t, g, b)
            # remove the cosh part; what remains must vanish when sinh(2 alpha) -> 0
            sq = (np.cosh(2 * alpha) * g_th - g_sq) / np.sinh(2 * alpha)
            sq2 = (np.cosh(0.2) * g_th - gamma_localized(idx, t, g, BathParams(T=3.0, alpha=0.1))) / np.sinh(0.2)
            assert abs(sq - sq2) < 1e-10 * max(1.0, abs(sq))


def test_collective_examples():
    b = BathParams(T=5.0)
    t = 3.0
    assert theta_collective((1, 2), t, b, COL) == 0.0
    assert theta_collective((3, 0), t, b, COL) == 0.0
    ref = integrate_bath(lambda w: ohmic_spectral_density(w, b) * kernel_S(w, t), b, time_scale=t)
    assert abs(theta_collective((3, 2), t, b, COL) - ref) < 1e-10 * ref
    assert gamma_collective((2, 1), t, COL, b) == 0.0
    assert gamma_collective((1, 1), t, COL, b) == 0.0
    base = integrate_bath(lambda w: thermal_weight(w, b) * kernel_C(w, t), b, time_scale=t)
    assert abs(gamma_collective((3, 0), t, COL, b) - 4 * base) < 1e-10 * base


def test_regime_mismatch():
    with pytest.raises(ValueError):
        theta_localized((3, 2), 1.0, COL, BathParams())
    with pytest.raises(ValueError):
        gamma_collective((3, 2), 1.0, LOC, BathParams())


def test_array_at_zero_time():
    for g in (LOC, COL):
        arr = build_transfer_array(0.0, BathParams(T=5, alpha=0.5), g)
        assert np.array_equal(arr.values, np.ones((4, 4), complex))
        r = extract_symmetry_coeffs(arr)
        assert (r.c1, r.c2, r.r1, r.r2) == (1, 1, 1, 1)


def test_qnd_diagonal_and_hermiticity():
    rng = np.random.default_rng(3)
    for _ in range(10):
        rho0 = random_state(rng)
        g = LOC if rng.random() < 0.5 else COL
        b = BathParams(T=rng.uniform(0, 20), alpha=rng.uniform(0, 1))
        rho = evolve(rho0, build_transfer_array(rng.uniform(0, 10), b, g))
        assert np.array_equal(np.diag(rho), np.diag(rho0))
        assert np.abs(rho - rho.conj().T).max() < 1e-12


def test_identity_channel_and_validation():
    rho0 = initial_equal_superposition()
    assert np.array_equal(evolve(rho0, np.ones((4, 4))), rho0)
    with pytest.raises(ValueError):
        evolve(0.9 * rho0, np.ones((4, 4)))


@pytest.mark.parametrize("g", [LOC, COL], ids=["localized", "collective"])
def test_general_vs_specialized(g):
    for t, T, alpha in itertools.product((0.5, 3.0, 10.0), (0.0, 5.0, 50.0), (0.0, 0.5, 1.0)):
        b = BathParams(T=T, alpha=alpha)
        gen = build_transfer_array(t, b, g).values
        spec = build_transfer_array_specialized(t, b, g).values
        assert np.abs(gen - spec).max() < 1e-8


def test_specialized_correlation_scales():
    # (3,1) carries r_a's correlation scale, (3,2) carries r_b's
    g = QubitGeometry.pair(0.4, origin=0.1)
    b = BathParams(T=1.0, alpha=0.7)
    ex = element_class_exponents(2.0, b, g)
    swapped = QubitGeometry((0.5, 0.1), Regime.LOCALIZED)
    ex2 = element_class_exponents(2.0, b, swapped)
    assert abs(ex[(3, 1)][2] - ex2[(3, 2)][2]) < 1e-12
    assert abs(ex[(3, 2)][2] - ex2[(3, 1)][2]) < 1e-12
    for key in [(3, 0), (2, 1)]:
        assert ex[key][0] == 0.0 and ex[key][1] == 0.0
    arr = build_transfer_array_specialized(2.0, b, g).values
    assert arr[3, 0].imag == 0.0 and arr[2, 1].imag == 0.0


def test_symmetry_pattern_localized_example():
    arr = build_transfer_array(2.0, BathParams(T=5, alpha=0.5), QubitGeometry.pair(1.1))
    r = extract_symmetry_coeffs(arr)
    assert r.ok


def test_dfs_collective():
    for T in (1.0, 5.0, 50.0):
        for t in np.linspace(0, 10, 11):
            L12 = build_transfer_array(t, BathParams(T=T), COL).values[1, 2]
            assert abs(L12 - 1) < 1e-9


def test_modulus_bound_where_damping_nonnegative():
    rng = np.random.default_rng(11)
    for _ in range(10):
        g = LOC if rng.random() < 0.5 else COL
        arr = build_transfer_array(rng.uniform(0, 10), BathParams(T=rng.uniform(0, 20), alpha=rng.uniform(0, 1)), g)
        ok = arr.gamma >= 0
        assert np.all(np.abs(arr.values)[ok] <= 1 + 1e-15)
        assert np.all(np.abs(arr.values) <= np.exp(np.abs(arr.gamma)) + 1e-15)


def test_purity_non_increasing_thermal_localized():
    rho0 = initial_equal_superposition()
    for T in (0.0, 1.0, 5.0):
        b = BathParams(T=T)
        p = [purity(evolve(rho0, build_transfer_array(t, b, LOC))) for t in np.linspace(0, 10, 41)]
        assert np.all(np.diff(p) <= 1e-12)


def test_bell_strong_damping_limit():
    rho = evolve(projector(bell_state(2)), build_transfer_array(10.0, BathParams(T=50.0), LOC))
    target = np.diag([0.5, 0, 0, 0.5]).astype(complex)
    assert np.abs(rho - target).max() < 1e-6


def test_three_qubit_array():
    g = QubitGeometry((0.0, 0.01, 0.03), Regime.LOCALIZED)
    arr = build_transfer_array(1.0, BathParams(T=2.0, alpha=0.3), g).values
    assert arr.shape == (8, 8)
    assert np.abs(arr - arr.conj().T).max() < 1e-12
    assert np.all(np.diag(arr) == 1)
