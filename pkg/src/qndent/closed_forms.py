"""Two-qubit closed forms, written out element class by element class.

This path never touches the spin-word combinatorics of :mod:`dynamics`;
it exists to cross-check that module. Element classes (basis indices
0..3 for ``|00>, |01>, |10>, |11>``):

* ``(3,2), (0,1)`` and conjugates: qubit b flips; squeezing phase ``2 r_b``.
* ``(3,1), (0,2)`` and conjugates: qubit a flips; squeezing phase ``2 r_a``.
* ``(3,0), (0,3)``: both flip in the same direction, purely real.
* ``(2,1), (1,2)``: both flip oppositely, purely real.
"""
from __future__ import annotations

import numpy as np

from .bath import BathParams, integrate_bath, kernel_C, kernel_S, ohmic_spectral_density, thermal_weight
from .dynamics import QubitGeometry, Regime, TransferArray

__all__ = ["build_transfer_array_specialized", "element_class_exponents"]


def _sin2_over_w2(w, t):
    # 2 sin^2(w t / 2) / w^2, with its t^2/2 limit
    x = w * t
    out = np.where(x < 1e-4, 0.5 * t * t * (1 - x * x / 12.0), 0.0)
    big = x >= 1e-4
    s = np.sin(0.5 * x[big])
    out[big] = 2.0 * s * s / w[big] ** 2
    return out


def _integrate(f, bath, t, geom):
    r_a, r_b = geom.positions
    scale = t + abs(t - 2 * bath.a) + 2 * max(abs(r_a), abs(r_b)) + abs(r_a - r_b)
    return integrate_bath(f, bath, time_scale=scale)


def element_class_exponents(t, bath: BathParams, geom: QubitGeometry) -> dict:
    """``{class: (Theta, Lambda, Gamma)}`` for the four representative elements.

    Keys are ``(3, 2)``, ``(3, 1)``, ``(3, 0)`` and ``(2, 1)``.
    """
    if geom.n_qubits != 2:
        raise ValueError("closed forms exist for two qubits only")
    t = float(t)
    if t == 0:
        return {k: (0.0, 0.0, 0.0) for k in [(3, 2), (3, 1), (3, 0), (2, 1)]}
    r_a, r_b = geom.positions
    collective = geom.regime is Regime.COLLECTIVE
    w_ts = 0.0 if collective else (r_a - r_b)
    ch, sh = np.cosh(2 * bath.alpha), np.sinh(2 * bath.alpha)
    I = lambda w: ohmic_spectral_density(w, bath)
    Ic = lambda w: thermal_weight(w, bath)

    def nonstationary(w, cos_part, sin_part):
        ph = w * (t - 2 * bath.a)
        return (_sin2_over_w2(w, t) * sh
                * (np.cos(ph) * cos_part + np.sin(ph) * sin_part))

    def gamma_single(tc1):
        f = lambda w: Ic(w) * (ch * kernel_C(w, t)
                               - nonstationary(w, np.cos(w * tc1), np.sin(w * tc1)))
        return _integrate(f, bath, t, geom)

    def bracket(w, sign, fn):
        return fn(2 * w * r_a) + fn(2 * w * r_b) + sign * 2 * fn(w * (r_a + r_b))

    if collective:
        theta = _integrate(lambda w: I(w) * kernel_S(w, t), bath, t, geom)
        lam_32 = lam_31 = 0.0
        g30 = _integrate(
            lambda w: Ic(w) * (4 * ch * kernel_C(w, t)
                               - nonstationary(w, bracket(w, +1, np.cos), bracket(w, +1, np.sin))),
            bath, t, geom)
        g21 = _integrate(
            lambda w: -2 * Ic(w) / w ** 2 * np.sin(w * t / 2) ** 2 * sh
            * (np.cos(w * (t - 2 * bath.a)) * bracket(w, -1, np.cos)
               + np.sin(w * (t - 2 * bath.a)) * bracket(w, -1, np.sin)),
            bath, t, geom)
    else:
        theta = _integrate(lambda w: I(w) * kernel_S(w, t) * np.cos(w * w_ts), bath, t, geom)
        lam_c = _integrate(lambda w: I(w) * kernel_C(w, t) * np.sin(w * w_ts), bath, t, geom)
        lam_32, lam_31 = -lam_c, lam_c
        g30 = _integrate(
            lambda w: Ic(w) * (2 * ch * kernel_C(w, t) * (1 + np.cos(w * w_ts))
                               - nonstationary(w, bracket(w, +1, np.cos), bracket(w, +1, np.sin))),
            bath, t, geom)
        g21 = _integrate(
            lambda w: Ic(w) * (2 * ch * kernel_C(w, t) * (1 - np.cos(w * w_ts))
                               - nonstationary(w, bracket(w, -1, np.cos), bracket(w, -1, np.sin))),
            bath, t, geom)

    return {
        (3, 2): (theta, lam_32, gamma_single(2 * r_b)),
        (3, 1): (theta, lam_31, gamma_single(2 * r_a)),
        (3, 0): (0.0, 0.0, g30),
        (2, 1): (0.0, 0.0, g21),
    }


def build_transfer_array_specialized(t, bath: BathParams, geom: QubitGeometry) -> TransferArray:
    """Transfer array from the per-class closed forms."""
    ex = element_class_exponents(t, bath, geom)
    theta = np.zeros((4, 4))
    lam = np.zeros((4, 4))
    gamma = np.zeros((4, 4))

    def put(j, k, th, la, ga):
        theta[j, k], lam[j, k], gamma[j, k] = th, la, ga

    for (j, k), partner in [((3, 2), (0, 1)), ((3, 1), (0, 2))]:
        th, la, ga = ex[(j, k)]
        for a, b in [(j, k), partner]:
            put(a, b, th, la, ga)
            put(b, a, -th, -la, ga)
    for j, k in [(3, 0), (2, 1)]:
        _, _, ga = ex[(j, k)]
        put(j, k, 0.0, 0.0, ga)
        put(k, j, 0.0, 0.0, ga)

    values = np.exp(1j * (theta - lam)) * np.exp(-gamma)
    np.fill_diagonal(values, 1.0)
    return TransferArray(values, theta, lam, gamma, float(t))
