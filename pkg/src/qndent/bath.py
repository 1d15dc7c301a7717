"""Ohmic squeezed-thermal bath: spectral density, time kernels and quadrature.

Natural units throughout (hbar = k_B = c = 1). Qubit positions are measured in
time units so that ``k . r == omega * r``.
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Callable

import numpy as np
from numpy.polynomial.legendre import leggauss

__all__ = [
    "BathParams",
    "QuadratureError",
    "ohmic_spectral_density",
    "kernel_S",
    "kernel_C",
    "thermal_factor",
    "thermal_weight",
    "integrate_bath",
    "OMEGA_MAX_FACTOR",
]

# series switch thresholds
S_SERIES_X = 1.0
C_SERIES_X = 1e-4
COTH_SERIES_X = 1e-6

OMEGA_MAX_FACTOR = 50.0


@dataclass(frozen=True)
class BathParams:
    """Parameters of the squeezed thermal Ohmic reservoir.

    Parameters
    ----------
    T : float
        Temperature. ``T == 0`` is the vacuum (coth factor identically 1).
    alpha : float
        Squeezing magnitude.
    a : float
        Slope of the squeezing phase, ``Phi(omega) = a * omega``.
    gamma0 : float
        Dimensionless system-bath coupling strength.
    omega_c : float
        Cutoff frequency of the Ohmic spectral density.
    """

    T: float = 0.0
    alpha: float = 0.0
    a: float = 0.0
    gamma0: float = 0.1
    omega_c: float = 100.0

    def __post_init__(self):
        for name in ("T", "alpha", "a", "gamma0", "omega_c"):
            value = getattr(self, name)
            if not np.isfinite(value):
                raise ValueError(f"{name} must be finite, got {value!r}")
            object.__setattr__(self, name, float(value))
        if self.T < 0:
            raise ValueError(f"temperature must be >= 0, got {self.T}")
        if self.alpha < 0:
            raise ValueError(f"squeezing alpha must be >= 0, got {self.alpha}")
        if self.gamma0 <= 0:
            raise ValueError(f"gamma0 must be > 0, got {self.gamma0}")
        if self.omega_c <= 0:
            raise ValueError(f"omega_c must be > 0, got {self.omega_c}")

    @property
    def beta(self) -> float:
        return np.inf if self.T == 0 else 1.0 / self.T

    @property
    def omega_max(self) -> float:
        return OMEGA_MAX_FACTOR * self.omega_c

    def replace(self, **changes) -> "BathParams":
        fields = dict(T=self.T, alpha=self.alpha, a=self.a,
                      gamma0=self.gamma0, omega_c=self.omega_c)
        fields.update(changes)
        return BathParams(**fields)


class QuadratureError(RuntimeError):
    """Adaptive quadrature did not reach the requested tolerance."""

    def __init__(self, message, estimate, error):
        super().__init__(f"{message} (estimate={estimate!r}, error={error!r})")
        self.estimate = estimate
        self.error = error


def _check_nonneg(name, x):
    if np.any(np.asarray(x) < 0):
        raise ValueError(f"{name} must be non-negative")


def ohmic_spectral_density(omega, bath: BathParams):
    """``I(omega) = (gamma0 / pi) * omega * exp(-omega / omega_c)``."""
    omega = np.asarray(omega, dtype=float)
    _check_nonneg("omega", omega)
    out = bath.gamma0 / np.pi * omega * np.exp(-omega / bath.omega_c)
    return out[()] if out.ndim == 0 else out


def kernel_S(omega, t):
    """``(omega t - sin(omega t)) / omega**2``, finite as omega -> 0.

    Below ``omega t = 1`` a Taylor series is used; the direct form loses
    roughly ``eps / x**2`` relative accuracy to cancellation.
    """
    omega, t = np.broadcast_arrays(np.asarray(omega, dtype=float),
                                   np.asarray(t, dtype=float))
    _check_nonneg("omega", omega)
    _check_nonneg("t", t)
    x = omega * t
    small = x < S_SERIES_X
    out = np.empty(x.shape)

    xs, ts, ws = x[small], t[small], omega[small]
    # (x - sin x)/omega^2 = t^2 * sum_k (-1)^(k+1) x^(2k-1) / (2k+1)!
    series = np.zeros_like(xs)
    term = xs / 6.0
    x2 = xs * xs
    for k in range(1, 10):
        series += term
        term = -term * x2 / ((2 * k + 2) * (2 * k + 3))
    out[small] = ts * ts * series

    big = ~small
    xb, wb = x[big], omega[big]
    out[big] = (xb - np.sin(xb)) / (wb * wb)
    return out[()] if out.ndim == 0 else out


def kernel_C(omega, t):
    """``(1 - cos(omega t)) / omega**2``, evaluated as ``2 sin^2(omega t/2)/omega^2``."""
    omega, t = np.broadcast_arrays(np.asarray(omega, dtype=float),
                                   np.asarray(t, dtype=float))
    _check_nonneg("omega", omega)
    _check_nonneg("t", t)
    x = omega * t
    small = x < C_SERIES_X
    out = np.empty(x.shape)
    ts, xs = t[small], x[small]
    x2 = xs * xs
    out[small] = ts * ts * (0.5 - x2 / 24.0 + x2 * x2 / 720.0)
    big = ~small
    wb = omega[big]
    s = np.sin(0.5 * x[big])
    out[big] = 2.0 * s * s / (wb * wb)
    return out[()] if out.ndim == 0 else out


def thermal_factor(omega, bath: BathParams):
    """``coth(beta omega / 2)``; identically 1 at ``T == 0``.

    Diverges at ``omega == 0`` for ``T > 0``; integrands should use
    :func:`thermal_weight`, which carries the regularizing Ohmic prefactor.
    """
    omega = np.asarray(omega, dtype=float)
    _check_nonneg("omega", omega)
    if bath.T == 0:
        out = np.ones_like(omega)
    else:
        x = omega / bath.T
        with np.errstate(divide="ignore"):
            out = np.where(x < COTH_SERIES_X,
                           2.0 / x + x / 6.0,
                           1.0 / np.tanh(0.5 * np.maximum(x, COTH_SERIES_X)))
    return out[()] if out.ndim == 0 else out


def thermal_weight(omega, bath: BathParams):
    """``I(omega) * coth(beta omega / 2)`` with the finite limit ``2 gamma0 T / pi`` at 0."""
    omega = np.asarray(omega, dtype=float)
    _check_nonneg("omega", omega)
    pref = bath.gamma0 / np.pi * np.exp(-omega / bath.omega_c)
    if bath.T == 0:
        out = pref * omega
    else:
        x = omega / bath.T
        xs = np.maximum(x, COTH_SERIES_X)
        # omega * coth(x/2) = T * x * coth(x/2)
        out = pref * bath.T * np.where(x < COTH_SERIES_X,
                                       2.0 + x * x / 6.0,
                                       xs / np.tanh(0.5 * xs))
    return out[()] if out.ndim == 0 else out


_GL_LO = leggauss(10)
_GL_HI = leggauss(20)


def _panel_rules(a, b):
    """Node arrays and weights for the low/high Gauss-Legendre rules on panels [a, b]."""
    mid = 0.5 * (a + b)[:, None]
    half = 0.5 * (b - a)[:, None]
    x_lo = mid + half * _GL_LO[0]
    x_hi = mid + half * _GL_HI[0]
    return x_lo, half * _GL_LO[1], x_hi, half * _GL_HI[1]


def integrate_bath(integrand: Callable, bath: BathParams, time_scale: float = 0.0,
                   rtol: float = 1e-8, atol: float = 1e-12,
                   max_rounds: int = 40, max_panels: int = 4_000_000):
    """Integrate ``integrand(omega)`` over ``[0, 50 omega_c]``.

    The integrand is called with a 1-d array of frequencies and may return
    either an array of the same length or a ``(k, n)`` stack, in which case
    ``k`` integrals are computed on a shared panel layout.

    Initial panels span at most two periods of the fastest oscillation
    implied by ``time_scale`` (the sum of all time arguments appearing in
    the integrand) and at most a quarter of ``omega_c``. Each panel is integrated
    with 20-point Gauss-Legendre and its error estimated against the
    10-point rule; panels failing their share of the tolerance are bisected.
    The tolerance per component is ``max(atol, rtol * int |f|)``.

    Returns
    -------
    float or ndarray
        Integral value(s).

    Raises
    ------
    QuadratureError
        When the tolerance is not met within ``max_rounds`` refinements.
    """
    w_max = bath.omega_max
    h = 0.25 * bath.omega_c
    if time_scale > 0:
        h = min(h, 4.0 * np.pi / time_scale)
    n0 = int(np.ceil(w_max / h))
    edges = np.linspace(0.0, w_max, n0 + 1)
    a, b = edges[:-1], edges[1:]

    total = None
    total_abs = None
    total_err = None
    scalar = None

    for _ in range(max_rounds):
        x_lo, w_lo, x_hi, w_hi = _panel_rules(a, b)
        n = a.size
        f_lo = np.asarray(integrand(x_lo.ravel()), dtype=float)
        f_hi = np.asarray(integrand(x_hi.ravel()), dtype=float)
        if scalar is None:
            scalar = f_hi.ndim == 1
        f_lo = f_lo.reshape(-1, n, w_lo.shape[1])
        f_hi = f_hi.reshape(-1, n, w_hi.shape[1])
        k = f_hi.shape[0]
        if total is None:
            total = np.zeros(k)
            total_abs = np.zeros(k)
            total_err = np.zeros(k)

        i_lo = np.einsum("kpn,pn->kp", f_lo, w_lo)
        i_hi = np.einsum("kpn,pn->kp", f_hi, w_hi)
        i_abs = np.einsum("kpn,pn->kp", np.abs(f_hi), w_hi)
        err = np.abs(i_hi - i_lo)

        est = total + i_hi.sum(axis=1)
        est_abs = total_abs + i_abs.sum(axis=1)
        tol = np.maximum(atol, rtol * est_abs)
        if np.all(total_err + err.sum(axis=1) <= tol):
            return est[0] if scalar else est

        share = tol[:, None] * ((b - a) / w_max)[None, :]
        good = np.all(err <= share, axis=0)
        total += i_hi[:, good].sum(axis=1)
        total_abs += i_abs[:, good].sum(axis=1)
        total_err += err[:, good].sum(axis=1)

        a, b = a[~good], b[~good]
        if a.size == 0:
            # every panel met its share but accumulated error still too big
            if np.all(total_err <= tol):
                return total[0] if scalar else total
            break
        if 2 * a.size > max_panels:
            break
        mid = 0.5 * (a + b)
        a, b = np.concatenate([a, mid]), np.concatenate([mid, b])

    estimate = total if total is not None else np.nan
    raise QuadratureError("bath integral failed to converge", estimate, total_err)
