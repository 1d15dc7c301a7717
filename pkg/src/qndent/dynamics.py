"""QND dephasing of L qubits in a squeezed thermal bath.

Every reduced density-matrix element evolves by a scalar factor

    rho_ij(t) = exp[i (Theta_ij - Lambda_ij)] exp[-Gamma_ij] rho_ij(0)

where ``i`` and ``j`` are words of single-qubit ``J_z`` eigenvalues
(+-1/2). All three exponents are linear combinations of a handful of bath
integrals that depend only on ``(t, bath, geometry)``; those integrals are
computed once on a shared quadrature grid and cached.

Index convention for words: qubit ``m`` of basis index ``k`` is bit
``L-1-m`` of ``k`` (qubit 0 is the most significant), bit 0 <-> -1/2 and
bit 1 <-> +1/2. For two qubits this is ``00 -> 0, 01 -> 1, 10 -> 2, 11 -> 3``.
"""
from __future__ import annotations

import enum
import functools
import itertools
import logging
from dataclasses import dataclass, field
from typing import NamedTuple, Sequence

import numpy as np

from .bath import BathParams, integrate_bath, kernel_C, kernel_S, ohmic_spectral_density, thermal_weight

__all__ = [
    "Regime",
    "QubitGeometry",
    "spin_word",
    "word_index",
    "theta_localized",
    "lambda_localized",
    "gamma_localized",
    "theta_collective",
    "gamma_collective",
    "decoherence_exponents",
    "TransferArray",
    "build_transfer_array",
    "evolve",
    "SymmetryReport",
    "extract_symmetry_coeffs",
    "SPIN_FLIP",
]

log = logging.getLogger(__name__)


class Regime(str, enum.Enum):
    LOCALIZED = "localized"
    COLLECTIVE = "collective"


@dataclass(frozen=True)
class QubitGeometry:
    """Qubit positions (light-travel-time units) and decoherence regime.

    In the collective regime the pair transit times ``t_s`` vanish while the
    squeezing correlation scales ``2 r_m`` and ``r_m + r_n`` keep the
    configured positions.
    """

    positions: tuple
    regime: Regime = Regime.LOCALIZED

    def __post_init__(self):
        pos = tuple(float(r) for r in self.positions)
        if len(pos) < 1:
            raise ValueError("need at least one qubit")
        if not all(np.isfinite(pos)):
            raise ValueError("qubit positions must be finite")
        object.__setattr__(self, "positions", pos)
        object.__setattr__(self, "regime", Regime(self.regime))

    @classmethod
    def pair(cls, r_ab: float, regime=Regime.LOCALIZED, origin: float = 0.0):
        """Two qubits with ``r_a = origin`` and ``r_b = origin + r_ab``."""
        return cls((origin, origin + r_ab), regime)

    @classmethod
    def from_kr(cls, kr: float, omega_c: float, regime=Regime.LOCALIZED, origin: float = 0.0):
        """Pair whose separation is the dimensionless ``k r_ab`` at the cutoff wavenumber.

        ``r_ab = kr / omega_c`` (c = 1); ``origin`` is in the same units.
        """
        return cls.pair(kr / omega_c, regime, origin / omega_c)

    @classmethod
    def figure_default(cls, regime, omega_c: float = 100.0):
        """Separations used for all figures: ``k r_ab = 1.1`` localized, ``0.05`` collective."""
        regime = Regime(regime)
        kr = 1.1 if regime is Regime.LOCALIZED else 0.05
        return cls.from_kr(kr, omega_c, regime)

    @property
    def n_qubits(self) -> int:
        return len(self.positions)

    @property
    def pairs(self):
        """Unordered pairs ``(m, n)`` with ``m < n``."""
        return list(itertools.combinations(range(self.n_qubits), 2))

    def transit_time(self, m: int, n: int) -> float:
        """``t_s(m, n) = r_m - r_n``; zero in the collective regime."""
        if self.regime is Regime.COLLECTIVE:
            return 0.0
        return self.positions[m] - self.positions[n]

    def t_corr1(self, m: int) -> float:
        return 2.0 * self.positions[m]

    def t_corr2(self, m: int, n: int) -> float:
        return self.positions[m] + self.positions[n]


def spin_word(index: int, n_qubits: int = 2) -> tuple:
    """Spin eigenvalues (+-1/2 per qubit) for a basis index."""
    if not 0 <= index < 2 ** n_qubits:
        raise ValueError(f"index {index} out of range for {n_qubits} qubits")
    bits = [(index >> (n_qubits - 1 - m)) & 1 for m in range(n_qubits)]
    return tuple(0.5 if bit else -0.5 for bit in bits)


def word_index(word: Sequence[float]) -> int:
    """Inverse of :func:`spin_word`."""
    index = 0
    for s in word:
        if s not in (0.5, -0.5):
            raise ValueError(f"spin labels must be +-1/2, got {s!r}")
        index = (index << 1) | (s > 0)
    return index


def _as_words(indices, n_qubits):
    """Accept ``(i, j)`` as basis indices or as spin words."""
    i, j = indices
    if np.isscalar(i):
        i = spin_word(int(i), n_qubits)
    if np.isscalar(j):
        j = spin_word(int(j), n_qubits)
    if len(i) != n_qubits or len(j) != n_qubits:
        raise ValueError("spin words must have one label per qubit")
    return np.asarray(i, dtype=float), np.asarray(j, dtype=float)


class BathIntegrals(NamedTuple):
    """Bath integrals at one time point; pair arrays follow ``geom.pairs``."""

    theta_pair: np.ndarray    # int I S cos(w t_s)
    lambda_pair: np.ndarray   # int I C sin(w t_s)
    gamma_self: float         # int I coth C
    gamma_pair: np.ndarray    # int I coth C cos(w t_s)
    sq_self: np.ndarray       # int I coth C [cos(w(t-2a)) cos(w tc1) + sin sin], per qubit
    sq_pair: np.ndarray       # same with t_corr2, per pair


def _time_scale(t, bath, geom):
    pos = np.abs(geom.positions)
    span = (max(geom.positions) - min(geom.positions)) if geom.n_qubits > 1 else 0.0
    return t + abs(t - 2 * bath.a) + 2 * pos.max() + span


@functools.lru_cache(maxsize=4096)
def bath_integrals(t: float, bath: BathParams, geom: QubitGeometry) -> BathIntegrals:
    """All bath integrals needed for the decoherence exponents at time ``t``.

    Cached on ``(t, bath, geom)``; ``lru_cache`` is safe under concurrent
    readers and at worst recomputes a missing entry.
    """
    t = float(t)
    if t < 0:
        raise ValueError("time must be non-negative")
    L = geom.n_qubits
    pairs = geom.pairs
    P = len(pairs)
    ts = np.array([geom.transit_time(m, n) for m, n in pairs])
    tc1 = np.array([geom.t_corr1(m) for m in range(L)])
    tc2 = np.array([geom.t_corr2(m, n) for m, n in pairs])
    if t == 0:
        z = np.zeros(P)
        return BathIntegrals(z, z.copy(), 0.0, z.copy(), np.zeros(L), z.copy())

    def integrand(w):
        w_ = w[None, :]
        spec = ohmic_spectral_density(w, bath)
        S = kernel_S(w, t)
        C = kernel_C(w, t)
        IcC = thermal_weight(w, bath) * C
        phase = w * (t - 2.0 * bath.a)
        cph, sph = np.cos(phase), np.sin(phase)
        rows = [
            spec * S * np.cos(w_ * ts[:, None]),
            spec * C * np.sin(w_ * ts[:, None]),
            IcC[None, :],
            IcC * np.cos(w_ * ts[:, None]),
            IcC * (cph * np.cos(w_ * tc1[:, None]) + sph * np.sin(w_ * tc1[:, None])),
            IcC * (cph * np.cos(w_ * tc2[:, None]) + sph * np.sin(w_ * tc2[:, None])),
        ]
        return np.concatenate([np.atleast_2d(r).reshape(-1, w.size) for r in rows])

    vals = integrate_bath(integrand, bath, time_scale=_time_scale(t, bath, geom))
    cuts = np.cumsum([P, P, 1, P, L])
    th, la, gs, gp, ss, sp = np.split(vals, cuts)
    return BathIntegrals(th, la, float(gs[0]), gp, ss, sp)


def _check_regime(geom, regime):
    if geom.regime is not regime:
        raise ValueError(f"geometry regime is {geom.regime.value}, expected {regime.value}")


def theta_localized(indices, t, geom: QubitGeometry, bath: BathParams) -> float:
    """Phase ``2 sum_{m<n} (i_m i_n - j_m j_n) int I S cos(w t_s(m,n))``."""
    _check_regime(geom, Regime.LOCALIZED)
    i, j = _as_words(indices, geom.n_qubits)
    ints = bath_integrals(float(t), bath, geom)
    coeff = np.array([i[m] * i[n] - j[m] * j[n] for m, n in geom.pairs])
    return float(2.0 * coeff @ ints.theta_pair) if coeff.size else 0.0


def lambda_localized(indices, t, geom: QubitGeometry, bath: BathParams) -> float:
    """Phase ``2 sum_{m != n} i_m j_n int I C sin(w t_s(m,n))`` over ordered pairs.

    With ``t_s(n, m) = -t_s(m, n)`` the ordered sum folds onto unordered
    pairs with coefficient ``i_m j_n - i_n j_m``.
    """
    _check_regime(geom, Regime.LOCALIZED)
    i, j = _as_words(indices, geom.n_qubits)
    ints = bath_integrals(float(t), bath, geom)
    coeff = np.array([i[m] * j[n] - i[n] * j[m] for m, n in geom.pairs])
    return float(2.0 * coeff @ ints.lambda_pair) if coeff.size else 0.0


def _squeezing_block(d, geom, ints):
    """``sum_m d_m^2 <tc1 term> + 2 sum_{m<n} d_m d_n <tc2 term>``."""
    pair = np.array([d[m] * d[n] for m, n in geom.pairs])
    out = np.sum(d * d * ints.sq_self)
    if pair.size:
        out += 2.0 * pair @ ints.sq_pair
    return float(out)


def gamma_localized(indices, t, geom: QubitGeometry, bath: BathParams) -> float:
    """Damping exponent of the localized regime.

    ``cosh(2 alpha)`` multiplies the stationary part
    ``sum_m d_m^2 + 2 sum_{m<n} d_m d_n cos(w t_s)`` and ``sinh(2 alpha)``
    the non-stationary squeezing block, with ``d = i - j``.
    """
    _check_regime(geom, Regime.LOCALIZED)
    i, j = _as_words(indices, geom.n_qubits)
    d = i - j
    ints = bath_integrals(float(t), bath, geom)
    pair = np.array([d[m] * d[n] for m, n in geom.pairs])
    stationary = np.sum(d * d) * ints.gamma_self
    if pair.size:
        stationary += 2.0 * pair @ ints.gamma_pair
    sq = _squeezing_block(d, geom, ints)
    return float(np.cosh(2 * bath.alpha) * stationary - np.sinh(2 * bath.alpha) * sq)


def theta_collective(indices, t, bath: BathParams, geom: QubitGeometry = None) -> float:
    """Phase ``[(sum i)^2 - (sum j)^2] int I S``."""
    if geom is None:
        geom = QubitGeometry((0.0,) * len(indices[0]), Regime.COLLECTIVE)
    _check_regime(geom, Regime.COLLECTIVE)
    i, j = _as_words(indices, geom.n_qubits)
    weight = i.sum() ** 2 - j.sum() ** 2
    if weight == 0 or t == 0:
        return 0.0
    # in the collective regime every transit time vanishes, so any pair
    # integral equals int I S; a single qubit needs its own evaluation
    if geom.n_qubits > 1:
        base = bath_integrals(float(t), bath, geom).theta_pair[0]
    else:
        base = integrate_bath(lambda w: ohmic_spectral_density(w, bath) * kernel_S(w, t),
                              bath, time_scale=t)
    return float(weight * base)


def gamma_collective(indices, t, geom: QubitGeometry, bath: BathParams) -> float:
    """Damping exponent of the collective regime: ``[sum(i - j)]^2`` cosh weight."""
    _check_regime(geom, Regime.COLLECTIVE)
    i, j = _as_words(indices, geom.n_qubits)
    d = i - j
    ints = bath_integrals(float(t), bath, geom)
    stationary = d.sum() ** 2 * ints.gamma_self
    sq = _squeezing_block(d, geom, ints)
    return float(np.cosh(2 * bath.alpha) * stationary - np.sinh(2 * bath.alpha) * sq)


def decoherence_exponents(t, bath: BathParams, geom: QubitGeometry):
    """``(Theta, Lambda, Gamma)`` as ``2^L x 2^L`` real arrays."""
    dim = 2 ** geom.n_qubits
    theta = np.zeros((dim, dim))
    lam = np.zeros((dim, dim))
    gamma = np.zeros((dim, dim))
    collective = geom.regime is Regime.COLLECTIVE
    for j, k in itertools.product(range(dim), repeat=2):
        if j == k:
            continue
        idx = (j, k)
        if collective:
            theta[j, k] = theta_collective(idx, t, bath, geom)
            gamma[j, k] = gamma_collective(idx, t, geom, bath)
        else:
            theta[j, k] = theta_localized(idx, t, geom, bath)
            lam[j, k] = lambda_localized(idx, t, geom, bath)
            gamma[j, k] = gamma_localized(idx, t, geom, bath)
    return theta, lam, gamma


@dataclass
class TransferArray:
    """Element-wise decoherence factors ``L_jk(t)`` of the QND channel.

    ``values[j, k] = exp[i (theta - lam)] * exp(-gamma)``, diagonal exactly 1.
    """

    values: np.ndarray
    theta: np.ndarray = field(repr=False, default=None)
    lam: np.ndarray = field(repr=False, default=None)
    gamma: np.ndarray = field(repr=False, default=None)
    t: float = 0.0

    @property
    def negative_gamma(self):
        """Off-diagonal positions whose damping exponent is negative."""
        if self.gamma is None:
            return []
        return [tuple(int(v) for v in p) for p in np.argwhere(self.gamma < 0)]

    def __array__(self, dtype=None, copy=None):
        return np.asarray(self.values, dtype=dtype)


def build_transfer_array(t, bath: BathParams, geom: QubitGeometry) -> TransferArray:
    """Assemble the transfer array from the general-L decoherence exponents."""
    theta, lam, gamma = decoherence_exponents(t, bath, geom)
    values = np.exp(1j * (theta - lam)) * np.exp(-gamma)
    np.fill_diagonal(values, 1.0)
    arr = TransferArray(values, theta, lam, gamma, float(t))
    neg = arr.negative_gamma
    if neg:
        log.info("negative damping exponent at t=%g for elements %s", t, neg)
    return arr


def evolve(rho0, array) -> np.ndarray:
    """``rho(t) = L * rho(0)`` element-wise; validates ``rho0`` first."""
    from .states import validate

    rho0 = np.asarray(rho0, dtype=complex)
    report = validate(rho0)
    if not report.ok:
        raise ValueError(f"invalid initial density matrix: {report.failures()}")
    values = np.asarray(array, dtype=complex)
    if values.shape != rho0.shape:
        raise ValueError(f"array shape {values.shape} does not match state {rho0.shape}")
    rho = values * rho0
    # exact population preservation; diagonal factors are 1 by construction
    np.fill_diagonal(rho, np.diag(rho0))
    return rho


SPIN_FLIP = np.kron(np.array([[0, 1], [1, 0]]), np.array([[0, 1], [1, 0]])).astype(complex)


@dataclass
class SymmetryReport:
    c1: complex
    c2: complex
    r1: float
    r2: float
    hermiticity_dev: float
    pattern_dev: float
    spin_flip_dev: float
    reality_dev: float
    tol: float

    @property
    def ok(self) -> bool:
        return max(self.hermiticity_dev, self.pattern_dev,
                   self.spin_flip_dev, self.reality_dev) <= self.tol


def extract_symmetry_coeffs(array, tol: float = 1e-9) -> SymmetryReport:
    """Independent entries of a two-qubit transfer array and symmetry residuals.

    The expected layout is::

        1    c1   c2   r1
        c1*  1    r2   c2*
        c2*  r2   1    c1*
        r1   c2   c1   1
    """
    L = np.asarray(array, dtype=complex)
    if L.shape != (4, 4):
        raise ValueError("symmetry analysis is defined for two-qubit arrays")
    c1, c2, c3, c4 = L[0, 1], L[0, 2], L[0, 3], L[1, 2]
    r1, r2 = c3.real, c4.real
    pattern = np.array([
        [1, c1, c2, r1],
        [np.conj(c1), 1, r2, np.conj(c2)],
        [np.conj(c2), r2, 1, np.conj(c1)],
        [r1, c2, c1, 1],
    ], dtype=complex)
    report = SymmetryReport(
        c1=complex(c1), c2=complex(c2), r1=float(r1), r2=float(r2),
        hermiticity_dev=float(np.max(np.abs(L - L.conj().T))),
        pattern_dev=float(np.max(np.abs(L - pattern))),
        spin_flip_dev=float(np.max(np.abs(SPIN_FLIP @ L @ SPIN_FLIP.conj().T - L))),
        reality_dev=float(max(abs(c3.imag), abs(c4.imag))),
        tol=tol,
    )
    if not report.ok:
        log.warning("transfer array violates the symmetry pattern: %s", report)
    return report
