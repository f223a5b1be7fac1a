"""Closed-form moments of |eta, theta>.

All expressions are evaluated in a pole-free, overflow-free arrangement:
ratios of (1 +- |eta|^2)^m are rewritten as powers of
xi = (1 - |eta|^2)/(1 + |eta|^2) and of |eta|^2/(1 + |eta|^2), and every
``1 + cos(theta) xi^m`` goes through :func:`spincat._stable.theta_k`.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from . import _stable
from .errors import DegenerateSuperpositionError, PoleError, UndefinedCorrelationError
from .states import SscsParams, check_valid

# <N^k> = STIRLING2 @ (F(1), F(2), F(3), F(4))
STIRLING2 = np.array(
    [
        [1, 0, 0, 0],
        [1, 1, 0, 0],
        [1, 3, 1, 0],
        [1, 7, 6, 1],
    ],
    dtype=float,
)


def g2_numerator_coefficients(twice_j: int) -> tuple[float, float, float, float]:
    """Coefficients (c1, c2, c3, c4) with
    N (N-1) (2j-N+1) (2j-N+2) = c1 N + c2 N^2 + c3 N^3 + c4 N^4."""
    p = twice_j
    return (-(p * p + 3 * p + 2), p * p + 5 * p + 5, -(2 * p + 4), 1)


def g2_numerator_factorial_coefficients(twice_j: int) -> tuple[float, float, float, float]:
    """The same polynomial in the falling-factorial basis:
    c1 F(1) + c2 F(2) + c3 F(3) + c4 F(4)."""
    p = twice_j
    return (0, p * (p - 1), -2 * (p - 1), 1)


@dataclass(frozen=True)
class MomentSet:
    n1: float
    n2: float
    n3: float
    n4: float
    jminus: complex
    jminus2: complex
    jx: float
    jy: float
    jz: float
    jx2: float
    jy2: float
    jz2: float

    @property
    def jplus(self) -> complex:
        return self.jminus.conjugate()

    @property
    def jplus2(self) -> complex:
        return self.jminus2.conjugate()

    def mean_spin(self) -> tuple[float, float, float]:
        return (self.jx, self.jy, self.jz)

    def variances(self) -> tuple[float, float, float]:
        return (self.jx2 - self.jx**2, self.jy2 - self.jy**2, self.jz2 - self.jz**2)


def _falling(p: int, k: int) -> float:
    return float(math.perm(p, k))


def generating_function(params: SscsParams, lam: float) -> float:
    """G(lambda) = <lambda^N>."""
    check_valid(params)
    p, a, theta = params.twice_j, params.eta_abs2, params.theta
    if lam == 1:
        return 1.0
    la = lam * a
    if la < 0:
        # 1 + lambda a < 1 - lambda a: fall back to the plain quotient
        c, _ = _stable.cos_sin(theta)
        num = ((1 + la) / (1 + a)) ** p + c * ((1 - la) / (1 + a)) ** p
        return num / _stable.theta_k(p, theta, a)
    scale = ((1 + la) / (1 + a)) ** p
    return scale * _stable.theta_k(p, theta, la) / _stable.theta_k(p, theta, a)


def factorial_moment(params: SscsParams, k: int) -> float:
    """F(k) = <N (N-1) ... (N-k+1)>, k in 1..4."""
    if not 1 <= k <= 4:
        raise ValueError(f"factorial moments are provided for k = 1..4, got {k}")
    check_valid(params)
    p, a, theta = params.twice_j, params.eta_abs2, params.theta
    if k > p or a == 0:
        return 0.0
    ratio = a / (1 + a)
    # (1+a)^{p-k} + (-1)^k cos (1-a)^{p-k}, divided by (1+a)^{p-k}
    top = _stable.theta_k(p - k, theta, a, flip=(k % 2 == 1))
    return _falling(p, k) * ratio**k * top / _stable.theta_k(p, theta, a)


def factorial_moments(params: SscsParams) -> np.ndarray:
    return np.array([factorial_moment(params, k) for k in range(1, 5)])


def n_moments(params: SscsParams) -> tuple[float, float, float, float]:
    """(<N>, <N^2>, <N^3>, <N^4>)."""
    return tuple(float(v) for v in STIRLING2 @ factorial_moments(params))


def g2(params: SscsParams) -> float:
    """Normalized second-order correlation <J+^2 J-^2> / <J+ J->^2."""
    p = params.twice_j
    fs = factorial_moments(params)
    # <N (2j - N + 1)> = 2j F(1) - F(2)
    denominator = p * fs[0] - fs[1]
    if denominator < 1e-14:
        raise UndefinedCorrelationError(f"<J+ J-> = {denominator:.3e} vanishes; g2 is undefined")
    # factorial basis: no cancellation between large powers of N
    numerator = sum(c * f for c, f in zip(g2_numerator_factorial_coefficients(p), fs))
    return numerator / denominator**2


def g2_number_state(twice_j: int, n: int) -> float:
    if not 1 <= n <= twice_j:
        raise UndefinedCorrelationError(f"g2 of |{n}> is undefined for 2j = {twice_j}")
    return (n - 1) * (twice_j - n + 2) / (n * (twice_j - n + 1))


def _cross_root(params: SscsParams) -> float:
    """sqrt(1 - cos^2(theta) xi^{4j}); both |eta, theta> and |eta, theta + pi> must exist."""
    check_valid(params)
    check_valid(params.shifted(math.pi))
    p, a, theta = params.twice_j, params.eta_abs2, params.theta
    product = _stable.theta_k(p, theta, a) * _stable.theta_k(p, theta, a, flip=True)
    if product <= 1e-28:
        raise DegenerateSuperpositionError(
            f"<eta,theta|lambda^N|eta,theta+pi> is undefined for eta={params.eta}, theta={theta}"
        )
    return math.sqrt(product)


def gtilde(params: SscsParams, lam: float) -> complex:
    """<eta, theta| lambda^N |eta, theta + pi>."""
    _, s = _stable.cos_sin(params.theta)
    root = _cross_root(params)
    if s == 0:
        return 0j
    p, a = params.twice_j, params.eta_abs2
    return -1j * s * ((1 - lam * a) / (1 + a)) ** p / root


def gtilde_derivative(params: SscsParams) -> complex:
    """d gtilde / d lambda at lambda = 1, i.e. <eta, theta| N |eta, theta + pi>."""
    _, s = _stable.cos_sin(params.theta)
    root = _cross_root(params)
    p, a = params.twice_j, params.eta_abs2
    if s == 0 or p == 0:
        return 0j
    # the printed 1/(1 - |eta|^2) pole cancels against xi^{2j}
    return 1j * p * s * a * _stable.xi_of(a) ** (p - 1) / (1 + a) / root


def jminus_expect(params: SscsParams) -> complex:
    """<J->, with xi^{2j} / (1 - |eta|^2) replaced by xi^{2j-1} / (1 + |eta|^2)."""
    check_valid(params)
    _, s = _stable.cos_sin(params.theta)
    p, a = params.twice_j, params.eta_abs2
    if s == 0 or p == 0:
        return 0j
    scaled = _stable.xi_of(a) ** (p - 1) / (1 + a)
    return -1j * params.eta * p * s * scaled / _stable.theta_k(p, params.theta, a)


def jminus2_expect(params: SscsParams) -> complex:
    """<J-^2> = eta^2 { F(2) - 2(2j-1) [F(1) - j] }."""
    f1 = factorial_moment(params, 1)
    f2 = factorial_moment(params, 2)
    p = params.twice_j
    return params.eta**2 * (f2 - (p - 1) * (2 * f1 - p))


def cartesian_moments(params: SscsParams) -> MomentSet:
    n1, n2, n3, n4 = n_moments(params)
    jm = jminus_expect(params)
    jm2 = jminus2_expect(params)
    j = params.j
    base = 2 * j * (2 * n1 + 1) - 2 * n2
    return MomentSet(
        n1=n1,
        n2=n2,
        n3=n3,
        n4=n4,
        jminus=jm,
        jminus2=jm2,
        jx=jm.real,
        jy=-jm.imag,
        jz=n1 - j,
        jx2=(base + 2 * jm2.real) / 4,
        jy2=(base - 2 * jm2.real) / 4,
        jz2=n2 - 2 * j * n1 + j * j,
    )


def j1_even_xi(eta: float) -> tuple[float, float]:
    """(xi_x^2, xi_y^2) of the even cat state at j = 1."""
    a = abs(eta) ** 2
    if a == 1.0:
        raise PoleError("xi_x^2 diverges at |eta| = 1 for j = 1; use j1_even_xi_y")
    return (1 + a * a) / (1 - a) ** 2, j1_even_xi_y(eta)


def j1_even_xi_y(eta: float) -> float:
    a = abs(eta) ** 2
    return (1 + a * a) / (1 + a) ** 2
