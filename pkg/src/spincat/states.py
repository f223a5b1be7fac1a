"""Spin coherent states, their two-component superpositions and the
one-axis-twisting route to |eta, pi/2>.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass
from functools import lru_cache

import numpy as np

from . import _stable
from .errors import DegenerateSuperpositionError, SpaceMismatchError
from .spinspace import SpinSpace, SpinState, inner, number_state

# smallest admissible value of 2 + 2 cos(theta) xi^{2j}
DEGENERACY_THRESHOLD = 1e-14


@dataclass(frozen=True)
class SscsParams:
    """Parameters (j, eta, theta) of |eta, theta> ~ |eta> + e^{i theta}|-eta>."""

    twice_j: int
    eta: complex
    theta: float

    def __post_init__(self):
        object.__setattr__(self, "twice_j", SpinSpace(self.twice_j).twice_j)
        object.__setattr__(self, "eta", complex(self.eta))
        object.__setattr__(self, "theta", float(self.theta))

    @property
    def space(self) -> SpinSpace:
        return SpinSpace(self.twice_j)

    @property
    def j(self) -> float:
        return self.twice_j / 2

    @property
    def eta_abs2(self) -> float:
        return self.eta.real**2 + self.eta.imag**2

    def shifted(self, dtheta: float) -> SscsParams:
        return SscsParams(self.twice_j, self.eta, self.theta + dtheta)


def xi_param(eta: complex) -> float:
    a = abs(complex(eta)) ** 2
    return _stable.xi_of(a)


def half_norm(params: SscsParams) -> float:
    """(2 + 2 cos(theta) xi^{2j}) / 2, evaluated without cancellation."""
    return _stable.theta_k(params.twice_j, params.theta, params.eta_abs2)


def check_valid(params: SscsParams) -> None:
    if 2.0 * half_norm(params) <= DEGENERACY_THRESHOLD:
        raise DegenerateSuperpositionError(
            f"|eta> + e^(i theta)|-eta> vanishes for eta={params.eta}, theta={params.theta}; "
            "the eta -> 0, theta = pi limit is number_state(space, 1)"
        )


@lru_cache(maxsize=None)
def _log_binomial_sqrt(twice_j: int) -> np.ndarray:
    n = np.arange(twice_j + 1)
    lg = np.vectorize(math.lgamma)
    return 0.5 * (math.lgamma(twice_j + 1) - lg(n + 1) - lg(twice_j - n + 1))


def _scs_unnormalized(space: SpinSpace, eta: complex) -> np.ndarray:
    """C(2j, n)^{1/2} eta^n up to an overall positive constant."""
    n = np.arange(space.dim)
    log_mag = _log_binomial_sqrt(space.twice_j) + n * math.log(abs(eta))
    phase = n * cmath.phase(eta)
    return np.exp(log_mag - log_mag.max()) * np.exp(1j * phase)


def scs(space: SpinSpace, eta: complex) -> SpinState:
    """Spin coherent state |eta>."""
    eta = complex(eta)
    if eta == 0:
        return number_state(space, 0)
    return SpinState(space, _scs_unnormalized(space, eta))


def sscs(space: SpinSpace, params: SscsParams) -> SpinState:
    """Superposition (|eta> + e^{i theta}|-eta>) / sqrt(2 + 2 cos(theta) xi^{2j})."""
    if params.twice_j != space.twice_j:
        raise SpaceMismatchError(f"params have twice_j={params.twice_j}, space is {space}")
    check_valid(params)
    c, s = _stable.cos_sin(params.theta)
    # 1 + e^{i theta} (-1)^n
    parity = np.where(np.arange(space.dim) % 2 == 0, complex(1 + c, s), complex(1 - c, -s))
    if params.eta == 0:
        base = np.zeros(space.dim, dtype=complex)
        base[0] = 1.0
    else:
        base = _scs_unnormalized(space, params.eta)
    return SpinState(space, base * parity)


def sscs_from(params: SscsParams) -> SpinState:
    return sscs(params.space, params)


def scs_overlap_minus(space: SpinSpace, eta: complex) -> float:
    """<eta|-eta> = xi^{2j}."""
    return xi_param(eta) ** space.twice_j


def sscs_cross_overlap(params: SscsParams) -> complex:
    """<eta, theta | eta, theta + pi>."""
    check_valid(params)
    check_valid(params.shifted(math.pi))
    _, s = _stable.cos_sin(params.theta)
    if s == 0:
        return 0j
    p, a = params.twice_j, params.eta_abs2
    # 1 - cos^2 xi^{4j} = (1 + cos xi^{2j})(1 - cos xi^{2j})
    root = math.sqrt(_stable.theta_k(p, params.theta, a) * _stable.theta_k(p, params.theta, a, flip=True))
    return -1j * s * _stable.xi_of(a) ** p / root


def one_axis_twist(space: SpinSpace, state: SpinState, chi_t: float) -> SpinState:
    """Evolve under H = chi N^2 for time t: amplitude(n) *= exp(-i chi t n^2)."""
    if state.space != space:
        raise SpaceMismatchError(f"state on {state.space}, space is {space}")
    n = np.arange(space.dim, dtype=float)
    return SpinState(space, state.amplitudes * np.exp(-1j * chi_t * n**2))


def global_phase_fidelity(s1: SpinState, s2: SpinState) -> float:
    """|<s1|s2>|, insensitive to a global phase."""
    return abs(inner(s1, s2))
