"""Spin-squeezing parameter

    xi^2_{n1} = 2j (Delta J_{n1})^2 / (<J_{n2}>^2 + <J_{n3}>^2)

from explicit states and from closed-form moments, plus the critical-point
search for odd cat states with half-integer j.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass

import numpy as np

from . import _stable
from .closedform import cartesian_moments
from .errors import NoCrossingError
from .spinspace import SpinState, expectation, op_along, op_jx, op_jy, op_jz, variance
from .states import SscsParams

# transverse mean spin squared (and 2j * variance) below this count as zero
ZERO_THRESHOLD = 1e-14


class Marker(enum.Enum):
    """Non-numeric outcome of a squeezing ratio."""

    INF = "inf"  # nonzero variance over vanishing transverse spin
    DEGENERATE = "degenerate"  # 0 / 0

    def __str__(self):
        return self.value


@dataclass(frozen=True)
class UnitVector:
    x: float
    y: float
    z: float

    def __post_init__(self):
        norm2 = self.x**2 + self.y**2 + self.z**2
        if abs(norm2 - 1.0) > 1e-12:
            raise ValueError(f"not a unit vector: |v|^2 = {norm2!r}")

    @classmethod
    def of(cls, x: float, y: float, z: float) -> UnitVector:
        """Normalize (x, y, z)."""
        norm = math.sqrt(x * x + y * y + z * z)
        if norm == 0:
            raise ValueError("cannot normalize the zero vector")
        return cls(x / norm, y / norm, z / norm)

    def __iter__(self):
        return iter((self.x, self.y, self.z))

    def __neg__(self):
        return UnitVector(-self.x, -self.y, -self.z)

    def as_array(self) -> np.ndarray:
        return np.array([self.x, self.y, self.z])


X_AXIS = UnitVector(1.0, 0.0, 0.0)
Y_AXIS = UnitVector(0.0, 1.0, 0.0)
Z_AXIS = UnitVector(0.0, 0.0, 1.0)


@dataclass(frozen=True)
class SqueezingReport:
    direction: UnitVector
    xi2: float | Marker
    mean_spin: tuple[float, float, float]
    degenerate: bool


def complete_triad(n1: UnitVector) -> tuple[UnitVector, UnitVector]:
    """Right-handed orthonormal (n2, n3) completing ``n1``.

    n2 is n1 x e normalized, with e the coordinate axis least aligned with
    n1 (ties resolved in the order x, y, z); n3 = n1 x n2.
    """
    v = n1.as_array()
    dots = np.abs(v)
    axis = np.zeros(3)
    axis[int(np.argmin(dots))] = 1.0
    n2 = np.cross(v, axis)
    n2 /= np.linalg.norm(n2)
    n3 = np.cross(v, n2)
    n3 /= np.linalg.norm(n3)
    return UnitVector(*n2), UnitVector(*n3)


def squeezing_ratio(numerator: float, denominator: float) -> float | Marker:
    if denominator < ZERO_THRESHOLD:
        return Marker.DEGENERATE if numerator < ZERO_THRESHOLD else Marker.INF
    return numerator / denominator


def xi_squared_oracle(state: SpinState, n1: UnitVector) -> SqueezingReport:
    space = state.space
    mean = tuple(expectation(state, op).real for op in (op_jx(space), op_jy(space), op_jz(space)))
    n2, n3 = complete_triad(n1)
    transverse = float(np.dot(mean, n2.as_array()) ** 2 + np.dot(mean, n3.as_array()) ** 2)
    numerator = space.twice_j * variance(state, op_along(space, n1))
    return SqueezingReport(
        direction=n1,
        xi2=squeezing_ratio(numerator, transverse),
        mean_spin=mean,
        degenerate=transverse < ZERO_THRESHOLD,
    )


def is_parity_state(theta: float) -> bool:
    """True for the even (theta = 0) and odd (theta = pi) cat states."""
    _, s = _stable.cos_sin(theta)
    return s == 0.0


def xi_xyz_closedform(params: SscsParams) -> tuple[float | Marker, float | Marker, float | Marker]:
    """(xi_x^2, xi_y^2, xi_z^2) from closed-form moments."""
    m = cartesian_moments(params)
    p = params.twice_j
    vx, vy, vz = (max(v, 0.0) for v in m.variances())
    if is_parity_state(params.theta):
        # mean spin is along z; <Jx> = <Jy> = 0 exactly
        jz2 = m.jz**2
        return (
            squeezing_ratio(p * m.jx2, jz2),
            squeezing_ratio(p * m.jy2, jz2),
            Marker.DEGENERATE,
        )
    return (
        squeezing_ratio(p * vx, m.jy**2 + m.jz**2),
        squeezing_ratio(p * vy, m.jx**2 + m.jz**2),
        squeezing_ratio(p * vz, m.jx**2 + m.jy**2),
    )


def xi_y2(eta_abs: float, twice_j: int, theta: float) -> float | Marker:
    return xi_xyz_closedform(SscsParams(twice_j, eta_abs, theta))[1]


def mean_spin_direction(state: SpinState) -> UnitVector | None:
    """Unit vector along (<Jx>, <Jy>, <Jz>), or None when it vanishes."""
    space = state.space
    mean = np.array([expectation(state, op).real for op in (op_jx(space), op_jy(space), op_jz(space))])
    norm = float(np.linalg.norm(mean))
    if norm < 1e-12:
        return None
    return UnitVector.of(*mean)


def _below_one(value: float | Marker) -> bool:
    return not isinstance(value, Marker) and value < 1.0


def find_critical_eta(twice_j: int, theta: float = math.pi, step: float = 0.05,
                      eta_max: float = 10.0, tol: float = 1e-6) -> float:
    """Smallest |eta| past which the cat state becomes squeezed along y.

    Scans |eta| in (0, eta_max] on a fixed grid for the first transition
    from xi_y^2 >= 1 to xi_y^2 < 1, then bisects that bracket.
    """
    if twice_j % 2 != 1:
        raise ValueError(f"critical point search needs half-integer j (odd twice_j), got twice_j={twice_j}")
    grid = step * np.arange(1, int(round(eta_max / step)) + 1)
    values = [xi_y2(float(e), twice_j, theta) for e in grid]
    for i in range(len(grid) - 1):
        if not _below_one(values[i]) and values[i] is not Marker.DEGENERATE and _below_one(values[i + 1]):
            lo, hi = float(grid[i]), float(grid[i + 1])
            break
    else:
        raise NoCrossingError(f"xi_y^2 never drops below 1 on (0, {eta_max}] for twice_j={twice_j}")
    while hi - lo > tol:
        mid = 0.5 * (lo + hi)
        if _below_one(xi_y2(mid, twice_j, theta)):
            hi = mid
        else:
            lo = mid
    return 0.5 * (lo + hi)
