"""Dense matrix representation of a single spin-j multiplet.

Basis ordering follows the number states |n> = |j, -j+n>, n = 0..2j, so
the number operator N = Jz + j is diag(0, 1, ..., 2j).  These brute-force
routines are the reference every closed-form expression is checked
against.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache

import numpy as np

from .errors import InternalConsistencyError, NotHermitianError, SpaceMismatchError

MAX_TWICE_J = 200


@dataclass(frozen=True)
class SpinSpace:
    """The (2j+1)-dimensional space; j is stored as the integer 2j."""

    twice_j: int

    def __post_init__(self):
        if int(self.twice_j) != self.twice_j or self.twice_j < 0:
            raise ValueError(f"twice_j must be a non-negative integer, got {self.twice_j!r}")
        if self.twice_j > MAX_TWICE_J:
            raise ValueError(f"twice_j={self.twice_j} exceeds supported maximum {MAX_TWICE_J}")
        object.__setattr__(self, "twice_j", int(self.twice_j))

    @property
    def j(self) -> float:
        return self.twice_j / 2

    @property
    def j_exact(self) -> Fraction:
        return Fraction(self.twice_j, 2)

    @property
    def dim(self) -> int:
        return self.twice_j + 1

    def __str__(self):
        return f"SpinSpace(j={self.j_exact})"


def _frozen(array) -> np.ndarray:
    array = np.array(array, dtype=complex)
    array.setflags(write=False)
    return array


class SpinState:
    """Normalized amplitude vector over the number basis.

    The constructor renormalizes; use :func:`number_state`,
    :func:`spincat.states.scs` etc. rather than building one by hand.
    """

    __slots__ = ("space", "amplitudes")

    def __init__(self, space: SpinSpace, amplitudes):
        amplitudes = np.asarray(amplitudes, dtype=complex).ravel()
        if amplitudes.shape != (space.dim,):
            raise ValueError(f"expected {space.dim} amplitudes, got {amplitudes.shape[0]}")
        norm = np.linalg.norm(amplitudes)
        if not np.isfinite(norm) or norm == 0:
            raise ValueError("cannot normalize a zero or non-finite amplitude vector")
        self.space = space
        self.amplitudes = _frozen(amplitudes / norm)

    def __repr__(self):
        return f"SpinState({self.space}, {np.array2string(self.amplitudes, precision=4)})"

    def probabilities(self) -> np.ndarray:
        return np.abs(self.amplitudes) ** 2


class SpinOperator:
    """Dense complex matrix acting on a :class:`SpinSpace`."""

    __slots__ = ("space", "matrix")

    def __init__(self, space: SpinSpace, matrix):
        matrix = np.asarray(matrix, dtype=complex)
        if matrix.shape != (space.dim, space.dim):
            raise ValueError(f"expected a {space.dim}x{space.dim} matrix, got {matrix.shape}")
        self.space = space
        self.matrix = _frozen(matrix)

    def __repr__(self):
        return f"SpinOperator({self.space}, dim={self.space.dim})"

    def _check(self, other: SpinOperator):
        if other.space != self.space:
            raise SpaceMismatchError(f"{self.space} vs {other.space}")

    def __add__(self, other):
        if isinstance(other, SpinOperator):
            self._check(other)
            return SpinOperator(self.space, self.matrix + other.matrix)
        return SpinOperator(self.space, self.matrix + other * np.eye(self.space.dim))

    __radd__ = __add__

    def __sub__(self, other):
        return self + (-1) * other

    def __rsub__(self, other):
        return (-1) * self + other

    def __neg__(self):
        return (-1) * self

    def __mul__(self, scalar):
        return SpinOperator(self.space, self.matrix * scalar)

    __rmul__ = __mul__

    def __matmul__(self, other: SpinOperator):
        self._check(other)
        return SpinOperator(self.space, self.matrix @ other.matrix)

    def __pow__(self, k: int):
        return SpinOperator(self.space, np.linalg.matrix_power(self.matrix, k))

    def dagger(self) -> SpinOperator:
        return SpinOperator(self.space, self.matrix.conj().T)

    def is_hermitian(self, atol: float = 0.0) -> bool:
        if atol == 0.0:
            return bool(np.array_equal(self.matrix, self.matrix.conj().T))
        return bool(np.allclose(self.matrix, self.matrix.conj().T, rtol=0, atol=atol))


def number_state(space: SpinSpace, n: int) -> SpinState:
    if not 0 <= n <= space.twice_j:
        raise IndexError(f"number state |{n}> outside 0..{space.twice_j} for {space}")
    amplitudes = np.zeros(space.dim, dtype=complex)
    amplitudes[n] = 1.0
    return SpinState(space, amplitudes)


@lru_cache(maxsize=None)
def _jminus_matrix(twice_j: int) -> np.ndarray:
    n = np.arange(1, twice_j + 1)
    # J- |n> = sqrt(n (2j - n + 1)) |n-1>
    return np.diag(np.sqrt(n * (twice_j - n + 1.0)), k=1).astype(complex)


def op_identity(space: SpinSpace) -> SpinOperator:
    return SpinOperator(space, np.eye(space.dim))


def op_jminus(space: SpinSpace) -> SpinOperator:
    return SpinOperator(space, _jminus_matrix(space.twice_j))


def op_jplus(space: SpinSpace) -> SpinOperator:
    return SpinOperator(space, _jminus_matrix(space.twice_j).T.conj())


def op_number(space: SpinSpace) -> SpinOperator:
    return SpinOperator(space, np.diag(np.arange(space.dim, dtype=float)))


def op_jz(space: SpinSpace) -> SpinOperator:
    return SpinOperator(space, np.diag(np.arange(space.dim) - space.j))


def op_jx(space: SpinSpace) -> SpinOperator:
    jm = _jminus_matrix(space.twice_j)
    return SpinOperator(space, (jm + jm.T) / 2)


def op_jy(space: SpinSpace) -> SpinOperator:
    jm = _jminus_matrix(space.twice_j)
    # (J+ - J-) / 2i; J- is real so J+ = J-^T
    return SpinOperator(space, (jm.T - jm) / 2j)


def op_along(space: SpinSpace, direction) -> SpinOperator:
    """n . J for a 3-vector ``direction``."""
    x, y, z = (float(c) for c in direction)
    return x * op_jx(space) + y * op_jy(space) + z * op_jz(space)


def _vector(state) -> np.ndarray:
    return state.amplitudes if isinstance(state, SpinState) else np.asarray(state, dtype=complex)


def apply(op: SpinOperator, state: SpinState) -> np.ndarray:
    """Matrix-vector product; the result is not normalized."""
    if op.space != state.space:
        raise SpaceMismatchError(f"operator on {op.space}, state on {state.space}")
    return op.matrix @ state.amplitudes


def inner(bra: SpinState, ket: SpinState) -> complex:
    """<bra|ket>, conjugate-linear in ``bra``."""
    if bra.space != ket.space:
        raise SpaceMismatchError(f"{bra.space} vs {ket.space}")
    return complex(np.vdot(bra.amplitudes, ket.amplitudes))


def matrix_element(bra: SpinState, op: SpinOperator, ket: SpinState) -> complex:
    if not (bra.space == op.space == ket.space):
        raise SpaceMismatchError("bra, operator and ket live on different spaces")
    return complex(np.vdot(bra.amplitudes, op.matrix @ ket.amplitudes))


def expectation(state: SpinState, op: SpinOperator) -> complex:
    return matrix_element(state, op, state)


def variance(state: SpinState, op: SpinOperator) -> float:
    """<op^2> - <op>^2 for Hermitian ``op``, clamped at zero."""
    if not op.is_hermitian(atol=1e-12):
        raise NotHermitianError("variance requires a Hermitian operator")
    if op.space != state.space:
        raise SpaceMismatchError(f"operator on {op.space}, state on {state.space}")
    v = op.matrix @ state.amplitudes
    mean = np.vdot(state.amplitudes, v).real
    second = np.vdot(v, v).real
    var = second - mean**2
    if var < -1e-12 * max(1.0, second):
        raise InternalConsistencyError(f"variance {var:.3e} is negative beyond roundoff")
    return max(var, 0.0)
