"""Closed-form versus matrix-oracle comparison over a parameter grid."""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass, field

import numpy as np

from . import _stable
from . import closedform as cf
from .errors import DegenerateSuperpositionError, UndefinedCorrelationError
from .spinspace import (
    apply,
    expectation,
    op_jminus,
    op_jx,
    op_jy,
    op_jz,
    op_number,
)
from .squeezing import X_AXIS, Y_AXIS, Marker, xi_squared_oracle, xi_xyz_closedform
from .states import SscsParams, scs, sscs, sscs_cross_overlap

PI = math.pi


@dataclass(frozen=True)
class Grid:
    twice_js: tuple[int, ...]
    eta_abs: tuple[float, ...]
    thetas: tuple[float, ...]
    eta_args: tuple[float, ...]
    tolerance: float = 1e-9

    def params(self):
        for tj, r, th, ph in itertools.product(self.twice_js, self.eta_abs, self.thetas, self.eta_args):
            yield SscsParams(tj, r * complex(math.cos(ph), math.sin(ph)), th)


GRID_PRESETS = {
    "small": Grid((1, 2, 3, 4), (0.5, 1.0, 2.0), (0.0, PI / 2, PI), (0.0,)),
    "default": Grid(
        tuple(range(1, 13)),
        (0.1, 0.5, 0.9, 1.0, 1.1, 2.0, 3.0),
        (0.0, PI / 4, PI / 2, 3 * PI / 4, PI),
        (0.0, PI / 3),
    ),
    # cancellation near |eta| = 1 grows with 2j; compared at 1e-6
    "large": Grid(
        (13, 20, 31, 40, 47, 60),
        (0.5, 0.99, 1.0, 1.01, 2.0),
        (0.0, PI / 2, PI),
        (0.0, PI / 3),
        tolerance=1e-6,
    ),
}

LAMBDAS = (0.0, 0.5, 1.0, 1.5, 2.0)


@dataclass
class Deviation:
    max_abs: float = 0.0
    max_rel: float = 0.0
    count: int = 0
    failures: int = 0
    worst: SscsParams | None = None


@dataclass
class VerificationReport:
    tolerance: float
    abs_tolerance: float
    quantities: dict[str, Deviation] = field(default_factory=dict)
    points: int = 0
    skipped: int = 0

    def record(self, name: str, closed, oracle, params: SscsParams) -> None:
        dev = self.quantities.setdefault(name, Deviation())
        diff = abs(complex(closed) - complex(oracle))
        scale = abs(complex(oracle))
        rel = diff / scale if scale > self.abs_tolerance else 0.0
        dev.count += 1
        if diff > dev.max_abs:
            dev.max_abs = diff
        if rel > dev.max_rel:
            dev.max_rel = rel
        if diff > max(self.tolerance * scale, self.abs_tolerance) or not math.isfinite(diff):
            dev.failures += 1
            dev.worst = params

    def record_residual(self, name: str, residual: float, params: SscsParams) -> None:
        self.record(name, residual, 0.0, params)

    @property
    def ok(self) -> bool:
        return all(d.failures == 0 for d in self.quantities.values())

    def lines(self) -> list[str]:
        out = [f"{'quantity':<14}{'checks':>8}{'max_abs':>12}{'max_rel':>12}  status"]
        for name, d in self.quantities.items():
            status = "ok" if d.failures == 0 else f"FAIL ({d.failures}, e.g. {d.worst})"
            out.append(f"{name:<14}{d.count:>8}{d.max_abs:>12.3e}{d.max_rel:>12.3e}  {status}")
        out.append(
            f"points={self.points} skipped={self.skipped} tolerance={self.tolerance:g} "
            f"abs_tolerance={self.abs_tolerance:g} -> {'PASS' if self.ok else 'FAIL'}"
        )
        return out


def _falling_weights(dim: int, k: int) -> np.ndarray:
    n = np.arange(dim)
    return np.array([math.perm(int(m), k) for m in n], dtype=float)


def ladder_residuals(params: SscsParams) -> dict[str, float]:
    """Vector-norm residuals of the three ladder relations at ``params``.

    The two-state relation is omitted when |eta, theta + pi> is degenerate.
    """
    space = params.space
    p, eta = params.twice_j, params.eta
    jm = op_jminus(space)
    comp = p - np.arange(space.dim)  # eigenvalues of 2j - N
    out = {}
    coherent = scs(space, eta)
    out["ladder_scs"] = float(np.linalg.norm(apply(jm, coherent) - eta * comp * coherent.amplitudes))
    state = sscs(space, params)
    lhs2 = jm.matrix @ apply(jm, state)
    rhs2 = eta**2 * comp * (comp - 1) * state.amplitudes
    out["ladder_sscs2"] = float(np.linalg.norm(lhs2 - rhs2))
    try:
        partner = sscs(space, params.shifted(PI))
    except DegenerateSuperpositionError:
        return out
    a = params.eta_abs2
    ratio = math.sqrt(_stable.theta_k(p, params.theta, a, flip=True) / _stable.theta_k(p, params.theta, a))
    rhs = eta * ratio * comp * partner.amplitudes
    out["ladder_sscs1"] = float(np.linalg.norm(apply(jm, state) - rhs))
    return out


def compare_point(report: VerificationReport, params: SscsParams) -> None:
    space = params.space
    state = sscs(space, params)
    probs = state.probabilities()
    n = np.arange(space.dim)
    N = op_number(space)
    jm = op_jminus(space)
    amps = state.amplitudes

    for lam in LAMBDAS:
        report.record(f"G({lam:g})", cf.generating_function(params, lam), float(np.sum(lam**n * probs)), params)
    for k in range(1, 5):
        report.record(f"F({k})", cf.factorial_moment(params, k), float(_falling_weights(space.dim, k) @ probs), params)
    ns = cf.n_moments(params)
    for k in range(1, 5):
        report.record(f"<N^{k}>", ns[k - 1], expectation(state, N**k).real, params)

    lowered = jm.matrix @ amps
    lowered2 = jm.matrix @ lowered
    pm = np.vdot(lowered, lowered).real
    try:
        g2 = cf.g2(params)
    except UndefinedCorrelationError:
        pass
    else:
        report.record("g2", g2, np.vdot(lowered2, lowered2).real / pm**2, params)

    report.record("<J->", cf.jminus_expect(params), np.vdot(amps, lowered), params)
    report.record("<J-^2>", cf.jminus2_expect(params), np.vdot(amps, lowered2), params)

    m = cf.cartesian_moments(params)
    ops = {"x": op_jx(space), "y": op_jy(space), "z": op_jz(space)}
    for axis, op in ops.items():
        report.record(f"<J{axis}>", getattr(m, f"j{axis}"), expectation(state, op).real, params)
        report.record(f"<J{axis}^2>", getattr(m, f"j{axis}2"), expectation(state, op @ op).real, params)

    closed = xi_xyz_closedform(params)
    for label, axis, value in (("xi_x^2", X_AXIS, closed[0]), ("xi_y^2", Y_AXIS, closed[1])):
        oracle = xi_squared_oracle(state, axis).xi2
        both_markers = isinstance(value, Marker) and isinstance(oracle, Marker)
        if both_markers:
            continue
        if isinstance(value, Marker) or isinstance(oracle, Marker):
            report.record(label, math.inf, 0.0, params)
        else:
            report.record(label, value, oracle, params)

    try:
        partner = sscs(space, params.shifted(PI))
    except DegenerateSuperpositionError:
        partner = None
    if partner is not None:
        report.record("cross", sscs_cross_overlap(params), np.vdot(amps, partner.amplitudes), params)
        report.record("cross_N", cf.gtilde_derivative(params), np.vdot(amps, n * partner.amplitudes), params)

    for name, residual in ladder_residuals(params).items():
        report.record_residual(name, residual, params)


def run_grid(grid: Grid, tolerance: float | None = None) -> VerificationReport:
    tol = grid.tolerance if tolerance is None else tolerance
    report = VerificationReport(tolerance=tol, abs_tolerance=tol / 10)
    for params in grid.params():
        try:
            compare_point(report, params)
        except DegenerateSuperpositionError:
            report.skipped += 1
            continue
        report.points += 1
    return report
