"""Command-line front end: figure-data sweeps, verification and state inspection.

Exit codes: 0 success, 1 verification failure, 2 usage error, 3 degenerate state.
"""

from __future__ import annotations

import argparse
import cmath
import csv
import io
import json
import math
import re
import shlex
import sys
from dataclasses import dataclass

import numpy as np

from . import __version__
from . import closedform as cf
from .errors import DegenerateSuperpositionError, NoCrossingError, UndefinedCorrelationError
from .squeezing import Marker, find_critical_eta, is_parity_state, mean_spin_direction, xi_xyz_closedform
from .states import SscsParams, sscs, sscs_cross_overlap
from .verification import GRID_PRESETS, run_grid

EXIT_OK, EXIT_VERIFY, EXIT_USAGE, EXIT_DEGENERATE = 0, 1, 2, 3

G2_COLUMNS = ["eta_abs", "theta", "twice_j", "g2"]
SQUEEZING_COLUMNS = ["eta_abs", "theta", "twice_j", "xi_x2", "xi_y2", "inv_xi_x2", "inv_xi_y2"]

_PI_TERM = re.compile(r"^\s*([+-]?\d*\.?\d*)\s*\*?\s*pi\s*(?:/\s*(\d*\.?\d+))?\s*$")


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(message)


def parse_angle(text: str) -> float:
    """Radians from ``0``, ``pi``, ``pi/2``, ``3pi/4``, ``-pi`` or a raw float."""
    m = _PI_TERM.match(text)
    if m:
        coeff, denom = m.groups()
        k = {"": 1.0, "+": 1.0, "-": -1.0}.get(coeff)
        k = float(coeff) if k is None else k
        return k * math.pi / (float(denom) if denom else 1.0)
    try:
        return float(text)
    except ValueError:
        raise UsageError(f"cannot parse angle {text!r}") from None


def parse_angles(text: str) -> list[float]:
    return [parse_angle(part) for part in text.split(",") if part.strip()]


def parse_eta(text: str) -> complex:
    """``r`` (real) or ``r@phi`` (polar, phi in radians or pi syntax)."""
    try:
        if "@" in text:
            r, phi = text.split("@", 1)
            return cmath.rect(float(r), parse_angle(phi))
        return complex(float(text))
    except (ValueError, UsageError):
        raise UsageError(f"cannot parse eta {text!r}; expected 'r' or 'r@phi'") from None


def fmt(value) -> str:
    """Round-trippable text for a number or marker."""
    if isinstance(value, Marker):
        return value.value
    if isinstance(value, (int, np.integer)) and not isinstance(value, bool):
        return str(int(value))
    value = float(value)
    if math.isnan(value):
        return "nan"
    if math.isinf(value):
        return "inf" if value > 0 else "-inf"
    return repr(value)


def inverse(value) -> float | Marker:
    if value is Marker.INF:
        return 0.0
    if value is Marker.DEGENERATE:
        return Marker.DEGENERATE
    return 1.0 / value


@dataclass(frozen=True)
class SweepConfig:
    twice_j: int
    theta_list: tuple[float, ...]
    eta_min: float
    eta_max: float
    steps: int
    eta_scale: str = "linear"
    output_format: str = "csv"
    output_path: str | None = None

    def validate(self) -> None:
        if self.twice_j < 0:
            raise UsageError("--twice-j must be non-negative")
        if self.steps < 2:
            raise UsageError("--steps must be at least 2")
        if not self.eta_min < self.eta_max:
            raise UsageError("--eta-min must be smaller than --eta-max")
        if self.eta_min < 0 or (self.eta_scale == "log" and self.eta_min <= 0):
            raise UsageError("--eta-min must be positive")
        if self.eta_min == 0 and any(math.cos(t) < 0 and abs(math.sin(t)) < 1e-12 for t in self.theta_list):
            raise UsageError("--eta-min must be > 0 when theta = pi is swept")
        if not self.theta_list:
            raise UsageError("--theta needs at least one angle")

    def etas(self) -> np.ndarray:
        if self.eta_scale == "log":
            return np.geomspace(self.eta_min, self.eta_max, self.steps)
        return np.linspace(self.eta_min, self.eta_max, self.steps)


def g2_rows(config: SweepConfig) -> list[list]:
    rows = []
    for theta in config.theta_list:
        for eta in config.etas():
            try:
                value = cf.g2(SscsParams(config.twice_j, float(eta), theta))
            except (DegenerateSuperpositionError, UndefinedCorrelationError):
                value = math.nan
            rows.append([float(eta), theta, config.twice_j, value])
    return rows


def squeezing_rows(config: SweepConfig) -> list[list]:
    rows = []
    for theta in config.theta_list:
        for eta in config.etas():
            xx, xy, _ = xi_xyz_closedform(SscsParams(config.twice_j, float(eta), theta))
            rows.append([float(eta), theta, config.twice_j, xx, xy, inverse(xx), inverse(xy)])
    return rows


def render(rows: list[list], columns: list[str], config: SweepConfig, generated_by: str) -> str:
    if config.output_format == "json":
        markers = [
            {"row": i, "column": columns[c], "token": fmt(v)}
            for i, row in enumerate(rows)
            for c, v in enumerate(row)
            if isinstance(v, Marker) or (isinstance(v, float) and not math.isfinite(v))
        ]
        doc = {
            "params": {
                "generated_by": generated_by,
                "twice_j": config.twice_j,
                "theta_list": list(config.theta_list),
                "eta_min": config.eta_min,
                "eta_max": config.eta_max,
                "steps": config.steps,
                "eta_scale": config.eta_scale,
                "columns": columns,
            },
            "rows": [
                [v if isinstance(v, (int, float)) and math.isfinite(v) else fmt(v) for v in row] for row in rows
            ],
            "markers": markers,
        }
        return json.dumps(doc, indent=1) + "\n"
    buf = io.StringIO()
    buf.write(f"# generated-by {generated_by}\n")
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(columns)
    for row in rows:
        writer.writerow([fmt(v) for v in row])
    return buf.getvalue()


def _emit(text: str, path: str | None) -> None:
    if path is None or path == "-":
        sys.stdout.write(text)
    else:
        with open(path, "w", encoding="utf-8", newline="") as fh:
            fh.write(text)


def _sweep_config(args) -> SweepConfig:
    config = SweepConfig(
        twice_j=args.twice_j,
        theta_list=tuple(parse_angles(args.theta)),
        eta_min=args.eta_min,
        eta_max=args.eta_max,
        steps=args.steps,
        eta_scale=args.eta_scale,
        output_format=args.format,
        output_path=args.out,
    )
    config.validate()
    return config


def cmd_g2_sweep(args, generated_by: str) -> int:
    config = _sweep_config(args)
    _emit(render(g2_rows(config), G2_COLUMNS, config, generated_by), config.output_path)
    return EXIT_OK


def cmd_squeezing_sweep(args, generated_by: str) -> int:
    config = _sweep_config(args)
    if not all(is_parity_state(t) for t in config.theta_list):
        raise UsageError("squeezing-sweep accepts only theta in {0, pi}")
    _emit(render(squeezing_rows(config), SQUEEZING_COLUMNS, config, generated_by), config.output_path)
    return EXIT_OK


def cmd_verify(args, generated_by: str) -> int:
    grid = GRID_PRESETS[args.grid_preset]
    report = run_grid(grid, args.tolerance)
    print("\n".join(report.lines()))
    return EXIT_OK if report.ok else EXIT_VERIFY


def _pair(z: complex) -> list[float]:
    return [float(z.real), float(z.imag)]


def state_info(params: SscsParams) -> dict:
    state = sscs(params.space, params)
    try:
        g2 = cf.g2(params)
    except UndefinedCorrelationError:
        g2 = None
    try:
        cross = _pair(sscs_cross_overlap(params))
    except DegenerateSuperpositionError:
        cross = None
    m = cf.cartesian_moments(params)
    direction = mean_spin_direction(state)
    xis = xi_xyz_closedform(params)
    return {
        "params": {
            "twice_j": params.twice_j,
            "eta": _pair(params.eta),
            "theta": params.theta,
        },
        "amplitudes": [_pair(a) for a in state.amplitudes],
        "n_moments": list(cf.n_moments(params)),
        "g2": g2,
        "mean_spin": list(m.mean_spin()),
        "mean_spin_direction": None if direction is None else list(direction),
        "xi2": {axis: (v.value if isinstance(v, Marker) else v) for axis, v in zip("xyz", xis)},
        "cross_overlap": cross,
    }


def cmd_state_info(args, generated_by: str) -> int:
    params = SscsParams(args.twice_j, parse_eta(args.eta), parse_angle(args.theta))
    try:
        doc = state_info(params)
    except DegenerateSuperpositionError as exc:
        print(json.dumps({"error": "degenerate-superposition", "message": str(exc)}))
        return EXIT_DEGENERATE
    print(json.dumps(doc, indent=1))
    return EXIT_OK


def cmd_critical_eta(args, generated_by: str) -> int:
    if args.twice_j % 2 != 1:
        raise UsageError("critical-eta needs half-integer j (odd --twice-j)")
    try:
        eta_c = find_critical_eta(args.twice_j, parse_angle(args.theta))
    except NoCrossingError as exc:
        print(str(exc), file=sys.stderr)
        return EXIT_VERIFY
    print(json.dumps({"twice_j": args.twice_j, "eta_c": eta_c}))
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="spincat", description=__doc__.splitlines()[0])
    parser.add_argument("--version", action="version", version=f"spincat {__version__}")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    def sweep_flags(p, default_theta):
        p.add_argument("--twice-j", type=int, required=True)
        p.add_argument("--theta", default=default_theta, help="comma list, e.g. 0,pi/2,pi")
        p.add_argument("--eta-min", type=float, default=0.05)
        p.add_argument("--eta-max", type=float, default=3.0)
        p.add_argument("--steps", type=int, default=120)
        p.add_argument("--eta-scale", choices=("linear", "log"), default="linear")
        p.add_argument("--format", choices=("csv", "json"), default="csv")
        p.add_argument("--out", default=None, help="output file (default: stdout)")

    p = sub.add_parser("g2-sweep", help="g2 versus |eta| for several theta")
    sweep_flags(p, "0,pi/2,pi")
    p.set_defaults(func=cmd_g2_sweep)

    p = sub.add_parser("squeezing-sweep", help="xi_x^2, xi_y^2 versus |eta| for even/odd cat states")
    sweep_flags(p, "0,pi")
    p.set_defaults(func=cmd_squeezing_sweep)

    p = sub.add_parser("verify", help="closed forms against the matrix oracle")
    p.add_argument("--grid-preset", choices=sorted(GRID_PRESETS), default="default")
    p.add_argument("--tolerance", type=float, default=None, help="relative tolerance (preset default)")
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("state-info", help="JSON summary of one cat state")
    p.add_argument("--twice-j", type=int, required=True)
    p.add_argument("--eta", default="1", help="'r' or 'r@phi'")
    p.add_argument("--theta", default="0")
    p.set_defaults(func=cmd_state_info)

    p = sub.add_parser("critical-eta", help="critical |eta| of the odd cat state, half-integer j")
    p.add_argument("--twice-j", type=int, required=True)
    p.add_argument("--theta", default="pi")
    p.set_defaults(func=cmd_critical_eta)
    return parser


def main(argv: list[str] | None = None) -> int:
    argv = sys.argv[1:] if argv is None else list(argv)
    generated_by = f"spincat {__version__} {shlex.join(argv)}"
    try:
        args = build_parser().parse_args(argv)
        if getattr(args, "tolerance", None) is not None and args.tolerance <= 0:
            raise UsageError("--tolerance must be positive")
        return args.func(args, generated_by)
    except UsageError as exc:
        print(f"spincat: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except ValueError as exc:
        print(f"spincat: error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    raise SystemExit(main())
