"""Command-line front end.

Subcommands: ``volume``, ``convert``, ``sweep``, ``verify``, ``extremal``.
Exit status is 0 on success, 1 on a numerical failure or a failed
verification, and 2 on a usage or domain error.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import math
import os
import sys
from fractions import Fraction

from . import minkowski as mk
from . import seidel as sd
from . import tetra as tt
from . import verify as vf
from .errors import DeltaVertex, DomainError, IdealTetraError

EXIT_OK, EXIT_FAILURE, EXIT_USAGE = 0, 1, 2

RECORD_FIELDS = ("r", "s", "t", "c", "d", "alpha", "omega", "theta1", "theta2", "theta3", "volume")
CONVERT_FIELDS = RECORD_FIELDS[:7]
SWEEP_FIELDS = ("alpha", "omega", "volume")
EXTREMAL_FIELDS = (
    "argmin_per_r",
    "argmin_per_s",
    "argmin_per_t",
    "min_per",
    "argmin_det_r",
    "argmin_det_s",
    "argmin_det_t",
    "min_det",
    "n_outside",
    "min_det_outside",
)
# an --rst triple within this distance of summing to 1 is rescaled
RST_SUM_TOL = 1e-9


class Tolerances:
    """Classification tolerance for null vectors and arithmetic tolerance for ``S``."""

    def __init__(self, classify: float = mk.CLASSIFY_TOL, arith: float = sd.REGION_TOL):
        self.classify = classify
        self.arith = arith

    @classmethod
    def from_env(cls, value: str | None) -> Tolerances:
        """Parse ``IDEALTETRA_TOL``: a bare number, or ``classify=..,arith=..`` pairs."""
        tol = cls()
        if not value:
            return tol
        value = value.strip()
        if "=" not in value:
            tol.classify = _positive(value, "IDEALTETRA_TOL")
            return tol
        for item in value.split(","):
            key, _, num = item.partition("=")
            key = key.strip()
            if key not in ("classify", "arith"):
                raise DomainError(f"IDEALTETRA_TOL: unknown key {key!r} (use classify, arith)")
            setattr(tol, key, _positive(num, f"IDEALTETRA_TOL {key}"))
        return tol


def _positive(text: str, what: str) -> float:
    try:
        x = float(text)
    except ValueError:
        raise DomainError(f"{what}: {text!r} is not a number") from None
    if not (math.isfinite(x) and x > 0.0):
        raise DomainError(f"{what} must be a positive finite number")
    return x


def _floats(text: str, n: int, flag: str) -> list[float]:
    parts = [p for p in text.replace(" ", "").split(",") if p]
    if len(parts) != n:
        raise DomainError(f"{flag} expects {n} comma-separated numbers, got {len(parts)}")
    try:
        vals = [_number(p) for p in parts]
    except (ValueError, ZeroDivisionError):
        raise DomainError(f"{flag}: expected numbers or fractions like 7/16, got {text!r}") from None
    if not all(math.isfinite(v) for v in vals):
        raise DomainError(f"{flag}: values must be finite")
    return vals


def _number(text: str) -> float:
    """A decimal literal or a simple fraction such as ``-1/54``."""
    try:
        return float(text)
    except ValueError:
        return float(Fraction(text))


# -- formatting -------------------------------------------------------------------


def format_number(x):
    """15 significant digits, printed in the shortest form that round-trips."""
    if x is None:
        return None
    if isinstance(x, (bool, int)):
        return int(x)
    x = float(x)
    if not math.isfinite(x):
        return None
    x = float(format(x, ".15g"))
    return 0.0 if x == 0.0 else x


def render(rows: list[dict], fields, fmt: str) -> str:
    rows = [{k: format_number(row[k]) for k in fields} for row in rows]
    if fmt == "json":
        body = ",\n".join("  " + json.dumps(row) for row in rows)
        return "[\n" + body + "\n]\n" if rows else "[]\n"
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(fields)
    for row in rows:
        writer.writerow("" if row[k] is None else repr(row[k]) for k in fields)
    return buf.getvalue()


# -- record pipeline --------------------------------------------------------------


def coords_from_args(args, tol: Tolerances) -> tt.TriangleCoords:
    """Canonical ``(r, s, t)`` from whichever input form was given."""
    if args.rst is not None:
        r, s, t = _floats(args.rst, 3, "--rst")
        total = r + s + t
        if abs(total - 1.0) > RST_SUM_TOL:
            raise DomainError(f"--rst must sum to 1 (got {total!r})")
        return tt.canonicalize(tt.TriangleCoords.normalized(r, s, t))
    if args.seidel is not None:
        alpha, omega = _floats(args.seidel, 2, "--seidel")
        return tt.plane_to_delta(sd.invert(sd.SeidelCoords(alpha, omega), tol.arith))
    vals = _floats(args.vertices, 16, "--vertices")
    T = tt.LabelledTetrahedron([vals[4 * i : 4 * i + 4] for i in range(4)], tol.classify)
    return tt.canonicalize(tt.doubly_stochastic_coords(T, tol.classify))


def build_record(coords: tt.TriangleCoords, tol: Tolerances, with_volume: bool = True) -> dict:
    sc = sd.forward(coords)
    c, d = tt.delta_to_plane(coords)
    rec = {"r": coords.r, "s": coords.s, "t": coords.t, "c": c, "d": d}
    rec.update(alpha=sc.alpha, omega=sc.omega)
    if not with_volume:
        return rec
    try:
        th = tt.angles_from_coords(coords, area=math.sqrt(max(-sc.alpha, 0.0)))
        rec.update(theta1=th.theta1, theta2=th.theta2, theta3=th.theta3)
    except DeltaVertex:
        # no dihedral angles at a vertex of Delta
        rec.update(theta1=None, theta2=None, theta3=None)
    rec["volume"] = sd.volume(sc, tol.arith)
    return rec


# -- subcommands --------------------------------------------------------------------


def cmd_volume(args, tol: Tolerances) -> int:
    rec = build_record(coords_from_args(args, tol), tol)
    sys.stdout.write(render([rec], RECORD_FIELDS, args.format or "json"))
    return EXIT_OK


def cmd_convert(args, tol: Tolerances) -> int:
    rec = build_record(coords_from_args(args, tol), tol, with_volume=False)
    sys.stdout.write(render([rec], CONVERT_FIELDS, args.format or "json"))
    return EXIT_OK


def parse_fixed(text: str) -> tuple[str, float]:
    axis, sep, value = text.partition("=")
    axis = axis.strip()
    if not sep or axis not in ("alpha", "omega"):
        raise DomainError("--fixed expects alpha=<value> or omega=<value>")
    return axis, _floats(value, 1, "--fixed")[0]


def cmd_sweep(args, tol: Tolerances) -> int:
    axis, value = parse_fixed(args.fixed)
    if args.samples < 2:
        raise DomainError("--samples must be at least 2")
    xs, vols = sd.sweep(axis, value, args.samples)
    if axis == "omega":
        rows = [{"alpha": x, "omega": value, "volume": v} for x, v in zip(xs, vols)]
    else:
        rows = [{"alpha": value, "omega": x, "volume": v} for x, v in zip(xs, vols)]
    sys.stdout.write(render(rows, SWEEP_FIELDS, args.format or "csv"))
    return EXIT_OK


def cmd_verify(args, tol: Tolerances) -> int:
    reports = vf.run(args.suite, args.seed)
    lines = []
    for rep in reports:
        for chk in rep.checks:
            limit = "" if chk.limit is None else f"  limit={chk.limit:.3g}"
            status = "PASS" if chk.passed else "FAIL"
            lines.append(
                f"{status}  {rep.name}: {chk.name}  n={chk.count}  worst={chk.worst:.6g}{limit}"
            )
    ok = all(rep.passed for rep in reports)
    n_checks = sum(len(rep.checks) for rep in reports)
    n_failed = sum(not c.passed for rep in reports for c in rep.checks)
    lines.append(f"{'OK' if ok else 'FAILED'}  {n_checks - n_failed}/{n_checks} properties passed")
    sys.stdout.write("\n".join(lines) + "\n")
    return EXIT_OK if ok else EXIT_FAILURE


def cmd_extremal(args, tol: Tolerances) -> int:
    res = sd.extremal_scan(args.grid)
    row = {
        "argmin_per_r": res.argmin_per.r,
        "argmin_per_s": res.argmin_per.s,
        "argmin_per_t": res.argmin_per.t,
        "min_per": res.min_per,
        "argmin_det_r": res.argmin_det.r,
        "argmin_det_s": res.argmin_det.s,
        "argmin_det_t": res.argmin_det.t,
        "min_det": res.min_det,
        "n_outside": res.n_outside,
        "min_det_outside": res.min_det_outside,
    }
    sys.stdout.write(render([row], EXTREMAL_FIELDS, args.format or "json"))
    return EXIT_OK


# -- parser ---------------------------------------------------------------------------


def _add_input(p: argparse.ArgumentParser):
    g = p.add_mutually_exclusive_group(required=True)
    g.add_argument("--rst", metavar="R,S,T", help="doubly stochastic coordinates summing to 1")
    g.add_argument("--seidel", metavar="ALPHA,OMEGA", help="determinant and sqrt of the permanent")
    g.add_argument("--vertices", metavar="X1,...,X16", help="four null vectors, row by row")


def _add_common(p: argparse.ArgumentParser):
    p.add_argument("--format", choices=("csv", "json"), default=None)
    p.add_argument("--tol", type=float, default=None, help="null-vector classification tolerance")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="idealtetra", description="Volumes and coordinates of ideal hyperbolic tetrahedra."
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("volume", help="coordinates, dihedral angles and volume of one tetrahedron")
    _add_input(p)
    _add_common(p)
    p.set_defaults(func=cmd_volume)

    p = sub.add_parser("convert", help="coordinates only")
    _add_input(p)
    _add_common(p)
    p.set_defaults(func=cmd_convert)

    p = sub.add_parser("sweep", help="volume along a line of constant alpha or omega")
    p.add_argument("--fixed", required=True, metavar="AXIS=VALUE")
    p.add_argument("--samples", type=int, default=50)
    _add_common(p)
    p.set_defaults(func=cmd_sweep)

    p = sub.add_parser("verify", help="run invariant suites")
    p.add_argument("suite", nargs="?", default="all", choices=vf.SUITES + ("all",))
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--tol", type=float, default=None)
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("extremal", help="minima of permanent and determinant")
    p.add_argument("--grid", type=int, default=400)
    _add_common(p)
    p.set_defaults(func=cmd_extremal)
    return parser


_VALUE_FLAGS = ("--rst", "--seidel", "--vertices", "--fixed")


def _join_negative_values(argv: list[str]) -> list[str]:
    # argparse reads "--seidel -0.05,0.34" as two flags; glue such values on
    out, i = [], 0
    while i < len(argv):
        if argv[i] in _VALUE_FLAGS and i + 1 < len(argv) and argv[i + 1].startswith("-"):
            out.append(f"{argv[i]}={argv[i + 1]}")
            i += 2
        else:
            out.append(argv[i])
            i += 1
    return out


def main(argv=None) -> int:
    parser = build_parser()
    argv = sys.argv[1:] if argv is None else list(argv)
    args = parser.parse_args(_join_negative_values(argv))
    try:
        tol = Tolerances.from_env(os.environ.get("IDEALTETRA_TOL"))
        if args.tol is not None:
            tol.classify = _positive(repr(args.tol), "--tol")
        return args.func(args, tol)
    except DomainError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except (IdealTetraError, ArithmeticError) as exc:
        print(f"numerical failure: {exc}", file=sys.stderr)
        return EXIT_FAILURE


if __name__ == "__main__":
    raise SystemExit(main())
