"""Command-line front end: hopf-tensegrity {analyze,sweep,verify,persistence,torsion,trajectory}.

Exit codes: 0 success, 1 verification failure, 2 usage error. Inputs written
as integers or p/q run the exact pipeline; decimals run the numeric one.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import sys
from fractions import Fraction
from pathlib import Path

from . import __version__, elliptic, linking, trajectory
from .errors import DegenerateConfigurationError, PoleError
from .spectral import point_on_branch
from .tensegrity import (
    CABLE_C1,
    CABLE_C2,
    STRUT,
    edge_length,
    equilibrium_residual,
    export_geometry,
    fmt_float,
    realize,
    scalar_json,
)
from .verify import run_all

EXIT_OK, EXIT_FAIL, EXIT_USAGE = 0, 1, 2
DEFAULT_TOL = 1e-9


class UsageError(Exception):
    pass


def parse_scalar(text: str):
    """Return (value, kind) with kind in {"integer", "rational", "decimal"}."""
    t = text.strip()
    try:
        if "/" in t:
            return Fraction(t), "rational"
        if any(ch in t for ch in ".eE"):
            return float(t), "decimal"
        return Fraction(int(t)), "integer"
    except (ValueError, ZeroDivisionError):
        raise UsageError(f"cannot parse {text!r} as a rational p/q or a decimal") from None


def exact_mode(*kinds) -> bool:
    kinds = set(kinds) - {"integer"}
    if len(kinds) > 1:
        raise UsageError("rational and decimal inputs cannot be mixed in one invocation")
    return "decimal" not in kinds


def csv_scalar(v) -> str:
    if isinstance(v, (int, Fraction)):
        return str(Fraction(v))
    return fmt_float(v)


def dump_json(doc) -> str:
    return json.dumps(doc, indent=2) + "\n"


def emit(text: str | bytes, out: str | None):
    data = text.encode() if isinstance(text, str) else text
    if out is None:
        sys.stdout.write(data.decode())
    else:
        path = Path(out)
        path.parent.mkdir(parents=True, exist_ok=True)
        path.write_bytes(data)


# ----------------------------------------------------------------- commands
def analyze_point(x) -> dict:
    pt = point_on_branch(x)
    fw = realize(pt)
    report = {
        "x": scalar_json(pt.x),
        "y": scalar_json(pt.y),
        "exact": pt.exact,
        "normalization": fw.normalization,
        "nodes": [[scalar_json(c) for c in p] for p in fw.nodes],
        "edge_lengths": {kind: [edge_length(fw, e) for e in fw.edges_of(kind)] for kind in (STRUT, CABLE_C1, CABLE_C2)},
        "equilibrium_residual": scalar_json(equilibrium_residual(fw)),
    }
    try:
        ip = linking.intersection_params_at(pt)
        report.update(tau=scalar_json(ip.tau), r1=scalar_json(ip.r1), r2=scalar_json(ip.r2), classification=ip.classification)
    except PoleError as exc:
        report.update(tau=None, r1=None, r2=None, classification=f"pole of {exc.denominator}")
    try:
        m = linking.linking_matrix(fw)
        report["linking"] = m.to_json()
        report["linking_margin"] = float(m.margin)
    except DegenerateConfigurationError as exc:
        report["linking"] = None
        report["linking_margin"] = str(exc)
    return report


def cmd_analyze(args) -> int:
    if args.x is None:
        raise UsageError("analyze needs --x")
    x, kind = parse_scalar(args.x)
    exact_mode(kind)
    if not 0 < x < 1:
        raise UsageError(f"--x must lie in the open interval (0, 1), got {args.x}")
    if args.format == "obj":
        emit(export_geometry(realize(x), "obj"), args.out)
        return EXIT_OK
    report = analyze_point(x)
    emit(dump_json(report), args.out)
    res = report["equilibrium_residual"]
    return EXIT_OK if float(Fraction(res) if isinstance(res, str) else res) < args.tol else EXIT_FAIL


def sweep_values(lo, hi, steps, exact):
    if steps < 2:
        raise UsageError("--steps must be at least 2")
    if exact:
        return [lo + (hi - lo) * Fraction(k, steps - 1) for k in range(steps)]
    lo, hi = float(lo), float(hi)
    return [lo + (hi - lo) * k / (steps - 1) for k in range(steps)]


def summary_row(x) -> list:
    pt = point_on_branch(x)
    fw = realize(pt)
    lengths = [edge_length(fw, fw.edges_of(kind)[0]) for kind in (STRUT, CABLE_C1, CABLE_C2)]
    try:
        ip = linking.intersection_params_at(pt)
        params = [csv_scalar(ip.tau), csv_scalar(ip.r1), csv_scalar(ip.r2), ip.classification]
    except PoleError:
        params = ["", "", "", "pole"]
    try:
        verdict = "hopf" if linking.linking_matrix(fw).all_hopf() else "not-hopf"
    except DegenerateConfigurationError:
        verdict = "degenerate"
    return fw, [csv_scalar(pt.x), csv_scalar(pt.y)] + [fmt_float(v) for v in lengths] + params + [verdict]


def cmd_sweep(args) -> int:
    if args.x is not None:
        raise UsageError("sweep takes --from/--to/--steps, not --x")
    lo, k1 = parse_scalar(args.from_)
    hi, k2 = parse_scalar(args.to)
    exact = exact_mode(k1, k2)
    if not 0 <= lo < hi <= 1:
        raise UsageError("sweep needs 0 <= from < to <= 1")
    if args.out is None:
        raise UsageError("sweep needs --out DIRECTORY")
    fmt = args.format or "obj"
    if fmt not in ("obj", "json"):
        raise UsageError("sweep frames are obj or json")
    out = Path(args.out)
    out.mkdir(parents=True, exist_ok=True)
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(["frame", "x", "y", "strut_length", "cable_c1_length", "cable_c2_length", "tau", "r1", "r2", "classification", "linking"])
    for k, x in enumerate(sweep_values(lo, hi, args.steps, exact)):
        fw, row = summary_row(x)
        (out / f"frame_{k:03d}.{fmt}").write_bytes(export_geometry(fw, fmt))
        w.writerow([k] + row)
    (out / "summary.csv").write_text(buf.getvalue())
    return EXIT_OK


def cmd_verify(args) -> int:
    report = run_all()
    emit(dump_json(report), args.out)
    return EXIT_OK if report["verdict"] else EXIT_FAIL


def cmd_persistence(args) -> int:
    report = linking.persistence_certificate()
    doc = report.to_json()
    doc["remark_check"] = linking.remark_check(report)
    emit(dump_json(doc), args.out)
    return EXIT_OK if report.verdict else EXIT_FAIL


def cmd_torsion(args) -> int:
    elliptic.verify_birational_identity()
    doc = elliptic.torsion_subgroup().to_json()
    doc["invariants"] = elliptic.model_invariants_check()
    emit(dump_json(doc), args.out)
    return EXIT_OK if tuple(doc["structure"]) == (2, 6) else EXIT_FAIL


def cmd_trajectory(args) -> int:
    samples = trajectory.trajectory_samples(args.steps)
    worst = max(trajectory.k_residual(t.u, t.v) for t in samples)
    if (args.format or "csv") == "json":
        emit(dump_json(trajectory.trajectory_report(args.steps)), args.out)
    else:
        emit(trajectory.samples_csv(samples), args.out)
    return EXIT_OK if worst < args.tol else EXIT_FAIL


COMMANDS = {
    "analyze": cmd_analyze,
    "sweep": cmd_sweep,
    "verify": cmd_verify,
    "persistence": cmd_persistence,
    "torsion": cmd_torsion,
    "trajectory": cmd_trajectory,
}


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        raise UsageError(message)


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="hopf-tensegrity", description=__doc__.splitlines()[0])
    parser.add_argument("--version", action="version", version=__version__)
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)
    for name in COMMANDS:
        p = sub.add_parser(name)
        p.add_argument("--x")
        p.add_argument("--from", dest="from_", default="0")
        p.add_argument("--to", default="1")
        p.add_argument("--steps", type=int, default=11 if name == "sweep" else 500)
        p.add_argument("--out")
        p.add_argument("--format", choices=("json", "obj", "csv", "text"))
        p.add_argument("--tol", type=float, default=DEFAULT_TOL)
    return parser


def main(argv=None) -> int:
    try:
        args = build_parser().parse_args(argv)
        if args.steps < 2:
            raise UsageError("--steps must be at least 2")
        return COMMANDS[args.command](args)
    except UsageError as exc:
        print(f"hopf-tensegrity: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except AssertionError as exc:
        print(f"hopf-tensegrity: verification failed: {exc}", file=sys.stderr)
        return EXIT_FAIL


if __name__ == "__main__":
    sys.exit(main())
