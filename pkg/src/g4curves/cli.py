"""Command-line front end.

Usage::

    g4curves frenet --input curves.txt [--output frame.csv] [--format csv|json]
    g4curves mannheim-check --input curves.txt [--tol 1e-8]
    g4curves mannheim-mate --input curves.txt [--gamma G] [--output mate.csv]
    g4curves theorem32 --input curves.txt
    g4curves invariance --input curves.txt [--motion a,b,g,v,d1,d2,d3,a,b,c,d | --seed N]
    g4curves distance x1 x2 x3 x4  y1 y2 y3 y4

Exit status: 0 all verdicts pass, 1 a verdict failed, 2 input or usage error.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import math
import os
import sys
import tempfile
from pathlib import Path

import numpy as np

from .core import GalileanMotion, GPoint4, g_distance
from .curve import Curve, load_curve_spec
from .errors import G4Error
from .frenet import frenet_grid, invariance_check
from .mannheim import (CONDITION_TOL, STATUS_FAIL, STATUS_MATE_DEGENERATE, STATUS_PASS,
                       SUITE_TOL, ConditionNotSatisfied, check_condition, mannheim_mate,
                       theorem_3_2_suite, verify_mate_tangent, verify_normal_plane)

EXIT_OK = 0
EXIT_FAIL = 1
EXIT_USAGE = 2

FRENET_COLUMNS = ["curve", "s", "t2", "t3", "t4", "n2", "n3", "n4", "b2", "b3", "b4",
                  "e2", "e3", "e4", "kappa", "tau", "sigma", "degenerate"]
MATE_COLUMNS = ["curve", "s", "x1", "x2", "x3", "x4", "v1", "v2", "v3", "v4", "degenerate"]


class UsageError(Exception):
    pass


def fmt(x) -> str:
    """17 significant digits; ``None`` and non-finite values become empty."""
    if x is None:
        return ""
    x = float(x)
    if not math.isfinite(x):
        return ""
    return f"{x:.17g}"


def to_json(obj, indent: int = 2, _level: int = 0) -> str:
    """JSON text with floats at 17 significant digits, keys in insertion order."""
    pad = " " * (indent * (_level + 1))
    end = " " * (indent * _level)
    if obj is None or isinstance(obj, bool):
        return json.dumps(obj)
    if isinstance(obj, (int, np.integer)):
        return str(int(obj))
    if isinstance(obj, (float, np.floating)):
        return fmt(obj) or "null"
    if isinstance(obj, str):
        return json.dumps(obj, ensure_ascii=False)
    if isinstance(obj, dict):
        if not obj:
            return "{}"
        items = [f"{pad}{json.dumps(str(k), ensure_ascii=False)}: {to_json(v, indent, _level + 1)}"
                 for k, v in obj.items()]
        return "{\n" + ",\n".join(items) + "\n" + end + "}"
    if isinstance(obj, (list, tuple)):
        if not obj:
            return "[]"
        items = [pad + to_json(v, indent, _level + 1) for v in obj]
        return "[\n" + ",\n".join(items) + "\n" + end + "]"
    raise TypeError(f"cannot serialize {type(obj).__name__}")


def write_output(text: str, path: str | None) -> None:
    """Write to ``path`` atomically (temp file + rename), or to stdout."""
    if path is None or path == "-":
        sys.stdout.write(text)
        return
    target = Path(path)
    fd, tmp = tempfile.mkstemp(dir=target.parent or ".", prefix=f".{target.name}.")
    try:
        with os.fdopen(fd, "w", encoding="utf-8", newline="\n") as fh:
            fh.write(text)
        os.replace(tmp, target)
    except BaseException:
        if os.path.exists(tmp):
            os.unlink(tmp)
        raise


def _csv(columns: list[str], rows: list[list]) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(columns)
    w.writerows(rows)
    return buf.getvalue()


def _vec(v, n: int = 3) -> list:
    return list(v.spatial) if v is not None else [None] * n


def read_curves(path: str) -> list[Curve]:
    try:
        text = Path(path).read_text(encoding="utf-8")
    except OSError as err:
        raise UsageError(f"cannot read {path}: {err.strerror or err}") from None
    return load_curve_spec(text)


# --------------------------------------------------------------------------
# subcommands; each returns (exit status, text)

def cmd_frenet(args) -> tuple[int, str]:
    records = []
    for c in read_curves(args.input):
        for fd in frenet_grid(c):
            records.append((c.name, fd))
    if args.format == "json":
        data = [{
            "curve": name, "s": fd.s,
            "t": list(fd.t), "n": list(fd.n) if fd.n else None,
            "b": list(fd.b) if fd.b else None, "e": list(fd.e) if fd.e else None,
            "kappa": fd.kappa, "tau": fd.tau, "sigma": fd.sigma,
            "degenerate": fd.degenerate,
        } for name, fd in records]
        return EXIT_OK, to_json(data) + "\n"
    rows = []
    for name, fd in records:
        vals = [fd.s, *_vec(fd.t), *_vec(fd.n), *_vec(fd.b), *_vec(fd.e),
                fd.kappa, fd.tau, fd.sigma]
        rows.append([name] + [fmt(v) for v in vals] + [fd.degenerate or ""])
    return EXIT_OK, _csv(FRENET_COLUMNS, rows)


def cmd_mannheim_check(args) -> tuple[int, str]:
    reports = [check_condition(c, tol=args.tol or CONDITION_TOL) for c in read_curves(args.input)]
    status = EXIT_OK if all(r.is_mannheim for r in reports) else EXIT_FAIL
    return status, to_json([r.to_dict() for r in reports]) + "\n"


def cmd_mannheim_mate(args) -> tuple[int, str]:
    tol = args.tol or SUITE_TOL
    rows = []
    diagnostics = []
    failed = False
    for c in read_curves(args.input):
        gamma = args.gamma if args.gamma is not None else check_condition(c).gamma_fit
        for m in mannheim_mate(c, gamma):
            rows.append([c.name] + [fmt(x) for x in [m.s, *_point(m.point), *_point(m.velocity)]]
                        + [m.degenerate or ""])
        tangent = verify_mate_tangent(c, gamma)
        plane = verify_normal_plane(c, gamma)
        sups = {
            "speed_defect_sup": _sup(d.speed_defect for d in tangent),
            "tangent_residual_sup": _sup(d.tangent_residual for d in tangent),
            "normal_component_sup": _sup(d.normal_component for d in tangent),
            "n_coefficient_sup": _sup(d.n_coefficient for d in plane),
            "decomposition_sup": _sup(d.decomposition for d in plane),
        }
        failed |= any(sups[k] > tol for k in ("speed_defect_sup", "tangent_residual_sup",
                                               "normal_component_sup"))
        diagnostics.append({"curve": c.name, "gamma": gamma, **sups,
                            "mate_degenerate_count": sum(d.mate_degenerate for d in plane)})
    status = EXIT_FAIL if failed else EXIT_OK
    if args.format == "json":
        samples = [dict(zip(MATE_COLUMNS, r)) for r in rows]
        return status, to_json({"samples": samples, "diagnostics": diagnostics}) + "\n"
    diag_text = to_json(diagnostics) + "\n"
    if args.output and args.output != "-":
        write_output(diag_text, args.diagnostics or args.output + ".json")
    else:
        sys.stderr.write(diag_text)
    return status, _csv(MATE_COLUMNS, rows)


def _point(p) -> list:
    return list(p) if p is not None else [None] * 4


def _sup(values) -> float:
    vals = [v for v in values if v is not None]
    return max(vals) if vals else 0.0


def cmd_theorem32(args) -> tuple[int, str]:
    out = []
    status = EXIT_OK
    for c in read_curves(args.input):
        try:
            r = theorem_3_2_suite(c, tol=args.tol or SUITE_TOL)
            out.append(r.to_dict())
            if r.status not in (STATUS_PASS, STATUS_MATE_DEGENERATE):
                status = EXIT_FAIL
        except ConditionNotSatisfied as err:
            out.append({"curve": c.name, "status": STATUS_FAIL, "reason": str(err)})
            status = EXIT_FAIL
    return status, to_json(out) + "\n"


def cmd_invariance(args) -> tuple[int, str]:
    tol = args.tol or 1e-8
    if args.motion:
        motion = GalileanMotion.from_sequence(args.motion.split(","))
    else:
        motion = GalileanMotion.random(np.random.default_rng(args.seed))
    out = []
    ok = True
    for c in read_curves(args.input):
        recs = [invariance_check(c, motion, s) for s in c.domain.grid()]
        summary = {
            "curve": c.name,
            "d_kappa_sup": max(r.d_kappa for r in recs),
            "d_tau_sup": max(r.d_tau for r in recs),
            "d_sigma_sup": max(r.d_sigma for r in recs),
            "d_n_sup": max(r.d_n for r in recs),
            "d_b_sup": max(r.d_b for r in recs),
            "d_e_sup": max(r.d_e for r in recs),
        }
        summary["invariant"] = all(v <= tol for k, v in summary.items() if k != "curve")
        ok &= summary["invariant"]
        out.append(summary)
    doc = {"motion": dict(zip(["alpha", "beta", "gamma", "v", "d1", "d2", "d3",
                               "a", "b", "c", "d"], motion.as_sequence())),
           "seed": None if args.motion else args.seed,
           "tolerance": tol,
           "curves": out}
    return (EXIT_OK if ok else EXIT_FAIL), to_json(doc) + "\n"


def cmd_distance(args) -> tuple[int, str]:
    if len(args.coords) != 8:
        raise UsageError(f"distance needs 8 numbers, got {len(args.coords)}")
    p = GPoint4(*args.coords[:4])
    q = GPoint4(*args.coords[4:])
    return EXIT_OK, fmt(g_distance(p, q)) + "\n"


COMMANDS = {
    "frenet": cmd_frenet,
    "mannheim-check": cmd_mannheim_check,
    "mannheim-mate": cmd_mannheim_mate,
    "theorem32": cmd_theorem32,
    "invariance": cmd_invariance,
    "distance": cmd_distance,
}


def _positive(text: str) -> float:
    x = float(text)
    if not x > 0:
        raise argparse.ArgumentTypeError("tolerance must be positive")
    return x


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="g4curves",
                                     description="Curves, Frenet frames and Mannheim mates in G4.")
    sub = parser.add_subparsers(dest="command", required=True)
    for name in ("frenet", "mannheim-check", "mannheim-mate", "theorem32", "invariance"):
        p = sub.add_parser(name)
        p.add_argument("--input", required=True, help="curve-spec file")
        p.add_argument("--output", help="output path (default: stdout)")
        p.add_argument("--format", choices=("csv", "json"),
                       default="csv" if name in ("frenet", "mannheim-mate") else "json")
        p.add_argument("--tol", type=_positive)
        p.add_argument("--seed", type=int, default=0)
        if name == "invariance":
            p.add_argument("--motion", help="alpha,beta,gamma,v,d1,d2,d3,a,b,c,d")
        if name == "mannheim-mate":
            p.add_argument("--gamma", type=float, help="offset constant (default: fitted)")
            p.add_argument("--diagnostics", help="path for the JSON diagnostics")
    p = sub.add_parser("distance", help="Galilean distance of two points")
    p.add_argument("coords", nargs="*", type=float)
    p.add_argument("--output")
    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        status, text = COMMANDS[args.command](args)
        write_output(text, getattr(args, "output", None))
    except (UsageError, G4Error, ValueError) as err:
        print(f"g4curves: error: {err}", file=sys.stderr)
        return EXIT_USAGE
    return status


if __name__ == "__main__":
    sys.exit(main())
