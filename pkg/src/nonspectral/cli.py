"""Command-line interface.

Exit codes: 0 when the command's assertion holds (or it has none), 1 when a
mathematical assertion fails, 2 on bad input or a violated precondition.
"""
from __future__ import annotations

import argparse
import sys
import time
from contextlib import contextmanager
from pathlib import Path

import numpy as np

from . import __version__
from .classify import classify, is_expanding
from .errors import NonSpectralError
from .exact import IntMatrix2, RationalPoint
from .formats import InputError, dumps, load_digits, parse_matrix, point_from_json, to_jsonable
from .mask import check_hypothesis, exact_zero_set, zeros_in_Ep, zeros_three_digit
from .muhat import GridSpec, auto_truncation, muhat, write_csv
from .ortho import (
    construct_lambda,
    default_candidates,
    lifted_grid_candidates,
    max_clique_orthogonal,
)
from .reproduce import SUITES, construct_full_orbit_witness

EXIT_OK, EXIT_FAIL, EXIT_INPUT = 0, 1, 2


class Timer:
    def __init__(self):
        self.phases: dict[str, float] = {}

    @contextmanager
    def phase(self, name: str):
        t0 = time.perf_counter()
        try:
            yield
        finally:
            self.phases[name] = round(time.perf_counter() - t0, 6)


def _matrix_args(args) -> tuple[IntMatrix2, IntMatrix2]:
    given = parse_matrix(args.matrix)
    M = given.transpose() if args.as_mstar else given
    return M, M.transpose()


def cmd_zeros(args, timer: Timer):
    D = load_digits(args.digits)
    with timer.phase("ep_scan"):
        scan = zeros_in_Ep(D, args.p)
    results = {"ep_zeros": scan.points, "ep_zero_count": len(scan)}
    if len(D) == 3:
        with timer.phase("three_digit"):
            results["three_digit"] = zeros_three_digit(D)
    elif (full := exact_zero_set(D)) is not None:
        results["exact_zero_set"] = full
    with timer.phase("hypothesis"):
        results["hypothesis"] = check_hypothesis(D, args.p).verdict
    return {"digits": D, "p": args.p}, results, None


def cmd_classify(args, timer: Timer):
    M, mstar = _matrix_args(args)
    D = load_digits(args.digits)
    with timer.phase("classify"):
        cls = classify(M, D, args.p)
    results = {
        "class": cls.klass,
        "orbit_union": cls.orbit_union,
        "orbit_size": len(cls.orbit_union),
        "zeros": cls.zeros,
        "p_tilde": cls.p_tilde,
        "nstar": cls.nstar,
    }
    return {"m": M, "mstar": mstar, "digits": D, "p": args.p}, results, None


def cmd_construct(args, timer: Timer):
    with timer.phase("construct"):
        ok, payload = construct_full_orbit_witness(args.p)
    return {"p": args.p}, payload, ok


def _load_points(path: str) -> list[RationalPoint]:
    import json

    try:
        raw = json.loads(Path(path).read_text())
        return [point_from_json(item) for item in raw]
    except (OSError, ValueError, TypeError, IndexError) as exc:
        raise InputError(f"{path}: expected a JSON array of [x, y] rationals ('n/d' strings allowed)") from exc


def cmd_orthoset(args, timer: Timer):
    M, mstar = _matrix_args(args)
    D = load_digits(args.digits)
    inputs = {"m": M, "mstar": mstar, "digits": D, "p": args.p, "mode": args.mode}
    if args.mode == "construct":
        with timer.phase("construct"):
            out = construct_lambda(M, D, args.p)
        return inputs, {"frequencies": out.frequencies, "size": len(out), "certified": out.certified,
                        "failures": out.failures}, out.certified
    # clique mode
    with timer.phase("classify"):
        cls = classify(M, D, args.p)
    if args.candidates == "default":
        cands = default_candidates(M, D, args.p)
    elif args.candidates == "lifted-grid":
        cands = lifted_grid_candidates(M, args.p)
    else:
        cands = _load_points(args.candidates)
    inputs["candidates"] = args.candidates
    with timer.phase("clique"):
        res = max_clique_orthogonal(M, D, cands, cap=args.cap)
    results = {
        "class": cls.klass,
        "nstar": cls.nstar,
        "candidate_count": res.candidates,
        "clique_size": res.size,
        "witness": res.witness.frequencies,
        "certified": res.witness.certified,
        "note": "empirical lower bound over the candidate set",
    }
    ok = res.witness.certified and res.size <= args.p * args.p
    return inputs, results, ok


def cmd_reproduce(args, timer: Timer):
    suite = SUITES[args.suite]
    kwargs = {}
    if args.p:
        if args.suite not in ("prop27", "prop26"):
            raise InputError("--p applies only to the prop27 and prop26 suites")
        kwargs["ps"] = tuple(args.p)
    if args.suite == "sierpinski48" and args.no_lift:
        kwargs["lift"] = False
    with timer.phase(args.suite):
        ok, payload = suite(**kwargs)
    return {"suite": args.suite, **kwargs}, payload, ok


def cmd_muhat(args, timer: Timer):
    M, mstar = _matrix_args(args)
    D = load_digits(args.digits)
    if not is_expanding(M):
        raise NonSpectralError("matrix is not expanding")
    grid = GridSpec.parse(args.grid)
    pts = grid.points()
    max_norm = float(np.max(np.linalg.norm(pts, axis=1))) if len(pts) else 0.0
    if args.J == "auto":
        trunc = auto_truncation(M, D, max_norm, args.tol)
        J, tail = trunc.J, trunc.per_factor_bound
    else:
        try:
            J, tail = int(args.J), None
        except ValueError as exc:
            raise InputError(f"--J must be a positive integer or 'auto', got {args.J!r}") from exc
        if J < 1:
            raise InputError("--J must be >= 1")
    with timer.phase("evaluate"):
        vals = muhat(M, D, pts, J)
    if args.csv:
        with open(args.csv, "w", newline="") as fh:
            write_csv(fh, pts, vals)
    else:
        write_csv(sys.stdout, pts, vals)
    results = {
        "J": J,
        "per_factor_tail_bound": tail,
        "points": len(pts),
        "max_abs": float(np.max(np.abs(vals))),
        "min_abs": float(np.min(np.abs(vals))),
        "csv": args.csv,
    }
    return {"m": M, "mstar": mstar, "digits": D, "grid": args.grid, "J": args.J}, results, None


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="nonspectral",
        description="Zero sets, classification and orthogonal exponentials for planar self-affine measures.",
    )
    parser.add_argument("--version", action="version", version=__version__)
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--json", action="store_true", help="print the full JSON report")
    common.add_argument("--out", metavar="FILE", help="also write the JSON report to FILE")

    def matrix_opts(sp):
        sp.add_argument("--matrix", required=True, help='"a,b;d,c" (row-major) or [[a,b],[d,c]]')
        sp.add_argument("--as-mstar", action="store_true", help="the given matrix is M* (the transpose of M)")

    sub = parser.add_subparsers(dest="command", required=True)

    sp = sub.add_parser("zeros", parents=[common], help="mask zeros on the p-grid and hypothesis check")
    sp.add_argument("--digits", required=True, metavar="FILE")
    sp.add_argument("--p", type=int, required=True)
    sp.set_defaults(func=cmd_zeros)

    sp = sub.add_parser("classify", parents=[common], help="class 1 / class 2 and the n* verdict")
    matrix_opts(sp)
    sp.add_argument("--digits", required=True, metavar="FILE")
    sp.add_argument("--p", type=int, required=True)
    sp.set_defaults(func=cmd_classify)

    sp = sub.add_parser("construct", parents=[common], help="expanding matrix whose orbits fill the p-grid")
    sp.add_argument("--p", type=int, required=True)
    sp.set_defaults(func=cmd_construct)

    sp = sub.add_parser("orthoset", parents=[common], help="certified orthogonal frequency sets")
    matrix_opts(sp)
    sp.add_argument("--digits", required=True, metavar="FILE")
    sp.add_argument("--p", type=int, required=True)
    sp.add_argument("--mode", choices=["construct", "clique"], default="construct")
    sp.add_argument("--candidates", default="default",
                    help="'default', 'lifted-grid', or a JSON file of [x, y] rationals")
    sp.add_argument("--cap", type=int, default=64, help="maximum candidate count for clique mode")
    sp.set_defaults(func=cmd_orthoset)

    sp = sub.add_parser("reproduce", parents=[common], help="rerun a reference table or worked example")
    sp.add_argument("suite", choices=sorted(SUITES))
    sp.add_argument("--p", type=int, action="append", help="restrict prop26/prop27 to these p (repeatable)")
    sp.add_argument("--no-lift", action="store_true", help="sierpinski48: skip the expanding-lift cross-check")
    sp.set_defaults(func=cmd_reproduce)

    sp = sub.add_parser("muhat", parents=[common], help="numeric Fourier transform on a grid, as CSV")
    matrix_opts(sp)
    sp.add_argument("--digits", required=True, metavar="FILE")
    sp.add_argument("--grid", required=True, help="x0:x1:nx,y0:y1:ny")
    sp.add_argument("--J", default="auto", help="truncation depth or 'auto'")
    sp.add_argument("--tol", type=float, default=1e-13, help="per-factor tail bound for --J auto")
    sp.add_argument("--csv", metavar="FILE", help="CSV destination (default: stdout)")
    sp.set_defaults(func=cmd_muhat)
    return parser


def _summary(report: dict) -> str:
    lines = [f"command: {report['command']}"]
    for key, val in report["results"].items():
        if isinstance(val, list) and len(val) > 12:
            lines.append(f"{key}: [{len(val)} items]")
        elif len(str(val)) > 160:
            lines.append(f"{key}: ({type(val).__name__}; use --json for details)")
        else:
            lines.append(f"{key}: {val}")
    if report["ok"] is not None:
        lines.append("assertion: " + ("PASS" if report["ok"] else "FAIL"))
    return "\n".join(lines)


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    timer = Timer()
    try:
        inputs, results, ok = args.func(args, timer)
    except (NonSpectralError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    report = to_jsonable(
        {"command": args.command, "inputs": inputs, "results": results, "timings": timer.phases, "ok": ok}
    )
    text = dumps(report)
    if args.out:
        Path(args.out).write_text(text + "\n")
    if args.json:
        print(text)
    elif args.command != "muhat" or args.csv:
        print(_summary(report))
    return EXIT_FAIL if ok is False else EXIT_OK


if __name__ == "__main__":
    sys.exit(main())
