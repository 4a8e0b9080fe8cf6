"""Command-line front end: ``gst forward|inverse|disc|verify|pairs``.

Exit codes
----------
0  success
1  ``verify``: at least one check failed
2  bad arguments, parse error or violated precondition
3  numerical failure (non-convergence, non-finite integrand)
4  a result that must be real had a large imaginary part

Output columns (CSV header order, JSON key order):

* forward: ``z_re, z_im, G_re, G_im, err_estimate``
* inverse: ``y, F, err_estimate, form``
* disc:    ``t, Delta, err_estimate``

Numbers are written with 17 significant digits. Rows always come out in
grid order, whether or not ``--jobs`` evaluates them in parallel.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import math
import sys
import warnings
from concurrent.futures import ProcessPoolExecutor

import numpy as np

from .catalog import PAIR_NAMES, parse_pair
from .errors import DomainError, GSTError, NonConvergence, ResidualImaginaryError
from .quadrature import NonConvergenceWarning, QuadConfig
from .transform import (
    SourceFunction,
    TransformParams,
    abel_inverse_from_delta,
    discontinuity,
    forward_gst,
    inverse_gst,
    inverse_gst_ibp,
    inverse_gst_zplane,
    stieltjes_disc_inverse,
)
from . import verify

EXIT_OK = 0
EXIT_CHECK_FAILED = 1
EXIT_USAGE = 2
EXIT_NUMERIC = 3
EXIT_IMAGINARY = 4

COLUMNS = {
    "forward": ("z_re", "z_im", "G_re", "G_im", "err_estimate"),
    "inverse": ("y", "F", "err_estimate", "form"),
    "disc": ("t", "Delta", "err_estimate"),
}
FORMS = ("eq9", "eq14", "eq15", "abel", "disc-rho1")

PAIR_HELP = {
    "power": ("nu,rho", "y**(nu-1)", "B(nu,rho-nu) z**(nu-rho)", "0 < nu < rho"),
    "point": ("t,rho", "delta(y-t)", "(t+z)**(-rho)", "t > 0"),
    "hyper": (
        "nu,lambda,rho",
        "y**(nu-1) (1+y)**(-lambda)",
        "B(nu,rho+lambda-nu) z**(nu-rho) 2F1(nu,lambda;rho+lambda;1-z)",
        "0 < nu < rho+lambda",
    ),
}


class UsageError(DomainError):
    """Bad command-line input (exit code 2)."""


# Argument parsing helpers.


def parse_grid(text: str) -> np.ndarray:
    """``start:stop:count[:log]`` or a single number."""
    parts = text.split(":")
    try:
        if len(parts) == 1:
            value = float(parts[0])
            if not math.isfinite(value):
                raise ValueError
            return np.array([value])
        if len(parts) not in (3, 4):
            raise ValueError
        start, stop, count = float(parts[0]), float(parts[1]), int(parts[2])
    except ValueError:
        raise UsageError(f"bad grid {text!r}; expected start:stop:count[:log]") from None
    spacing = parts[3] if len(parts) == 4 else "linear"
    if count < 1:
        raise UsageError("grid count must be >= 1")
    if not (math.isfinite(start) and math.isfinite(stop)):
        raise UsageError("grid bounds must be finite")
    if spacing == "log":
        if not (start > 0 and stop > 0):
            raise UsageError("log spacing needs a positive start and stop")
        return np.geomspace(start, stop, count)
    if spacing not in ("linear", "lin"):
        raise UsageError(f"unknown grid spacing {spacing!r}")
    return np.linspace(start, stop, count)


def parse_point(text: str) -> complex:
    try:
        return complex(text.replace(" ", "").replace("i", "j"))
    except ValueError:
        raise UsageError(f"bad complex point {text!r}") from None


def read_tabulated(path: str):
    """Two-column CSV ``y,F`` with a header row."""
    try:
        with open(path, newline="") as fh:
            rows = list(csv.reader(fh))
    except OSError as exc:
        raise UsageError(f"cannot read {path}: {exc}") from None
    if not rows or [c.strip().lower() for c in rows[0][:2]] != ["y", "f"]:
        raise UsageError(f"{path}: expected header 'y,F'")
    try:
        data = [(float(r[0]), float(r[1])) for r in rows[1:] if r and any(c.strip() for c in r)]
    except (ValueError, IndexError):
        raise UsageError(f"{path}: non-numeric row") from None
    if len(data) < 2:
        raise UsageError(f"{path}: need at least two rows")
    ys, fs = zip(*data)
    return ys, fs


def _quad_from(args) -> QuadConfig:
    kw = {}
    if args.rel_tol is not None:
        if not args.rel_tol > 0:
            raise UsageError("--rel-tol must be positive")
        kw["rel_tol"] = args.rel_tol
    return QuadConfig(best_effort=args.best_effort, **kw)


def _positive_grid(args, what: str) -> list[float]:
    if args.grid is None:
        raise UsageError(f"{args.command} needs --grid")
    pts = parse_grid(args.grid)
    if np.any(pts <= 0):
        raise UsageError(f"{what} grid must be positive")
    return [float(v) for v in pts]


# Per-point evaluation.  Top-level functions with plain arguments so that
# ProcessPoolExecutor can ship them.


def _build_source(job):
    if job.get("tabulated"):
        ys, fs = job["tabulated"]
        return SourceFunction.tabulated(ys, fs, job["alpha"]), job["rho"]
    pair = parse_pair(job["pair"], job["rho"])
    return pair.F, pair.rho


def _eval_forward(job, z):
    F, rho = _build_source(job)
    p = TransformParams(rho, job["quad"])
    value, res = forward_gst(F, p, z, full_output=True)
    value = complex(value)
    return (z.real, z.imag, value.real, value.imag, float(res.err_estimate))


def _eval_inverse(job, y):
    pair = parse_pair(job["pair"], job["rho"])
    p = TransformParams(pair.rho, job["quad"])
    form = job["form"]
    if form == "eq9":
        value, res = inverse_gst(pair.G, p, y, full_output=True)
        err = res.err_estimate
    elif form == "eq14":
        value, res = inverse_gst_zplane(pair.G, p, y, full_output=True)
        err = res.err_estimate
    elif form == "eq15":
        value, res = inverse_gst_ibp(pair.G, p, y, full_output=True)
        err = res.err_estimate
    elif form == "abel":
        delta = pair.delta or (lambda t: discontinuity(pair.G, p, t))
        value, res = abel_inverse_from_delta(delta, p, y, full_output=True)
        err = res.err_estimate
    else:
        value = stieltjes_disc_inverse(pair.G, p, y)
        err = discontinuity(pair.G, p, y, full_output=True)[1]
    return (y, float(value), float(err), form)


def _eval_disc(job, t):
    pair = parse_pair(job["pair"], job["rho"])
    p = TransformParams(pair.rho, job["quad"])
    value, err = discontinuity(pair.G, p, t, full_output=True)
    return (t, float(value), float(err))


_EVALUATORS = {"forward": _eval_forward, "inverse": _eval_inverse, "disc": _eval_disc}


def _eval_point(command, job, x):
    with warnings.catch_warnings(record=True) as caught:
        warnings.simplefilter("always", NonConvergenceWarning)
        row = _EVALUATORS[command](job, x)
    notes = [str(w.message) for w in caught if issubclass(w.category, NonConvergenceWarning)]
    return row, notes


def _evaluate_grid(command, job, points, jobs):
    if jobs > 1 and len(points) > 1:
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            return list(pool.map(_eval_point, [command] * len(points), [job] * len(points), points))
    return [_eval_point(command, job, x) for x in points]


# Output.


def _fmt(v):
    if isinstance(v, str):
        return v
    return format(float(v), ".17g")


def render(columns, rows, fmt: str) -> str:
    if fmt == "json":
        recs = [dict(zip(columns, (v if isinstance(v, str) else float(v) for v in row))) for row in rows]
        return json.dumps(recs, indent=2) + "\n"
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(columns)
    for row in rows:
        w.writerow([_fmt(v) for v in row])
    return buf.getvalue()


def _emit(text: str, out: str | None):
    if out:
        with open(out, "w", newline="") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


# Commands.


def _job_common(args):
    return {"rho": args.rho, "quad": _quad_from(args)}


def cmd_forward(args):
    job = _job_common(args)
    if (args.pair is None) == (args.tabulated is None):
        raise UsageError("forward needs exactly one of --pair or --tabulated")
    if args.tabulated is not None:
        if args.rho is None or args.alpha is None:
            raise UsageError("--tabulated needs --rho and --alpha")
        job["tabulated"] = read_tabulated(args.tabulated)
        # validate the table and admissibility up front (exit 2, not 3)
        SourceFunction.tabulated(*job["tabulated"], args.alpha).check_admissible(args.rho)
        job["alpha"] = args.alpha
    else:
        job["pair"] = args.pair
        F, rho = _build_source(job)
        F.check_admissible(rho)
    points = [parse_point(s) for s in (args.point or [])]
    if args.grid is not None:
        points = [complex(v) for v in parse_grid(args.grid)] + points
    if not points:
        raise UsageError("forward needs --grid or --point")
    for z in points:
        if z.imag == 0.0 and z.real <= 0.0:
            raise UsageError(f"z={z} lies on the branch cut")
    return "forward", job, points


def cmd_inverse(args):
    if args.tabulated is not None:
        raise UsageError(
            "tabulated G is refused for inverse transforms: real-axis samples "
            "cannot supply G in the complex plane"
        )
    if args.pair is None:
        raise UsageError("inverse needs --pair")
    job = _job_common(args)
    job["pair"] = args.pair
    job["form"] = args.form
    pair = parse_pair(args.pair, args.rho)
    rho = pair.rho
    if args.form in ("eq15", "abel") and not rho > 1:
        raise UsageError(f"form {args.form} needs rho > 1 (rho={rho})")
    nu = pair.params.get("nu")
    if args.form == "abel" and nu is not None and not rho < nu + 1:
        # Delta ~ t**(nu - rho) is then not integrable against (y - t)**(rho - 2)
        raise UsageError(f"form abel needs rho < nu + 1 (nu={nu}, rho={rho})")
    if args.form == "disc-rho1" and rho != 1.0:
        raise UsageError(f"form disc-rho1 needs rho = 1 (rho={rho})")
    return "inverse", job, _positive_grid(args, "y")


def cmd_disc(args):
    if args.pair is None:
        raise UsageError("disc needs --pair")
    job = _job_common(args)
    job["pair"] = args.pair
    parse_pair(args.pair, args.rho)
    return "disc", job, _positive_grid(args, "t")


def run_grid_command(args) -> int:
    command, job, points = {"forward": cmd_forward, "inverse": cmd_inverse, "disc": cmd_disc}[args.command](args)
    results = _evaluate_grid(command, job, points, args.jobs)
    for _, notes in results:
        for note in notes:
            print(f"warning: {note}", file=sys.stderr)
    rows = [row for row, _ in results]
    _emit(render(COLUMNS[command], rows, args.format), args.out)
    return EXIT_OK


def run_verify(args) -> int:
    tasks = verify.build_suite(args.suite, args.rho)
    records = verify.run_tasks(tasks, args.rel_tol, args.jobs)
    report = {
        "suite": args.suite,
        "rho": args.rho,
        "n_checks": len(records),
        "n_failed": sum(not r.passed for r in records),
        "records": [r.as_json() for r in records],
    }
    _emit(json.dumps(report, indent=2) + "\n", args.out)
    errors = [r for r in records if r.error is not None]
    failed = [r for r in records if not r.passed]
    for r in failed:
        print(f"FAIL {r.check} {r.params} {r.error or f'rel_err={r.rel_err} abs_err={r.abs_err}'}",
              file=sys.stderr)
    print(f"{len(records) - len(failed)}/{len(records)} checks passed", file=sys.stderr)
    if errors:
        return EXIT_NUMERIC
    return EXIT_CHECK_FAILED if failed else EXIT_OK


def run_pairs(args) -> int:
    rows = [(name,) + PAIR_HELP[name] for name in PAIR_NAMES]
    cols = ("name", "params", "F", "G", "validity")
    if args.format == "json":
        text = json.dumps([dict(zip(cols, r)) for r in rows], indent=2) + "\n"
    else:
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(cols)
        w.writerows(rows)
        text = buf.getvalue()
    _emit(text, args.out)
    return EXIT_OK


# Entry point.


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        print(f"{self.prog}: error: {message}", file=sys.stderr)
        raise SystemExit(EXIT_USAGE)


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="gst", description="Generalized Stieltjes transform toolkit.")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    def common(p, grid=True):
        p.add_argument("--rho", type=float, help="transform index (fills in a pair's rho)")
        p.add_argument("--out", help="output path (default: standard output)")
        p.add_argument("--format", choices=("csv", "json"), default="csv")
        p.add_argument("--rel-tol", type=float, dest="rel_tol", help="quadrature relative tolerance")
        p.add_argument("--best-effort", action="store_true",
                       help="report the best estimate instead of failing on non-convergence")
        p.add_argument("--jobs", type=int, default=1, help="worker processes")
        if grid:
            p.add_argument("--pair", help="catalog pair, e.g. power:nu=0.5,rho=1.5")
            p.add_argument("--grid", help="start:stop:count[:log] or a single value")

    p = sub.add_parser("forward", help="G(z) on a grid")
    common(p)
    p.add_argument("--tabulated", help="CSV file with columns y,F")
    p.add_argument("--alpha", type=float, help="admissibility exponent of a tabulated F")
    p.add_argument("--point", action="append", help="complex z, e.g. 1+0.5i (repeatable)")

    p = sub.add_parser("inverse", help="F(y) on a grid")
    common(p)
    p.add_argument("--tabulated", help=argparse.SUPPRESS)
    p.add_argument("--form", choices=FORMS, default="eq9")

    p = sub.add_parser("disc", help="discontinuity Delta(t) on a grid")
    common(p)

    p = sub.add_parser("verify", help="run a verification suite")
    common(p, grid=False)
    p.add_argument("--suite", choices=tuple(verify.SUITES) + ("all",), default="all")

    p = sub.add_parser("pairs", help="list catalog pairs")
    p.add_argument("--out")
    p.add_argument("--format", choices=("csv", "json"), default="csv")
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    if getattr(args, "jobs", 1) < 1:
        parser.error("--jobs must be >= 1")
    try:
        if args.command == "verify":
            return run_verify(args)
        if args.command == "pairs":
            return run_pairs(args)
        return run_grid_command(args)
    except DomainError as exc:
        print(f"gst: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except ResidualImaginaryError as exc:
        print(f"gst: imaginary residue: {exc}", file=sys.stderr)
        return EXIT_IMAGINARY
    except (NonConvergence, GSTError, ArithmeticError) as exc:
        print(f"gst: numerical failure: {exc}", file=sys.stderr)
        return EXIT_NUMERIC


if __name__ == "__main__":
    sys.exit(main())
