"""Command-line front end.

Exit codes: 0 success, 2 invalid input (the message names the violated
condition), 3 numerical non-convergence, 4 verification found at least one
point where the derived condition holds but the brute-force criterion
fails.
"""

from __future__ import annotations

import argparse
import json
import logging
import math
import sys
from fractions import Fraction
from pathlib import Path

from . import __version__
from .classes import (
    CoeffSeries,
    JanowskiParams,
    ShapeParams,
    m_star_deficit,
    n_star_deficit,
    probe_m,
    probe_n,
    probe_rtau,
    rtau_bound_check,
)
from .clausen_operator import apply_operator, clausen_multiplier
from .errors import DomainError, NonConvergenceError, PreconditionError, SingularityError
from .hyperseries import (
    DEGENERACY_GAP,
    GeneralHyperParams,
    HyperParams,
    eval_3f2,
    gauss_sum_closed,
    shifted_sum_brute,
    shifted_sum_closed,
    weighted_sum_brute,
    weighted_sum_closed,
)
from .report import format_records, format_verdicts
from .summation import DEFAULT_REL_TOL
from .theorems import THREADS_ENV, SweepGrid, run_sweep

EXIT_OK = 0
EXIT_INPUT = 2
EXIT_NONCONVERGENCE = 3
EXIT_VIOLATION = 4

log = logging.getLogger("clausen_verify")

_DEFAULT_GRID = SweepGrid()


class InputError(Exception):
    """Invalid command-line input detected before any computation."""


def _number(text: str):
    text = text.strip()
    try:
        return Fraction(text) if "/" in text else float(text)
    except (ValueError, ZeroDivisionError):
        raise InputError(f"not a number: {text!r}")


def _axis(text: str) -> tuple:
    values = tuple(_number(t) for t in text.split(",") if t.strip())
    if not values:
        raise InputError("grid axis must list at least one value")
    return values


def _janowski_axis(text: str) -> tuple:
    triples = []
    for chunk in text.split(";"):
        if not chunk.strip():
            continue
        parts = _axis(chunk)
        if len(parts) != 3:
            raise InputError(f"Janowski triple needs A,B,tau_abs, got {chunk!r}")
        triples.append(tuple(float(x) for x in parts))
    if not triples:
        raise InputError("--janowski must list at least one A,B,tau_abs triple")
    return tuple(triples)


def _fmt_axis(values) -> str:
    return ",".join("4/3" if v == Fraction(4, 3) else format(float(v), "g") for v in values)


def _emit(text: str, output: str | None) -> None:
    if output in (None, "-"):
        sys.stdout.write(text)
    else:
        Path(output).write_text(text, encoding="utf-8", newline="\n")


def _check_tol(tol: float) -> float:
    if not (1e-15 < tol < 1e-3):
        raise InputError(f"--tol must lie in (1e-15, 1e-3), got {tol!r}")
    return tol


def _hyper(a: float, b: float, c: float) -> HyperParams:
    if abs(c - b) < DEGENERACY_GAP:
        raise InputError("c must differ from b")
    return HyperParams.degenerate(b, c) if a == 0 else HyperParams(a, b, c)


def _load_coeffs(spec: str) -> CoeffSeries:
    text = spec
    if not spec.lstrip().startswith("["):
        path = Path(spec)
        if not path.exists():
            raise InputError(f"--coeffs is neither an inline list nor a file: {spec!r}")
        text = path.read_text()
    try:
        values = json.loads(text)
    except json.JSONDecodeError as exc:
        raise InputError(f"--coeffs is not a JSON list: {exc}")
    if not isinstance(values, list) or not all(
        isinstance(v, (int, float)) and not isinstance(v, bool) for v in values
    ):
        raise InputError("--coeffs must be a list of numbers a_2, a_3, ...")
    return CoeffSeries(tuple(float(v) for v in values))


# -- commands --------------------------------------------------------------


def cmd_eval3f2(args) -> int:
    tol = _check_tol(args.tol)
    a = complex(args.a_re, args.a_im)
    if (args.d is None) != (args.e is None):
        raise InputError("give both --d and --e, or neither")
    if args.d is None:
        if abs(args.c - args.b) < DEGENERACY_GAP:
            raise InputError("c must differ from b")
        d, e = args.b + 1.0, args.c + 1.0
    else:
        d, e = args.d, args.e
    z = complex(args.z_re, args.z_im)
    result = eval_3f2(GeneralHyperParams(a, args.b, args.c, d, e), z, tol)
    value = complex(result.value)
    rec = {
        "value_re": value.real,
        "value_im": value.imag,
        "terms_used": result.terms_used,
        "tail_bound": float(result.tail_bound),
    }
    _emit(format_records([rec], list(rec), args.format), args.output)
    return EXIT_OK


def cmd_sums(args) -> int:
    tol = _check_tol(args.tol)
    p = _hyper(args.a, args.b, args.c)
    rows = []

    def row(name, closed_fn, brute_fn):
        rec = {"quantity": name, "closed": math.nan, "brute": math.nan,
               "tail_bound": math.nan, "terms_used": None, "status": "ok"}
        try:
            rec["closed"] = closed_fn()
        except PreconditionError as exc:
            rec["status"] = f"closed form unavailable: {exc}"
        try:
            s = brute_fn()
            rec.update(brute=float(s.value), tail_bound=float(s.tail_bound), terms_used=s.terms_used)
        except NonConvergenceError as exc:
            rec["status"] = f"brute sum failed: {exc}"
        rows.append(rec)

    series = GeneralHyperParams(p.a_abs, p.b, p.c, p.b + 1.0, p.c + 1.0)
    row("gauss", lambda: gauss_sum_closed(p), lambda: eval_3f2(series, 1.0, tol))
    for k in (1, 2, 3):
        row(f"weighted_k{k}", lambda k=k: weighted_sum_closed(k, p),
            lambda k=k: weighted_sum_brute(k, p, tol))
    row("shifted", lambda: shifted_sum_closed(p), lambda: shifted_sum_brute(p, tol))
    cols = ["quantity", "closed", "brute", "tail_bound", "terms_used", "status"]
    _emit(format_records(rows, cols, args.format), args.output)
    return EXIT_OK


def cmd_check_class(args) -> int:
    f = _load_coeffs(args.coeffs)
    s = ShapeParams(args.lam, args.alpha)
    rec = {"m_star_deficit": float(m_star_deficit(f, s)), "n_star_deficit": float(n_star_deficit(f, s))}
    j = None
    if args.tau is not None:
        j = JanowskiParams(args.tau, args.A, args.B)
        rec["rtau_bound_ok"] = rtau_bound_check(f, j)
    if args.probe:
        pm = probe_m(f, s, args.radius, args.grid)
        pn = probe_n(f, s, args.radius, args.grid)
        rec.update(
            probe_m_sup=pm.sup_value, probe_m_argmax_re=pm.argmax_z.real, probe_m_argmax_im=pm.argmax_z.imag,
            probe_n_sup=pn.sup_value, probe_n_argmax_re=pn.argmax_z.real, probe_n_argmax_im=pn.argmax_z.imag,
        )
        if j is not None:
            rec["probe_rtau_sup"] = probe_rtau(f, j, args.radius, args.grid)
    cols = list(rec)
    _emit(format_records([rec], cols, args.format), args.output)
    return EXIT_OK


def cmd_apply_operator(args) -> int:
    f = _load_coeffs(args.coeffs)
    p = _hyper(args.a, args.b, args.c)
    image = apply_operator(p, f)
    rows = [
        {"n": n, "a_n": float(a), "multiplier": clausen_multiplier(p, n), "A_n": float(A)}
        for (n, a), A in zip(f.indexed(), image.coeffs)
    ]
    _emit(format_records(rows, ["n", "a_n", "multiplier", "A_n"], args.format), args.output)
    return EXIT_OK


def _grid_from(args) -> SweepGrid:
    return SweepGrid(
        a_abs=_axis(args.a_abs), b=_axis(args.b), c=_axis(args.c),
        lam=_axis(args.lam), alpha=_axis(args.alpha), janowski=_janowski_axis(args.janowski),
    )


def _run_verify(which: int, grid: SweepGrid, args, output: str | None) -> tuple[dict, int]:
    result = run_sweep(which, grid, rel_tol=args.tol, threads=args.threads)
    _emit(format_verdicts(result, which, args.format), output)
    summary = result.summary()
    for rec, reason in result.skipped:
        log.info("skipped %s: %s", rec, reason)
    return summary, (EXIT_VIOLATION if summary["violations"] else EXIT_OK)


def _check_threads(threads: int | None) -> None:
    if threads is not None and threads < 1:
        raise InputError(f"--threads must be positive, got {threads!r}")


def cmd_verify(args) -> int:
    _check_tol(args.tol)
    _check_threads(args.threads)
    grid = _grid_from(args)
    summary, code = _run_verify(args.theorem, grid, args, args.output)
    text = json.dumps(summary, indent=2, sort_keys=True) + "\n"
    if args.summary:
        Path(args.summary).write_text(text)
    # with the report on stdout the summary goes to stderr
    (sys.stderr if args.output in (None, "-") else sys.stdout).write(text)
    return code


def cmd_sweep(args) -> int:
    _check_tol(args.tol)
    _check_threads(args.threads)
    if not args.theorems or any(w not in (1, 2, 3, 4) for w in args.theorems):
        raise InputError(f"--theorems must be a comma list drawn from 1,2,3,4, got {args.theorems!r}")
    grid = _grid_from(args)
    out_dir = Path(args.out_dir)
    out_dir.mkdir(parents=True, exist_ok=True)
    summaries, code = [], EXIT_OK
    for which in args.theorems:
        path = out_dir / f"theorem{which}.{args.format}"
        summary, c = _run_verify(which, grid, args, str(path))
        summary["report"] = path.name
        summaries.append(summary)
        code = max(code, c)
    text = json.dumps(summaries, indent=2, sort_keys=True) + "\n"
    (out_dir / "summary.json").write_text(text)
    sys.stdout.write(text)
    return code


# -- parser ----------------------------------------------------------------


def _add_common(p: argparse.ArgumentParser, tol: bool = True) -> None:
    p.add_argument("--format", choices=("csv", "json"), default="csv", help="output format (default csv)")
    p.add_argument("--output", "-o", default=None, help="output file (default stdout)")
    if tol:
        p.add_argument("--tol", type=float, default=DEFAULT_REL_TOL,
                       help=f"relative tolerance of series sums (default {DEFAULT_REL_TOL:g})")


def _add_grid(p: argparse.ArgumentParser) -> None:
    g = _DEFAULT_GRID
    p.add_argument("--a-abs", default=_fmt_axis(g.a_abs), help="|a| values (default %(default)s)")
    p.add_argument("--b", default=_fmt_axis(g.b), help="b values (default %(default)s)")
    p.add_argument("--c", default=_fmt_axis(g.c), help="c values (default %(default)s)")
    p.add_argument("--lambda", dest="lam", default=_fmt_axis(g.lam), help="lambda values (default %(default)s)")
    p.add_argument("--alpha", default=_fmt_axis(g.alpha), help="alpha values, fractions allowed (default %(default)s)")
    p.add_argument(
        "--janowski",
        default=";".join(_fmt_axis(t) for t in g.janowski),
        help="A,B,tau_abs triples separated by ';', theorems 3 and 4 only (default %(default)s)",
    )
    p.add_argument("--threads", type=int, default=None,
                   help=f"worker threads (default: CPU count, capped by ${THREADS_ENV})")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="clausen-verify",
        description="Evaluate the 3F2(a,b,c; b+1,c+1; z) family and check class criteria for it.",
    )
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    parser.add_argument("-v", "--verbose", action="store_true", help="log skipped grid points")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("eval3f2", help="sum 3F2(a,b,c; d,e; z) with a tail bound")
    p.add_argument("--a-re", type=float, required=True)
    p.add_argument("--a-im", type=float, default=0.0)
    p.add_argument("--b", type=float, required=True)
    p.add_argument("--c", type=float, required=True)
    p.add_argument("--d", type=float, default=None, help="default b+1")
    p.add_argument("--e", type=float, default=None, help="default c+1")
    p.add_argument("--z-re", type=float, default=1.0)
    p.add_argument("--z-im", type=float, default=0.0)
    _add_common(p)
    p.set_defaults(func=cmd_eval3f2)

    p = sub.add_parser("sums", help="closed forms against direct sums at z = 1")
    for name in ("a", "b", "c"):
        p.add_argument(f"--{name}", type=float, required=True)
    _add_common(p)
    p.set_defaults(func=cmd_sums)

    p = sub.add_parser("check-class", help="coefficient deficits and optional disc probes")
    p.add_argument("--coeffs", required=True, help="JSON list a_2, a_3, ... or a file holding one")
    p.add_argument("--lambda", dest="lam", type=float, required=True)
    p.add_argument("--alpha", type=_number, required=True)
    p.add_argument("--tau", type=float, default=None, help="with --A/--B: check the coefficient bound")
    p.add_argument("--A", type=float, default=1.0)
    p.add_argument("--B", type=float, default=-1.0)
    p.add_argument("--probe", action="store_true", help="also sample the functionals on a polar grid")
    p.add_argument("--radius", type=float, default=0.99)
    p.add_argument("--grid", type=int, default=300)
    _add_common(p, tol=False)
    p.set_defaults(func=cmd_check_class)

    p = sub.add_parser("apply-operator", help="image coefficients A_n of a coefficient list")
    for name in ("a", "b", "c"):
        p.add_argument(f"--{name}", type=float, required=True)
    p.add_argument("--coeffs", required=True)
    _add_common(p, tol=False)
    p.set_defaults(func=cmd_apply_operator)

    p = sub.add_parser("verify", help="sweep one theorem over a grid and write a report")
    p.add_argument("--theorem", type=int, choices=(1, 2, 3, 4), required=True)
    p.add_argument("--summary", default=None, help="also write the summary JSON here")
    _add_grid(p)
    _add_common(p)
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("sweep", help="run verify for several theorems into a directory")
    p.add_argument("--theorems", type=lambda s: [int(x) for x in s.split(",") if x.strip()],
                   default=[1, 2, 3, 4], help="comma list (default 1,2,3,4)")
    p.add_argument("--out-dir", required=True)
    _add_grid(p)
    _add_common(p)
    p.set_defaults(func=cmd_sweep)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    logging.basicConfig(
        level=logging.INFO if args.verbose else logging.ERROR,
        format="%(levelname)s %(name)s: %(message)s",
        stream=sys.stderr,
    )
    try:
        return args.func(args)
    except (InputError, PreconditionError, DomainError, SingularityError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    except NonConvergenceError as exc:
        print(f"non-convergence: {exc}", file=sys.stderr)
        return EXIT_NONCONVERGENCE


if __name__ == "__main__":
    sys.exit(main())
