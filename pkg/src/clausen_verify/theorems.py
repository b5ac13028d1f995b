"""Theorem predicates for the contiguous 3F2 family and grid sweeps.

Four sufficient conditions are checked.  With u = 1 - alpha*lambda,
v = alpha*(1 - lambda) and t_m the m-th term of 3F2(|a|, b, c; b+1, c+1; 1):

=====  ========================  ====================================
which  class of the image         brute-force sum (m >= 1)
=====  ========================  ====================================
1      M*(lambda, alpha)         T1 = sum (u(m+1) - v) t_m
2      N*(lambda, alpha)         T2 = sum (m+1)(u(m+1) - v) t_m
3      N*, coefficients K/n      T3 = K * T1
4      M*, coefficients K/n      T4 = K * sum (u(m+1) - v) t_m / (m+1)
=====  ========================  ====================================

with K = (A - B)|tau|.  Each verdict carries three readings:

* ``condition_as_stated``: the printed gamma inequality;
* ``condition_derived``: the closed form of the corresponding T sum
  compared against alpha - 1;
* ``criterion_brute``: the T sum itself, summed term by term with a
  rigorous tail bound.  This is the ground truth.

All comparisons allow an absolute slack of 1e-9 (plus the tail bound
for brute sums).
"""

from __future__ import annotations

import logging
import math
import os
from collections import Counter
from concurrent.futures import ThreadPoolExecutor
from functools import lru_cache
from dataclasses import dataclass, field
from fractions import Fraction
from itertools import product
from typing import Iterator, Sequence

from .classes import JanowskiParams, ShapeParams
from .errors import DivergenceError, NonConvergenceError, PreconditionError
from .hyperseries import (
    HyperParams,
    contiguous_series,
    gamma_bracket,
    gauss_sum_closed,
    shifted_sum_closed,
)
from .special import gamma_ratio
from .summation import DEFAULT_REL_TOL, sum_series

__all__ = [
    "SLACK",
    "TheoremVerdict",
    "SweepGrid",
    "SweepResult",
    "t1_closed",
    "t2_closed",
    "s1_closed",
    "s4_closed",
    "t_brute",
    "thm_condition",
    "run_sweep",
    "thread_count",
]

log = logging.getLogger(__name__)

SLACK = 1e-9
THREADS_ENV = "CLAUSEN_VERIFY_THREADS"
THEOREMS = (1, 2, 3, 4)


def _uv(s: ShapeParams) -> tuple[float, float]:
    lam, alpha = float(s.lam), float(s.alpha)
    return 1.0 - alpha * lam, alpha * (1.0 - lam)


def s1_closed(p: HyperParams, s: ShapeParams) -> float:
    """Bracketed gamma expression S1, so that T1 = S1 + alpha - 1."""
    u, _ = _uv(s)
    one_m_alpha = 1.0 - float(s.alpha)
    return gamma_bracket(p, one_m_alpha - p.b * u, one_m_alpha - p.c * u)


def t1_closed(p: HyperParams, s: ShapeParams) -> float:
    return s1_closed(p, s) + (float(s.alpha) - 1.0)


def t2_closed(p: HyperParams, s: ShapeParams) -> float:
    u, _ = _uv(s)
    one_m_alpha = 1.0 - float(s.alpha)
    wb = (p.b - 1.0) * (p.b * u - one_m_alpha)
    wc = (p.c - 1.0) * (p.c * u - one_m_alpha)
    return gamma_bracket(p, wb, wc) + (float(s.alpha) - 1.0)


def s4_closed(p: HyperParams, s: ShapeParams) -> float:
    """u * 3F2(...; 1) - v * (sum with (1)_{n+1} in the denominator)."""
    u, v = _uv(s)
    return u * gauss_sum_closed(p) - v * shifted_sum_closed(p)


def t_brute(which: int, p: HyperParams, s: ShapeParams, rel_tol: float = DEFAULT_REL_TOL):
    """(value, tail bound) of the unscaled T sum for ``which``.

    For which = 3 the sum is T1 and for which = 4 the sum without the
    factor K; divergent sums return (+-inf, 0).
    """
    return _t_brute(1 if which == 3 else which, p, s, rel_tol)


@lru_cache(maxsize=4096)
def _t_brute(which: int, p: HyperParams, s: ShapeParams, rel_tol: float):
    u, v = _uv(s)
    # u(m+1) - v = u (m + shift)
    shift = 1.0 - v / u
    roots = (-shift,)
    extra_upper: tuple = ()
    extra_lower: tuple = ()
    if which == 2:
        roots = (-1.0, -shift)
    elif which == 4:
        extra_upper, extra_lower = (1.0,), (2.0,)
    series = contiguous_series(p, extra_upper, extra_lower, roots, u)
    try:
        result = sum_series(series, start=1, rel_tol=rel_tol)
    except DivergenceError as exc:
        # a provably divergent sum has no truncation uncertainty
        return math.copysign(math.inf, getattr(exc, "direction", 1) or 1), 0.0
    return float(result.value), float(result.tail_bound)


@dataclass(frozen=True)
class TheoremVerdict:
    which: int
    params: dict
    condition_as_stated: bool | None
    condition_derived: bool | None
    criterion_brute: bool | None
    deficit: float
    tail_bound: float
    skip_reason: str = ""

    @property
    def violation(self) -> bool:
        """Derived condition holds but the brute-force criterion fails."""
        return bool(self.condition_derived) and self.criterion_brute is False

    @property
    def stated_mismatch(self) -> bool:
        return (
            self.condition_as_stated is not None
            and self.condition_derived is not None
            and self.condition_as_stated != self.condition_derived
        )


def _params_record(p: HyperParams, s: ShapeParams, j: JanowskiParams | None) -> dict:
    rec = {"a_abs": p.a_abs, "b": p.b, "c": p.c, "lambda": float(s.lam), "alpha": float(s.alpha)}
    if j is not None:
        rec.update(A=float(j.A), B=float(j.B), tau_abs=abs(complex(j.tau)))
    return rec


def _stated(which: int, p: HyperParams, s: ShapeParams, K: float | None) -> bool:
    u, _ = _uv(s)
    alpha = float(s.alpha)
    a = p.a_abs
    rb = gamma_ratio(p.b, 1.0 - a + p.b)
    rc = gamma_ratio(p.c, 1.0 - a + p.c)
    if which == 1:
        lhs = ((1.0 - alpha) - p.b * u) * rb
        rhs = ((1.0 - alpha) - p.c * u) * rc
        return lhs <= rhs + SLACK
    if which == 2:
        lhs = (p.b - 1.0) * (p.b * u - (1.0 - alpha)) * rb
        rhs = (p.c - 1.0) * (p.c * u - (1.0 - alpha)) * rc
        return lhs <= rhs + SLACK
    S = s1_closed(p, s) if which == 3 else s4_closed(p, s)
    return S * K / (1.0 - K) <= (alpha - 1.0) + SLACK


def thm_condition(
    which: int,
    p: HyperParams,
    s: ShapeParams,
    j: JanowskiParams | None = None,
    rel_tol: float = DEFAULT_REL_TOL,
) -> TheoremVerdict:
    """Evaluate the stated, derived and brute-force readings at one point."""
    if which not in THEOREMS:
        raise PreconditionError(f"which must be one of {THEOREMS}, got {which!r}")
    K = None
    if which in (3, 4):
        if j is None:
            raise PreconditionError(f"theorem {which} needs Janowski parameters")
        K = j.scale
        if not K < 1.0:
            raise PreconditionError("denominator nonpositive: need (A - B)|tau| < 1")
    alpha_m1 = float(s.alpha) - 1.0

    if which == 1:
        derived = t1_closed(p, s)
    elif which == 2:
        derived = t2_closed(p, s)
    elif which == 3:
        derived = K * (s1_closed(p, s) + alpha_m1)
    else:
        derived = K * (s4_closed(p, s) + alpha_m1)

    value, tail = t_brute(which, p, s, rel_tol)
    if K is not None:
        value, tail = K * value, K * tail
    return TheoremVerdict(
        which=which,
        params=_params_record(p, s, j),
        condition_as_stated=_stated(which, p, s, K),
        condition_derived=derived <= alpha_m1 + SLACK,
        criterion_brute=value <= alpha_m1 + tail + SLACK,
        deficit=alpha_m1 - value,
        tail_bound=tail,
    )


# -- sweeps ----------------------------------------------------------------


@dataclass(frozen=True)
class SweepGrid:
    """Axes of a verification grid; points run in lexicographic axis order."""

    a_abs: tuple = (0.1, 0.3, 0.5, 0.9)
    b: tuple = (0.5, 1.5, 2.5, 3.5)
    c: tuple = (0.5, 1.5, 2.5, 3.5)
    lam: tuple = (0.0, 0.25, 0.5)
    alpha: tuple = (1.1, 1.2, Fraction(4, 3))
    janowski: tuple = ((1.0, -1.0, 0.2), (0.5, 0.0, 0.5), (1.0, 0.0, 0.4))

    def points(self, which: int) -> Iterator[tuple]:
        """Raw (a_abs, b, c, lambda, alpha, janowski-or-None) tuples."""
        triples = self.janowski if which in (3, 4) else (None,)
        yield from product(self.a_abs, self.b, self.c, self.lam, self.alpha, triples)

    def size(self, which: int) -> int:
        n = len(self.a_abs) * len(self.b) * len(self.c) * len(self.lam) * len(self.alpha)
        return n * (len(self.janowski) if which in (3, 4) else 1)


def _raw_record(point: tuple) -> dict:
    a_abs, b, c, lam, alpha, jt = point
    rec = {"a_abs": float(a_abs), "b": float(b), "c": float(c),
           "lambda": float(lam), "alpha": float(alpha)}
    if jt is not None:
        rec.update(A=float(jt[0]), B=float(jt[1]), tau_abs=float(jt[2]))
    return rec


def _build(point: tuple):
    a_abs, b, c, lam, alpha, jt = point
    p = HyperParams.degenerate(b, c) if a_abs == 0 else HyperParams(a_abs, b, c)
    s = ShapeParams(lam, alpha)
    j = JanowskiParams(jt[2], jt[0], jt[1]) if jt is not None else None
    return p, s, j


@dataclass
class SweepResult(Sequence):
    """Verdicts in grid order plus the points skipped before evaluation."""

    which: int
    verdicts: list
    skipped: list = field(default_factory=list)  # (params record, reason)

    def __getitem__(self, i):
        return self.verdicts[i]

    def __len__(self) -> int:
        return len(self.verdicts)

    @property
    def violations(self) -> list:
        return [v for v in self.verdicts if v.violation]

    @property
    def mismatches(self) -> list:
        return [v for v in self.verdicts if v.stated_mismatch]

    def agreement(self) -> Counter:
        """Counts of (condition_derived, criterion_brute) pairs."""
        return Counter(
            (v.condition_derived, v.criterion_brute) for v in self.verdicts if not v.skip_reason
        )

    def summary(self) -> dict:
        table = self.agreement()
        skip_reasons = Counter(reason for _, reason in self.skipped)
        return {
            "theorem": self.which,
            "points": len(self.verdicts),
            "skipped": len(self.skipped),
            "skip_reasons": dict(sorted(skip_reasons.items())),
            "errors": sum(1 for v in self.verdicts if v.skip_reason),
            "derived_and_brute": table[(True, True)],
            "derived_not_brute": table[(True, False)],
            "brute_not_derived": table[(False, True)],
            "neither": table[(False, False)],
            "stated_vs_derived_mismatches": len(self.mismatches),
            "violations": len(self.violations),
        }


def thread_count(requested: int | None = None) -> int:
    """Worker count: ``requested`` or the CPU count, capped by the env var."""
    n = requested or os.cpu_count() or 1
    cap = os.environ.get(THREADS_ENV)
    if cap:
        try:
            cap_n = int(cap)
        except ValueError:
            raise PreconditionError(f"{THREADS_ENV} must be a positive integer, got {cap!r}")
        if cap_n < 1:
            raise PreconditionError(f"{THREADS_ENV} must be a positive integer, got {cap!r}")
        n = min(n, cap_n)
    return max(1, n)


def _evaluate(which: int, point: tuple, args: tuple, rel_tol: float) -> TheoremVerdict:
    p, s, j = args
    try:
        return thm_condition(which, p, s, j, rel_tol)
    except (PreconditionError, NonConvergenceError, ArithmeticError) as exc:
        reason = exc.args[0] if exc.args else type(exc).__name__
        log.warning("theorem %d at %s: %s", which, _raw_record(point), reason)
        nan = math.nan
        return TheoremVerdict(which, _raw_record(point), None, None, None, nan, nan, str(reason))


def run_sweep(
    which: int,
    grid: SweepGrid | None = None,
    rel_tol: float = DEFAULT_REL_TOL,
    threads: int | None = None,
) -> SweepResult:
    """Evaluate ``thm_condition`` over every admissible grid point.

    Points whose parameters fail the basic type invariants (c = b, lambda
    out of range, ...) are skipped and logged.  Failures specific to a
    theorem are kept as rows with ``skip_reason`` set.  The output order
    is the grid order, whatever the thread count.
    """
    if which not in THEOREMS:
        raise PreconditionError(f"which must be one of {THEOREMS}, got {which!r}")
    grid = grid or SweepGrid()
    jobs, skipped = [], []
    for point in grid.points(which):
        try:
            jobs.append((point, _build(point)))
        except PreconditionError as exc:
            rec = _raw_record(point)
            log.info("skipping %s: %s", rec, exc)
            skipped.append((rec, str(exc)))

    def task(job):
        return _evaluate(which, job[0], job[1], rel_tol)

    workers = thread_count(threads)
    if workers == 1 or len(jobs) < 2:
        verdicts = [task(job) for job in jobs]
    else:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            verdicts = list(pool.map(task, jobs))
    return SweepResult(which, verdicts, skipped)
