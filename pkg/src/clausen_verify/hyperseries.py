"""The 3F2 family 3F2(a, b, c; b+1, c+1; z): direct sums and gamma closed forms.

Closed forms are evaluated with a replaced by |a| throughout, as every
class criterion downstream bounds |(a)_n| by (|a|)_n.  Brute-force sums go
through :func:`clausen_verify.summation.sum_series`, which returns a
rigorous bound on the omitted tail.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from .errors import PreconditionError
from .special import gamma_ratio, log_gamma
from .summation import (
    DEFAULT_REL_TOL,
    MAX_TERMS,
    SumValue,
    TermSeries,
    hyper_terms,
    sum_series,
)

__all__ = [
    "HyperParams",
    "GeneralHyperParams",
    "SumValue",
    "DEGENERACY_GAP",
    "eval_3f2",
    "contiguous_series",
    "gamma_bracket",
    "gauss_sum_closed",
    "weighted_sum_brute",
    "weighted_sum_closed",
    "shifted_sum_brute",
    "shifted_sum_closed",
]

DEGENERACY_GAP = 1e-8
_REL_TOL_RANGE = (1e-15, 1e-3)


@dataclass(frozen=True)
class HyperParams:
    """Parameters (a, b, c) of 3F2(a, b, c; b+1, c+1; z).

    ``a`` may be complex; ``a_abs`` caches |a|.  The value a = 0 is outside
    the family proper and is only accepted through :meth:`degenerate`.
    """

    a: complex
    b: float
    c: float
    a_abs: float = field(init=False)
    allow_zero_a: bool = field(default=False, repr=False, compare=False)

    def __post_init__(self):
        a = complex(self.a)
        if a.imag == 0.0:
            a = a.real
        object.__setattr__(self, "a", a)
        object.__setattr__(self, "b", float(self.b))
        object.__setattr__(self, "c", float(self.c))
        object.__setattr__(self, "a_abs", abs(a))
        b, c = self.b, self.c
        for name, v in (("b", b), ("c", c)):
            if not math.isfinite(v) or v <= 0.0:
                raise PreconditionError(f"{name} must be a positive real, got {v!r}")
        if not all(math.isfinite(x) for x in (complex(a).real, complex(a).imag)):
            raise PreconditionError(f"a must be finite, got {a!r}")
        if self.a_abs == 0.0 and not self.allow_zero_a:
            raise PreconditionError("a must be nonzero")
        if abs(c - b) < DEGENERACY_GAP:
            raise PreconditionError("c must differ from b")
        if not self.a_abs < min(1.0, b + 1.0, c + 1.0):
            raise PreconditionError(
                f"|a| = {self.a_abs!r} must be below min(1, b+1, c+1)"
            )

    @classmethod
    def degenerate(cls, b: float, c: float) -> "HyperParams":
        """The a = 0 member, for which every series reduces to its first term."""
        return cls(0.0, b, c, allow_zero_a=True)

    def swapped(self) -> "HyperParams":
        return HyperParams(self.a, self.c, self.b, allow_zero_a=self.allow_zero_a)


def _is_nonpositive_integer(x: complex) -> bool:
    x = complex(x)
    return x.imag == 0.0 and x.real <= 0.0 and x.real == math.floor(x.real)


@dataclass(frozen=True)
class GeneralHyperParams:
    """Parameters of the general series 3F2(a, b, c; d, e; z)."""

    a: complex
    b: complex
    c: complex
    d: complex
    e: complex

    def __post_init__(self):
        for name in "abcde":
            v = complex(getattr(self, name))
            if not (math.isfinite(v.real) and math.isfinite(v.imag)):
                raise PreconditionError(f"{name} must be finite, got {v!r}")
        for name in "de":
            if _is_nonpositive_integer(getattr(self, name)):
                raise PreconditionError(f"{name} must not be a nonpositive integer")

    @classmethod
    def contiguous(cls, p: HyperParams) -> "GeneralHyperParams":
        return cls(p.a, p.b, p.c, p.b + 1.0, p.c + 1.0)


def _check_rel_tol(rel_tol: float) -> float:
    lo, hi = _REL_TOL_RANGE
    if not (lo < rel_tol < hi):
        raise PreconditionError(f"rel_tol must lie in ({lo:g}, {hi:g}), got {rel_tol!r}")
    return float(rel_tol)


def eval_3f2(
    p: GeneralHyperParams,
    z: complex = 1.0,
    rel_tol: float = DEFAULT_REL_TOL,
    max_terms: int = MAX_TERMS,
) -> SumValue:
    """Sum the series 3F2(a, b, c; d, e; z) for |z| <= 1."""
    rel_tol = _check_rel_tol(rel_tol)
    z = complex(z)
    if abs(z) > 1.0:
        raise PreconditionError(f"|z| must be at most 1, got {abs(z)!r}")
    series = TermSeries((p.a, p.b, p.c), (p.d, p.e, 1.0), z=z)
    return sum_series(series, rel_tol=rel_tol, max_terms=max_terms)


def contiguous_series(
    p: HyperParams,
    extra_upper: tuple = (),
    extra_lower: tuple = (),
    weight_roots: tuple = (),
    weight_scale: float = 1.0,
) -> TermSeries:
    """Term series of the contiguous family at z = 1 with a replaced by |a|."""
    return TermSeries(
        (p.a_abs, p.b, p.c, *extra_upper),
        (p.b + 1.0, p.c + 1.0, 1.0, *extra_lower),
        z=1.0,
        weight_roots=tuple(float(r) for r in weight_roots),
        weight_scale=float(weight_scale),
    )


def _sum_positive(series: TermSeries, rel_tol: float, start: int = 0) -> SumValue:
    value = sum_series(series, start=start, rel_tol=rel_tol)
    if 0.0 < series.upper[0] < 1.0:
        # (|a|)_n, (b)_n, (c)_n and the lower Pochhammers are all positive.
        terms = hyper_terms(series, value.terms_used)
        if not np.all(terms > 0.0):
            raise AssertionError("nonpositive term in a series that must be positive")
    return value


def gamma_bracket(p: HyperParams, wb: float, wc: float) -> float:
    """bc Gamma(1-|a|)/(c-b) * [wb Gamma(b)/Gamma(1-|a|+b) - wc Gamma(c)/Gamma(1-|a|+c)]."""
    a, b, c = p.a_abs, p.b, p.c
    pref = b * c * math.exp(log_gamma(1.0 - a)) / (c - b)
    return pref * (wb * gamma_ratio(b, 1.0 - a + b) - wc * gamma_ratio(c, 1.0 - a + c))


def _check_weighted(p: HyperParams) -> None:
    if not (p.b > p.a_abs - 1.0 and p.c > p.a_abs - 1.0):
        raise PreconditionError("b and c must exceed |a| - 1")


def gauss_sum_closed(p: HyperParams) -> float:
    """Gamma closed form of 3F2(|a|, b, c; b+1, c+1; 1)."""
    return gamma_bracket(p, 1.0, 1.0)


def _check_k(k: int) -> int:
    if k not in (1, 2, 3):
        raise PreconditionError(f"k must be 1, 2 or 3, got {k!r}")
    return k


def weighted_sum_brute(k: int, p: HyperParams, rel_tol: float = DEFAULT_REL_TOL) -> SumValue:
    """Direct sum of (n+1)^k times the n-th term, n >= 0.

    The summand decays like n^(k + |a| - 3); for k >= 2 and |a| > 0 the
    series diverges and :class:`~clausen_verify.errors.DivergenceError`
    is raised.
    """
    k = _check_k(k)
    _check_weighted(p)
    rel_tol = _check_rel_tol(rel_tol)
    return _sum_positive(contiguous_series(p, weight_roots=(-1.0,) * k), rel_tol)


def weighted_sum_closed(k: int, p: HyperParams) -> float:
    """Gamma expression with weights (1-b)^k and (1-c)^k in the bracket."""
    k = _check_k(k)
    _check_weighted(p)
    return gamma_bracket(p, (1.0 - p.b) ** k, (1.0 - p.c) ** k)


def _check_shifted(p: HyperParams, gap: float = 0.0) -> None:
    if not (p.b > max(0.0, p.a_abs - 1.0) and p.c > max(0.0, p.a_abs - 1.0)):
        raise PreconditionError("b and c must exceed max(0, |a| - 1)")
    for name, v in (("|a|", p.a_abs), ("b", p.b), ("c", p.c)):
        if v == 1.0 or abs(v - 1.0) < gap:
            raise PreconditionError(f"{name} must differ from 1")


def shifted_sum_brute(p: HyperParams, rel_tol: float = DEFAULT_REL_TOL) -> SumValue:
    """Direct sum of the terms with (1)_n replaced by (1)_{n+1} = (n+1)!."""
    _check_shifted(p)
    rel_tol = _check_rel_tol(rel_tol)
    # (1)_n / (1)_{n+1} = (1)_n / (2)_n
    return _sum_positive(contiguous_series(p, extra_upper=(1.0,), extra_lower=(2.0,)), rel_tol)


def shifted_sum_closed(p: HyperParams) -> float:
    a, b, c = p.a_abs, p.b, p.c
    _check_shifted(p, DEGENERACY_GAP)
    inner = (
        math.exp(log_gamma(2.0 - a))
        / (c - b)
        * ((c - 1.0) * gamma_ratio(b, 1.0 - a + b) - (b - 1.0) * gamma_ratio(c, 1.0 - a + c))
    )
    return b * c / ((a - 1.0) * (b - 1.0) * (c - 1.0)) * (inner - 1.0)
