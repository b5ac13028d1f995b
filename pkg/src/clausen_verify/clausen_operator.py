"""Hadamard convolution and the hypergeometric multiplier operator.

The operator maps f(z) = z + sum a_n z^n to z + sum A_n z^n with

    A_n = (|a|)_{n-1} (b)_{n-1} (c)_{n-1} / ((b+1)_{n-1} (c+1)_{n-1} (n-1)!) * a_n .

Since (b)_m / (b+1)_m = b / (b+m), the multiplier simplifies to
(|a|)_m / m! * bc / ((b+m)(c+m)) with m = n - 1, which is how it is
evaluated here (no large Pochhammer symbols are formed).
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from numbers import Rational

import numpy as np

from .classes import CoeffSeries
from .errors import PreconditionError
from .hyperseries import HyperParams, contiguous_series
from .special import gamma_ratio, log_gamma
from .summation import DEFAULT_REL_TOL, SumValue, hyper_terms, sum_series

__all__ = [
    "OperatorCoeffs",
    "convolve",
    "clausen_multiplier",
    "clausen_multipliers",
    "complex_clausen_multiplier",
    "apply_operator",
    "operator_coeffs",
    "hypergeometric_coeffs",
    "multiplier_sum",
]

_DIRECT_MAX = 64


@dataclass(frozen=True)
class OperatorCoeffs:
    """Image coefficients A_2..A_N together with the parameters used."""

    mods: tuple
    params: HyperParams

    def as_series(self) -> CoeffSeries:
        return CoeffSeries(self.mods)


def convolve(f: CoeffSeries, g: CoeffSeries) -> CoeffSeries:
    """Hadamard product; coefficients missing from the shorter input count as 0."""
    return CoeffSeries(tuple(x * y for x, y in zip(f.coeffs, g.coeffs)))


def _check_n(n: int) -> int:
    if int(n) != n or n < 2:
        raise PreconditionError(f"n must be an integer >= 2, got {n!r}")
    return int(n)


def _rising_over_factorial(x: float, m: int) -> float:
    """(x)_m / m! for x >= 0."""
    if x == 0.0:
        return 1.0 if m == 0 else 0.0
    if m <= _DIRECT_MAX:
        out = 1.0
        for k in range(m):
            out *= (x + k) / (k + 1)
        return out
    return gamma_ratio(x + m, m + 1.0) / math.exp(log_gamma(x))


def clausen_multiplier(p: HyperParams, n: int) -> float:
    """(|a|)_{n-1}(b)_{n-1}(c)_{n-1} / ((b+1)_{n-1}(c+1)_{n-1}(1)_{n-1})."""
    m = _check_n(n) - 1
    return _rising_over_factorial(p.a_abs, m) * p.b * p.c / ((p.b + m) * (p.c + m))


def complex_clausen_multiplier(p: HyperParams, n: int) -> complex:
    """Same as :func:`clausen_multiplier` but keeping the complex (a)_{n-1}."""
    m = _check_n(n) - 1
    a = complex(p.a)
    out = complex(1.0)
    for k in range(m):
        out *= (a + k) / (k + 1)
    return out * p.b * p.c / ((p.b + m) * (p.c + m))


def clausen_multipliers(p: HyperParams, N: int) -> np.ndarray:
    """Multipliers for n = 2..N, by the term-ratio recurrence."""
    if N < 2:
        return np.empty(0)
    return hyper_terms(contiguous_series(p), N)[1:]


def _scale(mult: float, a):
    if isinstance(a, Rational) and not isinstance(a, bool):
        # a float is a dyadic rational, so the lifted product is exact
        return Fraction(mult) * a
    return mult * a


def operator_coeffs(p: HyperParams, f: CoeffSeries) -> OperatorCoeffs:
    mods = tuple(_scale(clausen_multiplier(p, n), a) for n, a in f.indexed())
    return OperatorCoeffs(mods, p)


def apply_operator(p: HyperParams, f: CoeffSeries) -> CoeffSeries:
    """Image of f: A_n = multiplier(n) * a_n.

    Exact (Fraction or int) coefficients produce exact Fraction outputs,
    so the operator is linear without rounding on such inputs.
    """
    return operator_coeffs(p, f).as_series()


def hypergeometric_coeffs(p: HyperParams, N: int) -> CoeffSeries:
    """Truncation of z 3F2(|a|, b, c; b+1, c+1; z), i.e. the image of z/(1-z)."""
    return CoeffSeries(tuple(clausen_multiplier(p, n) for n in range(2, N + 1)))


def multiplier_sum(p: HyperParams, rel_tol: float = DEFAULT_REL_TOL) -> SumValue:
    """sum_{n >= 2} multiplier(n), with a proven tail bound."""
    return sum_series(contiguous_series(p), start=1, rel_tol=rel_tol)
