"""Summation of hypergeometric-type series with a proven remainder bound.

A term sequence is described by its upper and lower parameters,

    t_n = prod_i (a_i)_n / prod_j (b_j)_n * z**n ,

(the factorial is an explicit lower parameter 1), optionally multiplied by
a polynomial weight W(n) = scale * prod (n - root).  Two tail regimes are
handled:

* |z| < 1: geometric majorant.  For m >= n the term ratio is bounded by
  |z| prod (m + |a|) / prod (m - |b|), which is nonincreasing in m, so its
  value at m = n bounds every later ratio.

* |z| = 1: asymptotic tail correction.  A Laurent polynomial R(m) is fitted
  so that R(m) - R(m+1) rho(m) = 1 + eps(m) with eps(m) = O(m^-(J+1)).
  Telescoping gives  sum_{m>=N} u_m = R(N) u_N - sum_{m>=N} u_m eps(m),
  and the last sum is at most sup|eps| * sum_{m>=N} |u_m|.  The sup is
  bounded through the coefficients of the rational function eps; the
  absolute tail comes either from the same identity (terms of one sign) or
  from a Raabe-type comparison |rho(k)| <= 1 - sigma/k checked by
  coefficient positivity of a shifted polynomial.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
import gmpy2
from typing import Sequence

import numpy as np

from .errors import DivergenceError, IterationCapError, NonConvergenceError

__all__ = [
    "SumValue",
    "TermSeries",
    "MAX_TERMS",
    "DEFAULT_REL_TOL",
    "hyper_terms",
    "sum_series",
]

MAX_TERMS = 1_000_000
DEFAULT_REL_TOL = 1e-12
_EPS = np.finfo(float).eps
_ORDERS = (12,)
_Q = gmpy2.mpq


@dataclass(frozen=True)
class SumValue:
    """Numerical series value.

    ``value`` is the partial sum plus, on the unit circle, the asymptotic
    tail correction; ``tail_bound`` bounds |true sum - value|.
    """

    value: complex | float
    terms_used: int
    tail_bound: float
    partial: complex | float = 0.0


@dataclass(frozen=True)
class TermSeries:
    """Hypergeometric term t_n with optional polynomial weight."""

    upper: tuple[complex, ...]
    lower: tuple[complex, ...]
    z: complex = 1.0
    weight_roots: tuple[float, ...] = ()
    weight_scale: float = 1.0

    @property
    def is_real(self) -> bool:
        values = (*self.upper, *self.lower, self.z, *self.weight_roots)
        return all(complex(v).imag == 0.0 for v in values)

    def effective_params(self) -> tuple[list[complex], list[complex]]:
        """Parameters of the ratio u_{k+1}/u_k including the weight."""
        upper = [complex(a) for a in self.upper]
        lower = [complex(b) for b in self.lower]
        upper += [1.0 - complex(r) for r in self.weight_roots]
        lower += [-complex(r) for r in self.weight_roots]
        return upper, lower

    def weight(self, n: np.ndarray) -> np.ndarray:
        w = np.full(n.shape, self.weight_scale, dtype=float)
        for r in self.weight_roots:
            w = w * (n - r)
        return w


def _dtype(series: TermSeries):
    return float if series.is_real else complex


def _cast(values: Sequence[complex], real: bool):
    return [complex(v).real for v in values] if real else [complex(v) for v in values]


def _ratios(series: TermSeries, start: int, stop: int) -> np.ndarray:
    real = series.is_real
    k = np.arange(start, stop, dtype=float)
    z = complex(series.z).real if real else complex(series.z)
    out = np.full(k.shape, z, dtype=_dtype(series))
    for a in _cast(series.upper, real):
        out = out * (k + a)
    for b in _cast(series.lower, real):
        out = out / (k + b)
    return out


def hyper_terms(series: TermSeries, count: int) -> np.ndarray:
    """Unweighted terms t_0 .. t_{count-1} by ratio recurrence."""
    terms = np.empty(count, dtype=_dtype(series))
    if count == 0:
        return terms
    terms[0] = 1.0
    if count > 1:
        terms[1:] = np.cumprod(_ratios(series, 0, count - 1))
    return terms


def _continue_terms(last, ratios: np.ndarray) -> np.ndarray:
    # cumprod accumulates left to right, so seeding it with the last term
    # reproduces exactly the values a single pass would have produced.
    return np.cumprod(np.concatenate([[last], ratios]))[1:]


class _TermStream:
    """Incrementally extended term buffer (t_n and weighted u_n)."""

    def __init__(self, series: TermSeries):
        self.series = series
        self.terms = hyper_terms(series, 1)

    def extend(self, count: int) -> None:
        have = self.terms.size
        if count <= have:
            return
        ratios = _ratios(self.series, have - 1, count - 1)
        tail = _continue_terms(self.terms[-1], ratios)
        self.terms = np.concatenate([self.terms, tail])

    def weighted(self, stop: int) -> np.ndarray:
        n = np.arange(stop, dtype=float)
        return self.series.weight(n) * self.terms[:stop]


def _fsum(values: np.ndarray) -> complex | float:
    if np.iscomplexobj(values):
        return complex(math.fsum(values.real), math.fsum(values.imag))
    return math.fsum(values)


def _terminating_order(series: TermSeries) -> int | None:
    orders = []
    for a in series.upper:
        a = complex(a)
        if a.imag == 0.0 and a.real <= 0.0 and a.real == int(a.real):
            orders.append(int(-a.real))
    return min(orders) if orders else None


# -- |z| < 1 ---------------------------------------------------------------


def _ratio_sup_bound(series: TermSeries, n: int) -> float:
    """Upper bound on |u_{m+1}/u_m| valid for every m >= n (inf if unknown)."""
    upper, lower = series.effective_params()
    bound = abs(complex(series.z))
    for b in lower:
        if n - abs(b) <= 0:
            return math.inf
        bound /= n - abs(b)
    for a in upper:
        bound *= n + abs(a)
    return bound


# -- |z| = 1 ---------------------------------------------------------------


class _QC:
    """Exact Gaussian rational re + i*im (only the operations used below)."""

    __slots__ = ("re", "im")

    def __init__(self, re, im=0):
        self.re = _Q(re)
        self.im = _Q(im)

    @staticmethod
    def lift(x) -> "_QC":
        if isinstance(x, _QC):
            return x
        x = complex(x)
        return _QC(_Q(x.real), _Q(x.imag))

    def __add__(self, other):
        o = _QC.lift(other)
        return _QC(self.re + o.re, self.im + o.im)

    __radd__ = __add__

    def __sub__(self, other):
        o = _QC.lift(other)
        return _QC(self.re - o.re, self.im - o.im)

    def __rsub__(self, other):
        return _QC.lift(other) - self

    def __neg__(self):
        return _QC(-self.re, -self.im)

    def __mul__(self, other):
        if isinstance(other, (int, _Q)):
            return _QC(self.re * other, self.im * other)
        o = _QC.lift(other)
        return _QC(self.re * o.re - self.im * o.im, self.re * o.im + self.im * o.re)

    __rmul__ = __mul__

    def __truediv__(self, other):
        o = _QC.lift(other)
        den = o.re * o.re + o.im * o.im
        return _QC(
            (self.re * o.re + self.im * o.im) / den,
            (self.im * o.re - self.re * o.im) / den,
        )

    def __bool__(self):
        return bool(self.re) or bool(self.im)

    def __eq__(self, other):
        o = _QC.lift(other)
        return self.re == o.re and self.im == o.im

    def __hash__(self):
        return hash((self.re, self.im))

    def conj(self):
        return _QC(self.re, -self.im)

    def __complex__(self):
        return complex(float(self.re), float(self.im))

    def __abs__(self):
        return abs(complex(self))


def _exact(x, real: bool):
    return _Q(complex(x).real) if real else _QC.lift(x)


def _fpoly_mul(a: list, b: list) -> list:
    out = [a[0] * 0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                out[i + j] = out[i + j] + x * y
    return out


def _fpoly_shift(a: list, by=1) -> list:
    """Coefficients of a(m + by)."""
    out = [a[0] * 0] * len(a)
    by = _Q(by)
    for i, c in enumerate(a):
        if c:
            for j in range(i + 1):
                out[j] = out[j] + c * (math.comb(i, j) * by ** (i - j))
    return out


def _fpoly_add(*polys: tuple[int, list]) -> list:
    size = max(len(p) for _, p in polys)
    zero = polys[0][1][0] * 0
    out = [zero] * size
    for sign, poly in polys:
        for i, c in enumerate(poly):
            out[i] = out[i] + c * sign
    return out


def _monic_exact(params: Sequence[complex], real: bool) -> list:
    """Ascending coefficients of prod (m + p) in exact arithmetic."""
    poly = [_exact(1, real)]
    for p in params:
        poly = _fpoly_mul(poly, [_exact(p, real), _exact(1, real)])
    return poly


@dataclass
class _AsymptoticTail:
    """Tail corrector R and residual eps for one truncation order J."""

    order: int
    kappa: int
    r: np.ndarray
    err_coef: np.ndarray  # |E_i| inflated for rounding, ascending in m
    den_degree: int

    def correction(self, n: int) -> complex:
        powers = float(n) ** (self.kappa - np.arange(self.r.size, dtype=float))
        return complex(np.dot(self.r, powers))

    def eps_sup(self, n: int, qmin: float) -> float:
        top = self.err_coef.size - 1
        if top > self.den_degree and np.any(self.err_coef[self.den_degree + 1 :] != 0):
            return math.inf
        i = np.arange(min(top, self.den_degree) + 1, dtype=float)
        coef = self.err_coef[: i.size]
        with np.errstate(over="ignore", under="ignore"):
            total = float(np.sum(coef * np.exp((i - self.den_degree) * math.log(n))))
        return total / qmin


def _fit_tail(P: list, Q: list, z, real: bool, order: int):
    """Exact fit of the order-``order`` tail corrector for ratio z P/Q."""
    one = _exact(1, real)
    zero = one * 0
    d = len(Q) - 1
    kappa = 1 if z == 1 else 0
    nterms = order + 3
    p_rev = (P[::-1] + [zero] * (nterms + 1))[: nterms + 1]
    q_rev = (Q[::-1] + [zero] * (nterms + 1))[: nterms + 1]
    # rho(1/x) as a power series in x
    rho = []
    for j in range(nterms + 1):
        acc = p_rev[j]
        for i in range(j):
            acc = acc - rho[i] * q_rev[j - i]
        rho.append(acc / q_rev[0])
    rho = [c * z for c in rho]
    # column i is 1 - (1 + x)^(kappa - i) * rho; successive columns divide
    # the series by (1 + x), an O(n) recurrence
    series = list(rho)
    if kappa:
        series = [series[0]] + [series[j] + series[j - 1] for j in range(1, nterms + 1)]
    cols = []
    for i in range(order + 1):
        if i:
            for j in range(1, nterms + 1):
                series[j] = series[j] - series[j - 1]
        bracket = [-c for c in series]
        bracket[0] = bracket[0] + 1
        cols.append(bracket)
    r = []
    for o in range(order + 1):
        acc = one if o == 0 else zero
        for i in range(o):
            acc = acc - r[i] * cols[i][o - i + kappa]
        diag = cols[o][kappa]
        if not diag:
            return None
        r.append(acc / diag)

    # R(m) m^order = sum_i r_i m^(kappa + order - i)
    rn = [zero] * (kappa + order + 1)
    for i, ri in enumerate(r):
        rn[kappa + order - i] = ri
    mJ = [zero] * order + [one]
    m1J = [one * math.comb(order, j) for j in range(order + 1)]
    E = _fpoly_add(
        (1, _fpoly_mul(_fpoly_mul(rn, m1J), Q)),
        (-1, [c * z for c in _fpoly_mul(_fpoly_mul(_fpoly_shift(rn), mJ), P)]),
        (-1, _fpoly_mul(_fpoly_mul(mJ, m1J), Q)),
    )
    # |float(c)| is within one rounding of |c|
    err = np.array([abs(complex(c)) for c in E]) * (1.0 + 4.0 * _EPS)
    coef = np.array([complex(c) for c in r], dtype=complex)
    if real:
        coef = coef.real.copy()
    return _AsymptoticTail(order, kappa, coef, err, 2 * order + d)


def _qmin(lower: Sequence[complex], n: int) -> float:
    """Lower bound on |Q(m)| / m^d for real m >= n."""
    out = 1.0
    for b in lower:
        re = complex(b).real
        if n + re <= 0:
            return 0.0
        if re < 0:
            out *= (n + re) / n
    return out


def _raabe_ok(P: list, Q: list, real: bool, sigma: _Q, n: int) -> bool:
    """Check |P(k)/Q(k)| <= 1 - sigma/k for all real k >= n, exactly."""
    if real:
        A = _fpoly_mul(P, P)
        B = _fpoly_mul(Q, Q)
    else:
        A = [c.re for c in _fpoly_mul(P, [c.conj() for c in P])]
        B = [c.re for c in _fpoly_mul(Q, [c.conj() for c in Q])]
    k2 = [_Q(0), _Q(0), _Q(1)]
    ks = [sigma * sigma, -2 * sigma, _Q(1)]
    diff = _fpoly_add((1, _fpoly_mul(B, ks)), (-1, _fpoly_mul(A, k2)))
    return all(c >= 0 for c in _fpoly_shift(diff, n))


class _UnitCircleTail:
    def __init__(self, series: TermSeries):
        self.real = series.is_real
        upper, lower = series.effective_params()
        self.upper, self.lower = upper, lower
        self.z = complex(series.z)
        if self.real:
            self.z = self.z.real
        if len(upper) != len(lower):
            raise NonConvergenceError("unit-circle tail needs balanced parameters")
        self.P = _monic_exact(upper, self.real)
        self.Q = _monic_exact(lower, self.real)
        self.s = sum(complex(b).real for b in lower) - sum(complex(a).real for a in upper)
        self._zx = _exact(self.z, self.real)
        self._fits: dict[int, object] = {}
        self._raabe: dict[int, bool] = {}
        params = [complex(p).real for p in (*upper, *lower)]
        self.one_signed = self.real and self.z == 1
        self.n_min = max(2, math.floor(max(-p for p in params)) + 2)

    def _fit(self, order: int):
        if order not in self._fits:
            self._fits[order] = _fit_tail(self.P, self.Q, self._zx, self.real, order)
        return self._fits[order]

    def _abs_tail(self, n: int, u_n: complex, estimate: complex, sup: float) -> float | None:
        """Bound on sum_{m >= n} |u_m|."""
        if self.one_signed:
            return abs(estimate) / (1.0 - sup)
        sigma = _Q((1.0 + self.s) / 2.0)
        if n not in self._raabe:
            self._raabe[n] = _raabe_ok(self.P, self.Q, self.real, sigma, n)
        if not self._raabe[n]:
            return None
        return abs(u_n) * (1.0 + n / (float(sigma) - 1.0))

    def bound(self, n: int, u_n: complex, target: float = 0.0) -> tuple[complex, float] | None:
        """(tail estimate, bound on its error) using terms from index n.

        Orders are fitted lazily; the first whose error bound meets
        ``target`` wins, otherwise the best one found is returned.
        """
        if n < self.n_min:
            return None
        qmin = _qmin(self.lower, n)
        if qmin <= 0.0:
            return None
        best = None
        for order in _ORDERS:
            fit = self._fit(order)
            if fit is None:
                continue
            sup = fit.eps_sup(n, qmin)
            if not math.isfinite(sup) or sup >= 0.5:
                continue
            estimate = fit.correction(n) * u_n
            absolute = self._abs_tail(n, u_n, estimate, sup)
            if absolute is None:
                return None
            err = sup * absolute
            if best is None or err < best[1]:
                best = (estimate, err)
            if err <= target:
                break
        return best


def _checkpoints(first: int, cap: int):
    n = max(1, first)
    while n < cap:
        yield n
        n *= 2
    yield cap


def _divergence_direction(series: TermSeries, stream: _TermStream) -> int:
    upper, lower = series.effective_params()
    n = max(64, math.ceil(max(-complex(p).real for p in (*upper, *lower))) + 2)
    stream.extend(n + 1)
    last = stream.weighted(n + 1)[-1]
    return int(np.sign(np.real(last)))


def sum_series(
    series: TermSeries,
    start: int = 0,
    rel_tol: float = DEFAULT_REL_TOL,
    max_terms: int = MAX_TERMS,
) -> SumValue:
    """Sum ``sum_{n >= start} W(n) t_n`` to relative accuracy ``rel_tol``."""
    z = complex(series.z)
    stream = _TermStream(series)
    order = _terminating_order(series)
    if order is not None:
        stop = order + 1
        stream.extend(stop)
        total = _fsum(stream.weighted(stop)[start:])
        return SumValue(total, stop, 0.0, total)

    if abs(z) > 1.0:
        raise NonConvergenceError(f"|z| = {abs(z)} > 1 lies outside the disc of convergence")

    if abs(z) < 1.0:
        for n in _checkpoints(start + 1, max_terms):
            stream.extend(n)
            u = stream.weighted(n)
            partial = _fsum(u[start:])
            last = abs(u[n - 1])
            r = _ratio_sup_bound(series, n - 1)
            if r < 1.0:
                tail = last * r / (1.0 - r)
                scale = abs(partial)
                if (last <= rel_tol * scale and tail <= rel_tol * scale) or (last == 0.0 and tail == 0.0):
                    return SumValue(partial, n, float(tail), partial)
        raise IterationCapError(f"tail bound not below rel_tol={rel_tol} within {max_terms} terms")

    tail = _UnitCircleTail(series)
    if tail.s <= 1.0:
        if series.is_real and z == 1:
            err = DivergenceError(
                f"series diverges at z=1 (decay exponent {tail.s:.6g} <= 1)"
            )
            err.direction = _divergence_direction(series, stream)
            raise err
        raise NonConvergenceError(
            f"convergence on |z|=1 requires Re(sum lower - sum upper) > 1, got {tail.s:.6g}"
        )
    for n in _checkpoints(max(start + 1, tail.n_min), max_terms):
        stream.extend(n + 1)
        u = stream.weighted(n + 1)
        partial = _fsum(u[start:n])
        result = tail.bound(n, u[n], 0.5 * rel_tol * abs(partial))
        if result is None:
            continue
        estimate, err = result
        value = partial + estimate
        if not series.is_real:
            value = complex(value)
        else:
            value = float(np.real(value))
        if err <= rel_tol * abs(value):
            return SumValue(value, n, float(err), partial)
    raise IterationCapError(f"tail bound not below rel_tol={rel_tol} within {max_terms} terms")
