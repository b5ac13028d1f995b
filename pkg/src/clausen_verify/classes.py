"""Truncated coefficient series, class criteria and disc probes.

A function f(z) = z + a_2 z^2 + ... + a_N z^N is stored by its coefficient
list (a_2, ..., a_N).  The deficits are exact coefficient criteria for the
stored polynomial; the probes sample the defining functionals on a polar
grid and can only refute membership, never certify it.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from numbers import Real

import numpy as np

from .errors import PreconditionError, SingularityError

__all__ = [
    "CoeffSeries",
    "ShapeParams",
    "JanowskiParams",
    "ProbeResult",
    "SINGULAR_THRESHOLD",
    "shape_bracket",
    "m_star_deficit",
    "n_star_deficit",
    "rtau_bound_check",
    "probe_m",
    "probe_n",
    "probe_rtau",
]

SINGULAR_THRESHOLD = 1e-12
DEFAULT_RADIUS = 0.99
DEFAULT_GRID = 300
ALPHA_MAX = Fraction(4, 3)


@dataclass(frozen=True)
class CoeffSeries:
    """z + sum_{n=2}^{N} a_n z^n with a_n >= 0.

    Coefficients may be floats or :class:`fractions.Fraction`; exact
    inputs stay exact through the deficits and the convolution module.
    """

    coeffs: tuple

    def __post_init__(self):
        coeffs = tuple(self.coeffs)
        for n, v in enumerate(coeffs, start=2):
            if not isinstance(v, Real):
                raise PreconditionError(f"a_{n} must be real, got {v!r}")
            if isinstance(v, float) and not math.isfinite(v):
                raise PreconditionError(f"a_{n} must be finite, got {v!r}")
            if v < 0:
                raise PreconditionError(f"a_{n} = {v!r} is negative; class V needs a_n >= 0")
        object.__setattr__(self, "coeffs", coeffs)

    @property
    def N(self) -> int:
        """Degree of the stored polynomial (1 for f = z)."""
        return len(self.coeffs) + 1

    @classmethod
    def identity(cls, N: int) -> "CoeffSeries":
        """Truncation of z / (1 - z), the unit for the Hadamard product."""
        return cls((1,) * (N - 1))

    def indexed(self):
        """Pairs (n, a_n) for n = 2..N."""
        return zip(range(2, self.N + 1), self.coeffs)

    def full(self) -> np.ndarray:
        """Float array a_1..a_N with a_1 = 1."""
        return np.array([1.0, *map(float, self.coeffs)])


def _is_alpha_ok(alpha) -> bool:
    if isinstance(alpha, float):
        # 4/3 rounds below 4/3 in binary, so compare against the float too
        return 1.0 < alpha <= 4.0 / 3.0
    return 1 < alpha <= ALPHA_MAX


@dataclass(frozen=True)
class ShapeParams:
    """(lambda, alpha) with 0 <= lambda < 1 and 1 < alpha <= 4/3."""

    lam: float
    alpha: float

    def __post_init__(self):
        if not (0 <= self.lam < 1):
            raise PreconditionError(f"lambda must satisfy 0 <= lambda < 1, got {self.lam!r}")
        if not _is_alpha_ok(self.alpha):
            raise PreconditionError(f"alpha must lie in (1, 4/3], got {self.alpha!r}")


@dataclass(frozen=True)
class JanowskiParams:
    """(tau, A, B) with tau != 0 and -1 <= B <= A <= 1."""

    tau: complex
    A: float
    B: float

    def __post_init__(self):
        if complex(self.tau) == 0:
            raise PreconditionError("tau must be nonzero")
        if not (-1 <= self.B <= self.A <= 1):
            raise PreconditionError(f"need -1 <= B <= A <= 1, got A={self.A!r}, B={self.B!r}")

    @classmethod
    def padmanabhan(cls, beta: float) -> "JanowskiParams":
        """tau = 1, A = beta, B = -beta."""
        if not (0 < beta <= 1):
            raise PreconditionError(f"beta must lie in (0, 1], got {beta!r}")
        return cls(1.0, beta, -beta)

    @property
    def scale(self) -> float:
        """(A - B)|tau|, the coefficient-bound numerator."""
        return (self.A - self.B) * abs(complex(self.tau))


@dataclass(frozen=True)
class ProbeResult:
    sup_value: float
    argmax_z: complex
    grid_size: int
    radius: float


def shape_bracket(n: int, s: ShapeParams):
    """n - (1 + n*lambda - lambda) * alpha."""
    return n - (1 + n * s.lam - s.lam) * s.alpha


def m_star_deficit(f: CoeffSeries, s: ShapeParams):
    """(alpha - 1) minus sum_n [n - (1 + n lambda - lambda) alpha] a_n."""
    return (s.alpha - 1) - sum((shape_bracket(n, s) * a for n, a in f.indexed()), 0)


def n_star_deficit(f: CoeffSeries, s: ShapeParams):
    """(alpha - 1) minus sum_n n [n - (1 + n lambda - lambda) alpha] a_n."""
    return (s.alpha - 1) - sum((shape_bracket(n, s) * (n * a) for n, a in f.indexed()), 0)


def rtau_bound_check(f: CoeffSeries, j: JanowskiParams) -> bool:
    """True iff a_n <= (A - B)|tau| / n for every stored n.

    This is a necessary condition for membership in the Janowski-type
    class, not a membership test.
    """
    scale = j.scale
    return all(a <= scale / n for n, a in f.indexed())


# -- probes ----------------------------------------------------------------


def _polar_grid(radius: float, grid_size: int) -> np.ndarray:
    if not (0.0 < radius < 1.0):
        raise PreconditionError(f"radius must lie in (0, 1), got {radius!r}")
    if grid_size < 1:
        raise PreconditionError(f"grid_size must be positive, got {grid_size!r}")
    r = radius * np.arange(1, grid_size + 1) / grid_size
    theta = 2.0 * np.pi * np.arange(grid_size) / grid_size
    return (r[:, None] * np.exp(1j * theta)[None, :]).ravel()


def _derivatives_over_z(f: CoeffSeries, z: np.ndarray):
    """f(z)/z, f'(z) and z f''(z), by Horner in z."""
    a = f.full()
    n = np.arange(1, a.size + 1, dtype=float)
    f_z = np.polynomial.polynomial.polyval(z, a)
    df = np.polynomial.polynomial.polyval(z, n * a)
    zd2f = np.polynomial.polynomial.polyval(z, n * (n - 1.0) * a)
    return f_z, df, zd2f


def _checked_ratio(num: np.ndarray, den: np.ndarray, z: np.ndarray) -> np.ndarray:
    small = np.abs(den) < SINGULAR_THRESHOLD
    if np.any(small):
        where = z[np.argmax(small)]
        raise SingularityError(f"denominator vanishes (|.| < {SINGULAR_THRESHOLD:g}) near z = {where!r}")
    return num / den


def _sup(values: np.ndarray, z: np.ndarray, radius: float, grid_size: int) -> ProbeResult:
    k = int(np.argmax(values))
    return ProbeResult(float(values[k]), complex(z[k]), grid_size, radius)


def probe_m(
    f: CoeffSeries, s: ShapeParams, radius: float = DEFAULT_RADIUS, grid_size: int = DEFAULT_GRID
) -> ProbeResult:
    """Sup of Re( z f' / ((1 - lambda) f + lambda z f') ) over the grid."""
    z = _polar_grid(radius, grid_size)
    f_z, df, _ = _derivatives_over_z(f, z)
    lam = float(s.lam)
    w = _checked_ratio(df, (1.0 - lam) * f_z + lam * df, z)
    return _sup(w.real, z, radius, grid_size)


def probe_n(
    f: CoeffSeries, s: ShapeParams, radius: float = DEFAULT_RADIUS, grid_size: int = DEFAULT_GRID
) -> ProbeResult:
    """Sup of Re( (f' + z f'') / (f' + lambda z f'') ) over the grid."""
    z = _polar_grid(radius, grid_size)
    _, df, zd2f = _derivatives_over_z(f, z)
    lam = float(s.lam)
    w = _checked_ratio(df + zd2f, df + lam * zd2f, z)
    return _sup(w.real, z, radius, grid_size)


def probe_rtau(
    f: CoeffSeries, j: JanowskiParams, radius: float = DEFAULT_RADIUS, grid_size: int = DEFAULT_GRID
) -> float:
    """Sup of |(f' - 1) / ((A - B) tau - B (f' - 1))| over the grid."""
    z = _polar_grid(radius, grid_size)
    _, df, _ = _derivatives_over_z(f, z)
    g = df - 1.0
    w = _checked_ratio(g, (j.A - j.B) * complex(j.tau) - j.B * g, z)
    return float(np.max(np.abs(w)))
