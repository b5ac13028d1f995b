"""Real log-gamma, gamma ratios and Pochhammer symbols.

Only positive real arguments are supported.  ``log_gamma`` combines a
Lanczos sum (g = 7, nine terms) for x >= 2.5 with Taylor expansions about
1 and 2, so relative accuracy survives near the two zeros of ln Gamma.
"""

from __future__ import annotations

import math

from .errors import DomainError

__all__ = ["log_gamma", "gamma_ratio", "pochhammer", "EULER_GAMMA"]

EULER_GAMMA = 0.57721566490153286061

_LANCZOS_G = 7.0
_LANCZOS_COEF = (
    0.99999999999980993,
    676.5203681218851,
    -1259.1392167224028,
    771.32342877765313,
    -176.61502916214059,
    12.507343278686905,
    -0.13857109526572012,
    9.9843695780195716e-6,
    1.5056327351493116e-7,
)
_HALF_LOG_2PI = 0.91893853320467274178

# zeta(k) - 1 for k = 2..11; higher orders are summed directly below.
_ZETA_MINUS_ONE_LOW = (
    0.64493406684822643647,
    0.20205690315959428540,
    0.082323233711138191516,
    0.036927755143369926331,
    0.017343061984449139714,
    0.0083492773819228268398,
    0.0040773561979443393787,
    0.0020083928260822144179,
    0.00099457512781808533714,
    0.00049418860411946455870,
)
_TAYLOR_ORDER = 40


def _zeta_minus_one(k: int) -> float:
    return math.fsum(n ** -float(k) for n in range(2, 61))


_ZETA_M1 = _ZETA_MINUS_ONE_LOW + tuple(
    _zeta_minus_one(k) for k in range(12, _TAYLOR_ORDER + 1)
)


def _check_positive(x: float, name: str = "x") -> float:
    x = float(x)
    if not math.isfinite(x) or x <= 0.0:
        raise DomainError(f"{name} must be a positive finite real, got {x!r}")
    return x


def _log_gamma_near_one(eps: float) -> float:
    # ln Gamma(1+eps) = -gamma*eps + (eps - log1p(eps))
    #                   + sum_{k>=2} (-1)^k (zeta(k)-1) eps^k / k
    acc = 0.0
    power = -eps
    for k, zm1 in enumerate(_ZETA_M1, start=2):
        power *= -eps
        term = zm1 * power / k
        acc += term
        if abs(term) < 1e-18 * abs(eps):
            break
    return -EULER_GAMMA * eps + (eps - math.log1p(eps)) + acc


def _log_gamma_lanczos(x: float) -> float:
    xm1 = x - 1.0
    series = _LANCZOS_COEF[0]
    for i, coef in enumerate(_LANCZOS_COEF[1:], start=1):
        series += coef / (xm1 + i)
    t = xm1 + _LANCZOS_G + 0.5
    return _HALF_LOG_2PI + (xm1 + 0.5) * math.log(t) - t + math.log(series)


def log_gamma(x: float) -> float:
    """Natural log of Gamma(x) for real x > 0."""
    x = _check_positive(x)
    if x < 0.5:
        # Gamma(x) = Gamma(x + 1) / x keeps the argument in the Taylor window.
        return _log_gamma_near_one(x) - math.log(x)
    if x <= 1.5:
        return _log_gamma_near_one(x - 1.0)
    if x <= 2.5:
        eps = x - 2.0
        return math.log1p(eps) + _log_gamma_near_one(eps)
    return _log_gamma_lanczos(x)


def gamma_ratio(num: float, den: float) -> float:
    """Gamma(num) / Gamma(den) evaluated through log-gamma differences."""
    num = _check_positive(num, "num")
    den = _check_positive(den, "den")
    if num == den:
        return 1.0
    return math.exp(log_gamma(num) - log_gamma(den))


_DIRECT_PRODUCT_MAX = 64


def pochhammer(x: float, n: int) -> float:
    """Rising factorial (x)_n = x (x+1) ... (x+n-1); (x)_0 = 1."""
    if n < 0 or int(n) != n:
        raise DomainError(f"order must be a nonnegative integer, got {n!r}")
    n = int(n)
    x = float(x)
    if not math.isfinite(x):
        raise DomainError(f"x must be finite, got {x!r}")
    if n <= _DIRECT_PRODUCT_MAX or x <= 0.0:
        result = 1.0
        for k in range(n):
            result *= x + k
    else:
        log_value = log_gamma(x + n) - log_gamma(x)
        if log_value > 709.0:
            raise OverflowError(f"pochhammer({x}, {n}) exceeds double range")
        result = math.exp(log_value)
    if math.isinf(result):
        raise OverflowError(f"pochhammer({x}, {n}) exceeds double range")
    return result
