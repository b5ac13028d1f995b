"""Numerical checks for the contiguous Clausen family 3F2(a, b, c; b+1, c+1; z).

The package sums the series with rigorous tail bounds, evaluates the gamma
closed forms at z = 1, models truncated coefficient series of the classes
M*(lambda, alpha), N*(lambda, alpha) and the Janowski-type class, and
sweeps the four sufficient conditions over parameter grids.
"""

from .classes import (
    CoeffSeries,
    JanowskiParams,
    ProbeResult,
    ShapeParams,
    m_star_deficit,
    n_star_deficit,
    probe_m,
    probe_n,
    probe_rtau,
    rtau_bound_check,
)
from .clausen_operator import (
    apply_operator,
    clausen_multiplier,
    clausen_multipliers,
    complex_clausen_multiplier,
    convolve,
)
from .errors import (
    DivergenceError,
    DomainError,
    IterationCapError,
    NonConvergenceError,
    PreconditionError,
    SingularityError,
)
from .hyperseries import (
    GeneralHyperParams,
    HyperParams,
    eval_3f2,
    gauss_sum_closed,
    shifted_sum_brute,
    shifted_sum_closed,
    weighted_sum_brute,
    weighted_sum_closed,
)
from .special import gamma_ratio, log_gamma, pochhammer
from .summation import SumValue
from .theorems import SweepGrid, TheoremVerdict, run_sweep, t1_closed, t2_closed, thm_condition

__version__ = "0.1.0"
