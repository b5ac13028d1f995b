"""Where do the coefficient criteria for M* and N* imply the open inequality?

For f = z + a_2 z^2 with zero M* deficit, the denominator
(1 - lam) f + lam z f' = z (1 + (1 + lam) a_2 z) vanishes at
|z| = 1 / ((1 + lam) a_2), and a_2 = (alpha - 1) / (2 - (1 + lam) alpha).
The zero is inside the unit disc iff (1 + lam)(2 alpha - 1) > 2, i.e.
lam > 2/(2 alpha - 1) - 1.  Beyond that bound the real part is unbounded
near the zero, so nonnegative deficit cannot imply Re(...) < alpha.

This script prints that counterexample and then the probe failure rate
for random series, split by which side of the bound lambda falls on.
"""

import numpy as np

from clausen_verify.classes import (
    CoeffSeries,
    ShapeParams,
    m_star_deficit,
    n_star_deficit,
    probe_m,
    probe_n,
    shape_bracket,
)
from clausen_verify.errors import SingularityError


def bound(alpha):
    return 2.0 / (2.0 * alpha - 1.0) - 1.0


def counterexample(lam=0.4, alpha=4.0 / 3.0):
    s = ShapeParams(lam, alpha)
    a2 = (alpha - 1.0) / shape_bracket(2, s)
    f = CoeffSeries((a2,))
    r = probe_m(f, s)
    print(f"lam={lam} alpha={alpha:.6g}: a_2={a2:.6g}, deficit={m_star_deficit(f, s):.3g}, "
          f"zero at |z|={1 / ((1 + lam) * a2):.4f}, probe sup={r.sup_value:.4g} at z={r.argmax_z:.4f}")


def failure_rate(rng, count, lam_range):
    fails = total = 0
    for _ in range(count):
        alpha = float(rng.uniform(1.0 + 1e-4, 4.0 / 3.0))
        lo, hi = lam_range(alpha)
        if hi <= lo:
            continue
        s = ShapeParams(float(rng.uniform(lo, hi)), alpha)
        raw = rng.exponential(size=int(rng.integers(1, 8)))
        for deficit, probe in ((m_star_deficit, probe_m), (n_star_deficit, probe_n)):
            used = (alpha - 1.0) - deficit(CoeffSeries(tuple(raw)), s)
            scale = (alpha - 1.0) / used * rng.uniform(0.5, 1.0) if used > 0 else 1.0
            f = CoeffSeries(tuple(raw * scale))
            try:
                sup = probe(f, s, 0.99, 150).sup_value
            except SingularityError:
                sup = np.inf
            total += 1
            fails += not sup < alpha + 1e-6
    return fails, total


if __name__ == "__main__":
    counterexample()
    counterexample(lam=0.1)
    rng = np.random.default_rng(1)
    below = failure_rate(rng, 300, lambda a: (0.0, bound(a)))
    above = failure_rate(rng, 300, lambda a: (bound(a), 0.999))
    print(f"below the bound: {below[0]}/{below[1]} probes fail")
    print(f"above the bound: {above[0]}/{above[1]} probes fail")
