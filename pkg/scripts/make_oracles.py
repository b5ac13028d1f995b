"""Compute reference values with mpmath at 50 digits.

The numbers printed here are frozen into the test suite.  Nothing in this
script imports the package: every value comes from mpmath's own gamma,
hypergeometric and summation routines.
"""

import mpmath as mp

mp.mp.dps = 50


def hyp(a, b, c, z=1):
    return mp.hyp3f2(a, b, c, b + 1, c + 1, z)


def moment1(a, b, c):
    """sum_n n t_n = (abc/((b+1)(c+1))) 3F2(a+1, b+1, c+1; b+2, c+2; 1)."""
    return a * b * c / ((b + 1) * (c + 1)) * mp.hyp3f2(a + 1, b + 1, c + 1, b + 2, c + 2, 1)


def shifted(a, b, c):
    """sum_n t_n / (n+1) as 4F3(a, b, c, 1; b+1, c+1, 2; 1)."""
    return mp.hyper([a, b, c, 1], [b + 1, c + 1, 2], 1)


def gamma_closed(a, b, c, wb, wc):
    g = mp.gamma
    return b * c * g(1 - a) / (c - b) * (wb * g(b) / g(1 - a + b) - wc * g(c) / g(1 - a + c))


def show(label, value):
    print(f"{label:40s} {mp.nstr(value, 20)}")


if __name__ == "__main__":
    show("log_gamma(7.25)", mp.loggamma(mp.mpf("7.25")))
    show("gamma_ratio(3.2, 1.7)", mp.gamma(mp.mpf("3.2")) / mp.gamma(mp.mpf("1.7")))

    h = mp.mpf("0.5")
    show("3F2(0.5,2,3;3,4;1)", hyp(h, 2, 3))
    show("3F2(0.5,2,3;3,4;0.7)", hyp(h, 2, 3, mp.mpf("0.7")))
    show("3F2(0.5,2,3;3,4;-1) re", hyp(h, 2, 3, -1))
    z = mp.mpc(0, 1)
    v = hyp(h, 2, 3, z)
    show("3F2(0.5,2,3;3,4;i) re", v.real)
    show("3F2(0.5,2,3;3,4;i) im", v.imag)
    a = mp.mpc("0.5", "0.3")
    v = hyp(a, 2, 3)
    show("3F2(0.5+0.3i,2,3;3,4;1) re", v.real)
    show("3F2(0.5+0.3i,2,3;3,4;1) im", v.imag)

    for a, b, c in ((h, 2, 3), (mp.mpf("0.9"), mp.mpf("1.5"), mp.mpf("2.5"))):
        G = hyp(a, b, c)
        W1 = G + moment1(a, b, c)
        show(f"W1 brute {a},{b},{c}", W1)
        for k in (1, 2, 3):
            show(f"W{k} closed {a},{b},{c}", gamma_closed(a, b, c, (1 - b) ** k, (1 - c) ** k))

    for a, b, c in ((h, 2, 3), (h, h, mp.mpf("2.5")), (mp.mpf("0.3"), mp.mpf("1.7"), mp.mpf("0.6"))):
        show(f"shifted {a},{b},{c}", shifted(a, b, c))

    # T1 at (0.5, 2, 3), lambda = 0, alpha = 4/3: u = 1, v = 4/3
    a, b, c = h, 2, 3
    u, v = 1, mp.mpf(4) / 3
    G = hyp(a, b, c)
    W1 = G + moment1(a, b, c)
    show("T1(0.5,2,3; 0, 4/3)", u * (W1 - 1) - v * (G - 1))
    # T2 closed form at (0.5, 2, 3), lambda = 0, alpha = 1.25
    alpha = mp.mpf("1.25")
    wb = (b - 1) * (b * 1 - (1 - alpha))
    wc = (c - 1) * (c * 1 - (1 - alpha))
    show("t2_closed(0.5,2,3; 0, 1.25)", gamma_closed(a, b, c, wb, wc) + alpha - 1)

    # grid sups that lie on the positive or negative real axis
    show("probe_n sup z+0.2z^2 (r=0.99)", (1 + mp.mpf("0.8") * mp.mpf("0.99")) / (1 + mp.mpf("0.4") * mp.mpf("0.99")))
    show("probe_rtau sup z+0.3z^2 (r=0.99)", mp.mpf("0.594") / (2 - mp.mpf("0.594")))
