import math

import pytest
from hypothesis import assume, given
from hypothesis import strategies as st

from clausen_verify.errors import DivergenceError, PreconditionError
from clausen_verify.hyperseries import (
    GeneralHyperParams,
    HyperParams,
    eval_3f2,
    gauss_sum_closed,
    shifted_sum_brute,
    shifted_sum_closed,
    weighted_sum_brute,
    weighted_sum_closed,
)

# 50-digit references from scripts/make_oracles.py
F_AT_07 = 1.2701518651068651661
F_AT_MINUS_1 = 0.8235498012182875315
F_AT_I = complex(0.91440262914330656743, 0.20504157704378849006)
F_COMPLEX_A = complex(1.4802232467847609803, 0.48531909730647900995)
W1_LARGE = 32.067336160278990031
W2_LARGE = -65.793327639193100237
W3_LARGE = 107.53615315817695795
SHIFTED = {
    (0.5, 0.5, 2.5): 1.0845313357773134083,
    (0.3, 1.7, 0.6): 1.0468333689011076654,
}

P = HyperParams(0.5, 2.0, 3.0)

a_abs = st.floats(min_value=0.02, max_value=0.95)
bc = st.floats(min_value=0.2, max_value=4.0)


def close(x, y, out, rel=1e-9):
    return abs(x - y) <= out.tail_bound + rel * abs(y)


def test_gauss_sum_example():
    # 3F2(1/2, 2, 3; 3, 4; 1) = 8/5
    assert gauss_sum_closed(P) == pytest.approx(1.6, rel=1e-13)
    out = eval_3f2(GeneralHyperParams.contiguous(P))
    assert close(out.value, 1.6, out)


@pytest.mark.parametrize(
    "z, expected",
    [(0.7, F_AT_07), (-1.0, F_AT_MINUS_1), (1j, F_AT_I)],
)
def test_eval_against_reference(z, expected):
    out = eval_3f2(GeneralHyperParams.contiguous(P), z=z)
    assert abs(out.value - expected) <= out.tail_bound + 1e-12 * abs(expected)
    assert abs(out.value - expected) < 1e-11


def test_eval_complex_a():
    p = GeneralHyperParams(0.5 + 0.3j, 2.0, 3.0, 3.0, 4.0)
    out = eval_3f2(p)
    assert abs(out.value - F_COMPLEX_A) <= out.tail_bound + 1e-12 * abs(F_COMPLEX_A)


def test_eval_at_origin():
    assert eval_3f2(GeneralHyperParams.contiguous(P), z=0).value == 1.0


def test_eval_rejects_bad_inputs():
    g = GeneralHyperParams.contiguous(P)
    with pytest.raises(PreconditionError):
        eval_3f2(g, z=1.01)
    with pytest.raises(PreconditionError):
        eval_3f2(g, rel_tol=1e-2)
    with pytest.raises(PreconditionError):
        GeneralHyperParams(1, 1, 1, -2, 1)


def test_weighted_sums_example():
    assert weighted_sum_closed(1, P) == pytest.approx(4.8, rel=1e-13)
    assert weighted_sum_closed(2, P) == pytest.approx(-17.6, rel=1e-13)
    assert weighted_sum_closed(3, P) == pytest.approx(43.2, rel=1e-13)
    out = weighted_sum_brute(1, P)
    assert close(out.value, 4.8, out)


def test_weighted_sums_second_point():
    p = HyperParams(0.9, 1.5, 2.5)
    assert weighted_sum_closed(1, p) == pytest.approx(W1_LARGE, rel=1e-12)
    assert weighted_sum_closed(2, p) == pytest.approx(W2_LARGE, rel=1e-12)
    assert weighted_sum_closed(3, p) == pytest.approx(W3_LARGE, rel=1e-12)
    out = weighted_sum_brute(1, p)
    assert close(out.value, W1_LARGE, out)


@pytest.mark.parametrize("k", [2, 3])
def test_higher_weighted_brute_sums_diverge(k):
    # terms decay like n^(k + |a| - 3), so the sum is infinite
    with pytest.raises(DivergenceError):
        weighted_sum_brute(k, P)


def test_shifted_sum_examples():
    assert shifted_sum_closed(P) == pytest.approx(1.2, rel=1e-13)
    out = shifted_sum_brute(P)
    assert close(out.value, 1.2, out)
    for (a, b, c), ref in SHIFTED.items():
        p = HyperParams(a, b, c)
        assert shifted_sum_closed(p) == pytest.approx(ref, rel=1e-12)
        out = shifted_sum_brute(p)
        assert close(out.value, ref, out)


def test_shifted_rejects_unit_parameters():
    with pytest.raises(PreconditionError):
        shifted_sum_closed(HyperParams(0.5, 1.0, 2.0))


@pytest.mark.parametrize(
    "args",
    [(0.5, 2.0, 2.0), (0.5, -1.0, 2.0), (1.0, 2.0, 3.0), (0.0, 2.0, 3.0), (0.5, 2.0, 2.0 + 1e-9)],
)
def test_hyper_params_invariants(args):
    with pytest.raises(PreconditionError):
        HyperParams(*args)


def test_degenerate_member():
    p = HyperParams.degenerate(2.0, 3.0)
    assert p.a_abs == 0.0
    assert gauss_sum_closed(p) == pytest.approx(1.0, rel=1e-14)


@given(a_abs, bc, bc)
def test_gauss_closed_matches_brute(a, b, c):
    assume(abs(b - c) > 1e-3)
    p = HyperParams(a, b, c)
    out = eval_3f2(GeneralHyperParams.contiguous(p))
    closed = gauss_sum_closed(p)
    assert close(out.value, closed, out, rel=1e-9)


@given(a_abs, bc, bc)
def test_symmetric_in_b_and_c(a, b, c):
    assume(abs(b - c) > 1e-3)
    p = HyperParams(a, b, c)
    q = p.swapped()
    assert gauss_sum_closed(q) == pytest.approx(gauss_sum_closed(p), rel=1e-11)
    assert weighted_sum_closed(1, q) == pytest.approx(weighted_sum_closed(1, p), rel=1e-10)


@given(a_abs, bc, bc)
def test_first_weighted_sum_matches_brute(a, b, c):
    assume(abs(b - c) > 1e-3)
    p = HyperParams(a, b, c)
    out = weighted_sum_brute(1, p)
    assert close(out.value, weighted_sum_closed(1, p), out, rel=1e-9)


@given(a_abs, bc, bc)
def test_shifted_closed_matches_brute(a, b, c):
    assume(abs(b - c) > 1e-3 and abs(b - 1) > 1e-3 and abs(c - 1) > 1e-3)
    p = HyperParams(a, b, c)
    out = shifted_sum_brute(p)
    assert close(out.value, shifted_sum_closed(p), out, rel=1e-8)


@given(a_abs, bc, bc)
def test_gauss_sum_increases_with_a(a, b, c):
    assume(abs(b - c) > 1e-3 and a < 0.9)
    lo = gauss_sum_closed(HyperParams(a, b, c))
    hi = gauss_sum_closed(HyperParams(a + 0.05, b, c))
    assert hi > lo > 1.0


@given(st.floats(min_value=0.05, max_value=0.9), st.floats(min_value=0, max_value=2 * math.pi))
def test_complex_a_bounded_by_modulus(r, theta):
    # |sum (a)_n ...| <= sum (|a|)_n ... since |(a)_n| <= (|a|)_n
    a = r * complex(math.cos(theta), math.sin(theta))
    value = eval_3f2(GeneralHyperParams(a, 2.0, 3.0, 3.0, 4.0)).value
    assert abs(value) <= gauss_sum_closed(HyperParams(r, 2.0, 3.0)) + 1e-10
