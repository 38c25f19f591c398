import math
import random
from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from conftest import naive_terms
from recurprimes.quadring import QuadElem, closed_form_constants
from recurprimes.recurrence import (
    DegenerateSequenceError,
    RecurrenceParams,
    classify_degeneracy,
    dominant_root_abs,
    nth_term,
    prop33_gap,
    terms_up_to,
)

FIB = RecurrenceParams.fibonacci()


def test_nth_term_examples():
    assert nth_term(FIB, 10) == 55
    assert nth_term(RecurrenceParams(3, -2, -2, -1), 4) == 13
    assert nth_term(RecurrenceParams(4, 7, 11, -3), 0) == 11


def test_terms_up_to_examples():
    assert list(terms_up_to(FIB, 5)) == [(0, 0), (1, 1), (2, 1), (3, 2), (4, 3), (5, 5)]
    assert list(terms_up_to(FIB, 0)) == [(0, 0)]
    assert [u for _, u in terms_up_to(RecurrenceParams.lucas(1, -2), 6)] == [0, 1, 1, -1, -3, -1, 5]


params_strategy = st.tuples(
    st.integers(-10, 10), st.integers(-10, 10), st.integers(-10, 10), st.integers(-10, 10)
).filter(lambda t: t[0] ** 2 + 4 * t[1] != 0)


@settings(max_examples=100, deadline=None)
@given(params_strategy, st.integers(0, 1000))
def test_doubling_matches_iteration(t, n):
    params = RecurrenceParams(*t)
    assert nth_term(params, n, "doubling") == nth_term(params, n, "iterate")


@settings(max_examples=50, deadline=None)
@given(params_strategy)
def test_stream_matches_naive(t):
    assert [u for _, u in terms_up_to(RecurrenceParams(*t), 60)] == naive_terms(*t, 60)


def _ratio_is_root_of_unity(r, s):
    """(alpha/beta)^k = 1 for some k <= 12, checked in exact quadratic arithmetic."""
    D = r * r + 4 * s
    alpha = QuadElem(Fraction(r, 2), Fraction(1, 2), D)
    beta = QuadElem(Fraction(r, 2), Fraction(-1, 2), D)
    ratio = alpha / beta
    x = ratio
    for _ in range(12):
        if (x - 1).is_zero():
            return True
        x = x * ratio
    return False


def test_classification_matches_exact_oracle():
    for r in range(-10, 11):
        for s in range(-10, 11):
            if r * r + 4 * s == 0:
                continue
            for u0, u1 in ((0, 1), (2, r), (1, 1)):
                params = RecurrenceParams(r, s, u0, u1)
                expected = (
                    s == 0
                    or _ratio_is_root_of_unity(r, s)
                    or u1 * u1 - r * u0 * u1 - s * u0 * u0 == 0
                )
                assert params.degeneracy.degenerate == expected, (r, s, u0, u1)


def test_classification_examples():
    assert str(classify_degeneracy(FIB)) == "NonDegenerate"
    d = classify_degeneracy(RecurrenceParams(0, 1, 1, 1))
    assert d.degenerate and "order_2" in d.reason
    assert classify_degeneracy(RecurrenceParams(1, -1, 0, 1)).degenerate
    assert classify_degeneracy(RecurrenceParams(2, 0, 0, 1)).degenerate
    # 2^n encoded with u0 = 1, u1 = 2: b = 0
    assert classify_degeneracy(RecurrenceParams(3, -2, 1, 2)).reason == "ab_zero"


def test_zero_discriminant_rejected():
    with pytest.raises(ValueError):
        RecurrenceParams(2, -1, 0, 1)


def test_degenerate_rejected_where_required():
    with pytest.raises(DegenerateSequenceError):
        dominant_root_abs(RecurrenceParams(1, -1, 0, 1))


def test_dominant_root_examples():
    assert dominant_root_abs(FIB).value == pytest.approx((1 + math.sqrt(5)) / 2, abs=1e-15)
    assert dominant_root_abs(RecurrenceParams.lucas(1, -2)).value == pytest.approx(math.sqrt(2), abs=1e-15)
    assert dominant_root_abs(RecurrenceParams.lucas(3, -2)).value == pytest.approx(2.0)


def _random_nondegenerate(rng, bound):
    while True:
        t = [rng.randint(-bound, bound) for _ in range(4)]
        if t[0] ** 2 + 4 * t[1] == 0:
            continue
        params = RecurrenceParams(*t)
        if not params.degeneracy.degenerate:
            return params


def test_dominant_root_against_exact_roots():
    rng = random.Random(11)
    for _ in range(200):
        params = _random_nondegenerate(rng, 30)
        cf = closed_form_constants(params)
        expected = max(cf.alpha.magnitude(), cf.beta.magnitude())
        got = dominant_root_abs(params).value
        assert got == pytest.approx(expected, rel=1e-12)
        assert got >= math.sqrt(2) - 1e-12


def test_term_growth_bound():
    rng = random.Random(12)
    for _ in range(50):
        params = _random_nondegenerate(rng, 10)
        cf = closed_form_constants(params)
        scale = cf.a.magnitude() + cf.b.magnitude()
        alpha = dominant_root_abs(params).value
        for n, u in terms_up_to(params, 80):
            assert abs(u) <= scale * alpha**n * (1 + 1e-9)


def test_gap_examples():
    fit = prop33_gap(FIB, [10])
    assert fit.gaps[0][1] == pytest.approx(1.672, abs=1e-3)
    fit = prop33_gap(RecurrenceParams(3, -2, 0, 1), [5])
    assert fit.gaps[0][1] == pytest.approx(0.046, abs=1e-3)
    fit = prop33_gap(RecurrenceParams.lucas(2, 3), [1])
    assert fit.gaps[0][1] == pytest.approx(1.0)
    assert fit.c0_hat is None


def test_gap_rejects_zero_term():
    with pytest.raises(ValueError):
        prop33_gap(FIB, [0, 1])


def test_power_minus_encoding():
    params = RecurrenceParams.power_minus(2, 3)
    assert [u for _, u in terms_up_to(params, 8)] == [2**n - 3 for n in range(9)]
