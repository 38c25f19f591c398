import random
from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from recurprimes.quadring import (
    QuadElem,
    closed_form_constants,
    lucas_quad,
    quad_arith,
    reconstruct_term,
    verify_identity_43,
)
from recurprimes.recurrence import RecurrenceParams, nth_term

FIB = RecurrenceParams.fibonacci()


def test_arith_examples():
    x = quad_arith(QuadElem(1, 1, 5), QuadElem(1, -1, 5), "mul")
    assert x.equals(-4)
    cf = closed_form_constants(FIB)
    assert (cf.alpha * cf.beta).equals(-1)
    root = QuadElem.sqrt(7)
    assert quad_arith(root, root, "div").equals(1)
    with pytest.raises(ZeroDivisionError):
        quad_arith(root, QuadElem(0, 0, 7), "div")
    with pytest.raises(ValueError):
        quad_arith(root, root, "pow")


def test_closed_form_examples():
    cf = closed_form_constants(FIB)
    inv_root5 = QuadElem(0, Fraction(1, 5), 5)
    assert cf.a.equals(inv_root5)
    assert cf.b.equals(-inv_root5)
    companion = closed_form_constants(RecurrenceParams(1, 1, 2, 1))
    assert companion.a.equals(1) and companion.b.equals(1)


small_q = st.builds(Fraction, st.integers(-99, 99), st.integers(1, 20))
elems = st.builds(QuadElem, small_q, small_q, st.just(-7))


@settings(max_examples=200, deadline=None)
@given(elems, elems, elems)
def test_field_laws(x, y, z):
    assert ((x + y) * z).equals(x * z + y * z)
    assert ((x * y) * z).equals(x * (y * z))
    assert (x * y).norm() == x.norm() * y.norm()
    if not x.is_zero():
        assert (x * x.inverse()).equals(1)
        assert ((y / x) * x).equals(y)


def _random_params(rng, bound):
    while True:
        t = [rng.randint(-bound, bound) for _ in range(4)]
        if t[0] ** 2 + 4 * t[1] != 0 and t[1] != 0:
            return RecurrenceParams(*t)


def test_reconstruction_matches_recurrence():
    rng = random.Random(3)
    for _ in range(100):
        params = _random_params(rng, 20)
        cf = closed_form_constants(params)
        assert (cf.alpha + cf.beta).equals(params.r)
        assert (cf.alpha * cf.beta).equals(-params.s)
        for n in (0, 1, 2, rng.randint(3, 50)):
            assert reconstruct_term(cf, n) == nth_term(params, n)


def test_reconstruction_examples():
    assert reconstruct_term(closed_form_constants(FIB), 10) == 55
    assert reconstruct_term(closed_form_constants(RecurrenceParams.lucas(1, -2)), 6) == 5


def test_lucas_quad_matches_lucas_terms():
    params = RecurrenceParams(3, 5, 7, -2)
    cf = closed_form_constants(params)
    lucas = RecurrenceParams.lucas(3, 5)
    for n in range(30):
        assert lucas_quad(cf, n).equals(nth_term(lucas, n))


def test_identity_examples():
    assert verify_identity_43(FIB, 5, 2)
    assert verify_identity_43(RecurrenceParams(4, -7, 3, 9), 17, 0)
    for m in range(1, 15):
        assert verify_identity_43(RecurrenceParams.lucas(2, 5), m, m)


def test_identity_random():
    rng = random.Random(4)
    for _ in range(60):
        params = _random_params(rng, 15)
        m = rng.randint(0, 40)
        assert verify_identity_43(params, m, rng.randint(0, m))


def test_identity_shift_range():
    with pytest.raises(ValueError):
        verify_identity_43(FIB, 3, 4)


def test_square_discriminant_collapses():
    # D = 9 is a square; sqrt(9) must compare equal to 3
    assert QuadElem.sqrt(9).equals(3)
    params = RecurrenceParams(3, -2, 0, 1)
    cf = closed_form_constants(params)
    for n in range(20):
        assert reconstruct_term(cf, n) == 2**n - 1
