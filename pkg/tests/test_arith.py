import math
import random

import pytest
from hypothesis import given, settings, strategies as st

from conftest import naive_factor, naive_is_prime, naive_order
from recurprimes.arith import (
    FactorBudget,
    divisors,
    factor_with_spf,
    factorize,
    greatest_prime_factor,
    is_prime,
    jacobi_symbol,
    legendre_symbol,
    multiplicative_order,
    primes_in_range,
    primorial_threshold,
    sieve_primes,
    smallest_prime_factors,
    trial_divide,
    valuation,
)


def test_sieve_matches_trial_division():
    expected = [n for n in range(100_001) if naive_is_prime(n)]
    assert sieve_primes(100_000) == expected


def test_segmented_range_matches_full_sieve():
    full = set(sieve_primes(300_000))
    got = primes_in_range(123_456, 298_765).tolist()
    assert got == sorted(p for p in full if 123_456 <= p < 298_765)


def test_smallest_prime_factor_table():
    lo, hi = 1000, 5000
    spf = smallest_prime_factors(lo, hi)
    for n in range(lo + 2, hi):
        assert factor_with_spf(n, spf, lo) == naive_factor(n)


def test_is_prime_small_range():
    assert [n for n in range(-5, 5000) if is_prime(n)] == [n for n in range(5000) if naive_is_prime(n)]


@pytest.mark.parametrize("n", [561, 1105, 1729, 2465, 3215031751, 3825123056546413051])
def test_is_prime_rejects_strong_pseudoprimes(n):
    assert not is_prime(n)


def test_is_prime_large_known():
    assert is_prime(2**61 - 1)
    assert is_prime(2**127 - 1)
    assert not is_prime((2**61 - 1) * (2**31 - 1))


@settings(max_examples=300, deadline=None)
@given(st.integers(min_value=-10**6, max_value=10**6).filter(lambda n: n != 0))
def test_factorize_recomposes(n):
    f = factorize(n)
    assert not f.unresolved
    assert f.value() == n
    assert f.factors == naive_factor(n)


def test_factorize_spec_example():
    f = factorize(8051)
    assert f.factors == {83: 1, 97: 1}


def test_factorize_semiprime_above_trial_bound():
    p, q = 1_000_003, 998_244_353
    f = factorize(p * q * 12)
    assert f.factors == {2: 2, 3: 1, p: 1, q: 1}


def test_factorize_zero():
    assert factorize(0).sign == 0


def test_budget_exhaustion_keeps_cofactor():
    tight = FactorBudget(trial_bound=100, rho_iterations=1, primality_rounds=5)
    n = 1_000_003 * 998_244_353
    f = factorize(n, tight)
    assert f.unresolved
    assert f.value() == n


def test_budget_validation():
    with pytest.raises(ValueError):
        FactorBudget(trial_bound=0)


def test_trial_divide_splits_at_bound():
    factors, rest = trial_divide(2**5 * 7 * 1_000_003, 100)
    assert factors == {2: 5, 7: 1}
    assert rest == 1_000_003


def test_greatest_prime_factor_convention():
    for n in (0, 1, -1):
        g = greatest_prime_factor(n)
        assert g.value == 1 and g.convention
    g = greatest_prime_factor(2**10 - 3)
    assert g.value == max(naive_factor(2**10 - 3)) and not g.convention


@settings(max_examples=200, deadline=None)
@given(st.integers(min_value=1, max_value=10**9), st.sampled_from([2, 3, 5, 7, 101]))
def test_valuation(n, p):
    v = valuation(n, p)
    assert n % p**v == 0 and n % p ** (v + 1) != 0


def test_order_matches_iteration():
    for p in sieve_primes(499):
        if p == 2:
            continue
        for g in range(1, min(p, 40)):
            assert multiplicative_order(g, p) == naive_order(g, p)


def test_order_rejects_multiple_of_p():
    with pytest.raises(ValueError):
        multiplicative_order(14, 7)


def test_legendre_matches_euler():
    for p in sieve_primes(499)[1:]:
        for a in range(-20, 60):
            e = pow(a, (p - 1) // 2, p)
            expected = 0 if a % p == 0 else (1 if e == 1 else -1)
            assert legendre_symbol(a, p) == expected


@settings(max_examples=200, deadline=None)
@given(st.integers(-10**6, 10**6), st.integers(1, 5000).map(lambda k: 2 * k + 1))
def test_jacobi_is_multiplicative_in_modulus(a, n):
    expected = 1
    for p, e in naive_factor(n).items():
        expected *= legendre_symbol(a, p) ** e
    assert jacobi_symbol(a, n) == expected


def test_legendre_rejects_non_odd_prime():
    with pytest.raises(ValueError):
        legendre_symbol(3, 2)
    with pytest.raises(ValueError):
        legendre_symbol(3, 15)


def test_primorial_threshold():
    assert primorial_threshold(0) == 0
    assert primorial_threshold(math.log(2)) == 1
    assert primorial_threshold(math.log(6)) == 2
    assert primorial_threshold(math.log(6) + 1e-9) == 3
    prod, t = 1, 0
    for p in sieve_primes(1000):
        prod *= p
        t += 1
    assert primorial_threshold(math.log(prod)) <= t


def test_divisors():
    assert divisors({2: 2, 3: 1}) == [1, 2, 3, 4, 6, 12]
    rng = random.Random(5)
    for _ in range(50):
        n = rng.randint(1, 10**5)
        assert divisors(naive_factor(n)) == [d for d in range(1, n + 1) if n % d == 0]
