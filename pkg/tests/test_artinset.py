import math

import pytest
from hypothesis import given, settings, strategies as st

from recurprimes.artinset import (
    ArtinReport,
    artin_count,
    artin_count_rational,
    brute_artin,
    brute_in_subgroup,
    gpf_window,
    in_subgroup,
    merge_artin,
    shard_bounds,
    stewart_curve,
)
from recurprimes.arith import sieve_primes


def test_membership_examples():
    assert in_subgroup(2, 3, 5)
    assert not in_subgroup(2, 3, 7)
    assert in_subgroup(4, 2, 7)
    with pytest.raises(ValueError):
        in_subgroup(7, 3, 7)


def test_membership_matches_enumeration():
    for p in sieve_primes(300):
        for a in range(-6, 12):
            for b in range(-6, 12):
                if (a * b) % p:
                    assert in_subgroup(a, b, p) == brute_in_subgroup(a, b, p)


def test_count_examples():
    rep = artin_count(2, 3, 20, list_primes=True)
    assert rep.count == 4 and rep.primes == [5, 11, 13, 19]
    assert artin_count(2, 3, 5, list_primes=True).primes == [5]
    assert artin_count(2, 3, 2).count == 0


@pytest.mark.parametrize("a,b", [(2, 3), (3, 2), (-2, 5), (5, 1), (10, 7), (2, -1)])
def test_count_matches_brute_force(a, b):
    assert artin_count(a, b, 3000, list_primes=True).primes == brute_artin(a, b, 3000)


def test_prime_two_counts_when_ab_odd():
    assert artin_count(3, 5, 2, list_primes=True).primes == [2]


def test_count_non_decreasing():
    counts = [artin_count(2, 3, x).count for x in range(2, 400, 7)]
    assert counts == sorted(counts)


def test_rational_examples():
    assert artin_count_rational(2, 1, 3, 1, 20).count == 4
    rep = artin_count_rational(3, 2, 5, 1, 11, list_primes=True)
    assert rep.primes == [7, 11]
    assert artin_count_rational(3, 2, 5, 1, 2).count == 0
    with pytest.raises(ValueError):
        artin_count_rational(2, 4, 3, 1, 10)


def test_rational_matches_modular_inverse_oracle():
    rep = artin_count_rational(3, 7, -5, 4, 2000, list_primes=True)
    expected = []
    for p in sieve_primes(2000):
        if (3 * 7 * 5 * 4) % p == 0:
            continue
        a = 3 * pow(7, -1, p) % p
        b = -5 * pow(4, -1, p) % p
        if brute_in_subgroup(a, b, p):
            expected.append(p)
    assert rep.primes == expected


def test_input_validation():
    with pytest.raises(ValueError):
        artin_count(1, 3, 10)
    with pytest.raises(ValueError):
        artin_count(2, 0, 10)


@settings(max_examples=20, deadline=None)
@given(st.integers(3, 20_000), st.integers(50, 5_000))
def test_shards_merge_to_whole(x, size):
    whole = artin_count(2, 3, x, list_primes=True)
    parts = [artin_count(2, 3, hi, lo=lo, list_primes=True) for lo, hi in shard_bounds(2, x, size)]
    merged = merge_artin(reversed(parts))
    assert merged.to_dict() == whole.to_dict()


def test_merge_rejects_overlap():
    a = ArtinReport(x=10, lo=2)
    with pytest.raises(ValueError):
        a.merge(ArtinReport(x=20, lo=10))


def test_gpf_reference_curve():
    assert stewart_curve(100) == pytest.approx(10.29, abs=0.01)
    assert stewart_curve(2) is None


def test_gpf_window_examples():
    w = gpf_window(2, 3, 6, 2)
    assert [(row["n"], row["gpf"]) for row in w.rows] == [(4, 13), (5, 29), (6, 61)]
    assert w.all_distinct
    w = gpf_window(2, 1, 4, 2)
    assert [row["gpf"] for row in w.rows] == [3, 7, 5]


def test_gpf_window_collisions_are_checked():
    w = gpf_window(2, 1, 40, 39)
    assert not w.all_distinct
    for m, n, q, ok in w.collisions:
        assert ok == ((pow(1, n - m, q) - 1) % q == 0)
        assert (2**m - 1) % q == 0 and (2**n - 1) % q == 0


def test_gpf_window_zero_value():
    assert gpf_window(2, 4, 3, 3).skipped_zero == [2]
    w = gpf_window(2, 3, 2, 2)
    assert [(row["gpf"], row["convention"]) for row in w.rows] == [(2, False), (1, True), (1, True)]
    assert w.collisions == []
