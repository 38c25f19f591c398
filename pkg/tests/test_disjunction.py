import pytest

from conftest import naive_factor, naive_is_prime, naive_order
from recurprimes.disjunction import (
    CASES,
    case_breakdown,
    classify_2p2,
    count_T,
    disjunction_count,
    is_primitive_root,
)


def _brute_T(a, b, x):
    out = []
    for p in range(3, x + 1):
        if not naive_is_prime(p) or (2 * a * b) % p == 0:
            continue
        if pow(a, (p - 1) // 2, p) != p - 1 or pow(b, (p - 1) // 2, p) != p - 1:
            continue
        if sum(naive_factor((p - 1) // 2).values()) in (1, 2):
            out.append(p)
    return out


def _brute_disjunction(a, b, x):
    out = []
    for p in range(2, x + 1):
        if not naive_is_prime(p) or (a * b) % p == 0:
            continue
        powers = {pow(a, k, p) for k in range(p)}
        if b % p in powers or naive_order(b, p) == p - 1:
            out.append(p)
    return out


def test_classify_examples():
    c = classify_2p2(11)
    assert (c.shape, c.q1) == ("case1", 5)
    c = classify_2p2(29)
    assert (c.shape, c.q1, c.q2) == ("case2", 2, 7)
    assert classify_2p2(17).shape == "not_p2"
    assert classify_2p2(3).shape == "not_p2"
    with pytest.raises(ValueError):
        classify_2p2(2)


def test_primitive_root_examples():
    assert is_primitive_root(3, 7)
    assert not is_primitive_root(2, 7)
    assert not is_primitive_root(1, 11)
    with pytest.raises(ValueError):
        is_primitive_root(14, 7)


def test_count_T_examples():
    rep = count_T(2, 3, 30)
    assert rep.count == 3 and rep.primes == [5, 19, 29]
    assert count_T(2, 3, 5).primes == [5]
    assert count_T(2, 3, 2).count == 0


@pytest.mark.parametrize("a,b", [(2, 3), (2, 5), (3, 5), (5, 7), (-1, 2), (7, 10)])
def test_count_T_matches_brute_force(a, b):
    assert count_T(a, b, 1000).primes == _brute_T(a, b, 1000)


def test_disjunction_examples():
    rep = disjunction_count(2, 3, 20)
    assert rep.count == 6 and rep.primes == [5, 7, 11, 13, 17, 19]
    assert rep.artin_count == 4 and rep.artin_contained
    assert disjunction_count(2, 3, 5).count == 1
    assert disjunction_count(2, 3, 3).count == 0


@pytest.mark.parametrize("a,b", [(2, 3), (3, 5), (5, 2), (-3, 7)])
def test_disjunction_matches_brute_force(a, b):
    assert disjunction_count(a, b, 600).primes == _brute_disjunction(a, b, 600)


def test_case_examples():
    cb = case_breakdown(2, 3, 30)
    assert cb.t_size == 3
    assert cb.tallies["case1"] >= 1  # p = 5
    assert cb.tallies["case2_1"] >= 1  # p = 29


@pytest.mark.parametrize("a,b", [(2, 3), (2, 5), (3, 5), (-1, 2), (5, 7)])
def test_case_tallies_partition_T(a, b):
    cb = case_breakdown(a, b, 20_000)
    assert set(cb.tallies) <= set(CASES)
    assert sum(cb.tallies.values()) == cb.t_size == count_T(a, b, 20_000).count
    assert cb.equal_orders_in_subgroup


def test_order_two_bucket():
    # a = -1 has order 2 at every odd prime
    cb = case_breakdown(-1, 2, 5000)
    assert cb.tallies["order_two"] == cb.t_size > 0


def test_sharded_merge_matches_whole():
    whole = case_breakdown(2, 3, 50_000)
    merged = case_breakdown(2, 3, 20_000).merge(case_breakdown(2, 3, 50_000, lo=20_001))
    assert merged.to_dict() == whole.to_dict()
    t = count_T(2, 3, 9_999).merge(count_T(2, 3, 50_000, lo=10_000))
    assert t.to_dict() == count_T(2, 3, 50_000).to_dict()
    d = disjunction_count(2, 3, 9_999).merge(disjunction_count(2, 3, 50_000, lo=10_000))
    assert d.to_dict() == disjunction_count(2, 3, 50_000).to_dict()


def test_coprime_required():
    with pytest.raises(ValueError):
        count_T(2, 4, 100)
    with pytest.raises(ValueError):
        disjunction_count(6, 9, 100)
