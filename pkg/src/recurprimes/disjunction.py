"""Primes where b lies in <a> or b is a primitive root, and the set T_x feeding them."""

from __future__ import annotations

import math
from collections import Counter
from dataclasses import dataclass, field
from typing import Optional

from .arith import (
    factor_with_spf,
    factorize,
    is_prime,
    jacobi_symbol,
    multiplicative_order,
    primes_in_range,
    smallest_prime_factors,
)

SHARD_SIZE = 1 << 17

CASES = ("case1", "case2_1", "case2_2", "case2_3", "case2_tie", "order_two", "other")


@dataclass(frozen=True)
class P2Class:
    """Shape of p - 1: 2q (case1), 2 q1 q2 with q1 <= q2 (case2), or neither."""

    p: int
    shape: str  # "case1" | "case2" | "not_p2"
    q1: Optional[int] = None
    q2: Optional[int] = None


def _check_coprime(a: int, b: int):
    if math.gcd(a, b) != 1:
        raise ValueError(f"need gcd(a, b) = 1, got gcd({a}, {b}) = {math.gcd(a, b)}")


def _classify(p: int, half_factors: dict[int, int]) -> P2Class:
    omega_big = sum(half_factors.values())
    if omega_big == 1:
        return P2Class(p, "case1", next(iter(half_factors)))
    if omega_big == 2:
        qs = sorted(q for q, e in half_factors.items() for _ in range(e))
        return P2Class(p, "case2", qs[0], qs[1])
    # (p - 1)/2 = 1 (p = 3) is neither a prime nor a product of two primes
    return P2Class(p, "not_p2")


def classify_2p2(p: int) -> P2Class:
    if p == 2 or not is_prime(p):
        raise ValueError(f"need an odd prime, got {p}")
    return _classify(p, factorize((p - 1) // 2).factors)


def is_primitive_root(b: int, p: int) -> bool:
    if b % p == 0:
        raise ValueError(f"p={p} divides b={b}")
    return multiplicative_order(b, p) == p - 1


@dataclass
class TReport:
    x: int
    count: int = 0
    primes: list = field(default_factory=list)
    excluded: int = 0  # primes dividing 2ab

    def merge(self, other: "TReport") -> "TReport":
        return TReport(
            max(self.x, other.x),
            self.count + other.count,
            sorted(self.primes + other.primes),
            self.excluded + other.excluded,
        )

    @property
    def reference(self) -> Optional[float]:
        """x / (log x)^2."""
        return self.x / math.log(self.x) ** 2 if self.x > 1 else None

    def to_dict(self) -> dict:
        return {
            "x": self.x,
            "count": self.count,
            "primes": self.primes,
            "excluded": self.excluded,
            "reference_x_over_log2": self.reference,
        }


@dataclass
class DisjunctionReport:
    x: int
    count: int = 0
    primes: list = field(default_factory=list)
    excluded: int = 0
    artin_count: int = 0  # |S_x|
    artin_contained: bool = True  # S_x is a subset of S'_x

    def merge(self, other: "DisjunctionReport") -> "DisjunctionReport":
        return DisjunctionReport(
            max(self.x, other.x),
            self.count + other.count,
            sorted(self.primes + other.primes),
            self.excluded + other.excluded,
            self.artin_count + other.artin_count,
            self.artin_contained and other.artin_contained,
        )

    def to_dict(self) -> dict:
        return {
            "x": self.x,
            "count": self.count,
            "primes": self.primes,
            "excluded": self.excluded,
            "artin_count": self.artin_count,
            "artin_contained": self.artin_contained,
            "reference_x_over_log2": self.x / math.log(self.x) ** 2 if self.x > 1 else None,
        }


@dataclass
class CaseBreakdown:
    x: int
    tallies: Counter = field(default_factory=Counter)
    t_size: int = 0
    order_claim_holds: bool = True  # f_p(a) even, and in the listed forms unless 2
    equal_orders_instances: int = 0  # f_p(a) = f_p(b) = 2 q2 seen
    equal_orders_in_subgroup: bool = True

    def merge(self, other: "CaseBreakdown") -> "CaseBreakdown":
        return CaseBreakdown(
            max(self.x, other.x),
            self.tallies + other.tallies,
            self.t_size + other.t_size,
            self.order_claim_holds and other.order_claim_holds,
            self.equal_orders_instances + other.equal_orders_instances,
            self.equal_orders_in_subgroup and other.equal_orders_in_subgroup,
        )

    @property
    def case2_3_fraction(self) -> Optional[float]:
        return self.tallies["case2_3"] / self.t_size if self.t_size else None

    def to_dict(self) -> dict:
        return {
            "x": self.x,
            "t_size": self.t_size,
            "tallies": {case: self.tallies[case] for case in CASES},
            "case2_3_fraction": self.case2_3_fraction,
            "order_claim_holds": self.order_claim_holds,
            "equal_orders_instances": self.equal_orders_instances,
            "equal_orders_in_subgroup": self.equal_orders_in_subgroup,
        }


def _odd_primes_with_factors(lo: int, hi: int):
    """Yield (p, factorization of p - 1) for odd primes lo <= p <= hi."""
    lo = max(lo, 3)
    if hi < lo:
        return
    spf = smallest_prime_factors(lo - 1, hi)
    for p in primes_in_range(lo, hi + 1).tolist():
        yield p, factor_with_spf(p - 1, spf, lo - 1)


def _in_T(a: int, b: int, p: int, fac: dict[int, int]) -> Optional[P2Class]:
    if jacobi_symbol(a, p) != -1 or jacobi_symbol(b, p) != -1:
        return None
    half = dict(fac)
    half[2] -= 1
    if half[2] == 0:
        del half[2]
    cls = _classify(p, half)
    return None if cls.shape == "not_p2" else cls


def count_T(a: int, b: int, x: int, *, lo: int = 2) -> TReport:
    """Primes p <= x, p not dividing 2ab, with (a/p) = (b/p) = -1 and (p-1)/2 in P2."""
    _check_coprime(a, b)
    rep = TReport(x)
    bad = 2 * a * b
    for start in range(lo, x + 1, SHARD_SIZE):
        stop = min(start + SHARD_SIZE - 1, x)
        if start <= 2 <= stop:
            rep.excluded += 1  # 2 always divides 2ab
        for p, fac in _odd_primes_with_factors(start, stop):
            if bad % p == 0:
                rep.excluded += 1
                continue
            if _in_T(a, b, p, fac) is not None:
                rep.count += 1
                rep.primes.append(p)
    return rep


def disjunction_count(a: int, b: int, x: int, *, lo: int = 2) -> DisjunctionReport:
    """Primes p <= x, p not dividing ab, with b in <a> or b a primitive root mod p."""
    _check_coprime(a, b)
    rep = DisjunctionReport(x)
    bad = a * b
    for start in range(lo, x + 1, SHARD_SIZE):
        stop = min(start + SHARD_SIZE - 1, x)
        if start <= 2 <= stop:
            if bad % 2 == 0:
                rep.excluded += 1
            else:
                rep.count += 1
                rep.primes.append(2)
                rep.artin_count += 1
        for p, fac in _odd_primes_with_factors(start, stop):
            if bad % p == 0:
                rep.excluded += 1
                continue
            fa = multiplicative_order(a, p, fac)
            fb = multiplicative_order(b, p, fac)
            counted = fa % fb == 0 or fb == p - 1
            if counted:
                rep.count += 1
                rep.primes.append(p)
            # S_x membership by the power test, independent of the order route
            if pow(b, fa, p) == 1:
                rep.artin_count += 1
                if not counted:
                    rep.artin_contained = False
    return rep


def case_breakdown(a: int, b: int, x: int, *, lo: int = 2) -> CaseBreakdown:
    """Tally the order of a over T_x by the case split of the disjunction argument.

    case2_tie holds q1 == q2 with f_p(a) = 2q; order_two holds f_p(a) = 2,
    which the argument assumes away but which occurs when a = -1 mod p.
    """
    _check_coprime(a, b)
    out = CaseBreakdown(x)
    bad = 2 * a * b
    for start in range(lo, x + 1, SHARD_SIZE):
        stop = min(start + SHARD_SIZE - 1, x)
        for p, fac in _odd_primes_with_factors(start, stop):
            if bad % p == 0:
                continue
            cls = _in_T(a, b, p, fac)
            if cls is None:
                continue
            out.t_size += 1
            fa = multiplicative_order(a, p, fac)
            fb = multiplicative_order(b, p, fac)
            if fa % 2 or fb % 2:
                out.order_claim_holds = False
            if fa == 2:
                case = "order_two"
            elif cls.shape == "case1":
                case = "case1" if fa == p - 1 else None
            else:
                q1, q2 = cls.q1, cls.q2
                if fa == p - 1:
                    case = "case2_1"
                elif q1 == q2 and fa == 2 * q1:
                    case = "case2_tie"
                elif fa == 2 * q2:
                    case = "case2_2"
                elif fa == 2 * q1:
                    case = "case2_3"
                else:
                    case = None
                if fa == fb == 2 * q2:
                    out.equal_orders_instances += 1
                    if pow(b, fa, p) != 1:
                        out.equal_orders_in_subgroup = False
            if case is None:
                # an even order outside the enumerated forms
                out.order_claim_holds = False
                case = "other"
            out.tallies[case] += 1
    return out
