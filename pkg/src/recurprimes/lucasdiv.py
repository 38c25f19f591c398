"""Divisibility of Lucas sequences t_0 = 0, t_1 = 1, t_n = r t_{n-1} + s t_{n-2}."""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import NamedTuple, Optional

from .arith import (
    DEFAULT_BUDGET,
    FactorBudget,
    divisors,
    factorize,
    is_prime,
    jacobi_symbol,
)


@dataclass(frozen=True)
class RankRecord:
    p: int
    ell: int
    val_at_ell: int


def _check_lucas(r: int, s: int, p: Optional[int] = None):
    if math.gcd(r, s) != 1:
        raise ValueError(f"gcd(r, s) = {math.gcd(r, s)} != 1 for r={r}, s={s}")
    if p is not None:
        if not is_prime(p):
            raise ValueError(f"{p} is not prime")
        if s % p == 0:
            raise ValueError(f"p={p} divides s={s} (so p divides alpha*beta)")


def lucas_pair_mod(r: int, s: int, n: int, m: int) -> tuple[int, int]:
    """(t_n mod m, t_{n+1} mod m) by index doubling.

    t_{2k} = t_k (2 t_{k+1} - r t_k),  t_{2k+1} = t_{k+1}^2 + s t_k^2.
    """
    a, b = 0, 1 % m  # t_0, t_1
    for bit in bin(n)[2:]:
        a, b = a * (2 * b - r * a) % m, (b * b + s * a * a) % m
        if bit == "1":
            a, b = b, (r * b + s * a) % m
    return a, b


def lucas_mod(r: int, s: int, n: int, m: int) -> int:
    return lucas_pair_mod(r, s, n, m)[0]


def _valuation_mod_powers(r: int, s: int, n: int, p: int) -> int:
    """v_p(t_n) for t_n != 0, without forming t_n: raise the modulus p^e until t_n survives."""
    # |t_n| <= (|r| + |s|)^n, so vanishing modulo a larger power means t_n = 0
    cap = (abs(r) + abs(s)) ** n
    e = 2
    while True:
        mod = p**e
        t = lucas_mod(r, s, n, mod)
        if t != 0:
            v = 0
            while t % p == 0:
                t //= p
                v += 1
            return v
        if mod > cap:
            raise ValueError(f"t_{n} = 0 for r={r}, s={s}; the sequence is degenerate")
        e *= 2


def rank_of_apparition(r: int, s: int, p: int) -> RankRecord:
    """Smallest ell >= 1 with p | t_ell.

    For odd p not dividing D the divisors of p - (D/p) are tried first; p = 2,
    p | D, or a miss there falls back to iterating t mod p up to p + 1.
    """
    _check_lucas(r, s, p)
    D = r * r + 4 * s
    ell = None
    if p != 2 and D % p != 0:
        for d in divisors(factorize(p - jacobi_symbol(D, p)).factors):
            if lucas_mod(r, s, d, p) == 0:
                ell = d
                break
    if ell is None:
        prev, cur = 0, 1
        for n in range(1, p + 2):
            if cur % p == 0:
                ell = n
                break
            prev, cur = cur, (r * cur + s * prev) % p
    if ell is None:  # pragma: no cover - excluded by p not dividing s
        raise ArithmeticError(f"no rank of apparition found for p={p} below p+1")
    return RankRecord(p, ell, _valuation_mod_powers(r, s, ell, p))


def _v(n: int, p: int) -> int:
    e = 0
    while n % p == 0:
        n //= p
        e += 1
    return e


def lucas_valuation(r: int, s: int, p: int, n: int, rank: Optional[RankRecord] = None) -> int:
    """v_p(t_n) from the rank of apparition alone."""
    if n < 1:
        raise ValueError("n must be positive")
    if rank is None:
        rank = rank_of_apparition(r, s, p)
    ell = rank.ell
    if n % ell:
        return 0
    k = n // ell
    if p > 2:
        return rank.val_at_ell + _v(k, p)
    if k % 2:
        return rank.val_at_ell
    return _valuation_mod_powers(r, s, 2 * ell, 2) + _v(k, 2) - 1


class PrimitiveDivisors(NamedTuple):
    n: int
    primes: frozenset
    unresolved: Optional[int]  # cofactor of t_n the budget could not split


def primitive_divisor_set(
    r: int, s: int, n: int, budget: FactorBudget = DEFAULT_BUDGET
) -> PrimitiveDivisors:
    """Primes p | t_n with p not dividing D and rank of apparition exactly n."""
    _check_lucas(r, s)
    if n < 1:
        raise ValueError("n must be positive")
    from .recurrence import RecurrenceParams, nth_term

    t = nth_term(RecurrenceParams.lucas(r, s), n)
    if t == 0:
        return PrimitiveDivisors(n, frozenset(), None)
    f = factorize(t, budget)
    D = r * r + 4 * s
    found = frozenset(
        p for p in f.factors if D % p != 0 and rank_of_apparition(r, s, p).ell == n
    )
    return PrimitiveDivisors(n, found, f.cofactor)


def omega_lucas_product(r: int, s: int, N: int, budget: FactorBudget = DEFAULT_BUDGET):
    """Distinct primes dividing t_1 ... t_N, compared against N - 9."""
    from .omega import omega_product
    from .recurrence import RecurrenceParams

    _check_lucas(r, s)
    report = omega_product(RecurrenceParams.lucas(r, s), N, budget)
    report.bounds["thm22_floor"] = N - 9
    return report
