"""The two-variable Artin set: primes p with b mod p in <a mod p>."""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Iterable, Optional

from .arith import (
    DEFAULT_BUDGET,
    FactorBudget,
    factor_with_spf,
    greatest_prime_factor,
    is_prime,
    multiplicative_order,
    primes_in_range,
    smallest_prime_factors,
)

SHARD_SIZE = 1 << 17


@dataclass
class ArtinReport:
    x: int
    count: int = 0
    primes: Optional[list] = None
    excluded: int = 0  # primes <= x dividing the numerators/denominators
    lo: int = 2  # report covers primes p with lo <= p <= x

    @property
    def log_x_ratio(self) -> Optional[float]:
        return self.count / math.log(self.x) if self.x > 1 else None

    def merge(self, other: "ArtinReport") -> "ArtinReport":
        """Combine reports over adjacent disjoint prime ranges."""
        first, second = sorted([self, other], key=lambda rep: rep.lo)
        if first.x >= second.lo:
            raise ValueError("prime ranges overlap")
        primes = None
        if first.primes is not None and second.primes is not None:
            primes = first.primes + second.primes
        return ArtinReport(
            x=second.x,
            count=first.count + second.count,
            primes=primes,
            excluded=first.excluded + second.excluded,
            lo=first.lo,
        )

    def to_dict(self) -> dict:
        out = {
            "x": self.x,
            "count": self.count,
            "excluded": self.excluded,
            "log_x_ratio": self.log_x_ratio,
        }
        if self.primes is not None:
            out["primes"] = self.primes
        return out


def in_subgroup(a: int, b: int, p: int, factors_of_p_minus_1: Optional[dict] = None) -> bool:
    """b mod p lies in the cyclic subgroup generated by a mod p.

    F_p^* is cyclic, so this holds exactly when ord(b) divides ord(a).
    """
    if a % p == 0 or b % p == 0:
        raise ValueError(f"p={p} divides a*b")
    oa = multiplicative_order(a, p, factors_of_p_minus_1)
    ob = multiplicative_order(b, p, factors_of_p_minus_1)
    return oa % ob == 0


def _scan(a_of, b_of, bad, lo: int, hi: int, keep: bool) -> tuple[int, list, int]:
    """Walk primes in [lo, hi] testing membership of b_of(p) in <a_of(p)>."""
    count, excluded, kept = 0, 0, []
    if hi < max(lo, 2):
        return 0, kept, 0
    spf = smallest_prime_factors(lo - 1, hi)
    for p in primes_in_range(lo, hi + 1).tolist():
        if bad % p == 0:
            excluded += 1
            continue
        if p == 2:
            # F_2^* is trivial: every unit is in every subgroup
            count += 1
            if keep:
                kept.append(p)
            continue
        fac = factor_with_spf(p - 1, spf, lo - 1)
        a, b = a_of(p), b_of(p)
        oa = multiplicative_order(a, p, fac)
        if pow(b, oa, p) == 1:
            count += 1
            if keep:
                kept.append(p)
    return count, kept, excluded


def artin_count(
    a: int,
    b: int,
    x: int,
    *,
    list_primes: bool = False,
    lo: int = 2,
) -> ArtinReport:
    """Count primes lo <= p <= x, p not dividing ab, with b in <a> mod p."""
    if abs(a) <= 1:
        raise ValueError(f"need |a| != 1 and a != 0, got a={a}")
    if b == 0:
        raise ValueError("need b != 0")
    report = ArtinReport(x=x, primes=[] if list_primes else None, lo=lo)
    for start in range(lo, x + 1, SHARD_SIZE):
        stop = min(start + SHARD_SIZE - 1, x)
        count, kept, excluded = _scan(lambda p: a, lambda p: b, a * b, start, stop, list_primes)
        report.count += count
        report.excluded += excluded
        if list_primes:
            report.primes.extend(kept)
    return report


def artin_count_rational(
    a1: int,
    a2: int,
    b1: int,
    b2: int,
    x: int,
    *,
    list_primes: bool = False,
    lo: int = 2,
) -> ArtinReport:
    """Same count for a = a1/a2, b = b1/b2, excluding primes dividing a1 a2 b1 b2."""
    if math.gcd(a1, a2) != 1 or math.gcd(b1, b2) != 1:
        raise ValueError("need gcd(a1, a2) = gcd(b1, b2) = 1")
    if a2 == 0 or b2 == 0 or a1 == 0 or b1 == 0:
        raise ValueError("numerators and denominators must be nonzero")
    if abs(a1) == abs(a2):
        raise ValueError("need |a1/a2| != 1")
    bad = a1 * a2 * b1 * b2
    report = ArtinReport(x=x, primes=[] if list_primes else None, lo=lo)
    for start in range(lo, x + 1, SHARD_SIZE):
        stop = min(start + SHARD_SIZE - 1, x)
        count, kept, excluded = _scan(
            lambda p: a1 * pow(a2, -1, p) % p,
            lambda p: b1 * pow(b2, -1, p) % p,
            bad,
            start,
            stop,
            list_primes,
        )
        report.count += count
        report.excluded += excluded
        if list_primes:
            report.primes.extend(kept)
    return report


def stewart_curve(n: int) -> Optional[float]:
    """sqrt(n) * exp(log n / (104 log log n)); defined for n >= 3."""
    if n < 3:
        return None
    return math.sqrt(n) * math.exp(math.log(n) / (104 * math.log(math.log(n))))


@dataclass
class GpfWindow:
    a: int
    b: int
    N: int
    y: int
    rows: list = field(default_factory=list)  # dicts per n
    skipped_zero: list = field(default_factory=list)
    collisions: list = field(default_factory=list)  # (m, n, q, q | b^(n-m) - 1)

    @property
    def distinct(self) -> int:
        return len({row["gpf"] for row in self.rows})

    @property
    def all_distinct(self) -> bool:
        return self.distinct == len(self.rows)

    def to_dict(self) -> dict:
        return {
            "rows": self.rows,
            "distinct": self.distinct,
            "all_distinct": self.all_distinct,
            "skipped_zero": self.skipped_zero,
            "collisions": [
                {"m": m, "n": n, "q": q, "q_divides_b_pow_diff_minus_1": ok}
                for m, n, q, ok in self.collisions
            ],
        }


def gpf_window(a: int, b: int, N: int, y: int, budget: FactorBudget = DEFAULT_BUDGET) -> GpfWindow:
    """Greatest prime factors of a^n - b for N - y <= n <= N."""
    if a < 2:
        raise ValueError("need a >= 2")
    if y > N or y < 0:
        raise ValueError("need 0 <= y <= N")
    out = GpfWindow(a, b, N, y)
    seen: dict[int, int] = {}
    for n in range(N - y, N + 1):
        value = a**n - b
        if value == 0:
            out.skipped_zero.append(n)
            continue
        g = greatest_prime_factor(value, budget)
        out.rows.append(
            {
                "n": n,
                "gpf": g.value,
                "convention": g.convention,
                "unresolved": g.unresolved,
                "stewart": stewart_curve(n),
            }
        )
        if g.value in seen and not g.convention:
            m = seen[g.value]
            q = g.value
            out.collisions.append((m, n, q, (pow(b, n - m, q) - 1) % q == 0))
        seen.setdefault(g.value, n)
    return out


def brute_in_subgroup(a: int, b: int, p: int) -> bool:
    """Enumerate <a mod p> directly. Reference oracle for tests and verify."""
    target = b % p
    g = a % p
    x = 1
    for _ in range(p):
        if x == target:
            return True
        x = x * g % p
        if x == 1:
            break
    return x == target


def brute_artin(a: int, b: int, x: int) -> list[int]:
    return [
        p
        for p in range(2, x + 1)
        if is_prime(p) and (a * b) % p != 0 and brute_in_subgroup(a, b, p)
    ]


def shard_bounds(lo: int, x: int, size: int = SHARD_SIZE) -> list[tuple[int, int]]:
    """Fixed prime-range shards [start, stop]; independent of worker count."""
    return [(s, min(s + size - 1, x)) for s in range(lo, x + 1, size)]


def merge_artin(reports: Iterable[ArtinReport]) -> Optional[ArtinReport]:
    out = None
    for rep in sorted(reports, key=lambda r: r.lo):
        out = rep if out is None else out.merge(rep)
    return out
