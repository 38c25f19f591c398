"""Integer primitives: sieving, primality, factorization, orders, symbols."""

from __future__ import annotations

import math
import random
from dataclasses import dataclass, field
from functools import lru_cache
from typing import NamedTuple, Optional

import numpy as np

SEGMENT_SIZE = 1 << 18

# Deterministic Miller-Rabin bases for n < 3.3e24 (covers n < 2**64).
_MR_BASES = (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41)
_SMALL_PRIMES = (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41, 43, 47)


@dataclass(frozen=True)
class FactorBudget:
    """Limits for the factoring pipeline.

    trial_bound is the largest prime tried by division, rho_iterations caps
    the Brent iterations spent on each composite piece, and primality_rounds
    is the number of random Miller-Rabin rounds used above 2**64.
    """

    trial_bound: int = 10_000
    rho_iterations: int = 2_000_000
    primality_rounds: int = 25

    def __post_init__(self):
        for name in ("trial_bound", "rho_iterations", "primality_rounds"):
            if getattr(self, name) < 1:
                raise ValueError(f"{name} must be >= 1")


DEFAULT_BUDGET = FactorBudget()


@dataclass(frozen=True)
class FactoredInteger:
    sign: int
    factors: dict = field(default_factory=dict)
    cofactor: Optional[int] = None

    @property
    def unresolved(self) -> bool:
        return self.cofactor is not None

    @property
    def primes(self) -> list[int]:
        return sorted(self.factors)

    def value(self) -> int:
        out = self.sign
        for p, e in self.factors.items():
            out *= p**e
        if self.cofactor is not None:
            out *= self.cofactor
        return out

    def __hash__(self):
        return hash((self.sign, tuple(sorted(self.factors.items())), self.cofactor))


class GreatestPrimeFactor(NamedTuple):
    value: int
    convention: bool  # n in {0, 1, -1}; value fixed to 1
    unresolved: bool  # value may be a composite cofactor


# ---------------------------------------------------------------- sieving


def _base_primes(limit: int) -> np.ndarray:
    """Primes <= limit by a plain (unsegmented) sieve; used for small limits."""
    if limit < 2:
        return np.zeros(0, dtype=np.int64)
    sieve = np.ones(limit + 1, dtype=bool)
    sieve[:2] = False
    for i in range(2, math.isqrt(limit) + 1):
        if sieve[i]:
            sieve[i * i :: i] = False
    return np.flatnonzero(sieve).astype(np.int64)


def primes_in_range(lo: int, hi: int) -> np.ndarray:
    """Primes p with lo <= p < hi, via one segmented pass."""
    lo = max(lo, 2)
    if hi <= lo:
        return np.zeros(0, dtype=np.int64)
    base = _base_primes(math.isqrt(hi - 1))
    chunks = []
    for start in range(lo, hi, SEGMENT_SIZE):
        stop = min(start + SEGMENT_SIZE, hi)
        seg = np.ones(stop - start, dtype=bool)
        for p in base:
            p = int(p)
            if p * p >= stop:
                break
            first = max(p * p, -(-start // p) * p)
            seg[first - start :: p] = False
        chunks.append(np.flatnonzero(seg) + start)
    return np.concatenate(chunks).astype(np.int64)


def sieve_primes(limit: int) -> list[int]:
    """All primes <= limit in ascending order."""
    if limit < 2:
        return []
    return primes_in_range(2, limit + 1).tolist()


def smallest_prime_factors(lo: int, hi: int) -> np.ndarray:
    """spf[i] is the smallest prime factor of lo + i, for lo + i in [lo, hi).

    Entries equal to the number itself mark primes; 0 and 1 map to 0 and 1.
    """
    lo = max(lo, 0)
    size = hi - lo
    spf = np.zeros(size, dtype=np.int64)
    if size <= 0:
        return spf
    for p in _base_primes(math.isqrt(max(hi - 1, 0))):
        p = int(p)
        first = max(p, -(-lo // p) * p)
        view = spf[first - lo :: p]
        view[view == 0] = p
    untouched = spf == 0
    spf[untouched] = np.arange(lo, hi, dtype=np.int64)[untouched]
    return spf


def factor_with_spf(n: int, spf: np.ndarray, offset: int) -> dict[int, int]:
    """Factor n (> 0) when every cofactor of n lies in the spf window.

    Only valid while the running cofactor m satisfies offset <= m; below the
    window we fall back to trial division on the (small) remainder.
    """
    out: dict[int, int] = {}
    m = n
    while m > 1:
        if m >= offset:
            q = int(spf[m - offset])
        else:
            q = _smallest_factor_trial(m)
        e = 0
        while m % q == 0:
            m //= q
            e += 1
        out[q] = out.get(q, 0) + e
    return out


def _smallest_factor_trial(m: int) -> int:
    if m % 2 == 0:
        return 2
    d = 3
    while d * d <= m:
        if m % d == 0:
            return d
        d += 2
    return m


@lru_cache(maxsize=8)
def _trial_primes(bound: int) -> tuple[int, ...]:
    return tuple(sieve_primes(bound))


# -------------------------------------------------------------- primality


def _mr_round(n: int, d: int, s: int, a: int) -> bool:
    """True when a is NOT a witness for compositeness of n."""
    x = pow(a, d, n)
    if x == 1 or x == n - 1:
        return True
    for _ in range(s - 1):
        x = x * x % n
        if x == n - 1:
            return True
    return False


def is_prime(n: int, rounds: int = DEFAULT_BUDGET.primality_rounds) -> bool:
    """Miller-Rabin; deterministic below 2**64, error < 4**-rounds above."""
    if n < 2:
        return False
    for p in _SMALL_PRIMES:
        if n % p == 0:
            return n == p
    d, s = n - 1, 0
    while d % 2 == 0:
        d //= 2
        s += 1
    for a in _MR_BASES:
        if not _mr_round(n, d, s, a):
            return False
    if n < 1 << 64:
        return True
    rng = random.Random(n)  # reproducible bases per n
    for _ in range(rounds):
        if not _mr_round(n, d, s, rng.randrange(2, n - 1)):
            return False
    return True


# ---------------------------------------------------------- factorization


def _integer_root(n: int, k: int) -> int:
    """floor(n ** (1/k)) for n >= 0."""
    if n < 2:
        return n
    x = 1 << -(-n.bit_length() // k)
    while True:
        y = ((k - 1) * x + n // x ** (k - 1)) // k
        if y >= x:
            return x
        x = y


def _perfect_power(n: int) -> Optional[tuple[int, int]]:
    for k in range(n.bit_length(), 1, -1):
        root = _integer_root(n, k)
        if root > 1 and root**k == n:
            return root, k
    return None


def _brent(n: int, c: int, y: int, max_iter: int) -> tuple[Optional[int], int]:
    """One Brent cycle-finding run of x -> x^2 + c mod n.

    Returns (nontrivial factor or None, iterations used).
    """
    m = 128
    g = r = q = 1
    used = 0
    x = ys = y
    while g == 1:
        x = y
        for _ in range(r):
            y = (y * y + c) % n
        used += r
        k = 0
        while k < r and g == 1:
            ys = y
            for _ in range(min(m, r - k)):
                y = (y * y + c) % n
                q = q * abs(x - y) % n
            g = math.gcd(q, n)
            k += m
        used += min(k, r)
        r *= 2
        if used > max_iter and g == 1:
            return None, used
    if g == n:
        while True:
            ys = (ys * ys + c) % n
            g = math.gcd(abs(x - ys), n)
            if g > 1:
                break
    if g == n:
        return None, used
    return g, used


def _split(n: int, budget: FactorBudget) -> Optional[int]:
    """Find a nontrivial divisor of composite n within the rho budget."""
    pp = _perfect_power(n)
    if pp is not None:
        return pp[0]
    rng = random.Random(n)  # seeds derived from n
    left = budget.rho_iterations
    while left > 0:
        c = rng.randrange(1, n - 1)
        y = rng.randrange(0, n)
        g, used = _brent(n, c, y, left)
        left -= used
        if g is not None:
            return g
    return None


def _factor_rest(n: int, budget: FactorBudget, out: dict[int, int], leftovers: list[int]):
    stack = [n]
    while stack:
        m = stack.pop()
        if m == 1:
            continue
        if m < budget.trial_bound**2 or is_prime(m, budget.primality_rounds):
            # below trial_bound**2 every survivor of trial division is prime
            out[m] = out.get(m, 0) + 1
            continue
        d = _split(m, budget)
        if d is None:
            leftovers.append(m)
        else:
            stack.append(d)
            stack.append(m // d)


def trial_divide(m: int, bound: int) -> tuple[dict[int, int], int]:
    """Strip primes <= bound from m > 0; returns (factors, remaining part)."""
    out: dict[int, int] = {}
    for p in _trial_primes(bound):
        if p * p > m:
            if m > 1:  # no factor below sqrt(m): prime
                out[m] = out.get(m, 0) + 1
                m = 1
            break
        if m % p == 0:
            e = 0
            while m % p == 0:
                m //= p
                e += 1
            out[p] = e
    return out, m


def factor_large(m: int, budget: FactorBudget = DEFAULT_BUDGET) -> tuple[dict[int, int], Optional[int]]:
    """Factor m > 1 known to have no prime factor <= budget.trial_bound.

    Returns (factors, unresolved cofactor or None).
    """
    out: dict[int, int] = {}
    leftovers: list[int] = []
    if m > 1:
        _factor_rest(m, budget, out, leftovers)
    return dict(sorted(out.items())), (math.prod(leftovers) if leftovers else None)


@lru_cache(maxsize=4096)
def factorize(n: int, budget: FactorBudget = DEFAULT_BUDGET) -> FactoredInteger:
    """Factor n: trial division to budget.trial_bound, then Brent rho.

    Pieces that resist rho within the budget are multiplied into ``cofactor``.
    """
    if n == 0:
        return FactoredInteger(0, {})
    sign = -1 if n < 0 else 1
    small, m = trial_divide(abs(n), budget.trial_bound)
    large, cofactor = factor_large(m, budget)
    return FactoredInteger(sign, dict(sorted({**small, **large}.items())), cofactor)


def greatest_prime_factor(n: int, budget: FactorBudget = DEFAULT_BUDGET) -> GreatestPrimeFactor:
    if n in (0, 1, -1):
        return GreatestPrimeFactor(1, True, False)
    f = factorize(n, budget)
    best = max(f.factors, default=1)
    if f.cofactor is not None:
        return GreatestPrimeFactor(max(best, f.cofactor), False, True)
    return GreatestPrimeFactor(best, False, False)


def valuation(n: int, p: int) -> int:
    """Exponent of p in n (n != 0)."""
    if n == 0:
        raise ValueError("valuation of 0 is infinite")
    e = 0
    while n % p == 0:
        n //= p
        e += 1
    return e


# ------------------------------------------------------- orders, symbols


def multiplicative_order(g: int, p: int, factors_of_p_minus_1: Optional[dict[int, int]] = None) -> int:
    """Least m >= 1 with g**m == 1 (mod p), for p prime not dividing g."""
    g %= p
    if g == 0:
        raise ValueError(f"{p} divides {g}; order undefined")
    if factors_of_p_minus_1 is None:
        factors_of_p_minus_1 = factorize(p - 1).factors
    m = p - 1
    for q in factors_of_p_minus_1:
        while m % q == 0 and pow(g, m // q, p) == 1:
            m //= q
    return m


def jacobi_symbol(a: int, n: int) -> int:
    """Jacobi symbol (a/n) for odd n > 0, by quadratic reciprocity."""
    if n <= 0 or n % 2 == 0:
        raise ValueError("Jacobi symbol needs an odd positive modulus")
    a %= n
    result = 1
    while a:
        while a % 2 == 0:
            a //= 2
            if n % 8 in (3, 5):
                result = -result
        a, n = n, a
        if a % 4 == 3 and n % 4 == 3:
            result = -result
        a %= n
    return result if n == 1 else 0


def legendre_symbol(a: int, p: int) -> int:
    if p == 2 or not is_prime(p):
        raise ValueError(f"Legendre symbol needs an odd prime, got {p}")
    return jacobi_symbol(a, p)


def primorial_threshold(bound: float) -> int:
    """Smallest t such that log(p_1 * ... * p_t) >= bound (natural log).

    The primorial is accumulated as an exact integer and its log taken at
    each step, so log(6) maps to 2 without rounding trouble.
    """
    if bound <= 0:
        return 0
    limit = 64
    t = 0
    prod = 1
    while True:
        for p in sieve_primes(limit)[t:]:
            prod *= p
            t += 1
            if math.log(prod) >= bound:
                return t
        limit *= 2


def divisors(factors: dict[int, int]) -> list[int]:
    """All positive divisors from a prime -> exponent map, ascending."""
    divs = [1]
    for p, e in factors.items():
        divs = [d * p**k for d in divs for k in range(e + 1)]
    return sorted(divs)
