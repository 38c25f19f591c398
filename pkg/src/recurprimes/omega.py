"""Distinct prime divisors of u_1 * ... * u_N and the bounds they are held against."""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Iterable, Optional

from .arith import (
    DEFAULT_BUDGET,
    FactorBudget,
    factor_large,
    primorial_threshold,
    sieve_primes,
    trial_divide,
)
from .recurrence import RecurrenceParams, dominant_root_abs, terms_up_to

GAMMA = 1 - 1 / math.sqrt(2)


def _max_prime_count(c: int, trial_bound: int) -> int:
    """floor(log c / log trial_bound), computed exactly."""
    if trial_bound < 2:
        return c.bit_length()
    k, power = 0, trial_bound
    while power <= c:
        k += 1
        power *= trial_bound
    return k


@dataclass
class OmegaReport:
    N: int
    start: int = 1
    primes: frozenset = frozenset()
    cofactors: tuple = ()  # (n, c) with every prime of c above trial_bound
    zero_terms: tuple = ()
    trial_bound: int = DEFAULT_BUDGET.trial_bound
    rows: tuple = ()  # (n, primes of u_n, unresolved cofactor or None)
    bounds: dict = field(default_factory=dict)

    @property
    def omega_certain(self) -> int:
        return len(self.primes)

    @property
    def omega_lower(self) -> int:
        # an unresolved cofactor may only repeat primes already counted
        return self.omega_certain

    @property
    def omega_upper(self) -> int:
        return self.omega_certain + sum(
            _max_prime_count(c, self.trial_bound) for _, c in self.cofactors
        )

    @property
    def unresolved_terms(self) -> int:
        return len({n for n, _ in self.cofactors})

    def merge(self, other: "OmegaReport") -> "OmegaReport":
        """Report over the union of two disjoint index ranges."""
        if self.trial_bound != other.trial_bound:
            raise ValueError("cannot merge reports built with different trial bounds")
        lo, hi = sorted([self, other], key=lambda rep: rep.start)
        if lo.N >= hi.start:
            raise ValueError("index ranges overlap")
        return OmegaReport(
            N=max(self.N, other.N),
            start=lo.start,
            primes=self.primes | other.primes,
            cofactors=tuple(sorted(self.cofactors + other.cofactors)),
            zero_terms=tuple(sorted(self.zero_terms + other.zero_terms)),
            trial_bound=self.trial_bound,
            rows=tuple(sorted(self.rows + other.rows)),
        )

    def to_dict(self) -> dict:
        return {
            "N": self.N,
            "start": self.start,
            "omega_certain": self.omega_certain,
            "omega_lower": self.omega_lower,
            "omega_upper": self.omega_upper,
            "unresolved_terms": self.unresolved_terms,
            "zero_terms": list(self.zero_terms),
            "primes": sorted(self.primes),
            "unresolved_cofactors": [{"n": n, "cofactor": c} for n, c in self.cofactors],
        }


def _lucas_rank_sieve(r: int, s: int, start: int, N: int, bound: int) -> dict[int, list[int]]:
    """n -> primes p <= bound dividing t_n, found from ranks of apparition."""
    from .lucasdiv import rank_of_apparition

    hits: dict[int, list[int]] = {}
    for p in sieve_primes(bound):
        if s % p == 0:
            continue  # t_n = r^(n-1) mod p and p does not divide r
        ell = rank_of_apparition(r, s, p).ell
        first = max(ell, -(-start // ell) * ell)
        for n in range(first, N + 1, ell):
            hits.setdefault(n, []).append(p)
    return hits


def omega_product(
    params: RecurrenceParams,
    N: int,
    budget: FactorBudget = DEFAULT_BUDGET,
    *,
    start: int = 1,
    epsilon: float = 0.05,
    with_bounds: bool = True,
) -> OmegaReport:
    """Union of the prime sets of the nonzero u_n, start <= n <= N."""
    params.require_nondegenerate()
    lucas_path = params.is_lucas and math.gcd(params.r, params.s) == 1
    sieve = (
        _lucas_rank_sieve(params.r, params.s, start, N, budget.trial_bound)
        if lucas_path
        else None
    )
    primes: set[int] = set()
    large: list[int] = []  # known primes above trial_bound, reused across terms
    cofactors, zeros, rows = [], [], []
    for n, u in terms_up_to(params, N):
        if n < start:
            continue
        if u == 0:
            zeros.append(n)
            continue
        m = abs(u)
        found: list[int] = []
        if sieve is not None:
            for p in sieve.get(n, ()):
                while m % p == 0:
                    m //= p
                found.append(p)
        else:
            small, m = trial_divide(m, budget.trial_bound)
            found.extend(small)
        for p in large:
            if m % p == 0:
                while m % p == 0:
                    m //= p
                found.append(p)
        cofactor = None
        if m > 1:
            fresh, cofactor = factor_large(m, budget)
            found.extend(fresh)
            large.extend(q for q in fresh if q not in primes)
        primes.update(found)
        if cofactor is not None:
            cofactors.append((n, cofactor))
        rows.append((n, tuple(sorted(set(found))), cofactor))
    report = OmegaReport(
        N=N,
        start=start,
        primes=frozenset(primes),
        cofactors=tuple(cofactors),
        zero_terms=tuple(zeros),
        trial_bound=budget.trial_bound,
        rows=tuple(rows),
    )
    if with_bounds:
        report.bounds.update(bounds_for(params, N, epsilon))
    return report


def bounds_for(params: RecurrenceParams, N: int, epsilon: float = 0.05) -> dict:
    out = {
        "thm21_floor": thm21_floor(N, epsilon),
        "thm21_epsilon": epsilon,
        "upper_bound_26": upper_bound_26(params, N),
    }
    if N >= 2:
        out["shparlinski_floor"] = shparlinski_floor(N)
    return out


def thm21_floor(N: float, epsilon: float = 0.0) -> float:
    """(1 - 1/sqrt(2) - epsilon) * N."""
    if epsilon < 0:
        raise ValueError("epsilon must be >= 0")
    return (GAMMA - epsilon) * N


def term_size_log_bound(params: RecurrenceParams, N: int) -> float:
    """Natural log of (|a| + |b|)^N |alpha|^(N(N+1)/2), skipping zero terms.

    A zero term contributes nothing to the product, and every nonzero term
    satisfies 1 <= |u_n| <= (|a| + |b|)|alpha|^n, so dropping zero terms
    keeps the bound valid.
    """
    from .quadring import closed_form_constants

    if N <= 0:
        return 0.0
    cf = closed_form_constants(params)
    log_ab = math.log(cf.a.magnitude() + cf.b.magnitude())
    log_alpha = math.log(dominant_root_abs(params).value)
    total = 0.0
    for n, u in terms_up_to(params, N):
        if n >= 1 and u != 0:
            total += log_ab + n * log_alpha
    return total


def upper_bound_26(params: RecurrenceParams, N: int) -> int:
    """Smallest t with primorial(t) at least the term-product bound; omega <= t."""
    if N <= 0:
        return 0
    log_bound = term_size_log_bound(params, N)
    # float slack on the log bound only ever raises t
    return primorial_threshold(log_bound * (1 + 1e-12) + 1e-9)


def shparlinski_floor(N: float) -> float:
    """N / log N, a reference curve (implied constant unknown)."""
    if N < 2:
        raise ValueError("N must be >= 2")
    return N / math.log(N)


def conjecture23_fit(
    params: RecurrenceParams,
    N_samples: Iterable[int],
    budget: FactorBudget = DEFAULT_BUDGET,
) -> tuple[float, float]:
    """(min omega_lower/(N log N), max omega_upper/(N log N)) over the samples."""
    samples = sorted(set(N_samples))
    if not samples:
        raise ValueError("need at least one sample")
    if samples[0] < 3:
        raise ValueError("every sample N must be >= 3")
    lows, highs = [], []
    for N in samples:
        rep = omega_product(params, N, budget, with_bounds=False)
        scale = N * math.log(N)
        lows.append(rep.omega_lower / scale)
        highs.append(rep.omega_upper / scale)
    return min(lows), max(highs)


def merge_reports(reports: Iterable[OmegaReport]) -> Optional[OmegaReport]:
    out = None
    for rep in sorted(reports, key=lambda r: r.start):
        out = rep if out is None else out.merge(rep)
    return out
