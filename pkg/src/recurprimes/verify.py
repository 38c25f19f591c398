"""Self-check suites bundled behind ``recurprimes verify``.

Each suite returns a list of Check rows; a suite passes when every row does.
Random sequences come from fixed seeds so runs are reproducible.
"""

from __future__ import annotations

import math
import random
import time
from typing import Callable, NamedTuple

from .arith import is_prime, sieve_primes, valuation
from .artinset import artin_count, brute_in_subgroup, in_subgroup, shard_bounds, merge_artin
from .constructions import check_thue, check_twists, hyperelliptic_points, thue_family
from .disjunction import case_breakdown, count_T, disjunction_count
from .lucasdiv import lucas_valuation, omega_lucas_product, rank_of_apparition
from .omega import omega_product, thm21_floor, upper_bound_26
from .parallel import run_shards
from .quadring import verify_identity_43
from .recurrence import RecurrenceParams, dominant_root_abs, terms_up_to

SEED = 20181002


class Check(NamedTuple):
    name: str
    passed: bool
    detail: str = ""


def random_lucas(rng: random.Random, bound: int, count: int, exclude=()) -> list[RecurrenceParams]:
    """Distinct non-degenerate Lucas sequences with gcd(r, s) = 1 and |r|, |s| <= bound."""
    pool = []
    for r in range(-bound, bound + 1):
        for s in range(-bound, bound + 1):
            if s == 0 or math.gcd(r, s) != 1 or r * r + 4 * s == 0 or (r, s) in exclude:
                continue
            params = RecurrenceParams.lucas(r, s)
            if not params.degeneracy.degenerate:
                pool.append(params)
    return rng.sample(pool, count)


def random_params(rng: random.Random, bound: int) -> RecurrenceParams:
    while True:
        r, s = rng.randint(-bound, bound), rng.randint(-bound, bound)
        u0, u1 = rng.randint(-bound, bound), rng.randint(-bound, bound)
        if r * r + 4 * s == 0:
            continue
        params = RecurrenceParams(r, s, u0, u1)
        if not params.degeneracy.degenerate:
            return params


def suite_thm22() -> list[Check]:
    checks = []
    for N in range(30, 35):
        rep = omega_lucas_product(1, -2, N)
        ok = rep.omega_certain == N - 9 and rep.unresolved_terms == 0
        checks.append(Check(f"thm22 N={N}", ok, f"omega={rep.omega_certain} N-9={N - 9}"))
    return checks


def _omega_prefix_counts(params: RecurrenceParams, N: int) -> list[int]:
    """omega_lower of t_1..t_M for M = 1..N from one pass."""
    rep = omega_product(params, N, with_bounds=False)
    seen, out = set(), []
    rows = {n: primes for n, primes, _ in rep.rows}
    for M in range(1, N + 1):
        seen.update(rows.get(M, ()))
        out.append(len(seen))
    return out


def suite_thm22_inequality(N: int = 40, count: int = 20) -> list[Check]:
    rng = random.Random(SEED)
    checks = []
    for params in random_lucas(rng, 5, count):
        counts = _omega_prefix_counts(params, N)
        worst = min(c - (M - 9) for M, c in enumerate(counts, start=1))
        checks.append(Check(f"thm22 >= N-9 (r={params.r}, s={params.s})", worst >= 0, f"min slack {worst}"))
    return checks


def suite_prop32(n_max: int = 500, p_max: int = 200) -> list[Check]:
    rng = random.Random(SEED + 1)
    seqs = [RecurrenceParams.fibonacci()] + random_lucas(rng, 10, 10, exclude={(1, 1)})
    checks = []
    for params in seqs:
        r, s = params.r, params.s
        terms = [u for _, u in terms_up_to(params, n_max)]
        mismatches = 0
        for p in sieve_primes(p_max - 1):
            if s % p == 0:
                continue
            rank = rank_of_apparition(r, s, p)
            for n in range(1, n_max + 1):
                if lucas_valuation(r, s, p, n, rank) != valuation(terms[n], p):
                    mismatches += 1
        checks.append(Check(f"prop32 (r={r}, s={s})", mismatches == 0, f"{mismatches} mismatches"))
    return checks


def suite_prop31(p_max: int = 10_000) -> list[Check]:
    rng = random.Random(SEED + 2)
    seqs = [RecurrenceParams.fibonacci()] + random_lucas(rng, 10, 9, exclude={(1, 1)})
    checks = []
    for params in seqs:
        r, s = params.r, params.s
        log_alpha = math.log(dominant_root_abs(params).value)
        bad = 0
        for p in sieve_primes(p_max - 1):
            if s % p == 0:
                continue
            ell = rank_of_apparition(r, s, p).ell
            lower = (math.log(p) - math.log(2) / 2) / log_alpha
            if not (lower <= ell <= p + 1):
                bad += 1
        checks.append(Check(f"prop31 (r={r}, s={s})", bad == 0, f"{bad} violations"))
    return checks


def suite_membership() -> list[Check]:
    bad = 0
    for p in sieve_primes(499):
        for a in range(2, 11):
            for b in range(2, 11):
                if (a * b) % p == 0:
                    continue
                if in_subgroup(a, b, p) != brute_in_subgroup(a, b, p):
                    bad += 1
    rep = artin_count(2, 3, 20, list_primes=True)
    return [
        Check("in_subgroup = enumeration, p < 500", bad == 0, f"{bad} mismatches"),
        Check("artin_count(2,3,20)", rep.count == 4 and rep.primes == [5, 11, 13, 19], f"{rep.primes}"),
    ]


def suite_identity43(count: int = 100) -> list[Check]:
    rng = random.Random(SEED + 3)
    bad = 0
    for _ in range(count):
        params = random_params(rng, 20)
        m = rng.randint(0, 60)
        shift = rng.randint(0, m)
        if not verify_identity_43(params, m, shift):
            bad += 1
    return [Check(f"shifted-term identity, {count} cases", bad == 0, f"{bad} failures")]


def suite_rootbound(count: int = 1000) -> list[Check]:
    rng = random.Random(SEED + 4)
    floor = math.sqrt(2) - 1e-12
    worst = min(dominant_root_abs(random_params(rng, 50)).value for _ in range(count))
    return [Check(f"|alpha| >= sqrt(2), {count} cases", worst >= floor, f"min {worst!r}")]


SANDWICH_PARAMS = (
    RecurrenceParams.fibonacci(),
    RecurrenceParams(1, -2, 0, 1),
    RecurrenceParams(3, -2, 0, 1),
)


def suite_sandwich() -> list[Check]:
    checks = []
    for params in SANDWICH_PARAMS:
        for N in (50, 100):
            rep = omega_product(params, N, with_bounds=False)
            floor, ceiling = thm21_floor(N, 0.05), upper_bound_26(params, N)
            ok = floor < rep.omega_certain and rep.omega_upper <= ceiling
            checks.append(
                Check(
                    f"sandwich ({params.r},{params.s},{params.u0},{params.u1}) N={N}",
                    ok,
                    f"{floor:.3f} < {rep.omega_certain} <= {rep.omega_upper} <= {ceiling}",
                )
            )
    return checks


def suite_constructions(N: int = 50) -> list[Check]:
    checks = []
    for a in (2, 3):
        for b in (5, 7):
            thue = thue_family(a, b, N)
            twists = hyperelliptic_points(a, b, N)
            problems = check_thue(thue) + check_twists(twists)
            checks.append(
                Check(
                    f"constructions a={a} b={b}",
                    not problems,
                    "; ".join(problems) or f"{thue.usable} Thue solutions, {len(twists.points)} twist points",
                )
            )
    return checks


def brute_T(a: int, b: int, x: int) -> list[int]:
    """T_x by Euler's criterion and naive trial-division factor counting."""
    out = []
    for p in range(3, x + 1):
        if not is_prime(p) or (2 * a * b) % p == 0:
            continue
        if pow(a, (p - 1) // 2, p) != p - 1 or pow(b, (p - 1) // 2, p) != p - 1:
            continue
        m, big_omega, d = (p - 1) // 2, 0, 2
        while d * d <= m:
            while m % d == 0:
                m //= d
                big_omega += 1
            d += 1
        if m > 1:
            big_omega += 1
        if big_omega in (1, 2):
            out.append(p)
    return out


def suite_disjunction() -> list[Check]:
    t = count_T(2, 3, 30)
    d = disjunction_count(2, 3, 20)
    checks = [
        Check("count_T(2,3,30)", t.count == 3 and t.primes == [5, 19, 29], f"{t.primes}"),
        Check("disjunction_count(2,3,20)", d.count == 6, f"{d.primes}"),
    ]
    for a, b in ((2, 3), (2, 5), (3, 5), (5, 7), (-1, 2)):
        got = count_T(a, b, 1000).primes
        checks.append(Check(f"count_T({a},{b},1000) = brute force", got == brute_T(a, b, 1000), f"{len(got)} primes"))
        cb = case_breakdown(a, b, 1000)
        checks.append(
            Check(f"case tallies partition T ({a},{b})", sum(cb.tallies.values()) == cb.t_size == len(got), str(dict(cb.tallies)))
        )
    return checks


def suite_determinism(x: int = 10**6) -> list[Check]:
    shards = shard_bounds(2, x)
    kw = {"list_primes": True}
    one = merge_artin(run_shards(_artin_shard, shards, 1, **kw))
    t0 = time.perf_counter()
    eight = merge_artin(run_shards(_artin_shard, shards, 8, **kw))
    elapsed = time.perf_counter() - t0
    same = one.to_dict() == eight.to_dict()
    return [Check(f"artin(2,3,{x}) jobs 1 == jobs 8", same, f"count {one.count}, jobs=8 took {elapsed:.1f}s")]


def _artin_shard(lo: int, hi: int, list_primes: bool = False):
    return artin_count(2, 3, hi, lo=lo, list_primes=list_primes)


SUITES: dict[str, Callable[[], list[Check]]] = {
    "thm22": suite_thm22,
    "thm22-inequality": suite_thm22_inequality,
    "prop32": suite_prop32,
    "prop31": suite_prop31,
    "membership": suite_membership,
    "identity43": suite_identity43,
    "rootbound": suite_rootbound,
    "sandwich": suite_sandwich,
    "constructions": suite_constructions,
    "disjunction": suite_disjunction,
    "determinism": suite_determinism,
}
