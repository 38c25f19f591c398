"""Command-line front end: ``recurprimes <subcommand> [options]``."""

from __future__ import annotations

import argparse
import logging
import math
import sys
import time
from dataclasses import dataclass, field
from typing import Optional

from . import artinset, constructions, disjunction, lucasdiv, omega, verify
from .arith import FactorBudget
from .parallel import default_jobs, index_shards, run_shards
from .recurrence import (
    DegenerateSequenceError,
    RecurrenceParams,
    classify_degeneracy,
    dominant_root_abs,
    terms_up_to,
)
from .report import render_csv, render_json

log = logging.getLogger("recurprimes")

OMEGA_CHUNK = 50


@dataclass
class Outcome:
    inputs: dict
    results: dict
    columns: list
    rows: list
    bounds: dict = field(default_factory=dict)
    warnings: list = field(default_factory=list)
    failed: bool = False


class InvalidInput(ValueError):
    pass


# ------------------------------------------------------------------ helpers


def _budget(args) -> FactorBudget:
    return FactorBudget(args.trial_bound, args.rho_iterations, args.primality_rounds)


def _params(args) -> RecurrenceParams:
    try:
        return RecurrenceParams(args.r, args.s, args.u0, args.u1)
    except ValueError as exc:
        raise InvalidInput(f"hypothesis r^2 + 4s != 0 violated: {exc}") from None


def _artin_shard(lo, hi, a, b, list_primes):
    return artinset.artin_count(a, b, hi, lo=lo, list_primes=list_primes)


def _artin_rational_shard(lo, hi, a1, a2, b1, b2, list_primes):
    return artinset.artin_count_rational(a1, a2, b1, b2, hi, lo=lo, list_primes=list_primes)


def _omega_shard(lo, hi, r, s, u0, u1, budget):
    return omega.omega_product(RecurrenceParams(r, s, u0, u1), hi, budget, start=lo, with_bounds=False)


def _disjunction_shard(lo, hi, a, b):
    return (
        disjunction.count_T(a, b, hi, lo=lo),
        disjunction.disjunction_count(a, b, hi, lo=lo),
        disjunction.case_breakdown(a, b, hi, lo=lo),
    )


def _reduce(items):
    out = items[0]
    for item in items[1:]:
        out = out.merge(item)
    return out


# ------------------------------------------------------------- subcommands


def cmd_terms(args) -> Outcome:
    params = _params(args)
    deg = classify_degeneracy(params)
    rows = [{"n": n, "u_n": u} for n, u in terms_up_to(params, args.N)]
    results = {"degeneracy": str(deg), "discriminant": params.discriminant, "terms": rows}
    if not deg.degenerate:
        mag = dominant_root_abs(params)
        results["dominant_root_abs"] = mag.value
        results["dominant_root_form"] = mag.form
    return Outcome(vars_inputs(args, "r", "s", "u0", "u1", "N"), results, ["n", "u_n"], rows)


def cmd_omega(args) -> Outcome:
    params = _params(args)
    if params.degeneracy.degenerate:
        raise InvalidInput(f"non-degeneracy hypothesis violated: {params.degeneracy.reason}")
    budget = _budget(args)
    shards = index_shards(1, args.N, OMEGA_CHUNK)
    parts = run_shards(
        _omega_shard, shards, args.jobs,
        r=params.r, s=params.s, u0=params.u0, u1=params.u1, budget=budget,
    )
    rep = omega.merge_reports(parts) if parts else omega.OmegaReport(N=args.N, trial_bound=budget.trial_bound)
    rep.N = args.N
    bounds = omega.bounds_for(params, args.N, args.epsilon) if args.N >= 1 else {}
    if params.is_lucas:
        bounds["thm22_floor"] = args.N - 9
    results = rep.to_dict()
    if args.N >= 3:
        scale = args.N * math.log(args.N)
        results["conjecture23_lower_ratio"] = rep.omega_lower / scale
        results["conjecture23_upper_ratio"] = rep.omega_upper / scale
    warnings = []
    if rep.cofactors:
        warnings.append(f"{rep.unresolved_terms} term(s) left unresolved cofactors; omega is an interval")
    if args.N >= 1 and rep.omega_certain <= bounds["thm21_floor"]:
        warnings.append("finding: omega_certain does not exceed the (1 - 1/sqrt2 - eps)N floor at this N")
    rows = [
        {"n": n, "primes": list(primes), "unresolved_cofactor": c}
        for n, primes, c in rep.rows
    ]
    return Outcome(
        vars_inputs(args, "r", "s", "u0", "u1", "N", "epsilon"),
        results, ["n", "primes", "unresolved_cofactor"], rows, bounds, warnings,
    )


def cmd_rank(args) -> Outcome:
    primes = [args.p] if args.p is not None else None
    if primes is None:
        from .arith import sieve_primes

        primes = [p for p in sieve_primes(args.primes_up_to) if args.s % p]
    rows = []
    for p in primes:
        rec = lucasdiv.rank_of_apparition(args.r, args.s, p)
        rows.append({"p": rec.p, "ell": rec.ell, "val_at_ell": rec.val_at_ell})
    return Outcome(
        vars_inputs(args, "r", "s", "p", "primes_up_to"),
        {"ranks": rows}, ["p", "ell", "val_at_ell"], rows,
    )


def cmd_valuation(args) -> Outcome:
    v = lucasdiv.lucas_valuation(args.r, args.s, args.p, args.n)
    rank = lucasdiv.rank_of_apparition(args.r, args.s, args.p)
    row = {"p": args.p, "n": args.n, "valuation": v, "ell": rank.ell}
    return Outcome(vars_inputs(args, "r", "s", "p", "n"), row, list(row), [row])


def cmd_primdiv(args) -> Outcome:
    budget = _budget(args)
    lo = args.n if args.n is not None else 1
    hi = args.n if args.n is not None else args.N
    rows, warnings = [], []
    for n in range(lo, hi + 1):
        res = lucasdiv.primitive_divisor_set(args.r, args.s, n, budget)
        rows.append({"n": n, "primitive_divisors": sorted(res.primes), "unresolved_cofactor": res.unresolved})
        if res.unresolved is not None:
            warnings.append(f"t_{n} has an unresolved cofactor; its primitive divisors may be incomplete")
    return Outcome(
        vars_inputs(args, "r", "s", "n", "N"),
        {"rows": rows}, ["n", "primitive_divisors", "unresolved_cofactor"], rows, {}, warnings,
    )


def _artin_outcome(rep, inputs) -> Outcome:
    results = rep.to_dict()
    rows = [{"p": p} for p in rep.primes] if rep.primes is not None else [{"x": rep.x, "count": rep.count}]
    columns = ["p"] if rep.primes is not None else ["x", "count"]
    bounds = {"log_x": math.log(rep.x)} if rep.x > 1 else {}
    return Outcome(inputs, results, columns, rows, bounds)


def cmd_artin(args) -> Outcome:
    if abs(args.a) <= 1:
        raise InvalidInput("hypothesis |a| != 1 (and a != 0) violated")
    if args.b == 0:
        raise InvalidInput("hypothesis b != 0 violated")
    shards = artinset.shard_bounds(2, args.x)
    parts = run_shards(_artin_shard, shards, args.jobs, a=args.a, b=args.b, list_primes=args.list)
    rep = artinset.merge_artin(parts) or artinset.ArtinReport(args.x, primes=[] if args.list else None)
    return _artin_outcome(rep, vars_inputs(args, "a", "b", "x"))


def cmd_artin_rational(args) -> Outcome:
    # validate once up front so errors surface before any worker starts
    artinset.artin_count_rational(args.a1, args.a2, args.b1, args.b2, 1)
    shards = artinset.shard_bounds(2, args.x)
    parts = run_shards(
        _artin_rational_shard, shards, args.jobs,
        a1=args.a1, a2=args.a2, b1=args.b1, b2=args.b2, list_primes=args.list,
    )
    rep = artinset.merge_artin(parts) or artinset.ArtinReport(args.x, primes=[] if args.list else None)
    return _artin_outcome(rep, vars_inputs(args, "a1", "a2", "b1", "b2", "x"))


def cmd_gpf_window(args) -> Outcome:
    win = artinset.gpf_window(args.a, args.b, args.N, args.y, _budget(args))
    warnings = [f"a^{n} - b = 0 skipped" for n in win.skipped_zero]
    warnings += [f"n={row['n']}: greatest factor unresolved" for row in win.rows if row["unresolved"]]
    return Outcome(
        vars_inputs(args, "a", "b", "N", "y"),
        win.to_dict(), ["n", "gpf", "unresolved", "stewart"], win.rows, {}, warnings,
    )


def cmd_disjunction(args) -> Outcome:
    if math.gcd(args.a, args.b) != 1:
        raise InvalidInput(f"hypothesis gcd(a, b) = 1 violated (gcd = {math.gcd(args.a, args.b)})")
    shards = artinset.shard_bounds(2, args.x)
    parts = run_shards(_disjunction_shard, shards, args.jobs, a=args.a, b=args.b)
    if parts:
        t = _reduce([p[0] for p in parts])
        d = _reduce([p[1] for p in parts])
        cb = _reduce([p[2] for p in parts])
    else:
        t, d, cb = disjunction.TReport(args.x), disjunction.DisjunctionReport(args.x), disjunction.CaseBreakdown(args.x)
    t.x = d.x = cb.x = args.x
    results = {"T": t.to_dict(), "disjunction": d.to_dict(), "cases": cb.to_dict()}
    if not args.list:
        results["T"].pop("primes")
        results["disjunction"].pop("primes")
    members = set(d.primes)
    rows = [{"p": p, "in_T": True, "in_disjunction": p in members} for p in t.primes]
    return Outcome(vars_inputs(args, "a", "b", "x"), results, ["p", "in_T", "in_disjunction"], rows)


def cmd_thue(args) -> Outcome:
    fam = constructions.thue_family(args.a, args.b, args.N, _budget(args))
    problems = constructions.check_thue(fam)
    rows = [
        {"delta": c.delta, "E": c.E, "eps": list(c.eps), "size": len(c.solutions),
         "n": [n for n, _, _ in c.solutions]}
        for c in fam.classes.values()
    ]
    results = fam.to_dict()
    results["verified"] = not problems
    results["classes_detail"] = [
        {"delta": c.delta, "E": c.E, "solutions": [{"n": n, "X": X, "Y": Y} for n, X, Y in c.solutions]}
        for c in fam.classes.values()
    ]
    warnings = problems + [f"n={n}: a^n - b unfactored within budget" for n in fam.skipped_unfactored]
    if fam.negative_values:
        warnings.append(f"negative a^n - b at n={fam.negative_values}; sign carried by Y")
    return Outcome(
        vars_inputs(args, "a", "b", "N"),
        results, ["delta", "E", "eps", "size", "n"], rows, {}, warnings, failed=bool(problems),
    )


def cmd_curve(args) -> Outcome:
    rational = tuple(args.rational) if args.rational else None
    fam = constructions.hyperelliptic_points(args.a, args.b, args.N, _budget(args), rational=rational)
    problems = constructions.check_twists(fam)
    rows = [
        {"n": pt.n, "D": pt.D, "x": pt.x, "y": pt.y, "height": pt.height, "negative": pt.negative}
        for pt in fam.points
    ]
    results = fam.to_dict()
    results["verified"] = not problems
    results["point_list"] = rows
    warnings = problems + [f"n={n}: value unfactored within budget" for n in fam.skipped_unfactored]
    if any(pt.negative for pt in fam.points):
        warnings.append("negative values give twists with D < 0")
    inputs = vars_inputs(args, "a", "b", "N")
    inputs["rational"] = list(rational) if rational else None
    return Outcome(inputs, results, ["n", "D", "x", "y", "height", "negative"], rows, {}, warnings, failed=bool(problems))


def cmd_verify(args) -> Outcome:
    names = list(verify.SUITES) if args.suite == "all" else [args.suite]
    rows = []
    for name in names:
        log.info("running suite %s", name)
        for check in verify.SUITES[name]():
            rows.append({"suite": name, "check": check.name, "passed": check.passed, "detail": check.detail})
    failed = not all(r["passed"] for r in rows)
    results = {"passed": not failed, "checks": rows}
    if args.suite == "thm22":
        results["equality_table"] = [
            {"N": N, "omega": lucasdiv.omega_lucas_product(1, -2, N).omega_certain, "N_minus_9": N - 9}
            for N in range(30, 35)
        ]
    return Outcome({"suite": args.suite}, results, ["suite", "check", "passed", "detail"], rows, failed=failed)


def vars_inputs(args, *names) -> dict:
    return {n: getattr(args, n) for n in names if getattr(args, n, None) is not None}


# ------------------------------------------------------------------ parser


def _add_common(p: argparse.ArgumentParser):
    p.add_argument("--format", choices=("json", "csv"), default="json")
    p.add_argument("--output", "-o", help="write the report here instead of stdout")
    p.add_argument("--jobs", type=int, default=None, help="worker processes (default $RECURPRIMES_JOBS or 1)")
    p.add_argument("--trial-bound", type=int, default=10_000)
    p.add_argument("--rho-iterations", type=int, default=2_000_000)
    p.add_argument("--primality-rounds", type=int, default=25)
    p.add_argument("--timing", action="store_true", help="fill timing_ms (makes output run-dependent)")
    p.add_argument("-v", "--verbose", action="store_true")


def _add_sequence(p, lucas_only=False):
    p.add_argument("--r", type=int, required=True)
    p.add_argument("--s", type=int, required=True)
    if not lucas_only:
        p.add_argument("--u0", type=int, default=0)
        p.add_argument("--u1", type=int, default=1)


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="recurprimes", description=__doc__)
    sub = parser.add_subparsers(dest="subcommand", required=True)

    p = sub.add_parser("terms", help="terms u_0..u_N and degeneracy")
    _add_sequence(p)
    p.add_argument("--N", type=int, required=True)
    p.set_defaults(func=cmd_terms)

    p = sub.add_parser("omega", help="distinct primes of u_1 ... u_N against the bounds")
    _add_sequence(p)
    p.add_argument("--N", type=int, required=True)
    p.add_argument("--epsilon", type=float, default=0.05)
    p.set_defaults(func=cmd_omega)

    p = sub.add_parser("rank", help="rank of apparition in a Lucas sequence")
    _add_sequence(p, lucas_only=True)
    g = p.add_mutually_exclusive_group(required=True)
    g.add_argument("--p", type=int)
    g.add_argument("--primes-up-to", type=int)
    p.set_defaults(func=cmd_rank)

    p = sub.add_parser("valuation", help="v_p(t_n) from the rank of apparition")
    _add_sequence(p, lucas_only=True)
    p.add_argument("--p", type=int, required=True)
    p.add_argument("--n", type=int, required=True)
    p.set_defaults(func=cmd_valuation)

    p = sub.add_parser("primdiv", help="primitive divisors of t_n")
    _add_sequence(p, lucas_only=True)
    g = p.add_mutually_exclusive_group(required=True)
    g.add_argument("--n", type=int)
    g.add_argument("--N", type=int, help="all n = 1..N")
    p.set_defaults(func=cmd_primdiv)

    p = sub.add_parser("artin", help="count primes p <= x with b in <a> mod p")
    p.add_argument("--a", type=int, required=True)
    p.add_argument("--b", type=int, required=True)
    p.add_argument("--x", type=int, required=True)
    p.add_argument("--list", action="store_true", help="include the primes")
    p.set_defaults(func=cmd_artin)

    p = sub.add_parser("artin-rational", help="the count for a = a1/a2, b = b1/b2")
    for name in ("a1", "a2", "b1", "b2", "x"):
        p.add_argument(f"--{name}", type=int, required=True)
    p.add_argument("--list", action="store_true")
    p.set_defaults(func=cmd_artin_rational)

    p = sub.add_parser("gpf-window", help="greatest prime factors of a^n - b, N-y <= n <= N")
    for name in ("a", "b", "N", "y"):
        p.add_argument(f"--{name}", type=int, required=True)
    p.set_defaults(func=cmd_gpf_window)

    p = sub.add_parser("disjunction", help="T_x, the disjunction set and the case tallies")
    for name in ("a", "b", "x"):
        p.add_argument(f"--{name}", type=int, required=True)
    p.add_argument("--list", action="store_true")
    p.set_defaults(func=cmd_disjunction)

    p = sub.add_parser("thue", help="Thue equations a^d X^3 - E Y^3 = b from a^n - b")
    for name in ("a", "b", "N"):
        p.add_argument(f"--{name}", type=int, required=True)
    p.set_defaults(func=cmd_thue)

    p = sub.add_parser("curve", help="twist points on D Y^2 = X^5 - b")
    for name in ("a", "b", "N"):
        p.add_argument(f"--{name}", type=int, required=True)
    p.add_argument("--rational", type=int, nargs=4, metavar=("A1", "A2", "B1", "B2"))
    p.set_defaults(func=cmd_curve)

    p = sub.add_parser("verify", help="run the bundled self-check suites")
    p.add_argument("--suite", choices=["all", *verify.SUITES], default="all")
    p.set_defaults(func=cmd_verify)

    for action in sub.choices.values():
        _add_common(action)
    return parser


def run(argv: Optional[list] = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    logging.basicConfig(
        level=logging.INFO if args.verbose else logging.WARNING,
        format="%(levelname)s %(name)s: %(message)s",
        stream=sys.stderr,
    )
    try:
        if args.jobs is None:
            args.jobs = default_jobs()
        if args.jobs < 1:
            raise InvalidInput("--jobs must be >= 1")
        _budget(args)
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    start = time.perf_counter()
    try:
        outcome = args.func(args)
    except (InvalidInput, DegenerateSequenceError, ValueError, ZeroDivisionError) as exc:
        print(f"error: invalid input: {exc}", file=sys.stderr)
        return 2
    elapsed = round((time.perf_counter() - start) * 1000, 3) if args.timing else None
    for w in outcome.warnings:
        log.warning(w)
    if args.format == "json":
        text = render_json(
            args.subcommand, outcome.inputs, outcome.results, outcome.bounds, outcome.warnings, elapsed
        )
    else:
        text = render_csv(outcome.columns, outcome.rows)
    if args.output:
        with open(args.output, "w") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)
    return 1 if outcome.failed else 0


def main():
    sys.exit(run())
