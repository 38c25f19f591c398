"""Explicit Thue equations and quadratic-twist points built from the values a^n - b.

Each usable n gives one integer solution of a^delta X^3 - E Y^3 = b and, when
5 | n, one point on D Y^2 = X^5 - b. Nothing here solves an equation or
counts points; the constructions are built and re-checked exactly.
"""

from __future__ import annotations

import math
from collections import defaultdict
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Optional, Union

from .arith import DEFAULT_BUDGET, FactorBudget, factorize


@dataclass
class ThueClass:
    delta: int
    eps: tuple  # exponent residues mod 3, aligned with the family's prime list
    E: int
    solutions: list = field(default_factory=list)  # (n, X, Y)


@dataclass
class ThueFamily:
    a: int
    b: int
    N: int
    primes: tuple = ()
    classes: dict = field(default_factory=dict)  # (delta, eps) -> ThueClass
    skipped_unfactored: list = field(default_factory=list)
    zero_values: list = field(default_factory=list)
    negative_values: list = field(default_factory=list)  # n with a^n < b (Y < 0)

    @property
    def usable(self) -> int:
        return sum(len(c.solutions) for c in self.classes.values())

    @property
    def k(self) -> int:
        return len(self.primes)

    @property
    def class_bound(self) -> int:
        return 3 ** (self.k + 1)

    @property
    def max_class_size(self) -> int:
        return max((len(c.solutions) for c in self.classes.values()), default=0)

    @property
    def pigeonhole_floor(self) -> int:
        return -(-self.usable // self.class_bound)

    def to_dict(self) -> dict:
        t = len(factorize(self.b).factors)
        return {
            "a": self.a,
            "b": self.b,
            "N": self.N,
            "primes": list(self.primes),
            "k": self.k,
            "usable": self.usable,
            "classes": len(self.classes),
            "class_bound": self.class_bound,
            "max_class_size": self.max_class_size,
            "pigeonhole_floor": self.pigeonhole_floor,
            "skipped_unfactored": self.skipped_unfactored,
            "zero_values": self.zero_values,
            "negative_values": self.negative_values,
            "omega_b": t,
            "solution_count_reference": f"c1*3^({t}+1)",
        }


def _split_exponents(factors: dict[int, int], modulus: int) -> tuple[dict, int]:
    """value = (prod p^(e mod m)) * (prod p^(e div m))^m -> (residues, root)."""
    residues = {p: e % modulus for p, e in factors.items()}
    root = math.prod(p ** (e // modulus) for p, e in factors.items())
    return residues, root


def thue_family(a: int, b: int, N: int, budget: FactorBudget = DEFAULT_BUDGET) -> ThueFamily:
    """Sort n = 1..N into the equations a^delta X^3 - E Y^3 = b they solve."""
    if a < 2:
        raise ValueError("need a >= 2")
    if b == 0:
        raise ValueError("need b != 0")
    if math.gcd(a, b) != 1:
        raise ValueError(f"need gcd(a, b) = 1, got {math.gcd(a, b)}")
    fam = ThueFamily(a, b, N)
    built = []
    for n in range(1, N + 1):
        value = a**n - b
        if value == 0:
            fam.zero_values.append(n)
            continue
        f = factorize(value, budget)
        if f.unresolved:
            fam.skipped_unfactored.append(n)
            continue
        residues, root = _split_exponents(f.factors, 3)
        # a negative value is absorbed by Y since (-1)^3 = -1
        Y = root * f.sign
        if f.sign < 0:
            fam.negative_values.append(n)
        built.append((n, n % 3, a ** (n // 3), Y, residues))
    primes = tuple(sorted({p for *_, res in built for p in res}))
    fam.primes = primes
    for n, delta, X, Y, residues in built:
        eps = tuple(residues.get(p, 0) for p in primes)
        key = (delta, eps)
        if key not in fam.classes:
            E = math.prod(p**e for p, e in zip(primes, eps))
            fam.classes[key] = ThueClass(delta, eps, E)
        fam.classes[key].solutions.append((n, X, Y))
    fam.classes = dict(sorted(fam.classes.items()))
    return fam


def check_thue(fam: ThueFamily) -> list[str]:
    """Independent re-evaluation of every stored solution; returns failure notes."""
    bad = []
    for (delta, eps), cls in fam.classes.items():
        E = 1
        for p, e in zip(fam.primes, eps):
            E *= pow(p, e)
        if E != cls.E:
            bad.append(f"class {delta},{eps}: E mismatch")
        for n, X, Y in cls.solutions:
            if pow(fam.a, delta) * pow(X, 3) - E * pow(Y, 3) != fam.b:
                bad.append(f"n={n}: equation fails")
            if delta != n % 3 or X != pow(fam.a, n // 3):
                bad.append(f"n={n}: wrong delta or X")
            if math.gcd(X, Y) != 1:
                bad.append(f"n={n}: solution not primitive")
    if len(fam.classes) > fam.class_bound:
        bad.append("more classes than 3^(k+1)")
    if fam.max_class_size < fam.pigeonhole_floor:
        bad.append("pigeonhole inequality fails")
    return bad


Number = Union[int, Fraction]


@dataclass
class TwistPoint:
    n: int
    D: int
    x: Number
    y: Number
    height: int
    negative: bool = False  # a^n - b < 0; sign carried by D


@dataclass
class TwistFamily:
    a: int
    b: int
    N: int
    points: list = field(default_factory=list)
    primes: tuple = ()
    skipped_unfactored: list = field(default_factory=list)
    zero_values: list = field(default_factory=list)
    rational: Optional[tuple] = None  # (a1, a2, b1, b2) for the rational variant

    @property
    def groups(self) -> dict:
        out = defaultdict(list)
        for pt in self.points:
            out[pt.D].append(pt)
        return dict(sorted(out.items()))

    @property
    def k(self) -> int:
        return len(self.primes)

    @property
    def group_bound(self) -> int:
        sign_choices = 2 if any(pt.negative for pt in self.points) else 1
        return sign_choices * 2**self.k

    @property
    def max_group(self) -> int:
        return max((len(g) for g in self.groups.values()), default=0)

    @property
    def pigeonhole_floor(self) -> int:
        return -(-len(self.points) // self.group_bound)

    @property
    def height_cap(self) -> int:
        if self.rational is not None:
            a1, a2 = self.rational[:2]
            return max(abs(a1) ** self.N, abs(a2) ** self.N)
        return self.a**self.N

    def to_dict(self) -> dict:
        T = self.height_cap
        return {
            "N": self.N,
            "points": len(self.points),
            "distinct_D": len(self.groups),
            "k": self.k,
            "group_bound": self.group_bound,
            "max_group": self.max_group,
            "pigeonhole_floor": self.pigeonhole_floor,
            "height_cap": T,
            "max_height": max((pt.height for pt in self.points), default=0),
            "skipped_unfactored": self.skipped_unfactored,
            "zero_values": self.zero_values,
            "negative_points": [pt.n for pt in self.points if pt.negative],
            "loglog_height_cap": math.log(math.log(T)) if T > math.e else None,
            "count_reference": "c*log(log(T))",
        }


def _height(x: Number) -> int:
    q = Fraction(x)
    return max(abs(q.numerator), abs(q.denominator))


def hyperelliptic_points(
    a: int,
    b: int,
    N: int,
    budget: FactorBudget = DEFAULT_BUDGET,
    *,
    rational: Optional[tuple] = None,
) -> TwistFamily:
    """Points on D_n Y^2 = X^5 - b from a^n - b, n = 5, 10, ... <= N.

    With rational=(a1, a2, b1, b2) the values are b2 a1^n - b1 a2^n for
    n = 10, 20, ... and the points lie on D_n Y^2 = b2 X^5 - b1 with
    X = (a1/a2)^(n/5) and Y = root / a2^(n/2).
    """
    if rational is None:
        if a < 2:
            raise ValueError("need a >= 2")
        if b == 0:
            raise ValueError("need b != 0")
        step = 5
    else:
        a1, a2, b1, b2 = rational
        if math.gcd(a1, a2) != 1 or math.gcd(b1, b2) != 1:
            raise ValueError("need gcd(a1, a2) = gcd(b1, b2) = 1")
        if 0 in rational:
            raise ValueError("rational parameters must be nonzero")
        step = 10
    fam = TwistFamily(a, b, N, rational=rational)
    seen = set()
    for n in range(step, N + 1, step):
        if rational is None:
            value = a**n - b
        else:
            value = b2 * a1**n - b1 * a2**n
        if value == 0:
            fam.zero_values.append(n)
            continue
        f = factorize(value, budget)
        if f.unresolved:
            fam.skipped_unfactored.append(n)
            continue
        residues, root = _split_exponents(f.factors, 2)
        D = f.sign * math.prod(p**e for p, e in residues.items())
        seen.update(residues)
        if rational is None:
            x, y = a ** (n // 5), root
        else:
            x = Fraction(a1, a2) ** (n // 5)
            y = Fraction(root, a2 ** (n // 2))
        fam.points.append(TwistPoint(n, D, x, y, _height(x), f.sign < 0))
    fam.primes = tuple(sorted(seen))
    return fam


def check_twists(fam: TwistFamily) -> list[str]:
    """Re-verify every point exactly and the counting inequalities."""
    bad = []
    xs = set()
    for pt in fam.points:
        x, y = Fraction(pt.x), Fraction(pt.y)
        if fam.rational is None:
            lhs, rhs = pt.D * y * y, x**5 - fam.b
        else:
            _, _, b1, b2 = fam.rational
            lhs, rhs = pt.D * y * y, b2 * x**5 - b1
        if lhs != rhs:
            bad.append(f"n={pt.n}: curve equation fails")
        if pt.height > fam.height_cap:
            bad.append(f"n={pt.n}: height above cap")
        if pt.height != max(abs(x.numerator), abs(x.denominator)):
            bad.append(f"n={pt.n}: height mismatch")
        if x in xs:
            bad.append(f"n={pt.n}: repeated x")
        xs.add(x)
        if pt.D == 0 or any(pt.D % (p * p) == 0 for p in fam.primes):
            bad.append(f"n={pt.n}: D not squarefree")
    if len(fam.groups) > fam.group_bound:
        bad.append("more twists than the 2^k bound")
    if fam.max_group < fam.pigeonhole_floor:
        bad.append("pigeonhole inequality fails")
    return bad
