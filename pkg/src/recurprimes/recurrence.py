"""Binary recurrence sequences u_n = r*u_{n-1} + s*u_{n-2}."""

from __future__ import annotations

import math
from dataclasses import dataclass
from decimal import Decimal, localcontext
from functools import cached_property
from typing import Iterable, Iterator, NamedTuple, Optional


class DegenerateSequenceError(ValueError):
    pass


class Degeneracy(NamedTuple):
    degenerate: bool
    reason: Optional[str] = None  # machine code, e.g. "root_of_unity_order_2"

    def __str__(self):
        return "NonDegenerate" if not self.degenerate else f"Degenerate({self.reason})"


@dataclass(frozen=True)
class RecurrenceParams:
    r: int
    s: int
    u0: int
    u1: int

    def __post_init__(self):
        if self.r * self.r + 4 * self.s == 0:
            raise ValueError(f"r^2 + 4s = 0 for r={self.r}, s={self.s}")

    @classmethod
    def fibonacci(cls) -> "RecurrenceParams":
        return cls(1, 1, 0, 1)

    @classmethod
    def lucas(cls, r: int, s: int) -> "RecurrenceParams":
        return cls(r, s, 0, 1)

    @classmethod
    def power_minus(cls, a: int, b: int) -> "RecurrenceParams":
        """The sequence a**n - b, with roots a and 1."""
        return cls(a + 1, -a, 1 - b, a - b)

    @property
    def discriminant(self) -> int:
        return self.r * self.r + 4 * self.s

    @property
    def is_lucas(self) -> bool:
        return self.u0 == 0 and self.u1 == 1

    @cached_property
    def degeneracy(self) -> Degeneracy:
        return classify_degeneracy(self)

    def require_nondegenerate(self):
        if self.degeneracy.degenerate:
            raise DegenerateSequenceError(f"{self} is degenerate: {self.degeneracy.reason}")


def root_ratio_order(r: int, s: int) -> Optional[int]:
    """Order of alpha/beta as a root of unity, or None if it is not one.

    A quadratic root of unity has order 1, 2, 3, 4 or 6; order 1 would need
    alpha == beta, which D != 0 rules out.
    """
    if r == 0:
        return 2
    r2 = r * r
    if r2 == -s:
        return 3
    if r2 == -2 * s:
        return 4
    if r2 == -3 * s:
        return 6
    return None


def classify_degeneracy(params: RecurrenceParams) -> Degeneracy:
    r, s, u0, u1 = params.r, params.s, params.u0, params.u1
    if s == 0:
        return Degeneracy(True, "alpha_beta_zero")
    order = root_ratio_order(r, s)
    if order is not None:
        return Degeneracy(True, f"root_of_unity_order_{order}")
    # (u1 - u0*alpha)(u1 - u0*beta) = u1^2 - r*u0*u1 - s*u0^2, zero iff ab = 0
    if u1 * u1 - r * u0 * u1 - s * u0 * u0 == 0:
        return Degeneracy(True, "ab_zero")
    return Degeneracy(False)


def terms_up_to(params: RecurrenceParams, N: int) -> Iterator[tuple[int, int]]:
    """Yield (n, u_n) for n = 0..N."""
    prev, cur = params.u0, params.u1
    yield 0, prev
    for n in range(1, N + 1):
        yield n, cur
        prev, cur = cur, params.r * cur + params.s * prev


def _mat_mul(x, y, mod=None):
    a = x[0] * y[0] + x[1] * y[2]
    b = x[0] * y[1] + x[1] * y[3]
    c = x[2] * y[0] + x[3] * y[2]
    d = x[2] * y[1] + x[3] * y[3]
    if mod is not None:
        return (a % mod, b % mod, c % mod, d % mod)
    return (a, b, c, d)


def _companion_power(r: int, s: int, n: int, mod=None):
    result = (1, 0, 0, 1)
    base = (r, s, 1, 0)
    while n:
        if n & 1:
            result = _mat_mul(result, base, mod)
        base = _mat_mul(base, base, mod)
        n >>= 1
    return result


def nth_term(params: RecurrenceParams, n: int, method: str = "doubling") -> int:
    """u_n exactly, by companion-matrix doubling or plain iteration."""
    if n < 0:
        raise ValueError("n must be nonnegative")
    if method == "iterate":
        prev, cur = params.u0, params.u1
        if n == 0:
            return prev
        for _ in range(n - 1):
            prev, cur = cur, params.r * cur + params.s * prev
        return cur
    if method != "doubling":
        raise ValueError(f"unknown method {method!r}")
    if n == 0:
        return params.u0
    # [u_n, u_{n-1}]^T = M^(n-1) [u_1, u_0]^T
    m = _companion_power(params.r, params.s, n - 1)
    return m[0] * params.u1 + m[1] * params.u0


class RootMagnitude(NamedTuple):
    value: float
    precise: Decimal
    form: str  # "(|r|+sqrt(D))/2" or "sqrt(-s)"


def dominant_root_abs(params: RecurrenceParams) -> RootMagnitude:
    """|alpha| for the larger root, with |alpha| >= |beta|."""
    params.require_nondegenerate()
    r, s, D = params.r, params.s, params.discriminant
    with localcontext() as ctx:
        ctx.prec = 50
        if D > 0:
            precise = (Decimal(abs(r)) + Decimal(D).sqrt()) / 2
            form = "(|r|+sqrt(D))/2"
        else:
            precise = Decimal(-s).sqrt()
            form = "sqrt(-s)"
    return RootMagnitude(float(precise), precise, form)


class GapFit(NamedTuple):
    gaps: list  # (n, gap)
    c0_hat: Optional[float]


def prop33_gap(params: RecurrenceParams, n_range: Iterable[int]) -> GapFit:
    """gap(n) = n - log|u_n| / log|alpha| over n_range, and max gap/log n.

    The fitted constant is descriptive only; n = 1 is excluded from the fit
    since log 1 = 0.
    """
    log_alpha = math.log(dominant_root_abs(params).value)
    gaps = []
    c0 = None
    for n in n_range:
        u = nth_term(params, n)
        if u == 0:
            raise ValueError(f"u_{n} = 0 inside the requested range")
        gap = n - math.log(abs(u)) / log_alpha
        gaps.append((n, gap))
        if n >= 2:
            ratio = gap / math.log(n)
            c0 = ratio if c0 is None else max(c0, ratio)
    return GapFit(gaps, c0)
