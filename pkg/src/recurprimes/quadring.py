"""Exact arithmetic in Q(sqrt(D)) for the roots of x^2 - r x - s."""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import NamedTuple, Union

from .recurrence import RecurrenceParams

Scalar = Union[int, Fraction]


@dataclass(frozen=True)
class QuadElem:
    """x + y*sqrt(D) with rational x, y. D is kept formal, never reduced."""

    x: Fraction
    y: Fraction
    D: int

    def __post_init__(self):
        if self.D == 0:
            raise ValueError("D must be nonzero")
        object.__setattr__(self, "x", Fraction(self.x))
        object.__setattr__(self, "y", Fraction(self.y))

    @classmethod
    def rational(cls, value: Scalar, D: int) -> "QuadElem":
        return cls(Fraction(value), Fraction(0), D)

    @classmethod
    def sqrt(cls, D: int) -> "QuadElem":
        return cls(Fraction(0), Fraction(1), D)

    def _coerce(self, other) -> "QuadElem":
        if isinstance(other, QuadElem):
            if other.D != self.D:
                raise ValueError(f"mismatched discriminants {self.D} and {other.D}")
            return other
        if isinstance(other, (int, Fraction)):
            return QuadElem(Fraction(other), Fraction(0), self.D)
        return NotImplemented

    def __add__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return QuadElem(self.x + o.x, self.y + o.y, self.D)

    __radd__ = __add__

    def __neg__(self):
        return QuadElem(-self.x, -self.y, self.D)

    def __sub__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return QuadElem(self.x - o.x, self.y - o.y, self.D)

    def __rsub__(self, other):
        return -(self - other)

    def __mul__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return QuadElem(
            self.x * o.x + self.y * o.y * self.D,
            self.x * o.y + o.x * self.y,
            self.D,
        )

    __rmul__ = __mul__

    def conjugate(self) -> "QuadElem":
        return QuadElem(self.x, -self.y, self.D)

    def norm(self) -> Fraction:
        return self.x * self.x - self.D * self.y * self.y

    def inverse(self) -> "QuadElem":
        n = self.norm()
        if n == 0:
            # zero divisor only possible when D is a perfect square
            raise ZeroDivisionError(f"{self} is not invertible")
        c = self.conjugate()
        return QuadElem(c.x / n, c.y / n, self.D)

    def __truediv__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return self * o.inverse()

    def __rtruediv__(self, other):
        return self._coerce(other) * self.inverse()

    def __pow__(self, k: int):
        if k < 0:
            return self.inverse() ** (-k)
        result = QuadElem(Fraction(1), Fraction(0), self.D)
        base = self
        while k:
            if k & 1:
                result = result * base
            base = base * base
            k >>= 1
        return result

    def is_zero(self) -> bool:
        # for square D, x + y*sqrt(D) may vanish with y != 0
        root = math.isqrt(self.D) if self.D > 0 else -1
        if root * root == self.D:
            return self.x + self.y * root == 0
        return self.x == 0 and self.y == 0

    def equals(self, other) -> bool:
        """Numerical equality (handles square D where representation is not unique)."""
        return (self - self._coerce(other)).is_zero()

    def rational_value(self) -> Fraction:
        root = math.isqrt(self.D) if self.D > 0 else -1
        if root * root == self.D:
            return self.x + self.y * root
        if self.y != 0:
            raise ValueError(f"{self} is irrational")
        return self.x

    def magnitude(self) -> float:
        """Absolute value as a real (D > 0) or complex (D < 0) number."""
        if self.D > 0:
            return abs(float(self.x) + float(self.y) * math.sqrt(self.D))
        return math.hypot(float(self.x), float(self.y) * math.sqrt(-self.D))

    def __repr__(self):
        return f"QuadElem({self.x} + {self.y}*sqrt({self.D}))"


def quad_arith(e1: QuadElem, e2: QuadElem, op: str) -> QuadElem:
    if e1.D != e2.D:
        raise ValueError(f"mismatched discriminants {e1.D} and {e2.D}")
    if op == "add":
        return e1 + e2
    if op == "sub":
        return e1 - e2
    if op == "mul":
        return e1 * e2
    if op == "div":
        if e2.is_zero():
            raise ZeroDivisionError("division by zero in Q(sqrt(D))")
        return e1 / e2
    raise ValueError(f"unknown op {op!r}")


class ClosedForm(NamedTuple):
    a: QuadElem
    b: QuadElem
    alpha: QuadElem
    beta: QuadElem

    @property
    def a_prime(self) -> QuadElem:
        return (self.beta - self.alpha) * self.a

    @property
    def b_prime(self) -> QuadElem:
        return (self.beta - self.alpha) * self.b


def closed_form_constants(params: RecurrenceParams) -> ClosedForm:
    """a, b, alpha, beta with u_n = a*alpha^n + b*beta^n."""
    D = params.discriminant
    half = Fraction(1, 2)
    alpha = QuadElem(Fraction(params.r, 2), half, D)
    beta = QuadElem(Fraction(params.r, 2), -half, D)
    diff = beta - alpha  # -sqrt(D), never zero
    a = (params.u0 * beta - params.u1) / diff
    b = (params.u1 - params.u0 * alpha) / diff
    return ClosedForm(a, b, alpha, beta)


def reconstruct_term(constants: ClosedForm, n: int) -> int:
    value = constants.a * constants.alpha**n + constants.b * constants.beta**n
    q = value.rational_value()
    if q.denominator != 1:
        raise ArithmeticError(f"closed form produced non-integral {q} at n={n}")
    return q.numerator


def lucas_quad(constants: ClosedForm, n: int) -> QuadElem:
    """t_n = (alpha^n - beta^n) / (alpha - beta) as an exact element."""
    alpha, beta = constants.alpha, constants.beta
    return (alpha**n - beta**n) / (alpha - beta)


def verify_identity_43(params: RecurrenceParams, m: int, shift: int) -> bool:
    """Check u_m - beta^shift * u_{m-shift} = a(alpha - beta) alpha^{m-shift} t_shift.

    a(alpha - beta) equals -a' for a' = (beta - alpha) a; this is the sign
    that makes the identity hold.
    """
    if shift < 0 or shift > m:
        raise ValueError(f"need 0 <= shift <= m, got shift={shift}, m={m}")
    cf = closed_form_constants(params)
    D = params.discriminant

    def u(k):
        return cf.a * cf.alpha**k + cf.b * cf.beta**k

    lhs = u(m) - cf.beta**shift * u(m - shift)
    coeff = cf.a * (cf.alpha - cf.beta)
    rhs = coeff * cf.alpha ** (m - shift) * lucas_quad(cf, shift)
    assert lhs.D == rhs.D == D
    return lhs.equals(rhs)
