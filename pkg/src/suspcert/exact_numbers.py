"""Exact rationals and real quadratic fields Q(sqrt(D)).

Rationals are :class:`fractions.Fraction`, which already keeps values reduced
with a positive denominator.  :class:`QuadExt` adds a single square root on
top of them, with an exact sign test so that comparisons never touch floats.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from fractions import Fraction
from typing import Union

Rat = Fraction
Scalar = Union[int, Fraction, "QuadExt"]

NEGATIVE, ZERO, POSITIVE = -1, 0, 1


class FieldMismatch(ValueError):
    """Raised when two elements of different quadratic fields are combined."""


def parse_rat(text: str) -> Fraction:
    return Fraction(text.strip())


def format_rat(x: Fraction | int) -> str:
    x = Fraction(x)
    return f"{x.numerator}/{x.denominator}"


def squarefree_part(n: int) -> tuple[int, int]:
    """Split ``n >= 1`` as ``s * c**2`` with ``s`` squarefree.

    Returns ``(s, c)``.  Plain trial division up to sqrt(n).
    """
    if n < 1:
        raise ValueError(f"squarefree_part needs n >= 1, got {n}")
    s, c = 1, 1
    p = 2
    while p * p <= n:
        e = 0
        while n % p == 0:
            n //= p
            e += 1
        if e:
            c *= p ** (e // 2)
            if e % 2:
                s *= p
        p += 1 if p == 2 else 2
    return s * n, c


def is_squarefree(d: int) -> bool:
    return d >= 1 and squarefree_part(d)[1] == 1


def _sign(x) -> int:
    return (x > 0) - (x < 0)


@dataclass(frozen=True, eq=False)
class QuadExt:
    """The real number ``rational + radical * sqrt(radicand)``.

    ``radicand`` must be squarefree and at least 2.  Plain integers and
    fractions are coerced into the field of whichever ``QuadExt`` they meet.
    """

    rational: Fraction
    radical: Fraction
    radicand: int

    def __post_init__(self):
        object.__setattr__(self, "rational", Fraction(self.rational))
        object.__setattr__(self, "radical", Fraction(self.radical))
        if not (self.radicand >= 2 and is_squarefree(self.radicand)):
            raise ValueError(f"radicand must be squarefree and >= 2, got {self.radicand}")

    @classmethod
    def sqrt(cls, d: int) -> "QuadExt":
        return cls(Fraction(0), Fraction(1), d)

    @classmethod
    def of(cls, x: Scalar, d: int) -> "QuadExt":
        if isinstance(x, QuadExt):
            if x.radicand != d and x.radical != 0:
                raise FieldMismatch(f"element of Q(sqrt({x.radicand})) used in Q(sqrt({d}))")
            return x if x.radicand == d else cls(x.rational, 0, d)
        return cls(Fraction(x), Fraction(0), d)

    def _coerce(self, other) -> "QuadExt | None":
        if isinstance(other, QuadExt):
            if other.radicand == self.radicand:
                return other
            if other.radical == 0:
                return QuadExt(other.rational, 0, self.radicand)
            if self.radical == 0:
                # self is rational; the caller is rebuilt in other's field
                return None
            raise FieldMismatch(
                f"cannot combine Q(sqrt({self.radicand})) with Q(sqrt({other.radicand}))"
            )
        if isinstance(other, (int, Fraction)):
            return QuadExt(other, 0, self.radicand)
        return NotImplemented

    def _binary(self, other, op):
        o = self._coerce(other)
        if o is NotImplemented:
            return NotImplemented
        if o is None:
            return op(QuadExt(self.rational, 0, other.radicand), other)
        return op(self, o)

    @property
    def is_rational(self) -> bool:
        return self.radical == 0

    def conjugate(self) -> "QuadExt":
        return QuadExt(self.rational, -self.radical, self.radicand)

    def norm(self) -> Fraction:
        return self.rational**2 - self.radicand * self.radical**2

    def sign(self) -> int:
        return qx_sign(self)

    def __add__(self, other):
        return self._binary(
            other, lambda x, y: QuadExt(x.rational + y.rational, x.radical + y.radical, x.radicand)
        )

    __radd__ = __add__

    def __sub__(self, other):
        return self._binary(
            other, lambda x, y: QuadExt(x.rational - y.rational, x.radical - y.radical, x.radicand)
        )

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        def mul(x, y):
            return QuadExt(
                x.rational * y.rational + x.radicand * x.radical * y.radical,
                x.rational * y.radical + x.radical * y.rational,
                x.radicand,
            )

        return self._binary(other, mul)

    __rmul__ = __mul__

    def inverse(self) -> "QuadExt":
        n = self.norm()
        if n == 0:
            # norm vanishes only at zero since the radicand is not a square
            raise ZeroDivisionError("inverse of zero in a quadratic field")
        return QuadExt(self.rational / n, -self.radical / n, self.radicand)

    def __truediv__(self, other):
        return self._binary(other, lambda x, y: x * y.inverse())

    def __rtruediv__(self, other):
        return self.inverse() * other

    def __neg__(self):
        return QuadExt(-self.rational, -self.radical, self.radicand)

    def __pos__(self):
        return self

    def __pow__(self, k: int):
        if not isinstance(k, int):
            return NotImplemented
        base = self if k >= 0 else self.inverse()
        result = QuadExt(1, 0, self.radicand)
        k = abs(k)
        while k:
            if k & 1:
                result = result * base
            base = base * base
            k >>= 1
        return result

    def __eq__(self, other):
        if isinstance(other, (int, Fraction)):
            return self.radical == 0 and self.rational == other
        if not isinstance(other, QuadExt):
            return NotImplemented
        if self.radical == 0 and other.radical == 0:
            return self.rational == other.rational
        return (self.rational, self.radical, self.radicand) == (
            other.rational,
            other.radical,
            other.radicand,
        )

    def __hash__(self):
        if self.radical == 0:
            return hash(self.rational)
        return hash((self.rational, self.radical, self.radicand))

    def __bool__(self):
        return self.rational != 0 or self.radical != 0

    def __lt__(self, other):
        return qx_sign(self - other) < 0

    def __le__(self, other):
        return qx_sign(self - other) <= 0

    def __gt__(self, other):
        return qx_sign(self - other) > 0

    def __ge__(self, other):
        return qx_sign(self - other) >= 0

    def __float__(self):
        # display and test oracles only
        return float(self.rational) + float(self.radical) * self.radicand**0.5

    def __str__(self):
        return f"{format_rat(self.rational)} + {format_rat(self.radical)}*sqrt({self.radicand})"

    def __repr__(self):
        return f"QuadExt({self})"


_QX_RE = re.compile(r"^\s*(\S+)\s*\+\s*(\S+)\s*\*\s*sqrt\(\s*(\d+)\s*\)\s*$")


def parse_quadext(text: str) -> QuadExt:
    m = _QX_RE.match(text)
    if not m:
        raise ValueError(f"not a quadratic-field literal: {text!r}")
    return QuadExt(parse_rat(m.group(1)), parse_rat(m.group(2)), int(m.group(3)))


def qx_sign(x: Scalar) -> int:
    """Exact sign of ``a + b*sqrt(D)``: -1, 0 or 1.

    Compares ``a**2`` with ``D*b**2`` after splitting on the signs of ``a``
    and ``b``.
    """
    if not isinstance(x, QuadExt):
        return _sign(x)
    a, b, d = x.rational, x.radical, x.radicand
    sa, sb = _sign(a), _sign(b)
    if sb == 0:
        return sa
    if sa == 0:
        return sb
    if sa == sb:
        return sa
    # opposite signs: the term with the larger square wins
    diff = a * a - d * b * b
    return sa * _sign(diff)


def qx_arith(x: Scalar, y: Scalar, op: str):
    """Dispatch ``add``/``sub``/``mul``/``div`` on two field elements."""
    if isinstance(x, QuadExt) and isinstance(y, QuadExt) and x.radicand != y.radicand:
        raise FieldMismatch(f"radicands differ: {x.radicand} vs {y.radicand}")
    if op == "add":
        return x + y
    if op == "sub":
        return x - y
    if op == "mul":
        return x * y
    if op == "div":
        if y == 0:
            raise ZeroDivisionError("division by zero in a quadratic field")
        if not isinstance(x, QuadExt) and not isinstance(y, QuadExt):
            return Fraction(x) / Fraction(y)
        return x / y
    raise ValueError(f"unknown operation {op!r}")
