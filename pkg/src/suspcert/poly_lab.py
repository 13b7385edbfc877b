"""Exact univariate polynomial algebra.

Coefficient lists are in ascending degree order throughout.  The helpers
prefixed ``dense_`` work over any exact field whose elements support the
usual operators (``Fraction``, :class:`~suspcert.exact_numbers.QuadExt`);
:class:`IntPoly` is the integer-coefficient type used at the public surface.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Sequence


class UnsupportedDegree(ValueError):
    """The requested algorithm is only implemented for small degrees."""


# ---------------------------------------------------------------------------
# dense coefficient-list arithmetic over an exact field


def dense_trim(p: Sequence) -> list:
    p = list(p)
    while p and p[-1] == 0:
        p.pop()
    return p


def dense_add(p: Sequence, q: Sequence) -> list:
    n = max(len(p), len(q))
    out = [0] * n
    for i, c in enumerate(p):
        out[i] = out[i] + c
    for i, c in enumerate(q):
        out[i] = out[i] + c
    return dense_trim(out)


def dense_neg(p: Sequence) -> list:
    return [-c for c in p]


def dense_sub(p: Sequence, q: Sequence) -> list:
    return dense_add(p, dense_neg(q))


def dense_mul(p: Sequence, q: Sequence) -> list:
    if not p or not q:
        return []
    out = [0] * (len(p) + len(q) - 1)
    for i, a in enumerate(p):
        if a == 0:
            continue
        for j, b in enumerate(q):
            out[i + j] = out[i + j] + a * b
    return dense_trim(out)


def dense_scale(p: Sequence, c) -> list:
    return dense_trim([c * x for x in p])


def dense_divmod(p: Sequence, q: Sequence) -> tuple[list, list]:
    """Long division over a field; ``q`` must be nonzero."""
    q = dense_trim(q)
    if not q:
        raise ZeroDivisionError("polynomial division by zero")
    r = dense_trim(p)
    lead = q[-1]
    if isinstance(lead, int):
        lead = Fraction(lead)
    quot = [0] * max(len(r) - len(q) + 1, 0)
    while len(r) >= len(q):
        k = len(r) - len(q)
        c = r[-1] / lead
        quot[k] = c
        for i, b in enumerate(q):
            r[i + k] = r[i + k] - c * b
        r.pop()
        r = dense_trim(r)
    return dense_trim(quot), r


def dense_monic(p: Sequence) -> list:
    p = dense_trim(p)
    if not p:
        return []
    lead = p[-1]
    if isinstance(lead, int):
        lead = Fraction(lead)
    return [c / lead for c in p]


def dense_ext_gcd(p: Sequence, q: Sequence) -> tuple[list, list, list]:
    """Extended Euclid: returns ``(g, u, v)`` with ``u*p + v*q = g``, g monic."""
    r0, r1 = dense_trim(p), dense_trim(q)
    s0, s1 = [1], []
    t0, t1 = [], [1]
    while r1:
        quo, rem = dense_divmod(r0, r1)
        r0, r1 = r1, rem
        s0, s1 = s1, dense_sub(s0, dense_mul(quo, s1))
        t0, t1 = t1, dense_sub(t0, dense_mul(quo, t1))
    if not r0:
        return [], s0, t0
    lead = r0[-1]
    if isinstance(lead, int):
        lead = Fraction(lead)
    inv = 1 / lead
    return dense_scale(r0, inv), dense_scale(s0, inv), dense_scale(t0, inv)


def dense_eval(p: Sequence, x):
    acc = 0
    for c in reversed(p):
        acc = acc * x + c
    return acc


def dense_derivative(p: Sequence) -> list:
    return dense_trim([i * c for i, c in enumerate(p)][1:])


# ---------------------------------------------------------------------------
# integer polynomials


@dataclass(frozen=True)
class IntPoly:
    """Polynomial with integer coefficients, ascending order, no trailing zeros."""

    coeffs: tuple[int, ...]

    def __init__(self, coeffs: Sequence[int] = ()):
        cs = [int(c) for c in coeffs]
        if any(c != cc for c, cc in zip(cs, coeffs)):
            raise ValueError("IntPoly coefficients must be integers")
        object.__setattr__(self, "coeffs", tuple(dense_trim(cs)))

    @classmethod
    def parse(cls, text: str) -> "IntPoly":
        """Parse the comma-separated ascending coefficient format, e.g. ``1,-2,0,-2,1``."""
        parts = [s.strip() for s in text.split(",")]
        if not parts or any(not s for s in parts):
            raise ValueError(f"malformed coefficient list: {text!r}")
        try:
            return cls([int(s) for s in parts])
        except ValueError:
            raise ValueError(f"malformed coefficient list: {text!r}") from None

    def format(self) -> str:
        return ",".join(str(c) for c in self.coeffs) if self.coeffs else "0"

    @classmethod
    def x(cls) -> "IntPoly":
        return cls([0, 1])

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    @property
    def is_zero(self) -> bool:
        return not self.coeffs

    @property
    def leading(self) -> int:
        return self.coeffs[-1] if self.coeffs else 0

    def content(self) -> int:
        return math.gcd(*self.coeffs) if self.coeffs else 0

    def primitive(self) -> "IntPoly":
        """Primitive part with positive leading coefficient."""
        if self.is_zero:
            return self
        c = self.content() * (1 if self.leading > 0 else -1)
        return IntPoly([x // c for x in self.coeffs])

    def derivative(self) -> "IntPoly":
        return IntPoly(dense_derivative(self.coeffs))

    def __add__(self, other: "IntPoly") -> "IntPoly":
        return IntPoly(dense_add(self.coeffs, other.coeffs))

    def __sub__(self, other: "IntPoly") -> "IntPoly":
        return IntPoly(dense_sub(self.coeffs, other.coeffs))

    def __mul__(self, other) -> "IntPoly":
        if isinstance(other, int):
            return IntPoly([c * other for c in self.coeffs])
        return IntPoly(dense_mul(self.coeffs, other.coeffs))

    __rmul__ = __mul__

    def __neg__(self) -> "IntPoly":
        return IntPoly([-c for c in self.coeffs])

    def __pow__(self, k: int) -> "IntPoly":
        out = IntPoly([1])
        for _ in range(k):
            out = out * self
        return out

    def __call__(self, x):
        return poly_eval(self, x)

    def exact_div(self, other: "IntPoly") -> "IntPoly | None":
        """Quotient if ``other`` divides ``self`` over the integers, else None."""
        q, r = dense_divmod(self.coeffs, other.coeffs)
        if r or any(Fraction(c).denominator != 1 for c in q):
            return None
        return IntPoly([int(c) for c in q])

    def divides(self, other: "IntPoly") -> bool:
        """True if ``self`` divides ``other`` over Q."""
        return not dense_divmod(other.coeffs, self.coeffs)[1]

    def __str__(self):
        if self.is_zero:
            return "0"
        terms = []
        for i in range(self.degree, -1, -1):
            c = self.coeffs[i]
            if c == 0:
                continue
            mono = "" if i == 0 else ("X" if i == 1 else f"X^{i}")
            mag = abs(c)
            body = f"{mag}" if (mag != 1 or i == 0) else ""
            if body and mono:
                body += "*"
            sign = "-" if c < 0 else "+"
            terms.append((sign, body + mono))
        head_sign, head = terms[0]
        out = ("-" if head_sign == "-" else "") + head
        for sign, t in terms[1:]:
            out += f" {sign} {t}"
        return out


@dataclass(frozen=True)
class RatInterval:
    low: Fraction
    high: Fraction

    def __post_init__(self):
        object.__setattr__(self, "low", Fraction(self.low))
        object.__setattr__(self, "high", Fraction(self.high))
        if not self.low < self.high:
            raise ValueError(f"empty interval ({self.low}, {self.high}]")

    @property
    def width(self) -> Fraction:
        return self.high - self.low

    def contains(self, x) -> bool:
        return self.low < x <= self.high

    def reciprocal(self) -> "RatInterval":
        """Image under x -> 1/x; the interval must not contain 0."""
        if self.low <= 0 <= self.high:
            raise ZeroDivisionError("interval contains zero")
        return RatInterval(1 / self.high, 1 / self.low)

    def intersect(self, other: "RatInterval") -> "RatInterval | None":
        lo, hi = max(self.low, other.low), min(self.high, other.high)
        return RatInterval(lo, hi) if lo < hi else None

    def __str__(self):
        return f"({self.low}, {self.high}]"


def poly_eval(p: IntPoly, x) -> Fraction:
    """Horner evaluation at a rational (or any exact) point."""
    if isinstance(x, int):
        x = Fraction(x)
    return dense_eval(p.coeffs, x) if p.coeffs else Fraction(0)


def is_reciprocal(p: IntPoly) -> bool:
    return p.coeffs == p.coeffs[::-1]


def reciprocal_transform(p: IntPoly) -> IntPoly:
    """Return ``q`` of degree ``k`` with ``p(X) = X**k * q(X + 1/X)``.

    Peels off ``(X**2 + 1)**j * X**(k - j)`` expansions from the top: the
    polynomial ``X**k * (X + 1/X)**j`` is itself palindromic of degree 2k.
    """
    if p.is_zero or p.degree % 2 or not is_reciprocal(p):
        raise ValueError("reciprocal_transform needs a reciprocal polynomial of even degree")
    k = p.degree // 2
    rest = list(p.coeffs)
    q = [0] * (k + 1)
    for j in range(k, -1, -1):
        # X^k (X + 1/X)^j = sum_i C(j,i) X^(k - j + 2i)
        c = rest[k + j]
        q[j] = c
        if c:
            for i in range(j + 1):
                rest[k - j + 2 * i] -= c * math.comb(j, i)
    if any(rest):
        raise AssertionError("reciprocal transform left a remainder")
    return IntPoly(q)


def expand_reciprocal(q: IntPoly) -> IntPoly:
    """Inverse of :func:`reciprocal_transform`: ``X**k * q(X + 1/X)``."""
    k = q.degree
    out = [0] * (2 * k + 1)
    for j, c in enumerate(q.coeffs):
        for i in range(j + 1):
            out[k - j + 2 * i] += c * math.comb(j, i)
    return IntPoly(out)


# ---------------------------------------------------------------------------
# gcd


def _prem(a: list[int], b: list[int]) -> list[int]:
    """Pseudo-remainder of integer polynomials: lc(b)**(da-db+1) * a mod b."""
    r = list(a)
    db = len(b) - 1
    lb = b[-1]
    e = len(a) - len(b) + 1
    while r and len(r) - 1 >= db:
        k = len(r) - 1 - db
        lr = r[-1]
        r = [x * lb for x in r]
        for i, c in enumerate(b):
            r[i + k] -= lr * c
        r = dense_trim(r)
        e -= 1
    return [x * lb**e for x in r] if e > 0 else r


def poly_gcd_rational(p: IntPoly, q: IntPoly) -> IntPoly:
    """Primitive gcd over Q via the subresultant remainder sequence.

    The result has content 1 and positive leading coefficient.
    """
    if p.is_zero and q.is_zero:
        raise ValueError("gcd(0, 0) is undefined")
    if p.is_zero:
        return q.primitive()
    if q.is_zero:
        return p.primitive()
    a, b = list(p.coeffs), list(q.coeffs)
    if len(a) < len(b):
        a, b = b, a
    g = h = 1
    while True:
        delta = len(a) - len(b)
        r = _prem(a, b)
        if not r:
            break
        if len(r) == 1:
            return IntPoly([1])
        a = b
        div = g * h**delta
        b = [x // div for x in r]
        g = a[-1]
        if delta == 0:
            pass
        elif delta == 1:
            h = g
        else:
            h = g**delta // h ** (delta - 1)
    return IntPoly(b).primitive()


def is_squarefree_poly(p: IntPoly) -> bool:
    if p.degree < 1:
        return True
    return poly_gcd_rational(p, p.derivative()).degree == 0


# ---------------------------------------------------------------------------
# Sturm sequences and real roots


def sturm_sequence(p: IntPoly) -> list[list[Fraction]]:
    seq = [[Fraction(c) for c in p.coeffs], [Fraction(c) for c in p.derivative().coeffs]]
    while seq[-1]:
        _, r = dense_divmod(seq[-2], seq[-1])
        seq.append(dense_neg(r))
    return [s for s in seq if s]


def _variations(seq: list[list[Fraction]], x: Fraction) -> int:
    signs = [v for v in (dense_eval(s, x) for s in seq) if v != 0]
    return sum(1 for u, v in zip(signs, signs[1:]) if (u > 0) != (v > 0))


class EndpointRoot(ValueError):
    """An interval endpoint is a root of the polynomial."""


def sturm_count(p: IntPoly, interval: RatInterval, _seq=None) -> int:
    """Number of distinct real roots of ``p`` in ``(low, high]``.

    Endpoints must not be roots; callers nudge them instead.
    """
    if p.is_zero:
        raise ValueError("sturm_count of the zero polynomial")
    for end in (interval.low, interval.high):
        if poly_eval(p, end) == 0:
            raise EndpointRoot(f"{end} is a root of {p}")
    seq = _seq if _seq is not None else sturm_sequence(p)
    return _variations(seq, interval.low) - _variations(seq, interval.high)


def cauchy_bound(p: IntPoly) -> Fraction:
    """Strict bound: every complex root has modulus < the returned value."""
    lead = abs(p.leading)
    return 1 + Fraction(max((abs(c) for c in p.coeffs[:-1]), default=0), lead)


def endpoint_nudge(p: IntPoly) -> Fraction:
    return Fraction(1, (1 + max(abs(c) for c in p.coeffs)) * 2**10)


ISOLATION_WIDTH = Fraction(1, 2**20)


def _split_point(p: IntPoly, lo: Fraction, hi: Fraction) -> Fraction:
    # the midpoint unless it is a root; p has at most deg p roots to dodge
    mid = (lo + hi) / 2
    step = (hi - lo) / 2 ** (p.degree + 3)
    k = 0
    while True:
        for cand in (mid + k * step, mid - k * step):
            if poly_eval(p, cand) != 0:
                return cand
        k += 1


def isolate_real_roots(p: IntPoly, width: Fraction = ISOLATION_WIDTH) -> list[RatInterval]:
    """Disjoint isolating intervals, one per distinct real root, sorted ascending."""
    if p.is_zero:
        raise ValueError("cannot isolate roots of the zero polynomial")
    if p.degree < 1:
        return []
    seq = sturm_sequence(p)
    b = cauchy_bound(p)
    stack = [(RatInterval(-b, b), None)]
    found = []
    while stack:
        iv, known = stack.pop()
        n = known if known is not None else sturm_count(p, iv, seq)
        if n == 0:
            continue
        if n == 1 and iv.width <= width:
            found.append(iv)
            continue
        m = _split_point(p, iv.low, iv.high)
        left = RatInterval(iv.low, m)
        nl = sturm_count(p, left, seq)
        stack.append((RatInterval(m, iv.high), n - nl))
        stack.append((left, nl))
    return sorted(found, key=lambda r: r.low)


# ---------------------------------------------------------------------------
# cyclotomic polynomials and irreducibility


def euler_phi(k: int) -> int:
    result, n, p = k, k, 2
    while p * p <= n:
        if n % p == 0:
            while n % p == 0:
                n //= p
            result -= result // p
        p += 1
    if n > 1:
        result -= result // n
    return result


@lru_cache(maxsize=None)
def cyclotomic_poly(k: int) -> IntPoly:
    """Phi_k as (X**k - 1) divided by Phi_d for every proper divisor d of k."""
    if k < 1:
        raise ValueError("cyclotomic index must be positive")
    num = IntPoly([-1] + [0] * (k - 1) + [1])
    for d in range(1, k):
        if k % d == 0:
            q = num.exact_div(cyclotomic_poly(d))
            if q is None:
                raise AssertionError(f"Phi_{d} does not divide X^{k} - 1")
            num = q
    return num


def cyclotomic_factors(p: IntPoly) -> list[int]:
    """Sorted indices k with Phi_k dividing ``p``.

    phi(k) <= n forces k <= 2*n**2, which bounds the scan.
    """
    if p.is_zero:
        raise ValueError("cyclotomic_factors of the zero polynomial")
    n = p.degree
    if n < 1:
        return []
    return [
        k
        for k in range(1, 2 * n * n + 1)
        if euler_phi(k) <= n and cyclotomic_poly(k).divides(p)
    ]


def _divisors(n: int) -> list[int]:
    n = abs(n)
    small = [d for d in range(1, math.isqrt(n) + 1) if n % d == 0]
    return sorted(set(small + [n // d for d in small]))


def _has_rational_root(p: IntPoly) -> bool:
    c0, cn = p.coeffs[0], p.leading
    if c0 == 0:
        return True
    for num in _divisors(c0):
        for den in _divisors(cn):
            for s in (1, -1):
                if poly_eval(p, Fraction(s * num, den)) == 0:
                    return True
    return False


def mignotte_bound(p: IntPoly, k: int, j: int) -> int:
    """Bound on |coefficient j| of any integer factor of degree k."""
    norm = math.isqrt(sum(c * c for c in p.coeffs)) + 1
    return math.comb(k, j) * norm


def irreducible_quartic(p: IntPoly) -> bool:
    """Irreducibility over Q for degree 1 to 4.

    Degrees 2 and 3 reduce to the rational-root test.  A quartic without
    rational roots is reducible only as a product of two integral
    quadratics (Gauss), whose middle coefficient is bounded by Mignotte.
    """
    if p.is_zero:
        raise ValueError("zero polynomial")
    if p.degree > 4:
        raise UnsupportedDegree(f"irreducibility implemented up to degree 4, got {p.degree}")
    if p.degree < 1:
        raise ValueError("constants are neither reducible nor irreducible")
    p = p.primitive()
    if p.degree == 1:
        return True
    if _has_rational_root(p):
        return False
    if p.degree < 4:
        return True
    bound = mignotte_bound(p, 2, 1)
    for lead in _divisors(p.leading):
        for const in _divisors(p.coeffs[0]):
            for s in (1, -1):
                for mid in range(-bound, bound + 1):
                    cand = IntPoly([s * const, mid, lead])
                    if cand.divides(p):
                        return False
    return True
