"""Exact integer and quadratic-field linear algebra."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Sequence

from .exact_numbers import qx_sign
from .poly_lab import (
    IntPoly,
    dense_ext_gcd,
    dense_mul,
    dense_trim,
)


class DimensionError(ValueError):
    pass


class Matrix:
    """Dense matrix over any exact ring (int, Fraction, QuadExt).

    Immutable; rows are stored as tuples.
    """

    __slots__ = ("rows",)

    def __init__(self, rows: Iterable[Iterable]):
        rows = tuple(tuple(r) for r in rows)
        if not rows or not rows[0]:
            raise DimensionError("matrices must be at least 1x1")
        if any(len(r) != len(rows[0]) for r in rows):
            raise DimensionError("ragged rows")
        object.__setattr__(self, "rows", rows)

    def __setattr__(self, name, value):
        raise AttributeError("Matrix is immutable")

    def __reduce__(self):
        return type(self), (self.rows,)

    @classmethod
    def identity(cls, n: int, one=1) -> "Matrix":
        zero = one - one
        return cls([[one if i == j else zero for j in range(n)] for i in range(n)])

    @classmethod
    def zeros(cls, n: int, m: int | None = None, zero=0) -> "Matrix":
        return cls([[zero] * (n if m is None else m) for _ in range(n)])

    @classmethod
    def diag(cls, entries: Sequence) -> "Matrix":
        n = len(entries)
        zero = entries[0] - entries[0]
        return cls([[entries[i] if i == j else zero for j in range(n)] for i in range(n)])

    @classmethod
    def parse(cls, text: str) -> "Matrix":
        """Rows separated by ';', entries by ','."""
        try:
            rows = [[int(e) for e in r.split(",")] for r in text.strip().split(";")]
        except ValueError:
            raise ValueError(f"malformed matrix: {text!r}") from None
        return _wrap(rows)

    def format(self) -> str:
        return ";".join(",".join(str(e) for e in r) for r in self.rows)

    @property
    def shape(self) -> tuple[int, int]:
        return len(self.rows), len(self.rows[0])

    @property
    def n(self) -> int:
        return len(self.rows)

    @property
    def is_square(self) -> bool:
        return len(self.rows) == len(self.rows[0])

    def __getitem__(self, ij):
        i, j = ij
        return self.rows[i][j]

    def column(self, j: int) -> tuple:
        return tuple(r[j] for r in self.rows)

    def columns(self) -> list[tuple]:
        return [self.column(j) for j in range(self.shape[1])]

    @classmethod
    def from_columns(cls, cols: Sequence[Sequence]) -> "Matrix":
        return _wrap(list(zip(*cols)))

    def transpose(self) -> "Matrix":
        return _wrap(list(zip(*self.rows)))

    def __add__(self, other: "Matrix") -> "Matrix":
        self._same_shape(other)
        return _wrap([[a + b for a, b in zip(r, s)] for r, s in zip(self.rows, other.rows)])

    def __sub__(self, other: "Matrix") -> "Matrix":
        self._same_shape(other)
        return _wrap([[a - b for a, b in zip(r, s)] for r, s in zip(self.rows, other.rows)])

    def __neg__(self) -> "Matrix":
        return _wrap([[-a for a in r] for r in self.rows])

    def scale(self, c) -> "Matrix":
        return _wrap([[c * a for a in r] for r in self.rows])

    def __matmul__(self, other):
        if isinstance(other, Matrix):
            if self.shape[1] != other.shape[0]:
                raise DimensionError(f"cannot multiply {self.shape} by {other.shape}")
            cols = other.columns()
            return _wrap([[_dot(r, c) for c in cols] for r in self.rows])
        # vector
        if len(other) != self.shape[1]:
            raise DimensionError("vector length mismatch")
        return tuple(_dot(r, other) for r in self.rows)

    def __pow__(self, k: int) -> "Matrix":
        if k < 0:
            raise ValueError("use inverse powers explicitly")
        result = Matrix.identity(self.n, _one_like(self.rows[0][0]))
        base = self
        while k:
            if k & 1:
                result = result @ base
            base = base @ base
            k >>= 1
        return _wrap(result.rows)

    def is_zero(self) -> bool:
        return all(e == 0 for r in self.rows for e in r)

    def _same_shape(self, other):
        if self.shape != other.shape:
            raise DimensionError(f"shape mismatch {self.shape} vs {other.shape}")

    def __eq__(self, other):
        if not isinstance(other, Matrix):
            return NotImplemented
        return self.rows == other.rows

    def __hash__(self):
        return hash(self.rows)

    def __repr__(self):
        return f"{type(self).__name__}({[list(r) for r in self.rows]})"


class IntMatrix(Matrix):
    """Square integer matrix."""

    __slots__ = ()

    def __init__(self, rows):
        super().__init__(rows)
        if not self.is_square:
            raise DimensionError("IntMatrix must be square")
        if not all(type(e) is int for r in self.rows for e in r):
            raise TypeError("IntMatrix entries must be int")


def _wrap(rows) -> Matrix:
    rows = [tuple(r) for r in rows]
    if len(rows) == len(rows[0]) and all(type(e) is int for r in rows for e in r):
        return IntMatrix(rows)
    return Matrix(rows)


def _dot(r, c):
    acc = 0
    for a, b in zip(r, c):
        if a != 0 and b != 0:
            acc = acc + a * b
    return acc


def _one_like(x):
    return x - x + 1


def _to_field(rows) -> list[list]:
    return [[Fraction(e) if isinstance(e, int) else e for e in r] for r in rows]


def as_int_matrix(m) -> IntMatrix:
    return m if isinstance(m, IntMatrix) else IntMatrix(m.rows if isinstance(m, Matrix) else m)


# ---------------------------------------------------------------------------
# determinants and characteristic polynomials


def companion_matrix(p: IntPoly) -> IntMatrix:
    """Sub-diagonal ones, last column ``(-c0, ..., -c_{n-1})``."""
    if p.degree < 1 or p.leading != 1:
        raise ValueError("companion_matrix needs a monic polynomial of degree >= 1")
    n = p.degree
    rows = [[0] * n for _ in range(n)]
    for i in range(1, n):
        rows[i][i - 1] = 1
    for i in range(n):
        rows[i][n - 1] = -p.coeffs[i]
    return IntMatrix(rows)


def det_fraction_free(m: Matrix) -> int:
    """Bareiss elimination.  Every division is exact over the integers."""
    if not m.is_square:
        raise DimensionError("determinant of a non-square matrix")
    a = [list(r) for r in m.rows]
    n = len(a)
    sign, prev = 1, 1
    for k in range(n - 1):
        if a[k][k] == 0:
            swap = next((i for i in range(k + 1, n) if a[i][k] != 0), None)
            if swap is None:
                return 0
            a[k], a[swap] = a[swap], a[k]
            sign = -sign
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                a[i][j] = (a[i][j] * a[k][k] - a[i][k] * a[k][j]) // prev
        prev = a[k][k]
    return sign * a[n - 1][n - 1]


def char_poly(m: Matrix) -> IntPoly:
    """det(X*I - M) by interpolation through X = 0..n."""
    n = m.n
    xs = list(range(n + 1))
    ys = [Fraction(det_fraction_free(Matrix.identity(n).scale(x) - m)) for x in xs]
    # Newton divided differences, then expand the Newton form
    coef = list(ys)
    for level in range(1, n + 1):
        for i in range(n, level - 1, -1):
            coef[i] = (coef[i] - coef[i - 1]) / (xs[i] - xs[i - level])
    poly = [coef[n]]
    for i in range(n - 1, -1, -1):
        poly = dense_mul(poly, [-xs[i], 1])
        poly[0] += coef[i]
    out = dense_trim(poly)
    if any(c.denominator != 1 for c in out):
        raise AssertionError("non-integral characteristic polynomial")
    return IntPoly([int(c) for c in out])


def power_minus_identity(m: IntMatrix, k: int) -> IntMatrix:
    if k < 1:
        raise ValueError("power must be positive")
    return as_int_matrix(m**k - Matrix.identity(m.n))


def adjugate(m: IntMatrix) -> IntMatrix:
    n = m.n
    if n == 1:
        return IntMatrix([[1]])
    rows = []
    for i in range(n):
        row = []
        for j in range(n):
            minor = Matrix([r[:i] + r[i + 1 :] for k, r in enumerate(m.rows) if k != j])
            row.append((-1) ** (i + j) * det_fraction_free(minor))
        rows.append(row)
    return IntMatrix(rows)


def unimodular_inverse(m: IntMatrix) -> IntMatrix:
    d = det_fraction_free(m)
    if abs(d) != 1:
        raise ValueError(f"matrix is not unimodular (det = {d})")
    return as_int_matrix(adjugate(m).scale(d))


def rank(m: Matrix) -> int:
    """Exact rank by Gaussian elimination over the fraction field."""
    a = _to_field(m.rows)
    rows, cols = len(a), len(a[0])
    r = 0
    for c in range(cols):
        piv = next((i for i in range(r, rows) if qx_sign(a[i][c]) != 0), None)
        if piv is None:
            continue
        a[r], a[piv] = a[piv], a[r]
        inv = 1 / a[r][c]
        for i in range(r + 1, rows):
            f = a[i][c] * inv
            if f != 0:
                a[i] = [x - f * y for x, y in zip(a[i], a[r])]
        r += 1
        if r == rows:
            break
    return r


def field_det(m: Matrix):
    """Determinant over a field (Fraction or QuadExt entries)."""
    a = _to_field(m.rows)
    n = len(a)
    det = 1
    for c in range(n):
        piv = next((i for i in range(c, n) if qx_sign(a[i][c]) != 0), None)
        if piv is None:
            return 0 * det
        if piv != c:
            a[c], a[piv] = a[piv], a[c]
            det = -det
        det = det * a[c][c]
        inv = 1 / a[c][c]
        for i in range(c + 1, n):
            f = a[i][c] * inv
            if f != 0:
                a[i] = [x - f * y for x, y in zip(a[i], a[c])]
    return det


def field_inverse(m: Matrix) -> Matrix:
    """Gauss-Jordan inverse over a field; pivots chosen by exact nonzero sign."""
    n = m.n
    one = _one_like(m.rows[0][0])
    if isinstance(one, int):
        one = Fraction(1)
    zero = one - one
    a = [r + [one if i == j else zero for j in range(n)] for i, r in enumerate(_to_field(m.rows))]
    for c in range(n):
        piv = next((i for i in range(c, n) if qx_sign(a[i][c]) != 0), None)
        if piv is None:
            raise ZeroDivisionError("singular matrix")
        a[c], a[piv] = a[piv], a[c]
        inv = 1 / a[c][c]
        a[c] = [x * inv for x in a[c]]
        for i in range(n):
            if i != c and a[i][c] != 0:
                f = a[i][c]
                a[i] = [x - f * y for x, y in zip(a[i], a[c])]
    return Matrix([r[n:] for r in a])


# ---------------------------------------------------------------------------
# Smith and Hermite normal forms


@dataclass(frozen=True)
class SNFData:
    left: IntMatrix
    diagonal: tuple[int, ...]
    right: IntMatrix

    @property
    def zero_count(self) -> int:
        return sum(1 for d in self.diagonal if d == 0)


def smith_normal_form(m: IntMatrix) -> SNFData:
    """Unimodular ``left``, ``right`` with ``left @ m @ right`` diagonal.

    Pivot: smallest nonzero magnitude in the trailing block, ties broken in
    row-major order.  Divisors are non-negative, form a divisibility chain,
    and zeros trail.
    """
    m = as_int_matrix(m)
    n = m.n
    a = [list(r) for r in m.rows]
    u = [[int(i == j) for j in range(n)] for i in range(n)]
    v = [[int(i == j) for j in range(n)] for i in range(n)]

    def swap_rows(i, j):
        a[i], a[j] = a[j], a[i]
        u[i], u[j] = u[j], u[i]

    def swap_cols(i, j):
        for r in a:
            r[i], r[j] = r[j], r[i]
        for r in v:
            r[i], r[j] = r[j], r[i]

    def add_row(dst, src, f):
        a[dst] = [x + f * y for x, y in zip(a[dst], a[src])]
        u[dst] = [x + f * y for x, y in zip(u[dst], u[src])]

    def add_col(dst, src, f):
        for r in a:
            r[dst] += f * r[src]
        for r in v:
            r[dst] += f * r[src]

    for t in range(n):
        while True:
            best = None
            for i in range(t, n):
                for j in range(t, n):
                    if a[i][j] and (best is None or abs(a[i][j]) < abs(a[best[0]][best[1]])):
                        best = (i, j)
            if best is None:
                break
            swap_rows(t, best[0])
            swap_cols(t, best[1])
            p = a[t][t]
            dirty = False
            for i in range(t + 1, n):
                if a[i][t]:
                    add_row(i, t, -(a[i][t] // p))
                    dirty = dirty or a[i][t] != 0
            for j in range(t + 1, n):
                if a[t][j]:
                    add_col(j, t, -(a[t][j] // p))
                    dirty = dirty or a[t][j] != 0
            if dirty:
                continue
            bad = next(
                (i for i in range(t + 1, n) for j in range(t + 1, n) if a[i][j] % p),
                None,
            )
            if bad is None:
                break
            add_row(t, bad, 1)
        if a[t][t] < 0:
            a[t] = [-x for x in a[t]]
            u[t] = [-x for x in u[t]]
    return SNFData(IntMatrix(u), tuple(a[i][i] for i in range(n)), IntMatrix(v))


def hermite_normal_form(rows: Sequence[Sequence[int]]) -> list[list[int]]:
    """Row-style HNF basis of the lattice spanned by ``rows``.

    Upper echelon, positive pivots, entries above each pivot reduced into
    ``[0, pivot)``; zero rows are dropped.
    """
    a = [list(map(int, r)) for r in rows if any(r)]
    if not a:
        return []
    ncols = len(a[0])
    r = 0
    for c in range(ncols):
        # Euclid on column c among rows r..
        while True:
            live = [i for i in range(r, len(a)) if a[i][c] != 0]
            if len(live) <= 1:
                break
            k = min(live, key=lambda i: (abs(a[i][c]), i))
            for i in live:
                if i != k:
                    q = a[i][c] // a[k][c]
                    a[i] = [x - q * y for x, y in zip(a[i], a[k])]
        live = [i for i in range(r, len(a)) if a[i][c] != 0]
        if not live:
            continue
        k = live[0]
        a[r], a[k] = a[k], a[r]
        if a[r][c] < 0:
            a[r] = [-x for x in a[r]]
        for i in range(r):
            q = a[i][c] // a[r][c]
            if q:
                a[i] = [x - q * y for x, y in zip(a[i], a[r])]
        r += 1
        if r == len(a):
            break
    return a[:r]


def lattice_coordinates(basis: Sequence[Sequence[int]], v: Sequence[int]) -> list[int] | None:
    """Integer coordinates of ``v`` in an HNF basis, or None if ``v`` is not in the lattice."""
    rest = list(v)
    coords = []
    for row in basis:
        c = next(j for j, x in enumerate(row) if x != 0)
        q, r = divmod(rest[c], row[c])
        if r:
            return None
        coords.append(q)
        rest = [x - q * y for x, y in zip(rest, row)]
    return coords if not any(rest) else None


def lattice_contains(basis, v) -> bool:
    return lattice_coordinates(basis, v) is not None


# ---------------------------------------------------------------------------
# spectral projectors


@dataclass(frozen=True)
class SubspaceSplit:
    projector_h: Matrix
    projector_e: Matrix
    factor_h: tuple
    factor_e: tuple


def matrix_poly_eval(coeffs: Sequence, m: Matrix) -> Matrix:
    """Horner evaluation of a polynomial (ascending coefficients) at a square matrix."""
    n = m.n
    result = Matrix.zeros(n, zero=0)
    ident = Matrix.identity(n)
    for c in reversed(list(coeffs)):
        result = result @ m + ident.scale(c)
    return result


def spectral_projectors(a: IntMatrix, f: Sequence, g: Sequence) -> SubspaceSplit:
    """Projectors onto ker f(A) and ker g(A) from a Bezout identity u*f + v*g = 1.

    ``f`` and ``g`` are ascending coefficient lists; their product must be
    the characteristic polynomial of ``a``.
    """
    f, g = dense_trim(f), dense_trim(g)
    cp = char_poly(a)
    prod = dense_mul(f, g)
    if len(prod) != len(cp.coeffs) or any(x != y for x, y in zip(prod, cp.coeffs)):
        raise ValueError("factor product does not equal the characteristic polynomial")
    gcd, u, v = dense_ext_gcd(f, g)
    if len(gcd) != 1:
        raise ValueError("factors are not coprime")
    proj_e = matrix_poly_eval(dense_mul(u, f), a)
    proj_h = matrix_poly_eval(dense_mul(v, g), a)
    return SubspaceSplit(proj_h, proj_e, tuple(f), tuple(g))
