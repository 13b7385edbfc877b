"""Constant degenerate metric on R^n x R preserved by the suspension action.

On the elliptic plane H the monodromy acts, in the cyclic basis
``{v, A v}``, as the companion block of ``X^2 - t X + 1``; that block
preserves ``[[1, t/2], [t/2, 1]]``.  The expanding plane E gets the zero
form and the time direction gets ``dt^2``.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .exact_numbers import QuadExt, qx_sign
from .lattice_core import (
    IntMatrix,
    Matrix,
    SubspaceSplit,
    field_det,
    field_inverse,
    rank,
)


class NotElliptic(ValueError):
    """The factor's trace satisfies |t| >= 2, so no invariant positive form exists."""


class DegenerateBasis(ValueError):
    pass


@dataclass(frozen=True)
class InvariantForm2:
    trace: QuadExt | Fraction
    matrix: Matrix


@dataclass(frozen=True)
class GramForm:
    """Symmetric constant Gram matrix plus its positivity witness.

    ``witness_change`` is S = T^-1 and ``witness_form`` is diag(Q, 0) with Q
    positive definite; the spatial block equals S^T diag(Q, 0) S.
    """

    entries: Matrix
    rank: int
    witness_change: Matrix | None = None
    witness_form: Matrix | None = None


def _half(x):
    return x / 2 if isinstance(x, QuadExt) else Fraction(x) / 2


def elliptic_block(t) -> Matrix:
    """Companion matrix of X^2 - t X + 1."""
    return Matrix([[0, -1], [1, t]])


def invariant_form(t) -> InvariantForm2:
    """Positive definite binary form preserved by the companion block of X^2 - tX + 1."""
    if qx_sign(4 - t * t) <= 0:
        raise NotElliptic(f"|trace| >= 2 for trace {t}")
    h = _half(t)
    q = Matrix([[1, h], [h, 1]])
    b = elliptic_block(t)
    if b.transpose() @ q @ b != q:
        raise AssertionError("companion block does not preserve the form")
    return InvariantForm2(t, q)


def _first_nonzero_image(projector: Matrix) -> tuple:
    for col in projector.columns():
        if any(qx_sign(c) != 0 for c in col):
            return col
    raise DegenerateBasis("projector is zero")


def subspace_basis(split: SubspaceSplit, a: IntMatrix) -> Matrix:
    """Columns ``v, A v, w, A w`` with v spanning H's projection and w E's."""
    v = _first_nonzero_image(split.projector_h)
    w = _first_nonzero_image(split.projector_e)
    t = Matrix.from_columns([v, a @ v, w, a @ w])
    if qx_sign(field_det(t)) == 0:
        raise DegenerateBasis("cyclic vectors do not span")
    return t


def form_rank(g: GramForm | Matrix) -> int:
    m = g.entries if isinstance(g, GramForm) else g
    return rank(m)


def trace_of_factor(factor) -> object:
    """Trace t of a monic quadratic X^2 - tX + 1 given in ascending coefficients."""
    if len(factor) != 3 or factor[2] != 1 or factor[0] != 1:
        raise ValueError("expected a monic reciprocal quadratic X^2 - tX + 1")
    return -factor[1]


def ambient_gram(a: IntMatrix, split: SubspaceSplit) -> GramForm:
    """The (n+1)x(n+1) Gram matrix diag(T^-T diag(Q, 0) T^-1, 1)."""
    if a.n != 4:
        raise ValueError("metric construction supports one elliptic and one hyperbolic plane")
    form = invariant_form(trace_of_factor(split.factor_h))
    t = subspace_basis(split, a)
    s = field_inverse(t)
    zero = form.matrix[0, 1] * 0
    block = Matrix(
        [
            [form.matrix[0, 0], form.matrix[0, 1], zero, zero],
            [form.matrix[1, 0], form.matrix[1, 1], zero, zero],
            [zero] * 4,
            [zero] * 4,
        ]
    )
    spatial = s.transpose() @ block @ s
    rows = [list(r) + [zero] for r in spatial.rows] + [[zero] * 4 + [zero + 1]]
    entries = Matrix(rows)
    if entries.transpose() != entries:
        raise AssertionError("Gram matrix is not symmetric")
    return GramForm(entries, rank(entries), s, block)


def suspension_differential(a: IntMatrix) -> Matrix:
    """diag(A, 1), the derivative of (x, t) -> (A x, t + 1)."""
    n = a.n
    return Matrix([list(r) + [0] for r in a.rows] + [[0] * n + [1]])


def verify_isometry(g: GramForm | Matrix, a: IntMatrix) -> bool:
    m = g.entries if isinstance(g, GramForm) else g
    if m.n != a.n + 1:
        raise ValueError("Gram matrix must be (n+1)x(n+1)")
    phi = suspension_differential(a)
    return phi.transpose() @ m @ phi == m
