import random
from fractions import Fraction

import pytest

from suspcert.certifier import quadratic_factors, reciprocal_quartic, search_box, SearchBox
from suspcert.exact_numbers import QuadExt, qx_sign
from suspcert.flat_metric import (
    GramForm,
    NotElliptic,
    ambient_gram,
    elliptic_block,
    form_rank,
    invariant_form,
    subspace_basis,
    verify_isometry,
)
from suspcert.lattice_core import Matrix, companion_matrix, field_det, field_inverse, spectral_projectors

S3 = QuadExt.sqrt(3)
P = reciprocal_quartic(2, 0)
A = companion_matrix(P)
SPLIT = spectral_projectors(A, [1, S3 - 1, 1], [1, -(S3 + 1), 1])
GRAM = ambient_gram(A, SPLIT)


def quad(x, m, y):
    return sum(x[i] * m[i, j] * y[j] for i in range(len(x)) for j in range(len(y)))


def test_invariant_form_main_trace():
    form = invariant_form(1 - S3)
    h = (1 - S3) / 2
    assert form.matrix == Matrix([[1, h], [h, 1]])
    det = field_det(form.matrix)
    assert det == S3 / 2
    assert qx_sign(det) > 0


def test_invariant_form_rotation():
    assert invariant_form(0).matrix == Matrix.identity(2)


def test_invariant_form_rejects_hyperbolic_trace():
    with pytest.raises(NotElliptic):
        invariant_form(1 + S3)
    with pytest.raises(NotElliptic):
        invariant_form(2)


def test_invariant_form_random_elliptic_traces():
    rng = random.Random(50)
    done = 0
    while done < 50:
        t = QuadExt(Fraction(rng.randint(-40, 40), 10), Fraction(rng.randint(-20, 20), 10), 3)
        if qx_sign(4 - t * t) <= 0:
            continue
        b = elliptic_block(t)
        q = invariant_form(t).matrix
        assert b.transpose() @ q @ b == q
        done += 1


def test_subspace_basis_block_diagonalizes():
    t = subspace_basis(SPLIT, A)
    assert qx_sign(field_det(t)) != 0
    cols = t.columns()
    for c in cols[2:]:
        assert all(x == 0 for x in SPLIT.projector_h @ c)
    conj = field_inverse(t) @ A @ t
    y_in = 1 - S3
    y_out = 1 + S3
    expected = Matrix(
        [[0, -1, 0, 0], [1, y_in, 0, 0], [0, 0, 0, -1], [0, 0, 1, y_out]]
    )
    assert conj == expected


def test_ambient_gram_structure():
    g = GRAM.entries
    assert g.shape == (5, 5)
    assert g.transpose() == g
    assert GRAM.rank == 3 == form_rank(GRAM)
    assert g[4, 4] == 1
    assert all(g[4, j] == 0 and g[j, 4] == 0 for j in range(4))


def test_isotropic_and_positive_directions():
    t = subspace_basis(SPLIT, A)
    g4 = Matrix([r[:4] for r in GRAM.entries.rows[:4]])
    cols = t.columns()
    rng = random.Random(100)
    for _ in range(100):
        c = [Fraction(rng.randint(-9, 9), rng.randint(1, 5)) for _ in range(4)]
        e_vec = [c[2] * x + c[3] * y for x, y in zip(cols[2], cols[3])]
        assert quad(e_vec, g4, e_vec) == 0
        assert all(x == 0 for x in g4 @ e_vec)
        if c[0] == 0 and c[1] == 0:
            continue
        h_vec = [c[0] * x + c[1] * y for x, y in zip(cols[0], cols[1])]
        assert qx_sign(quad(h_vec, g4, h_vec)) > 0


def test_psd_witness_reconstructs_gram():
    s, q = GRAM.witness_change, GRAM.witness_form
    g4 = Matrix([r[:4] for r in GRAM.entries.rows[:4]])
    assert s.transpose() @ q @ s == g4


def test_isometry():
    assert verify_isometry(GRAM, A)
    assert not verify_isometry(Matrix.identity(5), A)
    assert verify_isometry(GRAM, Matrix.identity(4))
    with pytest.raises(ValueError):
        verify_isometry(Matrix.identity(3), A)


def test_form_rank_examples():
    degenerate = Matrix([[0] * 4 + [0]] * 4 + [[0, 0, 0, 0, 1]])
    assert form_rank(degenerate) == 1
    assert form_rank(Matrix.identity(5)) == 5
    assert form_rank(GramForm(GRAM.entries, 3)) == 3


def test_gram_is_a_single_constant_matrix():
    # the construction is coordinate independent: rebuilding gives the same matrix
    again = ambient_gram(A, spectral_projectors(A, [1, S3 - 1, 1], [1, -(S3 + 1), 1]))
    assert again.entries == GRAM.entries


def test_isometry_and_rank_for_every_box_member():
    for cert in search_box(SearchBox(-3, 3, -3, 3)):
        p = cert.polynomial
        a = companion_matrix(p)
        f_h, f_e = quadratic_factors(p)
        g = ambient_gram(a, spectral_projectors(a, f_h, f_e))
        assert verify_isometry(g, a)
        assert g.rank == 3
