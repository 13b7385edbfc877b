import random
from fractions import Fraction

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from oracles import brute_force_quartic_factorable, float_real_root_count
from suspcert.poly_lab import (
    EndpointRoot,
    IntPoly,
    RatInterval,
    UnsupportedDegree,
    cauchy_bound,
    cyclotomic_factors,
    cyclotomic_poly,
    endpoint_nudge,
    euler_phi,
    expand_reciprocal,
    irreducible_quartic,
    is_reciprocal,
    isolate_real_roots,
    poly_eval,
    poly_gcd_rational,
    reciprocal_transform,
    sturm_count,
)

P = IntPoly([1, -2, 0, -2, 1])


def test_evaluation():
    assert poly_eval(P, 1) == -2
    assert poly_eval(P, 0) == 1
    assert poly_eval(P, -1) == 6
    assert poly_eval(P, Fraction(1, 2)) == Fraction(1, 16) - Fraction(2, 8) - 1 + 1


def test_reciprocal_predicate():
    assert is_reciprocal(P)
    assert not is_reciprocal(IntPoly([0, 2, 1]))
    assert is_reciprocal(IntPoly([1, 0, 1]))


@pytest.mark.parametrize(
    "p, q",
    [
        ([1, -2, 0, -2, 1], [-2, -2, 1]),
        ([1, 0, 1], [0, 1]),
        ([1, 0, 2, 0, 1], [0, 0, 1]),
    ],
)
def test_reciprocal_transform_examples(p, q):
    assert reciprocal_transform(IntPoly(p)) == IntPoly(q)


def test_reciprocal_transform_rejects():
    with pytest.raises(ValueError):
        reciprocal_transform(IntPoly([1, 2, 3]))
    with pytest.raises(ValueError):
        reciprocal_transform(IntPoly([1, 1, 1, 1]))


def test_reciprocal_transform_round_trip_grid():
    for a in range(-10, 11):
        for b in range(-10, 11):
            p = IntPoly([1, -a, b, -a, 1])
            q = reciprocal_transform(p)
            assert q == IntPoly([b - 2, -a, 1])
            assert expand_reciprocal(q) == p


@pytest.mark.parametrize(
    "p, lo, hi, n",
    [
        ([-2, -2, 1], -2, 2, 1),
        ([-2, -2, 1], 2, 4, 1),
        ([1, 0, 1], -10, 10, 0),
        ([-1, 0, 1], -2, 2, 2),
        ([0, 0, 1], -1, 1, 1),  # X^2 counts the distinct root 0 once
    ],
)
def test_sturm_examples(p, lo, hi, n):
    assert sturm_count(IntPoly(p), RatInterval(lo, hi)) == n


def test_sturm_rejects_endpoint_root():
    with pytest.raises(EndpointRoot):
        sturm_count(IntPoly([-1, 0, 1]), RatInterval(-1, 2))


def test_sturm_matches_float_oracle():
    rng = random.Random(7)
    compared = 0
    while compared < 100:
        coeffs = [rng.randint(-10, 10) for _ in range(4)] + [rng.choice([-3, -2, -1, 1, 2, 3])]
        p = IntPoly(coeffs)
        b = cauchy_bound(p)
        expected = float_real_root_count(coeffs, -float(b), float(b))
        if expected is None:
            continue
        assert sturm_count(p, RatInterval(-b, b)) == expected, coeffs
        compared += 1


def test_isolation_of_main_quartic():
    boxes = isolate_real_roots(P)
    assert len(boxes) == 2
    small, large = boxes
    assert 0 < small.low and small.high < 1
    assert 2 < large.low and large.high < 3
    for box in boxes:
        assert box.width <= Fraction(1, 2**20)
        assert poly_eval(P, box.low) * poly_eval(P, box.high) < 0
    roots = sorted(r.real for r in np.roots([1, -2, 0, -2, 1]) if abs(r.imag) < 1e-9)
    for box, r in zip(boxes, roots):
        assert float(box.low) <= r <= float(box.high)


def test_isolation_simple_cases():
    boxes = isolate_real_roots(IntPoly([-1, 0, 1]))
    assert [b.contains(-1) for b in boxes] == [True, False]
    assert [b.contains(1) for b in boxes] == [False, True]
    assert isolate_real_roots(IntPoly([1, 0, 1])) == []
    with pytest.raises(ValueError):
        isolate_real_roots(IntPoly([]))


def test_isolation_rational_roots_and_multiplicity():
    # (X - 1/2)^2 (X + 3) (2X - 1): distinct roots 1/2 and -3
    p = IntPoly([-1, 2]) * IntPoly([-1, 2]) * IntPoly([3, 1])
    boxes = isolate_real_roots(p)
    assert len(boxes) == 2
    assert boxes[0].contains(-3) and boxes[1].contains(Fraction(1, 2))


@pytest.mark.parametrize(
    "k, coeffs",
    [(1, [-1, 1]), (2, [1, 1]), (4, [1, 0, 1]), (10, [1, -1, 1, -1, 1]), (12, [1, 0, -1, 0, 1])],
)
def test_cyclotomic_examples(k, coeffs):
    assert cyclotomic_poly(k) == IntPoly(coeffs)


def test_cyclotomic_product_identity():
    for k in range(1, 31):
        prod = IntPoly([1])
        for d in range(1, k + 1):
            if k % d == 0:
                prod = prod * cyclotomic_poly(d)
        assert prod == IntPoly([-1] + [0] * (k - 1) + [1])
        assert cyclotomic_poly(k).degree == euler_phi(k)


def test_cyclotomic_factors_examples():
    assert cyclotomic_factors(P) == []
    assert cyclotomic_factors(IntPoly([1, -1, 1, -1, 1])) == [10]
    assert cyclotomic_factors(IntPoly([-1, 0, 1])) == [1, 2]


def test_cyclotomic_scan_covers_small_phi():
    # every k with phi(k) <= 4
    assert [k for k in range(1, 200) if euler_phi(k) <= 4] == [1, 2, 3, 4, 5, 6, 8, 10, 12]


@pytest.mark.parametrize("j", [1, 2, 3, 4, 6])
def test_cyclotomic_factors_gain_appended_index(j):
    base = IntPoly([1, -3, 1])  # X^2 - 3X + 1, no cyclotomic factors
    assert cyclotomic_factors(base) == []
    assert cyclotomic_factors(base * cyclotomic_poly(j)) == [j]


def test_irreducible_examples():
    assert irreducible_quartic(P)
    assert not irreducible_quartic(IntPoly([1, 0, 2, 0, 1]))
    assert irreducible_quartic(IntPoly([-1, 1]))
    assert not irreducible_quartic(IntPoly([-1, 0, 0, 0, 1]))
    assert not irreducible_quartic(IntPoly([4, 0, 0, 0, 1]))  # Sophie Germain: (X^2+2X+2)(X^2-2X+2)
    with pytest.raises(UnsupportedDegree):
        irreducible_quartic(IntPoly([1, 0, 0, 0, 0, 1]))
    with pytest.raises(ValueError):
        irreducible_quartic(IntPoly([]))


def test_irreducible_matches_brute_force():
    rng = random.Random(11)
    for _ in range(60):
        coeffs = [rng.randint(-10, 10) for _ in range(4)] + [rng.choice([1, 2, -1, 3])]
        if coeffs[0] == 0:
            coeffs[0] = 1
        p = IntPoly(coeffs)
        assert irreducible_quartic(p) == (not brute_force_quartic_factorable(coeffs)), coeffs


def test_gcd_examples():
    assert poly_gcd_rational(IntPoly([-1, 0, 1]), IntPoly([-1, 1])) == IntPoly([-1, 1])
    assert poly_gcd_rational(P, P.derivative()) == IntPoly([1])
    assert poly_gcd_rational(IntPoly([]), IntPoly([1, 0, 1])) == IntPoly([1, 0, 1])
    with pytest.raises(ValueError):
        poly_gcd_rational(IntPoly([]), IntPoly([]))


small_polys = st.lists(st.integers(-6, 6), min_size=1, max_size=4).map(IntPoly).filter(
    lambda p: not p.is_zero
)


@given(small_polys, small_polys, small_polys)
def test_gcd_recovers_common_factor(f, g, h):
    d = poly_gcd_rational(f * h, g * h)
    assert d.divides(f * h) and d.divides(g * h)
    assert h.primitive().divides(d * 1) or h.degree == 0
    assert d.content() == 1 and d.leading > 0


def test_endpoint_nudge_is_small():
    assert endpoint_nudge(P) == Fraction(1, 3 * 1024)


def test_polynomial_text_format():
    assert IntPoly.parse("1,-2,0,-2,1") == P
    assert P.format() == "1,-2,0,-2,1"
    with pytest.raises(ValueError):
        IntPoly.parse("1,,2")
    with pytest.raises(ValueError):
        IntPoly.parse("1,x")
