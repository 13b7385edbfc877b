"""Classification of reciprocal quartics and the end-to-end certificate."""

from __future__ import annotations

import logging
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Sequence

from .exact_numbers import QuadExt, qx_sign, squarefree_part
from .flat_metric import GramForm, ambient_gram, form_rank, verify_isometry
from .lattice_core import (
    IntMatrix,
    Matrix,
    char_poly,
    companion_matrix,
    det_fraction_free,
    power_minus_identity,
    smith_normal_form,
    spectral_projectors,
)
from .poly_lab import (
    IntPoly,
    RatInterval,
    UnsupportedDegree,
    cauchy_bound,
    cyclotomic_factors,
    dense_mul,
    is_reciprocal,
    is_squarefree_poly,
    irreducible_quartic,
    isolate_real_roots,
    poly_eval,
    reciprocal_transform,
    sturm_count,
)
from .suspension_group import abelianization, fibration_bound

log = logging.getLogger(__name__)

KINDS = ("salem", "all_unit_circle", "no_unit_circle", "cyclotomic", "reducible", "boundary_degenerate")
VERDICTS = ("counterexample", "not_counterexample", "invalid_input")
RATIONAL_SPLIT = "rational_split"

# structural facts the certificate relies on but does not compute
ASSUMPTIONS = (
    "constant-coefficient metrics are flat",
    "Z^n x| Z acts freely, properly discontinuously and cocompactly on R^n x R",
    "lattice translations preserve any constant-coefficient metric",
    "the suspension is covered by a bundle over the n-torus via an infinite cyclic cover; not verified",
)

NONSINGULAR_LADDER = 12


class InvalidInput(ValueError):
    pass


def reciprocal_quartic(a: int, b: int) -> IntPoly:
    """X^4 - a X^3 + b X^2 - a X + 1."""
    return IntPoly([1, -a, b, -a, 1])


def quartic_parameters(p: IntPoly) -> tuple[int, int]:
    if p.degree != 4 or p.leading != 1 or not is_reciprocal(p):
        raise InvalidInput("not a monic reciprocal quartic")
    return -p.coeffs[3], p.coeffs[2]


@dataclass(frozen=True)
class SalemProfile:
    kind: str
    unit_circle_pairs: int
    real_root_boxes: tuple[RatInterval, ...]
    discriminant_core: int | str | None


def _strip_root(q: IntPoly, r: int) -> tuple[IntPoly, int]:
    count = 0
    lin = IntPoly([-r, 1])
    while not q.is_zero and q.degree >= 1 and poly_eval(q, r) == 0:
        q = q.exact_div(lin)
        count += 1
    return q, count


def transform_root_counts(q: IntPoly) -> tuple[int, int, int]:
    """Distinct real roots of ``q`` inside (-2, 2), outside [-2, 2], and at +-2.

    Roots at +-2 are divided out first so Sturm endpoints are never roots.
    """
    q, at_plus = _strip_root(q, 2)
    q, at_minus = _strip_root(q, -2)
    edge = int(at_plus > 0) + int(at_minus > 0)
    if q.degree < 1:
        return 0, 0, edge
    inside = sturm_count(q, RatInterval(-2, 2))
    bound = max(cauchy_bound(q), Fraction(3))
    total = sturm_count(q, RatInterval(-bound, bound))
    return inside, total - inside, edge


def discriminant_core(a: int, b: int) -> int | str:
    """Squarefree core of a^2 - 4b + 8, the discriminant of Y^2 - aY + (b - 2).

    Negative values keep their sign (complex transform roots).
    """
    disc = a * a - 4 * b + 8
    if disc == 0:
        return RATIONAL_SPLIT
    s, _ = squarefree_part(abs(disc))
    if disc > 0 and s == 1:
        return RATIONAL_SPLIT
    return s if disc > 0 else -s


def reciprocal_pairing(p: IntPoly, box: RatInterval, partner: RatInterval) -> bool:
    """True if the root isolated in ``box`` has its reciprocal inside ``partner``."""
    image = box.reciprocal()
    overlap = image.intersect(partner)
    if overlap is None:
        return False
    return sturm_count(p, overlap) == 1


def classify_polynomial(p: IntPoly) -> SalemProfile:
    """Exact root-structure classification of a reciprocal polynomial.

    Each transform root y in (-2, 2) gives a conjugate pair on the unit
    circle (the roots of X^2 - yX + 1 have product 1), each real y with
    |y| > 2 gives a real pair alpha, 1/alpha.
    """
    if p.is_zero or p.degree < 2 or p.degree % 2 or not is_reciprocal(p):
        raise InvalidInput("expected a reciprocal polynomial of even degree >= 2")
    q = reciprocal_transform(p)
    k = q.degree
    inside, outside, edge = transform_root_counts(q)
    boxes = tuple(isolate_real_roots(p))
    core = None
    if p.degree == 4 and p.leading == 1:
        core = discriminant_core(*quartic_parameters(p))

    if p.degree <= 4 and not irreducible_quartic(p):
        kind = "reducible"
    elif cyclotomic_factors(p):
        kind = "cyclotomic"
    elif edge or not is_squarefree_poly(q):
        kind = "boundary_degenerate"
    elif inside == k:
        kind = "all_unit_circle"
    elif inside == 0:
        kind = "no_unit_circle"
    elif k == 2 and inside == 1 and outside == 1:
        kind = "salem"
    else:
        raise UnsupportedDegree(
            f"mixed root structure in degree {p.degree}: {inside} unit-circle pairs, "
            f"{outside} real pairs"
        )

    if kind == "salem":
        if len(boxes) != 2 or not reciprocal_pairing(p, boxes[1], boxes[0]):
            raise AssertionError("Salem real roots are not reciprocal")
    return SalemProfile(kind, inside, boxes, core)


def classify_reciprocal_quartic(a: int, b: int) -> SalemProfile:
    return classify_polynomial(reciprocal_quartic(a, b))


# ---------------------------------------------------------------------------
# certificates


@dataclass(frozen=True)
class CheckRecord:
    check: str
    passed: bool
    detail: str = ""


@dataclass(frozen=True)
class Certificate:
    polynomial: IntPoly
    verdict: str
    profile: SalemProfile | None = None
    irreducible: bool | None = None
    cyclotomic_indices: tuple[int, ...] = ()
    monodromy: IntMatrix | None = None
    factor_pair: tuple[tuple, tuple] | None = None
    gram: GramForm | None = None
    isometry: bool | None = None
    metric_rank: int | None = None
    h1_free_rank: int | None = None
    h1_torsion: tuple[int, ...] | None = None
    fibration_bound: int | None = None
    reasons: tuple[CheckRecord, ...] = ()
    assumptions: tuple[str, ...] = field(default=ASSUMPTIONS)

    @property
    def parameters(self) -> tuple[int, int] | None:
        try:
            return quartic_parameters(self.polynomial)
        except InvalidInput:
            return None


def quadratic_factors(p: IntPoly) -> tuple[list, list]:
    """Split a Salem quartic as (X^2 - y_in X + 1)(X^2 - y_out X + 1) over Q(sqrt(D)).

    ``y_in`` is the transform root with |y| < 2.
    """
    a, b = quartic_parameters(p)
    disc = a * a - 4 * b + 8
    d, c = squarefree_part(disc)
    if d == 1:
        raise InvalidInput("transform roots are rational")
    root = QuadExt.sqrt(d) * c
    y_plus = (root + a) / 2
    y_minus = (-root + a) / 2
    if qx_sign(4 - y_plus * y_plus) > 0:
        y_in, y_out = y_plus, y_minus
    else:
        y_in, y_out = y_minus, y_plus
    return [1, -y_in, 1], [1, -y_out, 1]


def _fail(p: IntPoly, verdict: str, reasons: list, **fields) -> Certificate:
    return Certificate(p, verdict, reasons=tuple(reasons), **fields)


def certify_polynomial(p: IntPoly) -> Certificate:
    """Run the full verification chain on a monic reciprocal polynomial."""
    reasons: list[CheckRecord] = []

    def record(name, ok, detail=""):
        reasons.append(CheckRecord(name, bool(ok), detail))
        return ok

    if p.is_zero or p.leading != 1:
        record("input", False, "polynomial must be monic")
        return _fail(p, "invalid_input", reasons)
    if p.degree < 2 or p.degree % 2 or not is_reciprocal(p):
        record("input", False, "polynomial must be reciprocal of even degree")
        return _fail(p, "invalid_input", reasons)
    record("input", True, f"reciprocal of degree {p.degree}")

    try:
        profile = classify_polynomial(p)
    except UnsupportedDegree as exc:
        record("classification", False, f"unsupported degree: {exc}")
        return _fail(p, "invalid_input", reasons)
    irreducible = irreducible_quartic(p) if p.degree <= 4 else None
    cyclo = tuple(cyclotomic_factors(p))
    found = dict(profile=profile, irreducible=irreducible, cyclotomic_indices=cyclo)

    if p.degree != 4:
        record("classification", profile.kind == "salem", profile.kind)
        record("degree", False, "unsupported degree: metric construction needs a quartic")
        return _fail(p, "invalid_input", reasons, **found)
    if profile.kind != "salem":
        detail = profile.kind
        if profile.kind == "cyclotomic":
            detail += ": " + ", ".join(f"Phi_{k}" for k in cyclo) + " divides p"
        record("classification", False, detail)
        return _fail(p, "not_counterexample", reasons, **found)
    record("classification", True, f"salem, discriminant core {profile.discriminant_core}")
    if not record("cyclotomic", not cyclo, "no cyclotomic factor" if not cyclo else str(cyclo)):
        return _fail(p, "not_counterexample", reasons, **found)

    a = companion_matrix(p)
    found["monodromy"] = a
    record("char_poly", char_poly(a) == p, "char_poly(companion) = p")

    ladder = [det_fraction_free(power_minus_identity(a, m)) for m in range(1, NONSINGULAR_LADDER + 1)]
    record("nonsingular", all(ladder), f"det(A^m - I), m=1..{NONSINGULAR_LADDER}: {ladder[:2]}...")

    f_h, f_e = quadratic_factors(p)
    product = dense_mul(f_h, f_e)
    record("factorization", product == list(p.coeffs), "(X^2 - y_in X + 1)(X^2 - y_out X + 1) = p")
    found["factor_pair"] = (tuple(f_h), tuple(f_e))

    split = spectral_projectors(a, f_h, f_e)
    gram = ambient_gram(a, split)
    iso = verify_isometry(gram, a)
    mrank = form_rank(gram)
    record("isometry", iso, "diag(A,1)^T G diag(A,1) = G")
    record("metric_rank", mrank == gram.rank, f"rank {mrank}")
    found.update(gram=gram, isometry=iso, metric_rank=mrank)

    ident = [[int(i == j) for j in range(4)] for i in range(4)]
    free, torsion = abelianization(ident, 1, a)
    bound = fibration_bound(a)
    found.update(h1_free_rank=free, h1_torsion=torsion, fibration_bound=bound)
    record("abelianization", True, f"free rank {free}, torsion {list(torsion)}")
    record("fibration_bound", True, f"bound {bound}")

    ok = all(r.passed for r in reasons)
    obstructed = mrank > bound
    record("verdict_rule", obstructed, f"metric rank {mrank} > fibration bound {bound}")
    verdict = "counterexample" if ok and obstructed else "not_counterexample"
    return Certificate(p, verdict, reasons=tuple(reasons), **found)


def certify(a: int, b: int) -> Certificate:
    return certify_polynomial(reciprocal_quartic(a, b))


def recheck(cert: Certificate) -> list[str]:
    """Re-run every producing operation; return the names of mismatching fields."""
    bad = []
    fresh = certify_polynomial(cert.polynomial)
    for name in Certificate.__dataclass_fields__:
        if getattr(fresh, name) != getattr(cert, name):
            bad.append(name)
    # independent checks against the stored witnesses
    if cert.monodromy is not None:
        a = cert.monodromy
        if char_poly(a) != cert.polynomial:
            bad.append("monodromy:char_poly")
        if cert.gram is not None:
            if not verify_isometry(cert.gram, a):
                bad.append("gram:isometry")
            if form_rank(cert.gram) != cert.metric_rank:
                bad.append("gram:rank")
            s, q = cert.gram.witness_change, cert.gram.witness_form
            if s is not None and s.transpose() @ q @ s != _spatial_block(cert.gram.entries):
                bad.append("gram:witness")
        snf = smith_normal_form(power_minus_identity(a, 1))
        if cert.h1_torsion is not None:
            if tuple(d for d in snf.diagonal if d > 1) != cert.h1_torsion:
                bad.append("h1_torsion:snf")
            if 1 + snf.zero_count != cert.h1_free_rank:
                bad.append("h1_free_rank:snf")
    if cert.factor_pair is not None:
        f_h, f_e = cert.factor_pair
        if dense_mul(list(f_h), list(f_e)) != list(cert.polynomial.coeffs):
            bad.append("factor_pair:product")
    if cert.verdict == "counterexample":
        if not (cert.metric_rank is not None and cert.fibration_bound is not None):
            bad.append("verdict:missing")
        elif not cert.metric_rank > cert.fibration_bound:
            bad.append("verdict:rule")
    return bad


def _spatial_block(m: Matrix) -> Matrix:
    n = m.n - 1
    return Matrix([r[:n] for r in m.rows[:n]])


# ---------------------------------------------------------------------------
# search


@dataclass(frozen=True)
class SearchBox:
    a_min: int
    a_max: int
    b_min: int
    b_max: int

    def __post_init__(self):
        if self.a_min > self.a_max or self.b_min > self.b_max:
            raise ValueError("empty search box")

    def points(self) -> list[tuple[int, int]]:
        return [
            (a, b) for a in range(self.a_min, self.a_max + 1) for b in range(self.b_min, self.b_max + 1)
        ]


def _certify_pair(ab: tuple[int, int]) -> Certificate:
    return certify(*ab)


def search_box(box: SearchBox, jobs: int = 1) -> list[Certificate]:
    """Counterexample certificates in the box, ordered by (a, b)."""
    pts = box.points()
    if jobs > 1:
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            certs = list(pool.map(_certify_pair, pts, chunksize=8))
    else:
        certs = [_certify_pair(ab) for ab in pts]
    hits = [c for c in certs if c.verdict == "counterexample"]
    log.info("searched %d pairs, %d counterexamples", len(pts), len(hits))
    return sorted(hits, key=lambda c: c.parameters)


def salem_parameters(certs: Sequence[Certificate]) -> list[tuple[int, int]]:
    return [c.parameters for c in certs]
