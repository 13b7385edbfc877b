"""JSON encoding of certificates.

Big integers travel as decimal strings, small counts (ranks, bounds) as JSON
numbers.  Key order is fixed so equal certificates give identical bytes.
"""

from __future__ import annotations

import json
from fractions import Fraction

from .certifier import Certificate, CheckRecord, SalemProfile
from .exact_numbers import QuadExt, format_rat, parse_rat
from .flat_metric import GramForm
from .lattice_core import IntMatrix, Matrix
from .poly_lab import IntPoly, RatInterval

SCHEMA = "cert/1"


def qx_to_json(x, radicand: int | None) -> dict:
    if isinstance(x, QuadExt):
        return {"rat": format_rat(x.rational), "rad": format_rat(x.radical), "D": x.radicand}
    return {"rat": format_rat(Fraction(x)), "rad": "0/1", "D": radicand}


def qx_from_json(obj: dict):
    rat, rad, d = parse_rat(obj["rat"]), parse_rat(obj["rad"]), obj["D"]
    if d is None:
        if rad:
            raise ValueError("irrational value without a radicand")
        return rat
    return QuadExt(rat, rad, int(d))


def _qx_matrix(m: Matrix, d) -> list:
    return [[qx_to_json(x, d) for x in r] for r in m.rows]


def _int_matrix(m: Matrix) -> list:
    return [[str(x) for x in r] for r in m.rows]


def _profile_to_json(p: SalemProfile) -> dict:
    core = p.discriminant_core
    return {
        "kind": p.kind,
        "unit_circle_pairs": p.unit_circle_pairs,
        "real_root_boxes": [
            {"low": format_rat(b.low), "high": format_rat(b.high)} for b in p.real_root_boxes
        ],
        "discriminant_core": None if core is None else str(core),
    }


def _profile_from_json(obj: dict) -> SalemProfile:
    core = obj["discriminant_core"]
    if core is not None and core.lstrip("-").isdigit():
        core = int(core)
    return SalemProfile(
        obj["kind"],
        int(obj["unit_circle_pairs"]),
        tuple(RatInterval(parse_rat(b["low"]), parse_rat(b["high"])) for b in obj["real_root_boxes"]),
        core,
    )


def _radicand(c: Certificate) -> int | None:
    if c.profile is not None and isinstance(c.profile.discriminant_core, int):
        if c.profile.discriminant_core >= 2:
            return c.profile.discriminant_core
    return None


def certificate_to_dict(c: Certificate) -> dict:
    d = _radicand(c)
    out = {
        "schema": SCHEMA,
        "input": {"coefficients": [str(x) for x in c.polynomial.coeffs]},
        "verdict": c.verdict,
        "profile": None if c.profile is None else _profile_to_json(c.profile),
        "irreducible": c.irreducible,
        "cyclotomic_indices": [str(k) for k in c.cyclotomic_indices],
        "monodromy": None if c.monodromy is None else _int_matrix(c.monodromy),
        "factor_pair": None
        if c.factor_pair is None
        else {
            "H": [qx_to_json(x, d) for x in c.factor_pair[0]],
            "E": [qx_to_json(x, d) for x in c.factor_pair[1]],
        },
        "gram": None
        if c.gram is None
        else {
            "entries": _qx_matrix(c.gram.entries, d),
            "rank": c.gram.rank,
            "witness_change": _qx_matrix(c.gram.witness_change, d),
            "witness_form": _qx_matrix(c.gram.witness_form, d),
        },
        "isometry": c.isometry,
        "metric_rank": c.metric_rank,
        "h1_free_rank": c.h1_free_rank,
        "h1_torsion": None if c.h1_torsion is None else [str(t) for t in c.h1_torsion],
        "fibration_bound": c.fibration_bound,
        "reasons": [{"check": r.check, "passed": r.passed, "detail": r.detail} for r in c.reasons],
        "assumptions": list(c.assumptions),
    }
    return out


def emit_certificate_json(c: Certificate) -> str:
    return json.dumps(certificate_to_dict(c), separators=(",", ":"), ensure_ascii=True)


def _matrix_from(rows, conv) -> Matrix:
    return Matrix([[conv(x) for x in r] for r in rows])


def certificate_from_dict(obj: dict) -> Certificate:
    if obj.get("schema") != SCHEMA:
        raise ValueError(f"unknown certificate schema {obj.get('schema')!r}")
    gram = None
    if obj["gram"] is not None:
        g = obj["gram"]
        gram = GramForm(
            _matrix_from(g["entries"], qx_from_json),
            int(g["rank"]),
            _matrix_from(g["witness_change"], qx_from_json),
            _matrix_from(g["witness_form"], qx_from_json),
        )
    fp = obj["factor_pair"]
    torsion = obj["h1_torsion"]
    return Certificate(
        polynomial=IntPoly([int(x) for x in obj["input"]["coefficients"]]),
        verdict=obj["verdict"],
        profile=None if obj["profile"] is None else _profile_from_json(obj["profile"]),
        irreducible=obj["irreducible"],
        cyclotomic_indices=tuple(int(k) for k in obj["cyclotomic_indices"]),
        monodromy=None
        if obj["monodromy"] is None
        else IntMatrix([[int(x) for x in r] for r in obj["monodromy"]]),
        factor_pair=None
        if fp is None
        else (tuple(qx_from_json(x) for x in fp["H"]), tuple(qx_from_json(x) for x in fp["E"])),
        gram=gram,
        isometry=obj["isometry"],
        metric_rank=obj["metric_rank"],
        h1_free_rank=obj["h1_free_rank"],
        h1_torsion=None if torsion is None else tuple(int(t) for t in torsion),
        fibration_bound=obj["fibration_bound"],
        reasons=tuple(CheckRecord(r["check"], r["passed"], r["detail"]) for r in obj["reasons"]),
        assumptions=tuple(obj["assumptions"]),
    )


def parse_certificate_json(text: str) -> Certificate:
    return certificate_from_dict(json.loads(text))


def format_quadext(x) -> str:
    if isinstance(x, QuadExt):
        return str(x)
    return format_rat(Fraction(x))
