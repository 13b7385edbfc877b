"""Exact certificates for flat degenerate metrics on torus suspensions."""

from .certifier import Certificate, SalemProfile, SearchBox, certify, certify_polynomial, classify_reciprocal_quartic, search_box
from .exact_numbers import QuadExt, qx_sign, squarefree_part
from .lattice_core import IntMatrix, Matrix, smith_normal_form
from .poly_lab import IntPoly

__all__ = [
    "Certificate",
    "IntMatrix",
    "IntPoly",
    "Matrix",
    "QuadExt",
    "SalemProfile",
    "SearchBox",
    "certify",
    "certify_polynomial",
    "classify_reciprocal_quartic",
    "qx_sign",
    "search_box",
    "smith_normal_form",
    "squarefree_part",
]
