"""The semidirect product Z^n x|_A Z and its rank obstruction.

An element ``(v, k)`` acts on R^n x R by ``(x, t) -> (A^k x + v, t + k)``,
so ``(v, k) * (w, l) = (v + A^k w, k + l)``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from functools import reduce
from typing import Sequence

from .lattice_core import (
    IntMatrix,
    Matrix,
    char_poly,
    hermite_normal_form,
    lattice_contains,
    lattice_coordinates,
    rank,
    smith_normal_form,
    unimodular_inverse,
)
from .poly_lab import cyclotomic_factors, euler_phi, is_squarefree_poly

MAX_SATURATION_ROUNDS = 64


class SaturationError(RuntimeError):
    pass


@dataclass(frozen=True)
class GammaElement:
    translation: tuple[int, ...]
    shift: int

    def __init__(self, translation: Sequence[int], shift: int):
        object.__setattr__(self, "translation", tuple(int(x) for x in translation))
        object.__setattr__(self, "shift", int(shift))

    @classmethod
    def identity(cls, n: int) -> "GammaElement":
        return cls((0,) * n, 0)

    @classmethod
    def parse(cls, text: str) -> "GammaElement":
        """Parse ``v1,...,vn|k``."""
        try:
            vec, shift = text.split("|")
            return cls([int(x) for x in vec.split(",")], int(shift))
        except ValueError:
            raise ValueError(f"malformed group element: {text!r}") from None

    def format(self) -> str:
        return ",".join(map(str, self.translation)) + f"|{self.shift}"


def matrix_power(a: IntMatrix, k: int) -> IntMatrix:
    """A**k for any integer k; negative powers need |det A| = 1."""
    if k >= 0:
        return a**k
    return unimodular_inverse(a) ** (-k)


def gamma_compose(x: GammaElement, y: GammaElement, a: IntMatrix) -> GammaElement:
    if len(x.translation) != a.n or len(y.translation) != a.n:
        raise ValueError("translation length does not match the monodromy")
    moved = matrix_power(a, x.shift) @ y.translation
    return GammaElement([p + q for p, q in zip(x.translation, moved)], x.shift + y.shift)


def gamma_inverse(x: GammaElement, a: IntMatrix) -> GammaElement:
    back = matrix_power(a, -x.shift) @ x.translation
    return GammaElement([-c for c in back], -x.shift)


def gamma_power(x: GammaElement, j: int, a: IntMatrix) -> GammaElement:
    base = x if j >= 0 else gamma_inverse(x, a)
    out = GammaElement.identity(a.n)
    for _ in range(abs(j)):
        out = gamma_compose(out, base, a)
    return out


def gamma_product(elements: Sequence[GammaElement], a: IntMatrix) -> GammaElement:
    return reduce(lambda u, w: gamma_compose(u, w, a), elements, GammaElement.identity(a.n))


def gamma_commutator(n: Sequence[int], k0: GammaElement, a: IntMatrix) -> GammaElement:
    """The commutator ``k0 * n * k0^-1 * n^-1``, equal to ``((A^m - I) n, 0)``.

    The product is formed explicitly and compared with the closed form.
    """
    m = k0.shift
    if m == 0:
        raise ValueError("k0 must have a nonzero shift")
    nel = GammaElement(n, 0)
    word = gamma_product([k0, nel, gamma_inverse(k0, a), gamma_inverse(nel, a)], a)
    closed = [p - q for p, q in zip(matrix_power(a, m) @ tuple(n), n)]
    if word != GammaElement(closed, 0):
        raise AssertionError("commutator disagrees with (A^m - I) n")
    return word


@dataclass(frozen=True)
class SubgroupData:
    lattice_basis: tuple[tuple[int, ...], ...]
    generator_k0: GammaElement | None

    @property
    def lattice_rank(self) -> int:
        return len(self.lattice_basis)

    def contains(self, x: GammaElement, a: IntMatrix) -> bool:
        """Membership in L x| <k0>."""
        if self.generator_k0 is None:
            return x.shift == 0 and lattice_contains(self.lattice_basis, x.translation)
        g = self.generator_k0.shift
        if x.shift % g:
            return False
        rest = gamma_compose(x, gamma_power(self.generator_k0, -(x.shift // g), a), a)
        return lattice_contains(self.lattice_basis, rest.translation)


def _ext_gcd_coefficients(xs: Sequence[int]) -> tuple[int, list[int]]:
    """g = gcd(xs) >= 0 and integer c with sum(c_i x_i) = g."""
    g, coeffs = 0, [0] * len(xs)
    for i, x in enumerate(xs):
        # (g, x) -> gcd via extended Euclid
        old_r, r, old_s, s, old_t, t = g, x, 1, 0, 0, 1
        while r:
            q = old_r // r
            old_r, r = r, old_r - q * r
            old_s, s = s, old_s - q * s
            old_t, t = t, old_t - q * t
        if old_r < 0:
            old_r, old_s, old_t = -old_r, -old_s, -old_t
        coeffs = [c * old_s for c in coeffs]
        coeffs[i] = old_t
        g = old_r
    return g, coeffs


def subgroup_decompose(generators: Sequence[GammaElement], a: IntMatrix) -> SubgroupData:
    """Split the subgroup generated by ``generators`` as L x| K.

    K is generated by a word whose shift is the gcd of all shifts; L is the
    intersection with Z^n, closed under conjugation by that word.
    """
    if not generators:
        raise ValueError("need at least one generator")
    g, coeffs = _ext_gcd_coefficients([x.shift for x in generators])
    if g == 0:
        basis = hermite_normal_form([x.translation for x in generators])
        return SubgroupData(tuple(map(tuple, basis)), None)

    k0 = gamma_product([gamma_power(x, c, a) for x, c in zip(generators, coeffs) if c], a)
    seeds = []
    for x in generators:
        j = x.shift // g
        seeds.append(gamma_compose(x, gamma_power(k0, -j, a), a).translation)
    fwd = matrix_power(a, g)
    bwd = matrix_power(a, -g)
    basis = hermite_normal_form(seeds) if any(any(s) for s in seeds) else []
    for _ in range(MAX_SATURATION_ROUNDS):
        rows = list(basis) + [fwd @ tuple(r) for r in basis] + [bwd @ tuple(r) for r in basis]
        new = hermite_normal_form(rows) if rows else []
        if new == basis:
            break
        basis = new
    else:
        raise SaturationError(f"lattice did not stabilize in {MAX_SATURATION_ROUNDS} rounds")

    data = SubgroupData(tuple(map(tuple, basis)), k0)
    # every generator must be a lattice element times a power of k0
    for x in generators:
        if not data.contains(x, a):
            raise AssertionError(f"generator {x.format()} escaped the decomposition")
    return data


def abelianization(
    lattice_basis: Sequence[Sequence[int]], m: int, a: IntMatrix
) -> tuple[int, tuple[int, ...]]:
    """Free rank and torsion of the abelianization of L x|_{A^m} Z.

    That group is L / (A^m - I) L + Z; the quotient is read off the Smith
    form of (A^m - I) written in the basis of L.
    """
    if m < 1:
        raise ValueError("m must be positive")
    basis = [tuple(r) for r in lattice_basis]
    if not basis:
        return 1, ()
    am = a**m
    rows = []
    for b in basis:
        image = am @ b
        if not lattice_contains(basis, image):
            raise ValueError("lattice is not invariant under A^m")
        diff = [p - q for p, q in zip(image, b)]
        rows.append(lattice_coordinates(basis, diff))
    snf = smith_normal_form(IntMatrix(rows))
    free = 1 + snf.zero_count
    torsion = tuple(d for d in snf.diagonal if d > 1)
    return free, torsion


def fibration_bound(a: IntMatrix) -> int:
    """1 + sum of phi(k) over cyclotomic factors Phi_k of the characteristic polynomial.

    Cross-checked against 1 + dim ker(A^L - I) with L the lcm of the
    cyclotomic indices, which is the largest kernel over all powers.
    """
    cp = char_poly(a)
    if not is_squarefree_poly(cp):
        raise ValueError("characteristic polynomial is not squarefree; unsupported")
    ks = cyclotomic_factors(cp)
    bound = 1 + sum(euler_phi(k) for k in ks)
    period = math.lcm(*ks) if ks else 1
    kernel = a.n - rank(a**period - Matrix.identity(a.n))
    if ks and kernel != bound - 1:
        raise AssertionError("cyclotomic count disagrees with the kernel dimension")
    if not ks and kernel != 0:
        raise AssertionError("A - I is singular without a cyclotomic factor")
    return bound
