"""Module homomorphisms from the stable group into the polynomial subring.

Every such homomorphism is classified by a pair (z, N): an integer column
vector and a level.  Evaluation expands through the Horner tails of the
reduced minimal polynomial p(x) = x^k + a_{k-1} x^{k-1} + ... + a_0:

    phi[v, n] = [ sum_j (v A^n H_j(A) z) A^(k-1-j), N + n ],
    H_0 = 1,  H_{j+1}(x) = x H_j(x) + a_{k-1-j}.

The pairs form the inductive system z -> A^2 z, which is the unstable system
with levels counted twice; that identification realises the duality between
the stable and unstable groups and fixes the conversion maps below.  The odd
level parity on the unstable side is lifted by one extra application of A,
the deterministic choice that makes both round trips the identity.
"""

from __future__ import annotations

import functools
from dataclasses import dataclass

from .exactlinalg import (
    matrix_power,
    minimal_polynomial,
    poly_add,
    poly_eval_matrix,
)
from .sft import AdjacencyMatrix
from .dimension_groups import StableElement, UnstableElement, _same_ambient
from .cylinder_ring import RAElement


@dataclass(frozen=True)
class StableHom:
    """The homomorphism classified by (z, N)."""

    ambient: AdjacencyMatrix
    z: tuple
    level: int

    def __post_init__(self):
        if len(self.z) != self.ambient.size:
            raise ValueError("vector length must match the matrix size")
        if self.level < 0:
            raise ValueError("level must be non-negative")

    def __add__(self, other: "StableHom") -> "StableHom":
        return hom_add(self, other)

    def __neg__(self) -> "StableHom":
        return StableHom(self.ambient, tuple(-x for x in self.z), self.level)


@functools.lru_cache(maxsize=None)
def _horner_tail_matrices(a: AdjacencyMatrix) -> tuple:
    mp = minimal_polynomial(a.matrix)
    tails = [(1,)]
    for j in range(mp.k - 1):
        shifted = (0,) + tails[-1]
        tails.append(poly_add(shifted, (mp.p_coeffs[mp.k - 1 - j],)))
    return tuple(poly_eval_matrix(t, a.matrix) for t in tails)


def hom_eval(phi: StableHom, a: StableElement) -> RAElement:
    """Apply the classified homomorphism to a stable class.

    The coefficient formula is independent of the chosen representative of
    the argument only when p(A) z = 0.  That is automatic for l = 0 but not
    in general, so (z, N) is first pushed along the defining relation to
    (A^(2m) z, N + m) with 2m >= l, an equal homomorphism whose data always
    satisfies the constraint (p(A) A^(2m) is annihilated by the minimal
    polynomial once 2m >= l).
    """
    _same_ambient(phi, a)
    amb = phi.ambient
    mp = minimal_polynomial(amb.matrix)
    m0 = (mp.l + 1) // 2
    z = matrix_power(amb.matrix, 2 * m0).col_apply(phi.z)
    hom_level = phi.level + m0
    w = matrix_power(amb.matrix, a.level).row_apply(a.vector)
    coeffs = [0] * mp.k
    for j, tail in enumerate(_horner_tail_matrices(amb)):
        tz = tail.col_apply(z)
        coeffs[mp.k - 1 - j] = sum(x * y for x, y in zip(w, tz))
    return RAElement(amb, tuple(coeffs), hom_level + a.level)


def hom_equal(p1: StableHom, p2: StableHom) -> bool:
    """Equality of homomorphisms, tested once at the kernel-stabilising depth."""
    _same_ambient(p1, p2)
    if p1.level > p2.level:
        p1, p2 = p2, p1
    l = minimal_polynomial(p1.ambient.matrix).l
    amb = p1.ambient
    lhs = matrix_power(amb.matrix, 2 * (l + p2.level - p1.level)).col_apply(p1.z)
    rhs = matrix_power(amb.matrix, 2 * l).col_apply(p2.z)
    return lhs == rhs


def hom_add(p1: StableHom, p2: StableHom) -> StableHom:
    _same_ambient(p1, p2)
    amb = p1.ambient
    level = max(p1.level, p2.level)
    z1 = matrix_power(amb.matrix, 2 * (level - p1.level)).col_apply(p1.z)
    z2 = matrix_power(amb.matrix, 2 * (level - p2.level)).col_apply(p2.z)
    return StableHom(amb, tuple(x + y for x, y in zip(z1, z2)), level)


def hom_scale(r: RAElement, phi: StableHom) -> StableHom:
    """The module action of the polynomial subring: (r . phi)(a) = r * phi(a)."""
    _same_ambient(r, phi)
    pa = poly_eval_matrix(r.coeffs, phi.ambient.matrix)
    return StableHom(phi.ambient, pa.col_apply(phi.z), phi.level + r.level)


def hom_to_unstable(phi: StableHom) -> UnstableElement:
    """(z, N) in the squared system corresponds to [z, 2N] unstably."""
    return UnstableElement(phi.ambient, phi.z, 2 * phi.level)


def unstable_to_hom(b: UnstableElement) -> StableHom:
    """Inverse correspondence; odd levels lift through one application of A."""
    if b.level % 2 == 0:
        return StableHom(b.ambient, b.vector, b.level // 2)
    lifted = b.ambient.matrix.col_apply(b.vector)
    return StableHom(b.ambient, lifted, (b.level + 1) // 2)
