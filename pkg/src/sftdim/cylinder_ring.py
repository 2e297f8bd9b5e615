"""The graded ring on the mapping-cylinder K-groups and its module actions.

Degree zero is the limit of the centraliser lattice C(A) = {X : AX = XA}
under X -> AXA; degree one is the limit of the quotient of all integer
matrices by the commutator lattice B(A) = {AY - YA}.  The product is

    [X, N] * [Y, M]             = [XY, N + M]          (0 x 0)
    [X, N] * [Y + B(A), M]      = [XY + B(A), N + M]   (0 x 1, and mirrored)
    (degree one) * (degree one) = 0

and the stable/unstable limit groups are right/left modules via
[v, N] * [X, M] = [vX, N + 2M] and [X, M] * [w, N] = [Xw, N + 2M].

Degree-one equality has no single-shot test like the degree-zero one, but it
is still decidable: the sublattices {Z : (A . A)^m Z in B(A)} form an
ascending chain that stabilises, and membership of the difference in the
stabilised closure settles equality outright.  The same closure idea decides
membership in the polynomial subring generated by [A, 0] and [A, 1].
"""

from __future__ import annotations

import enum
import functools
from dataclasses import dataclass
from typing import Optional, Sequence

from .exactlinalg import (
    IntMatrix,
    integer_kernel,
    hermite_row_basis,
    kron,
    lattice_closure_under_preimage,
    lattice_contains,
    matrix_power,
    minimal_polynomial,
    poly_mod,
    poly_eval_matrix,
    poly_mul,
    smith_normal_form,
    solve_integer_linear,
)
from .sft import AdjacencyMatrix
from .dimension_groups import (
    StableElement,
    UnstableElement,
    _same_ambient,
    two_sided_equal,
)


class NotCentralizedError(ValueError):
    """The payload does not commute with the adjacency matrix."""


# ---------------------------------------------------------------------------
# the centraliser and commutator lattices
# ---------------------------------------------------------------------------


@functools.lru_cache(maxsize=None)
def commutator_map(a: AdjacencyMatrix) -> IntMatrix:
    """Matrix of X -> AX - XA on row-major coordinates (size K^2)."""
    k = a.size
    ident = IntMatrix.identity(k)
    return kron(a.matrix, ident) - kron(ident, a.matrix.transpose())


@dataclass(frozen=True)
class CentralizerLattice:
    """Saturated basis of a sublattice of the commuting matrices."""

    basis: tuple
    rank: int

    def contains(self, x: IntMatrix) -> bool:
        rows = tuple(b.vec() for b in self.basis)
        return lattice_contains(rows, x.vec())

    def coordinates(self, x: IntMatrix) -> Optional[tuple]:
        if not self.basis:
            return () if x.is_zero else None
        k2 = len(self.basis[0].vec())
        m = IntMatrix.from_columns([b.vec() for b in self.basis], k2)
        return solve_integer_linear(m, x.vec())


@functools.lru_cache(maxsize=None)
def centralizer_basis(a: AdjacencyMatrix) -> CentralizerLattice:
    """Canonical saturated basis of C(A), the kernel of the commutator map."""
    k = a.size
    rows = integer_kernel(commutator_map(a))
    basis = tuple(IntMatrix.from_vec(r, k, k) for r in rows)
    return CentralizerLattice(basis=basis, rank=len(basis))


@dataclass(frozen=True)
class CommutatorLattice:
    """Basis of B(A) together with a witness Y per basis element (AY - YA)."""

    basis: tuple
    witnesses: tuple
    rank: int


@functools.lru_cache(maxsize=None)
def commutator_lattice(a: AdjacencyMatrix) -> CommutatorLattice:
    k = a.size
    cmap = commutator_map(a)
    # the image lattice is spanned by the columns of the commutator map
    canonical = hermite_row_basis([cmap.column(j) for j in range(k * k)], k * k)
    basis = []
    witnesses = []
    for row in canonical:
        wit = solve_integer_linear(cmap, row)
        assert wit is not None  # rows lie in the image by construction
        basis.append(IntMatrix.from_vec(row, k, k))
        witnesses.append(IntMatrix.from_vec(wit, k, k))
    return CommutatorLattice(basis=tuple(basis), witnesses=tuple(witnesses), rank=len(basis))


@dataclass(frozen=True)
class K1Structure:
    """Shape of the level group M_K(Z)/B(A): free rank plus torsion factors."""

    free_rank: int
    torsion: tuple
    snf_diagonal: tuple


@functools.lru_cache(maxsize=None)
def k1_group_structure(a: AdjacencyMatrix) -> K1Structure:
    k = a.size
    snf = smith_normal_form(commutator_map(a))
    diag = snf.diagonal()
    return K1Structure(
        free_rank=k * k - snf.rank,
        torsion=tuple(d for d in snf.invariant_factors if d > 1),
        snf_diagonal=diag,
    )


# ---------------------------------------------------------------------------
# elements
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class CylinderK0Element:
    """[X, N] with X in C(A); construction rejects non-commuting payloads."""

    ambient: AdjacencyMatrix
    matrix: IntMatrix
    level: int

    def __post_init__(self):
        k = self.ambient.size
        if self.matrix.rows != k or self.matrix.cols != k:
            raise ValueError("payload shape must match the ambient size")
        if self.level < 0:
            raise ValueError("level must be non-negative")
        a = self.ambient.matrix
        if a @ self.matrix != self.matrix @ a:
            raise NotCentralizedError("payload does not commute with the matrix")

    def __add__(self, other: "CylinderK0Element") -> "CylinderK0Element":
        return k0_add(self, other)

    def __neg__(self) -> "CylinderK0Element":
        return k0_neg(self)


@dataclass(frozen=True)
class CylinderK1Element:
    """[Y + B(A), N]: a coset representative at level N (Y unconstrained)."""

    ambient: AdjacencyMatrix
    matrix: IntMatrix
    level: int

    def __post_init__(self):
        k = self.ambient.size
        if self.matrix.rows != k or self.matrix.cols != k:
            raise ValueError("payload shape must match the ambient size")
        if self.level < 0:
            raise ValueError("level must be non-negative")

    def __add__(self, other: "CylinderK1Element") -> "CylinderK1Element":
        return k1_add(self, other)

    def __neg__(self) -> "CylinderK1Element":
        return k1_neg(self)


def k0_identity(a: AdjacencyMatrix) -> CylinderK0Element:
    return CylinderK0Element(a, IntMatrix.identity(a.size), 0)


def k0_zero(a: AdjacencyMatrix) -> CylinderK0Element:
    return CylinderK0Element(a, IntMatrix.zeros(a.size, a.size), 0)


def k0_equal(x: CylinderK0Element, y: CylinderK0Element) -> bool:
    """Inherited from the homoclinic tower (the inclusion is injective)."""
    _same_ambient(x, y)
    return two_sided_equal(x.ambient, x.matrix, x.level, y.matrix, y.level)


def _align_pair(a, b):
    amb = a.ambient
    level = max(a.level, b.level)
    pa = matrix_power(amb.matrix, level - a.level)
    pb = matrix_power(amb.matrix, level - b.level)
    return pa @ a.matrix @ pa, pb @ b.matrix @ pb, level


def k0_add(x: CylinderK0Element, y: CylinderK0Element) -> CylinderK0Element:
    _same_ambient(x, y)
    ma, mb, level = _align_pair(x, y)
    return CylinderK0Element(x.ambient, ma + mb, level)


def k0_neg(x: CylinderK0Element) -> CylinderK0Element:
    return CylinderK0Element(x.ambient, -x.matrix, x.level)


def k1_add(x: CylinderK1Element, y: CylinderK1Element) -> CylinderK1Element:
    _same_ambient(x, y)
    ma, mb, level = _align_pair(x, y)
    return CylinderK1Element(x.ambient, ma + mb, level)


def k1_neg(x: CylinderK1Element) -> CylinderK1Element:
    return CylinderK1Element(x.ambient, -x.matrix, x.level)


def alpha_k0(x: CylinderK0Element) -> CylinderK0Element:
    """Shift automorphism [X, N] -> [X A^2, N + 1]; the identity on classes."""
    return CylinderK0Element(
        x.ambient, x.matrix @ matrix_power(x.ambient.matrix, 2), x.level + 1
    )


# ---------------------------------------------------------------------------
# degree-one equality (decided via a stabilised closure lattice)
# ---------------------------------------------------------------------------


class Verdict(enum.Enum):
    EQUAL = "equal"
    NOT_EQUAL = "not_equal"
    UNDECIDED = "undecided"


@dataclass(frozen=True)
class K1Decision:
    verdict: Verdict
    witness_level: Optional[int] = None
    searched_to: Optional[int] = None


@functools.lru_cache(maxsize=None)
def _commutator_closure(a: AdjacencyMatrix) -> tuple:
    """Closure of B(A) under division by X -> AXA, with its stabilisation depth."""
    psi = kron(a.matrix, a.matrix.transpose())
    seed = tuple(b.vec() for b in commutator_lattice(a).basis)
    return lattice_closure_under_preimage(psi, seed)


def k1_equal(x: CylinderK1Element, y: CylinderK1Element) -> K1Decision:
    """Equality in the degree-one limit group.

    EQUAL comes with the merge depth at which the difference lands in B(A);
    NOT_EQUAL is certified by non-membership in the stabilised closure.  The
    UNDECIDED arm survives in the API for defensive reasons only.
    """
    _same_ambient(x, y)
    amb = x.ambient
    ma, mb, _ = _align_pair(x, y)
    diff = ma - mb
    if diff.is_zero:
        return K1Decision(Verdict.EQUAL, witness_level=0)
    closure, depth = _commutator_closure(amb)
    if not lattice_contains(closure, diff.vec()):
        return K1Decision(Verdict.NOT_EQUAL)
    cmap = commutator_map(amb)
    for j in range(depth + 1):
        p = matrix_power(amb.matrix, j)
        if solve_integer_linear(cmap, (p @ diff @ p).vec()) is not None:
            return K1Decision(Verdict.EQUAL, witness_level=j)
    return K1Decision(Verdict.UNDECIDED, searched_to=depth)


# ---------------------------------------------------------------------------
# the graded product and the module actions
# ---------------------------------------------------------------------------


def mul_00(x: CylinderK0Element, y: CylinderK0Element) -> CylinderK0Element:
    _same_ambient(x, y)
    return CylinderK0Element(x.ambient, x.matrix @ y.matrix, x.level + y.level)


def mul_01(x: CylinderK0Element, y: CylinderK1Element) -> CylinderK1Element:
    _same_ambient(x, y)
    return CylinderK1Element(x.ambient, x.matrix @ y.matrix, x.level + y.level)


def mul_10(y: CylinderK1Element, x: CylinderK0Element) -> CylinderK1Element:
    _same_ambient(y, x)
    return CylinderK1Element(y.ambient, y.matrix @ x.matrix, y.level + x.level)


def mul_11(x: CylinderK1Element, y: CylinderK1Element) -> CylinderK0Element:
    """The product of two degree-one classes vanishes identically."""
    _same_ambient(x, y)
    return k0_zero(x.ambient)


def act_s(v: StableElement, h: CylinderK0Element) -> StableElement:
    """Right action [v, N] * [X, M] = [vX, N + 2M]."""
    _same_ambient(v, h)
    return StableElement(v.ambient, h.matrix.row_apply(v.vector), v.level + 2 * h.level)


def act_u(h: CylinderK0Element, w: UnstableElement) -> UnstableElement:
    """Left action [X, M] * [w, N] = [Xw, N + 2M]."""
    _same_ambient(h, w)
    return UnstableElement(w.ambient, h.matrix.col_apply(w.vector), w.level + 2 * h.level)


# ---------------------------------------------------------------------------
# the polynomial subring generated by [A, 0] and [A, 1]
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class RAElement:
    """[p(A), N] with deg p < k, the canonical presentation of the subring.

    At a fixed level the reduced polynomial is unique, so equality reduces to
    aligning levels (each step multiplies by x^2 modulo the reduced minimal
    polynomial) and comparing coefficient tuples.
    """

    ambient: AdjacencyMatrix
    coeffs: tuple
    level: int

    def __post_init__(self):
        k = minimal_polynomial(self.ambient.matrix).k
        if len(self.coeffs) != k:
            raise ValueError(f"expected {k} coefficients, got {len(self.coeffs)}")
        if self.level < 0:
            raise ValueError("level must be non-negative")

    @property
    def is_zero(self) -> bool:
        return all(c == 0 for c in self.coeffs)

    def __add__(self, other: "RAElement") -> "RAElement":
        return ra_add(self, other)

    def __neg__(self) -> "RAElement":
        return RAElement(self.ambient, tuple(-c for c in self.coeffs), self.level)


def _pad(coeffs: Sequence[int], k: int) -> tuple:
    c = tuple(coeffs)
    return c + (0,) * (k - len(c))


def ra_reduce(a: AdjacencyMatrix, coeffs: Sequence[int], level: int) -> RAElement:
    """Reduce an arbitrary integer polynomial to its canonical representative."""
    mp = minimal_polynomial(a.matrix)
    reduced = poly_mod(coeffs, mp.p_coeffs)
    return RAElement(a, _pad(reduced, mp.k), level)


def ra_one(a: AdjacencyMatrix) -> RAElement:
    return ra_reduce(a, (1,), 0)


def ra_generator(a: AdjacencyMatrix, level: int = 0) -> RAElement:
    """[A, level]; level 0 gives the generator, level 1 its inverse."""
    return ra_reduce(a, (0, 1), level)


def ra_add(x: RAElement, y: RAElement) -> RAElement:
    _same_ambient(x, y)
    mp = minimal_polynomial(x.ambient.matrix)
    level = max(x.level, y.level)
    cx = poly_mod(poly_mul(x.coeffs, _x_power(2 * (level - x.level))), mp.p_coeffs)
    cy = poly_mod(poly_mul(y.coeffs, _x_power(2 * (level - y.level))), mp.p_coeffs)
    total = [a + b for a, b in zip(_pad(cx, mp.k), _pad(cy, mp.k))]
    return RAElement(x.ambient, tuple(total), level)


def _x_power(e: int) -> tuple:
    return (0,) * e + (1,)


def ra_mul(x: RAElement, y: RAElement) -> RAElement:
    _same_ambient(x, y)
    mp = minimal_polynomial(x.ambient.matrix)
    prod = poly_mod(poly_mul(x.coeffs, y.coeffs), mp.p_coeffs)
    return RAElement(x.ambient, _pad(prod, mp.k), x.level + y.level)


def ra_equal(x: RAElement, y: RAElement) -> bool:
    _same_ambient(x, y)
    diff = ra_add(x, -y)
    return diff.is_zero


def ra_to_cylinder(x: RAElement) -> CylinderK0Element:
    return CylinderK0Element(
        x.ambient, poly_eval_matrix(x.coeffs, x.ambient.matrix), x.level
    )


@functools.lru_cache(maxsize=None)
def _ra_closure(a: AdjacencyMatrix) -> tuple:
    """Closure of span{A^(2l+i) : i < k} under division by Y -> A^2 Y."""
    mp = minimal_polynomial(a.matrix)
    k = a.size
    seed = tuple(
        matrix_power(a.matrix, 2 * mp.l + i).vec() for i in range(mp.k)
    )
    psi = kron(matrix_power(a.matrix, 2), IntMatrix.identity(k))
    return lattice_closure_under_preimage(psi, seed)


def ra_membership(x: CylinderK0Element) -> Optional[RAElement]:
    """Witness [p(A), N + m] equal to [X, N], or None when no such class exists.

    [X, N] equals [p(A), N + m] iff A^(2m) (A^l X A^l) = p(A) A^(2l); the set
    of payloads solvable for some m is the stabilised division closure of the
    span of {A^(2l + i)}, so membership is one lattice test and the witness
    level is found by a short guaranteed search.
    """
    amb = x.ambient
    mp = minimal_polynomial(amb.matrix)
    p_l = matrix_power(amb.matrix, mp.l)
    y = p_l @ x.matrix @ p_l
    closure, depth = _ra_closure(amb)
    if not lattice_contains(closure, y.vec()):
        return None
    k = amb.size
    span = IntMatrix.from_columns(
        [matrix_power(amb.matrix, 2 * mp.l + i).vec() for i in range(mp.k)], k * k
    )
    a2 = matrix_power(amb.matrix, 2)
    cur = y
    for m in range(depth + 1):
        sol = solve_integer_linear(span, cur.vec())
        if sol is not None:
            return RAElement(amb, tuple(sol), x.level + m)
        cur = a2 @ cur
    raise RuntimeError("closure membership without a witness level")


# ---------------------------------------------------------------------------
# the matrix-level center of C(A)
# ---------------------------------------------------------------------------


@functools.lru_cache(maxsize=None)
def center_basis(a: AdjacencyMatrix) -> CentralizerLattice:
    """Sublattice of C(A) commuting with every basis element of C(A).

    This is the center at the matrix level; it is reported next to the rank
    of the polynomial subring for comparison.
    """
    cent = centralizer_basis(a)
    r = cent.rank
    k = a.size
    if r == 0:
        return CentralizerLattice(basis=(), rank=0)
    columns = []
    for i in range(r):
        col = []
        for j in range(r):
            comm = cent.basis[i] @ cent.basis[j] - cent.basis[j] @ cent.basis[i]
            col.extend(comm.vec())
        columns.append(col)
    system = IntMatrix.from_columns(columns, r * k * k)
    combos = integer_kernel(system)
    vectors = []
    for combo in combos:
        acc = IntMatrix.zeros(k, k)
        for c, b in zip(combo, cent.basis):
            acc = acc + b.scale(c)
        vectors.append(acc.vec())
    rows = hermite_row_basis(vectors, k * k)
    basis = tuple(IntMatrix.from_vec(rw, k, k) for rw in rows)
    return CentralizerLattice(basis=basis, rank=len(basis))
