"""Elements of the three inductive-limit groups attached to an adjacency matrix.

A class is a pair (payload, level): a row vector for the stable group, a
column vector for the unstable group, a square matrix for the homoclinic
group.  Raising the level by one multiplies the payload by A (stable), by A
on the left (unstable), or conjugates it to A X A (homoclinic); two pairs are
equal when they merge somewhere down the tower.

Equality is decidable in one shot: with l the multiplicity of 0 as a root of
the minimal polynomial, the kernels of multiplication by A^j stabilise at
j = l, so the existential over merge depths collapses to the single test at
exponent l.

Automorphism conventions.  On stable classes the shift acts as
[v, N] -> [vA, N] with inverse [v, N] -> [v, N+1].  The unstable group is
defined by transposing A, which reverses the roles: the shift acts as
[w, N] -> [w, N+1] with inverse [w, N] -> [Aw, N].  This is the unique choice
dual to the stable one under which the trace maps scale by lambda and
1/lambda respectively.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass
from typing import Optional

from .exactlinalg import (
    IntMatrix,
    kron,
    matrix_power,
    minimal_polynomial,
    solve_integer_linear,
)
from .sft import AdjacencyMatrix, NotPrimitiveError, is_primitive
from . import traces


class AmbientMismatchError(ValueError):
    """Operands live over different adjacency matrices."""


def _same_ambient(a, b) -> None:
    if a.ambient != b.ambient:
        raise AmbientMismatchError("elements have different ambient matrices")


def _zero_index(a: AdjacencyMatrix) -> int:
    return minimal_polynomial(a.matrix).l


def _apow(a: AdjacencyMatrix, j: int) -> IntMatrix:
    return matrix_power(a.matrix, j)


@dataclass(frozen=True)
class StableElement:
    """[v, N]: an integer row vector at level N."""

    ambient: AdjacencyMatrix
    vector: tuple
    level: int

    def __post_init__(self):
        if len(self.vector) != self.ambient.size:
            raise ValueError("vector length must match the matrix size")
        if self.level < 0:
            raise ValueError("level must be non-negative")

    @classmethod
    def zero(cls, a: AdjacencyMatrix) -> "StableElement":
        return cls(a, (0,) * a.size, 0)

    def __add__(self, other: "StableElement") -> "StableElement":
        return add_s(self, other)

    def __neg__(self) -> "StableElement":
        return neg_s(self)


@dataclass(frozen=True)
class UnstableElement:
    """[w, N]: an integer column vector at level N."""

    ambient: AdjacencyMatrix
    vector: tuple
    level: int

    def __post_init__(self):
        if len(self.vector) != self.ambient.size:
            raise ValueError("vector length must match the matrix size")
        if self.level < 0:
            raise ValueError("level must be non-negative")

    @classmethod
    def zero(cls, a: AdjacencyMatrix) -> "UnstableElement":
        return cls(a, (0,) * a.size, 0)

    def __add__(self, other: "UnstableElement") -> "UnstableElement":
        return add_u(self, other)

    def __neg__(self) -> "UnstableElement":
        return neg_u(self)


@dataclass(frozen=True)
class HomoclinicElement:
    """[X, N]: an integer square matrix at level N."""

    ambient: AdjacencyMatrix
    matrix: IntMatrix
    level: int

    def __post_init__(self):
        if self.matrix.rows != self.ambient.size or self.matrix.cols != self.ambient.size:
            raise ValueError("matrix shape must match the ambient size")
        if self.level < 0:
            raise ValueError("level must be non-negative")

    @classmethod
    def zero(cls, a: AdjacencyMatrix) -> "HomoclinicElement":
        return cls(a, IntMatrix.zeros(a.size, a.size), 0)

    def __add__(self, other: "HomoclinicElement") -> "HomoclinicElement":
        return add_h(self, other)

    def __neg__(self) -> "HomoclinicElement":
        return neg_h(self)


# ---------------------------------------------------------------------------
# equality
# ---------------------------------------------------------------------------


def equal_s(a: StableElement, b: StableElement) -> bool:
    _same_ambient(a, b)
    if a.level > b.level:
        a, b = b, a
    l = _zero_index(a.ambient)
    lhs = _apow(a.ambient, l + b.level - a.level).row_apply(a.vector)
    rhs = _apow(a.ambient, l).row_apply(b.vector)
    return lhs == rhs


def equal_u(a: UnstableElement, b: UnstableElement) -> bool:
    _same_ambient(a, b)
    if a.level > b.level:
        a, b = b, a
    l = _zero_index(a.ambient)
    lhs = _apow(a.ambient, l + b.level - a.level).col_apply(a.vector)
    rhs = _apow(a.ambient, l).col_apply(b.vector)
    return lhs == rhs


def two_sided_equal(
    amb: AdjacencyMatrix, x: IntMatrix, n: int, y: IntMatrix, m: int
) -> bool:
    """Whether [X, n] and [Y, m] merge in the tower X -> A X A."""
    if n > m:
        x, y = y, x
        n, m = m, n
    l = _zero_index(amb)
    p_lo = matrix_power(amb.matrix, l)
    p_hi = matrix_power(amb.matrix, l + m - n)
    return p_hi @ x @ p_hi == p_lo @ y @ p_lo


def equal_h(a: HomoclinicElement, b: HomoclinicElement) -> bool:
    _same_ambient(a, b)
    return two_sided_equal(a.ambient, a.matrix, a.level, b.matrix, b.level)


def is_zero_s(a: StableElement) -> bool:
    return equal_s(a, StableElement.zero(a.ambient))


def is_zero_u(a: UnstableElement) -> bool:
    return equal_u(a, UnstableElement.zero(a.ambient))


def is_zero_h(a: HomoclinicElement) -> bool:
    return equal_h(a, HomoclinicElement.zero(a.ambient))


# ---------------------------------------------------------------------------
# group structure
# ---------------------------------------------------------------------------


def add_s(a: StableElement, b: StableElement) -> StableElement:
    _same_ambient(a, b)
    level = max(a.level, b.level)
    va = _apow(a.ambient, level - a.level).row_apply(a.vector)
    vb = _apow(a.ambient, level - b.level).row_apply(b.vector)
    return StableElement(a.ambient, tuple(x + y for x, y in zip(va, vb)), level)


def neg_s(a: StableElement) -> StableElement:
    return StableElement(a.ambient, tuple(-x for x in a.vector), a.level)


def add_u(a: UnstableElement, b: UnstableElement) -> UnstableElement:
    _same_ambient(a, b)
    level = max(a.level, b.level)
    wa = _apow(a.ambient, level - a.level).col_apply(a.vector)
    wb = _apow(a.ambient, level - b.level).col_apply(b.vector)
    return UnstableElement(a.ambient, tuple(x + y for x, y in zip(wa, wb)), level)


def neg_u(a: UnstableElement) -> UnstableElement:
    return UnstableElement(a.ambient, tuple(-x for x in a.vector), a.level)


def add_h(a: HomoclinicElement, b: HomoclinicElement) -> HomoclinicElement:
    _same_ambient(a, b)
    level = max(a.level, b.level)
    pa = _apow(a.ambient, level - a.level)
    pb = _apow(a.ambient, level - b.level)
    return HomoclinicElement(a.ambient, pa @ a.matrix @ pa + pb @ b.matrix @ pb, level)


def neg_h(a: HomoclinicElement) -> HomoclinicElement:
    return HomoclinicElement(a.ambient, -a.matrix, a.level)


# ---------------------------------------------------------------------------
# the shift automorphisms
# ---------------------------------------------------------------------------


def alpha_s(a: StableElement) -> StableElement:
    return StableElement(a.ambient, a.ambient.matrix.row_apply(a.vector), a.level)


def alpha_s_inv(a: StableElement) -> StableElement:
    return StableElement(a.ambient, a.vector, a.level + 1)


def alpha_u(a: UnstableElement) -> UnstableElement:
    return UnstableElement(a.ambient, a.vector, a.level + 1)


def alpha_u_inv(a: UnstableElement) -> UnstableElement:
    return UnstableElement(a.ambient, a.ambient.matrix.col_apply(a.vector), a.level)


def alpha_h(a: HomoclinicElement) -> HomoclinicElement:
    return HomoclinicElement(
        a.ambient, a.matrix @ _apow(a.ambient, 2), a.level + 1
    )


def alpha_h_inv(a: HomoclinicElement) -> HomoclinicElement:
    return HomoclinicElement(
        a.ambient, _apow(a.ambient, 2) @ a.matrix, a.level + 1
    )


# ---------------------------------------------------------------------------
# display normalisation (not a canonical form)
# ---------------------------------------------------------------------------


def normalize_s(a: StableElement) -> StableElement:
    """Equivalent element at the smallest level reachable by exact division.

    Multiplies into the stable range first (payload by A^l), then strips
    levels while an exact integer preimage under v -> vA exists.  Display
    aid only: the limit group has no canonical representative in general.
    """
    l = _zero_index(a.ambient)
    vec = _apow(a.ambient, l).row_apply(a.vector)
    level = a.level + l
    cur = StableElement(a.ambient, vec, level)
    while cur.level > 0:
        # u with [u, level-1] = [vec, level], i.e. u A^(l+1) = vec A^l
        target = _apow(a.ambient, l).row_apply(cur.vector)
        system = _apow(a.ambient, l + 1).transpose()
        sol = solve_integer_linear(system, target)
        if sol is None:
            break
        cur = StableElement(a.ambient, sol, cur.level - 1)
    return cur


def normalize_u(a: UnstableElement) -> UnstableElement:
    """Unstable analogue of :func:`normalize_s` (strip via w -> Aw preimages)."""
    l = _zero_index(a.ambient)
    vec = _apow(a.ambient, l).col_apply(a.vector)
    cur = UnstableElement(a.ambient, vec, a.level + l)
    while cur.level > 0:
        target = _apow(a.ambient, l).col_apply(cur.vector)
        sol = solve_integer_linear(_apow(a.ambient, l + 1), target)
        if sol is None:
            break
        cur = UnstableElement(a.ambient, sol, cur.level - 1)
    return cur


def normalize_h(a: HomoclinicElement) -> HomoclinicElement:
    """Homoclinic analogue (strip via X -> AXA preimages)."""
    l = _zero_index(a.ambient)
    p = _apow(a.ambient, l)
    cur = HomoclinicElement(a.ambient, p @ a.matrix @ p, a.level + l)
    k = a.ambient.size
    while cur.level > 0:
        target = (p @ cur.matrix @ p).vec()
        hi = _apow(a.ambient, l + 1)
        sol = solve_integer_linear(kron(hi, hi.transpose()), target)
        if sol is None:
            break
        cur = HomoclinicElement(a.ambient, IntMatrix.from_vec(sol, k, k), cur.level - 1)
    return cur


# ---------------------------------------------------------------------------
# positivity in the stable dimension group
# ---------------------------------------------------------------------------


class Positivity(enum.Enum):
    POSITIVE = "positive"
    ZERO = "zero"
    NEGATIVE_OR_MIXED = "negative_or_mixed"
    UNDECIDED = "undecided"


@dataclass(frozen=True)
class PositivityResult:
    kind: Positivity
    searched_to: Optional[int] = None


# Cap for the sign iteration when the float pairing is safely off the
# boundary; termination is then guaranteed mathematically, the cap is
# purely defensive.
_POSITIVE_ITER_CAP = 4096


def is_positive_s(
    a: StableElement, tol: float = 1e-9, j_max: int = 64
) -> PositivityResult:
    """Decide membership in the positive cone of the stable group.

    The cone consists of classes with an eventually non-negative payload.
    The float pairing v . right_eigenvector gives the verdict away from the
    boundary; on the boundary (pairing ~ 0 within ``tol``) only a bounded
    sign search is attempted and an honest UNDECIDED is returned when it is
    inconclusive, since resolving it exactly needs algebraic-number
    arithmetic.
    """
    if not is_primitive(a.ambient):
        raise NotPrimitiveError("positivity needs a primitive ambient matrix")
    if is_zero_s(a):
        return PositivityResult(Positivity.ZERO)
    data = traces.perron(a.ambient)
    pairing = sum(float(x) * r for x, r in zip(a.vector, data.right))
    near_boundary = abs(pairing) <= tol
    cap = j_max if near_boundary else max(j_max, _POSITIVE_ITER_CAP)
    w = a.vector
    for _ in range(cap + 1):
        if all(x >= 0 for x in w):
            return PositivityResult(Positivity.POSITIVE)
        if all(x <= 0 for x in w):
            return PositivityResult(Positivity.NEGATIVE_OR_MIXED)
        w = a.ambient.matrix.row_apply(w)
    if pairing < -tol:
        return PositivityResult(Positivity.NEGATIVE_OR_MIXED)
    return PositivityResult(Positivity.UNDECIDED, searched_to=cap)
