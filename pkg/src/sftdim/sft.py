"""Adjacency matrices of shifts of finite type and their graph structure.

An adjacency matrix is accepted when it is square, non-negative, and has no
zero row or column (every vertex of the underlying graph must have both an
incoming and an outgoing edge).  Reducible matrices pass validation but are
rejected with a distinct error by every invariant that assumes irreducibility,
because a silent wrong answer is worse than a refusal.
"""

from __future__ import annotations

import functools
import math
from dataclasses import dataclass
from typing import Sequence, Union

from .exactlinalg import IntMatrix


class NonSquareError(ValueError):
    """Input matrix is not square."""


class NegativeEntryError(ValueError):
    """Input matrix has a negative entry; ``position`` names it."""

    def __init__(self, position):
        self.position = position
        super().__init__(f"negative entry at {position}")


class ZeroRowOrColumnError(ValueError):
    """Zero row or column (a source or sink vertex); names the offender."""

    def __init__(self, kind: str, index: int):
        self.kind = kind
        self.index = index
        super().__init__(f"zero {kind} {index}")


class ReducibleError(ValueError):
    """The operation needs an irreducible (strongly connected) matrix."""


class NotPrimitiveError(ValueError):
    """The operation needs a primitive matrix."""


@dataclass(frozen=True)
class AdjacencyMatrix:
    """A validated adjacency matrix; construct through :func:`validate`."""

    matrix: IntMatrix

    @property
    def size(self) -> int:
        return self.matrix.rows


def validate(raw: Union[IntMatrix, Sequence[Sequence[int]]]) -> AdjacencyMatrix:
    """Check squareness, non-negativity and absence of sources/sinks."""
    m = raw if isinstance(raw, IntMatrix) else IntMatrix.from_rows(raw)
    if not m.is_square or m.rows == 0:
        raise NonSquareError(f"need a non-empty square matrix, got {m.rows}x{m.cols}")
    for i in range(m.rows):
        for j in range(m.cols):
            if m.entry(i, j) < 0:
                raise NegativeEntryError((i, j))
    for i in range(m.rows):
        if all(x == 0 for x in m.row(i)):
            raise ZeroRowOrColumnError("row", i)
    for j in range(m.cols):
        if all(x == 0 for x in m.column(j)):
            raise ZeroRowOrColumnError("column", j)
    return AdjacencyMatrix(m)


def _bool_rows(a: AdjacencyMatrix) -> list:
    m = a.matrix
    return [[m.entry(i, j) > 0 for j in range(a.size)] for i in range(a.size)]


def _bool_product(x: list, y: list) -> list:
    n = len(x)
    out = [[False] * n for _ in range(n)]
    for i in range(n):
        xi = x[i]
        oi = out[i]
        for s in range(n):
            if xi[s]:
                ys = y[s]
                for j in range(n):
                    if ys[j]:
                        oi[j] = True
    return out


def wielandt_bound(k: int) -> int:
    """Smallest exponent that must be entrywise positive for a primitive matrix."""
    return (k - 1) ** 2 + 1


@functools.lru_cache(maxsize=None)
def is_primitive(a: AdjacencyMatrix) -> bool:
    """True iff some power up to the Wielandt bound is entrywise positive."""
    b = _bool_rows(a)
    p = b
    for _ in range(wielandt_bound(a.size)):
        if all(all(row) for row in p):
            return True
        p = _bool_product(p, b)
    return False


def _successors(a: AdjacencyMatrix, v: int) -> list:
    m = a.matrix
    return [j for j in range(a.size) if m.entry(v, j) > 0]


def _reachable(a: AdjacencyMatrix, start: int, reverse: bool = False) -> set:
    m = a.matrix
    seen = {start}
    stack = [start]
    while stack:
        v = stack.pop()
        for j in range(a.size):
            edge = m.entry(j, v) if reverse else m.entry(v, j)
            if edge > 0 and j not in seen:
                seen.add(j)
                stack.append(j)
    return seen


@functools.lru_cache(maxsize=None)
def is_irreducible(a: AdjacencyMatrix) -> bool:
    """Strong connectivity of the directed graph."""
    n = a.size
    return len(_reachable(a, 0)) == n and len(_reachable(a, 0, reverse=True)) == n


def _bfs_levels(a: AdjacencyMatrix, start: int = 0) -> list:
    levels = [None] * a.size
    levels[start] = 0
    queue = [start]
    while queue:
        v = queue.pop(0)
        for j in _successors(a, v):
            if levels[j] is None:
                levels[j] = levels[v] + 1
                queue.append(j)
    return levels


@functools.lru_cache(maxsize=None)
def period(a: AdjacencyMatrix) -> int:
    """gcd of cycle lengths through vertex 0; requires irreducibility."""
    if not is_irreducible(a):
        raise ReducibleError("period is only defined for irreducible matrices")
    levels = _bfs_levels(a)
    g = 0
    m = a.matrix
    for u in range(a.size):
        for v in range(a.size):
            if m.entry(u, v) > 0:
                g = math.gcd(g, levels[u] + 1 - levels[v])
    return g


@dataclass(frozen=True)
class SpectralDecomposition:
    """Cyclic-class structure of an irreducible matrix.

    ``classes`` partitions the vertices; in the order given by
    ``vertex_order`` the matrix is block-cyclic, and ``component`` is the
    product of the consecutive blocks (a primitive matrix describing the
    return map to the class of vertex 0).
    """

    period: int
    classes: tuple
    component: AdjacencyMatrix
    vertex_order: tuple


@functools.lru_cache(maxsize=None)
def spectral_decomposition(a: AdjacencyMatrix) -> SpectralDecomposition:
    """Split an irreducible matrix into its cyclic tower over a mixing base.

    Classes are BFS depth mod period from vertex 0, reported with the class
    of vertex 0 first so the output is deterministic.
    """
    n = period(a)
    if n == 1:
        order = tuple(range(a.size))
        return SpectralDecomposition(1, (order,), a, order)
    levels = _bfs_levels(a)
    classes = tuple(
        tuple(sorted(v for v in range(a.size) if levels[v] % n == i)) for i in range(n)
    )
    blocks = [
        a.matrix.submatrix(classes[i], classes[(i + 1) % n]) for i in range(n)
    ]
    product = blocks[0]
    for b in blocks[1:]:
        product = product @ b
    component = validate(product)
    order = tuple(v for cls in classes for v in cls)
    return SpectralDecomposition(n, classes, component, order)
