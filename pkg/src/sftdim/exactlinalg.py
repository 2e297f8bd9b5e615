"""Exact linear algebra over the integers.

Everything in this module computes with Python's unbounded ints; nothing here
ever rounds.  Matrix powers grow like the spectral radius raised to the
exponent, so fixed-width arithmetic would silently corrupt the equality tests
that the rest of the package is built on.  Matrices are immutable (hence
hashable), which lets the expensive decompositions be memoised per matrix.

The workhorse is a Hermite row reduction that keeps the basis fully reduced
after every insertion; naive two-sided elimination doubles digit counts per
pivot and dies well below the sizes this package targets.  Kernels and linear
solving ride on a Hermite form with a tracked unimodular transform; the Smith
form alternates row and column Hermite passes (Kannan-Bachem style) and then
repairs divisibility with 2x2 unimodular merges on the diagonal.
"""

from __future__ import annotations

import functools
from bisect import bisect_left
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Optional, Sequence


class DimensionMismatchError(ValueError):
    """Operands have incompatible shapes."""


# ---------------------------------------------------------------------------
# matrices
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class IntMatrix:
    """Immutable arbitrary-precision integer matrix, stored row-major."""

    rows: int
    cols: int
    entries: tuple

    def __post_init__(self) -> None:
        if self.rows < 0 or self.cols < 0:
            raise DimensionMismatchError("matrix dimensions must be non-negative")
        if len(self.entries) != self.rows * self.cols:
            raise DimensionMismatchError(
                f"{self.rows}x{self.cols} matrix needs {self.rows * self.cols} "
                f"entries, got {len(self.entries)}"
            )

    # -- construction ------------------------------------------------------

    @classmethod
    def from_rows(cls, rows: Sequence[Sequence[int]]) -> "IntMatrix":
        rows = [list(r) for r in rows]
        r = len(rows)
        c = len(rows[0]) if rows else 0
        if any(len(row) != c for row in rows):
            raise DimensionMismatchError("ragged rows")
        ents = []
        for row in rows:
            for x in row:
                if not isinstance(x, int):
                    raise TypeError(f"integer entry expected, got {x!r}")
                ents.append(int(x))
        return cls(r, c, tuple(ents))

    @classmethod
    def from_columns(cls, columns: Sequence[Sequence[int]], rows: int) -> "IntMatrix":
        cols = [list(c) for c in columns]
        if any(len(c) != rows for c in cols):
            raise DimensionMismatchError("column length mismatch")
        ents = [cols[j][i] for i in range(rows) for j in range(len(cols))]
        return cls(rows, len(cols), tuple(ents))

    @classmethod
    def identity(cls, n: int) -> "IntMatrix":
        return cls(n, n, tuple(1 if i == j else 0 for i in range(n) for j in range(n)))

    @classmethod
    def zeros(cls, rows: int, cols: int) -> "IntMatrix":
        return cls(rows, cols, (0,) * (rows * cols))

    @classmethod
    def row_vector(cls, v: Sequence[int]) -> "IntMatrix":
        return cls.from_rows([list(v)])

    @classmethod
    def column_vector(cls, v: Sequence[int]) -> "IntMatrix":
        return cls.from_rows([[x] for x in v])

    # -- access ------------------------------------------------------------

    @property
    def is_square(self) -> bool:
        return self.rows == self.cols

    def entry(self, i: int, j: int) -> int:
        return self.entries[i * self.cols + j]

    def row(self, i: int) -> tuple:
        return self.entries[i * self.cols : (i + 1) * self.cols]

    def column(self, j: int) -> tuple:
        return tuple(self.entries[i * self.cols + j] for i in range(self.rows))

    def to_rows(self) -> list:
        return [list(self.row(i)) for i in range(self.rows)]

    def vec(self) -> tuple:
        """Row-major flattening, the convention used for all Kronecker maps."""
        return self.entries

    @classmethod
    def from_vec(cls, v: Sequence[int], rows: int, cols: int) -> "IntMatrix":
        return cls(rows, cols, tuple(v))

    @property
    def is_zero(self) -> bool:
        return all(x == 0 for x in self.entries)

    def trace(self) -> int:
        if not self.is_square:
            raise DimensionMismatchError("trace needs a square matrix")
        return sum(self.entry(i, i) for i in range(self.rows))

    def transpose(self) -> "IntMatrix":
        return IntMatrix(
            self.cols,
            self.rows,
            tuple(self.entry(i, j) for j in range(self.cols) for i in range(self.rows)),
        )

    # -- arithmetic ---------------------------------------------------------

    def _same_shape(self, other: "IntMatrix") -> None:
        if self.rows != other.rows or self.cols != other.cols:
            raise DimensionMismatchError(
                f"shape {self.rows}x{self.cols} vs {other.rows}x{other.cols}"
            )

    def __add__(self, other: "IntMatrix") -> "IntMatrix":
        self._same_shape(other)
        return IntMatrix(
            self.rows, self.cols, tuple(a + b for a, b in zip(self.entries, other.entries))
        )

    def __sub__(self, other: "IntMatrix") -> "IntMatrix":
        self._same_shape(other)
        return IntMatrix(
            self.rows, self.cols, tuple(a - b for a, b in zip(self.entries, other.entries))
        )

    def __neg__(self) -> "IntMatrix":
        return IntMatrix(self.rows, self.cols, tuple(-a for a in self.entries))

    def scale(self, c: int) -> "IntMatrix":
        return IntMatrix(self.rows, self.cols, tuple(c * a for a in self.entries))

    def __matmul__(self, other: "IntMatrix") -> "IntMatrix":
        if self.cols != other.rows:
            raise DimensionMismatchError(
                f"cannot multiply {self.rows}x{self.cols} by {other.rows}x{other.cols}"
            )
        n, k, m = self.rows, self.cols, other.cols
        a, b = self.entries, other.entries
        out = [0] * (n * m)
        for i in range(n):
            arow = a[i * k : (i + 1) * k]
            base = i * m
            for s in range(k):
                x = arow[s]
                if x:
                    brow = b[s * m : (s + 1) * m]
                    for j in range(m):
                        out[base + j] += x * brow[j]
        return IntMatrix(n, m, tuple(out))

    def row_apply(self, v: Sequence[int]) -> tuple:
        """v . M for a row vector ``v`` of length ``rows``."""
        if len(v) != self.rows:
            raise DimensionMismatchError("row vector length mismatch")
        out = [0] * self.cols
        for i, x in enumerate(v):
            if x:
                base = i * self.cols
                for j in range(self.cols):
                    out[j] += x * self.entries[base + j]
        return tuple(out)

    def col_apply(self, w: Sequence[int]) -> tuple:
        """M . w for a column vector ``w`` of length ``cols``."""
        if len(w) != self.cols:
            raise DimensionMismatchError("column vector length mismatch")
        out = []
        for i in range(self.rows):
            base = i * self.cols
            out.append(sum(self.entries[base + j] * w[j] for j in range(self.cols)))
        return tuple(out)

    def submatrix(self, row_idx: Sequence[int], col_idx: Sequence[int]) -> "IntMatrix":
        ents = tuple(self.entry(i, j) for i in row_idx for j in col_idx)
        return IntMatrix(len(row_idx), len(col_idx), ents)

    def hstack(self, other: "IntMatrix") -> "IntMatrix":
        if self.rows != other.rows:
            raise DimensionMismatchError("hstack row mismatch")
        ents = []
        for i in range(self.rows):
            ents.extend(self.row(i))
            ents.extend(other.row(i))
        return IntMatrix(self.rows, self.cols + other.cols, tuple(ents))


@functools.lru_cache(maxsize=None)
def matrix_power(m: IntMatrix, e: int) -> IntMatrix:
    """m**e for e >= 0 by repeated squaring (memoised)."""
    if not m.is_square:
        raise DimensionMismatchError("power needs a square matrix")
    if e < 0:
        raise ValueError("negative power")
    if e == 0:
        return IntMatrix.identity(m.rows)
    if e == 1:
        return m
    half = matrix_power(m, e // 2)
    sq = half @ half
    return sq if e % 2 == 0 else sq @ m


def kron(a: IntMatrix, b: IntMatrix) -> IntMatrix:
    """Kronecker product; with row-major vec, vec(P X Q^T) = (P kron Q) vec(X)."""
    rows = a.rows * b.rows
    cols = a.cols * b.cols
    ents = [0] * (rows * cols)
    for i in range(a.rows):
        for j in range(a.cols):
            x = a.entry(i, j)
            if x == 0:
                continue
            for p in range(b.rows):
                for q in range(b.cols):
                    ents[(i * b.rows + p) * cols + (j * b.cols + q)] = x * b.entry(p, q)
    return IntMatrix(rows, cols, tuple(ents))


def xgcd(a: int, b: int) -> tuple:
    """(g, x, y) with g = gcd(a, b) >= 0 and x*a + y*b = g."""
    x0, x1, y0, y1 = 1, 0, 0, 1
    g, r = a, b
    while r:
        q = g // r
        g, r = r, g - q * r
        x0, x1 = x1, x0 - q * x1
        y0, y1 = y1, y0 - q * y1
    if g < 0:
        g, x0, y0 = -g, -x0, -y0
    return g, x0, y0


# ---------------------------------------------------------------------------
# Hermite reduction (the growth-safe workhorse)
# ---------------------------------------------------------------------------


class _HnfBuilder:
    """Incremental canonical Hermite row basis.

    The basis is kept fully reduced after every insertion (positive pivots,
    entries above a pivot within [0, pivot)); without this discipline the
    intermediate entries explode exponentially at the sizes used here.
    """

    def __init__(self, width: int):
        self.width = width
        self.rows: list = []
        self.pivots: list = []

    def _reduce_against_later(self, v: list, start_pos: int) -> None:
        for pos in range(start_pos, len(self.rows)):
            j = self.pivots[pos]
            if v[j]:
                q = v[j] // self.rows[pos][j]
                if q:
                    row = self.rows[pos]
                    for t in range(j, self.width):
                        v[t] -= q * row[t]

    def _reduce_above(self, pos: int) -> None:
        row = self.rows[pos]
        j = self.pivots[pos]
        d = row[j]
        for above in range(pos):
            other = self.rows[above]
            if other[j]:
                q = other[j] // d
                if q:
                    for t in range(j, self.width):
                        other[t] -= q * row[t]

    def insert(self, vec: Sequence[int]) -> None:
        v = list(vec)
        if len(v) != self.width:
            raise DimensionMismatchError("vector width mismatch")
        while True:
            j = next((idx for idx, x in enumerate(v) if x), None)
            if j is None:
                return
            pos = bisect_left(self.pivots, j)
            if pos < len(self.pivots) and self.pivots[pos] == j:
                row = self.rows[pos]
                a, b = row[j], v[j]
                if b % a == 0:
                    q = b // a
                    for t in range(j, self.width):
                        v[t] -= q * row[t]
                else:
                    g, x, y = xgcd(a, b)
                    au, bu = a // g, b // g
                    new_row = [x * p + y * q2 for p, q2 in zip(row, v)]
                    v = [-bu * p + au * q2 for p, q2 in zip(row, v)]
                    self.rows[pos] = new_row
                    self._reduce_against_later(new_row, pos + 1)
                    self._reduce_above(pos)
            else:
                if v[j] < 0:
                    v = [-x for x in v]
                self._reduce_against_later(v, pos)
                self.rows.insert(pos, v)
                self.pivots.insert(pos, j)
                self._reduce_above(pos)
                return

    def basis(self) -> tuple:
        # one left-to-right sweep makes the form canonical: reducing at a
        # pivot column never disturbs earlier pivot columns
        for pos in range(len(self.rows)):
            self._reduce_above(pos)
        return tuple(tuple(r) for r in self.rows)


def hermite_row_basis(vectors: Iterable[Sequence[int]], width: int) -> tuple:
    """Unique Hermite row basis of the lattice spanned by ``vectors``.

    Pivots are positive, entries above a pivot are reduced into [0, pivot),
    rows are ordered by pivot column.  Two generating sets span the same
    lattice iff they produce identical output.
    """
    builder = _HnfBuilder(width)
    for v in vectors:
        builder.insert(v)
    return builder.basis()


def lattice_contains(basis_rows: Sequence[Sequence[int]], target: Sequence[int]) -> bool:
    """Membership of ``target`` in the lattice given by a Hermite row basis."""
    v = list(target)
    by_pivot = {next(idx for idx, x in enumerate(row) if x): row for row in basis_rows}
    for j in range(len(v)):
        if v[j] == 0:
            continue
        row = by_pivot.get(j)
        if row is None or v[j] % row[j]:
            return False
        q = v[j] // row[j]
        v = [x - q * y for x, y in zip(v, row)]
    return all(x == 0 for x in v)


@dataclass(frozen=True)
class RowHermiteForm:
    """H = W . M with W unimodular and H the canonical row-Hermite form.

    Rows are returned pivot-sorted; zero rows of H trail, and the matching
    rows of W form a saturated basis of the left kernel of M.
    """

    h: tuple
    w: tuple
    pivots: tuple  # pivot column per nonzero row of h


@functools.lru_cache(maxsize=None)
def row_hermite_with_transform(m: IntMatrix) -> RowHermiteForm:
    builder = _HnfBuilder(m.cols + m.rows)
    for i in range(m.rows):
        augmented = list(m.row(i)) + [1 if t == i else 0 for t in range(m.rows)]
        builder.insert(augmented)
    rows = builder.basis()
    assert len(rows) == m.rows  # augmented rows are independent
    h = tuple(r[: m.cols] for r in rows)
    w = tuple(r[m.cols :] for r in rows)
    pivots = []
    for r in h:
        p = next((idx for idx, x in enumerate(r) if x), None)
        if p is not None:
            pivots.append(p)
    return RowHermiteForm(h=h, w=w, pivots=tuple(pivots))


@functools.lru_cache(maxsize=None)
def _column_hermite(m: IntMatrix) -> RowHermiteForm:
    # Row form of the transpose: W . M^T = H, so M . W^T = H^T gives the
    # column structure used by kernels and solving.
    return row_hermite_with_transform(m.transpose())


@functools.lru_cache(maxsize=None)
def integer_kernel(m: IntMatrix) -> tuple:
    """Canonical basis of the saturated lattice {x : M x = 0}.

    Returned as a tuple of coordinate tuples.  Saturation is automatic: the
    kernel of an integer matrix contains every integer vector that is
    rationally in it.
    """
    form = _column_hermite(m)
    kernel_rows = [
        form.w[i]
        for i in range(len(form.h))
        if all(x == 0 for x in form.h[i])
    ]
    return hermite_row_basis(kernel_rows, m.cols)


def _solve_by_substitution(m: IntMatrix, b: Sequence[int], exact: bool):
    form = _column_hermite(m)
    nonzero = [i for i in range(len(form.h)) if any(form.h[i])]
    ys = []
    for idx, i in enumerate(nonzero):
        pivot_col = form.pivots[idx]
        acc = b[pivot_col]
        for prev_idx, prev_i in enumerate(nonzero[:idx]):
            coeff = form.h[prev_i][pivot_col]
            if coeff:
                acc -= coeff * ys[prev_idx]
        d = form.h[i][pivot_col]
        if exact:
            if acc % d:
                return None
            ys.append(acc // d)
        else:
            ys.append(Fraction(acc, d))
    # consistency on the remaining coordinates
    for col in range(m.rows):
        total = sum(form.h[i][col] * y for i, y in zip(nonzero, ys))
        if total != b[col]:
            return None
    return [*zip(nonzero, ys)]


def solve_integer_linear(m: IntMatrix, b: Sequence[int]) -> Optional[tuple]:
    """Some integer x with M x = b, or None when no integer solution exists."""
    if len(b) != m.rows:
        raise DimensionMismatchError("right-hand side length mismatch")
    pairs = _solve_by_substitution(m, b, exact=True)
    if pairs is None:
        return None
    form = _column_hermite(m)
    x = [0] * m.cols
    for i, y in pairs:
        if y:
            wrow = form.w[i]
            for t in range(m.cols):
                x[t] += y * wrow[t]
    return tuple(x)


def has_rational_solution(m: IntMatrix, b: Sequence[int]) -> bool:
    """Whether M x = b is solvable over the rationals."""
    if len(b) != m.rows:
        raise DimensionMismatchError("right-hand side length mismatch")
    return _solve_by_substitution(m, b, exact=False) is not None


def determinant(m: IntMatrix) -> int:
    """Exact determinant by fraction-free (Bareiss) elimination."""
    if not m.is_square:
        raise DimensionMismatchError("determinant needs a square matrix")
    n = m.rows
    if n == 0:
        return 1
    a = [list(m.row(i)) for i in range(n)]
    sign = 1
    prev = 1
    for k in range(n - 1):
        if a[k][k] == 0:
            pivot_row = next((i for i in range(k + 1, n) if a[i][k] != 0), None)
            if pivot_row is None:
                return 0
            a[k], a[pivot_row] = a[pivot_row], a[k]
            sign = -sign
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                a[i][j] = (a[i][j] * a[k][k] - a[i][k] * a[k][j]) // prev
            a[i][k] = 0
        prev = a[k][k]
    return sign * a[n - 1][n - 1]


# ---------------------------------------------------------------------------
# Smith normal form
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class SmithDecomposition:
    """U . M . V = D with U, V unimodular and D diagonal (divisibility chain).

    ``u_inv`` and ``v_inv`` are exact inverses, so M = u_inv . D . v_inv.
    """

    u: IntMatrix
    d: IntMatrix
    v: IntMatrix
    u_inv: IntMatrix
    v_inv: IntMatrix
    invariant_factors: tuple

    @property
    def rank(self) -> int:
        return len(self.invariant_factors)

    @property
    def zero_count(self) -> int:
        return min(self.d.rows, self.d.cols) - self.rank

    def diagonal(self) -> tuple:
        n = min(self.d.rows, self.d.cols)
        return tuple(self.d.entry(i, i) for i in range(n))


def _is_diagonal(m: IntMatrix) -> bool:
    for i in range(m.rows):
        for j in range(m.cols):
            if i != j and m.entry(i, j):
                return False
    return True


def unimodular_inverse(u: IntMatrix) -> IntMatrix:
    """Exact inverse of a unimodular matrix (integer solves per column)."""
    cols = []
    n = u.rows
    for j in range(n):
        e = tuple(1 if i == j else 0 for i in range(n))
        x = solve_integer_linear(u, e)
        if x is None:
            raise ValueError("matrix is not unimodular")
        cols.append(x)
    return IntMatrix.from_columns(cols, n)


_SNF_PASS_CAP = 1000


@functools.lru_cache(maxsize=None)
def smith_normal_form(m: IntMatrix) -> SmithDecomposition:
    """Smith normal form via alternating Hermite passes.

    Row and column Hermite reductions alternate until the matrix is diagonal
    (Kannan-Bachem), after which 2x2 unimodular merges repair the
    divisibility chain.  Total on every integer matrix.
    """
    d = m
    u = IntMatrix.identity(m.rows)
    v = IntMatrix.identity(m.cols)
    for _ in range(_SNF_PASS_CAP):
        if _is_diagonal(d):
            break
        form = row_hermite_with_transform(d)
        d = IntMatrix.from_rows([list(r) for r in form.h])
        u = IntMatrix.from_rows([list(r) for r in form.w]) @ u
        if _is_diagonal(d):
            break
        form = row_hermite_with_transform(d.transpose())
        d = IntMatrix.from_rows([list(r) for r in form.h]).transpose()
        v = v @ IntMatrix.from_rows([list(r) for r in form.w]).transpose()
    else:
        raise RuntimeError("Smith reduction did not converge")

    # divisibility chain on the diagonal via 2x2 merges
    du = [list(r) for r in u.to_rows()]
    dv = [list(r) for r in v.to_rows()]
    diag = [d.entry(i, i) for i in range(min(d.rows, d.cols))]
    size = len(diag)
    for i in range(size):
        # sign normalisation (an already-diagonal input skips the passes)
        if diag[i] < 0:
            diag[i] = -diag[i]
            du[i] = [-x for x in du[i]]
    order = [i for i in range(size) if diag[i]] + [i for i in range(size) if not diag[i]]
    if order != list(range(size)):
        # matched row/column permutations push zero entries to the tail
        diag = [diag[t] for t in order]
        head = [du[t] for t in order]
        du[:size] = head
        for row in dv:
            permuted = [row[t] for t in order]
            row[:size] = permuted
    changed = True
    while changed:
        changed = False
        for i in range(size):
            for j in range(i + 1, size):
                a, b = diag[i], diag[j]
                if a == 0 or b == 0 or b % a == 0:
                    continue
                g, x, y = xgcd(a, b)
                au, bu = a // g, b // g
                # U2 = [[x, y], [-bu, au]], V2 = [[1, -y*bu], [1, 1 - y*bu]]
                # turn diag(a, b) into diag(g, a*b/g)
                ri, rj = du[i], du[j]
                du[i] = [x * p + y * q for p, q in zip(ri, rj)]
                du[j] = [-bu * p + au * q for p, q in zip(ri, rj)]
                for row in dv:
                    ci, cj = row[i], row[j]
                    row[i] = ci + cj
                    row[j] = (-y * bu) * ci + (1 - y * bu) * cj
                diag[i], diag[j] = g, au * b
                changed = True
    u = IntMatrix.from_rows(du)
    v = IntMatrix.from_rows(dv)
    ents = [[0] * m.cols for _ in range(m.rows)]
    for i, value in enumerate(diag):
        ents[i][i] = value
    d = IntMatrix.from_rows(ents)
    factors = []
    for value in diag:
        if value == 0:
            break
        factors.append(value)
    return SmithDecomposition(
        u=u,
        d=d,
        v=v,
        u_inv=unimodular_inverse(u),
        v_inv=unimodular_inverse(v),
        invariant_factors=tuple(factors),
    )


# ---------------------------------------------------------------------------
# lattice closure under preimages
# ---------------------------------------------------------------------------


def lattice_closure_under_preimage(
    psi: IntMatrix, seed_rows: Iterable[Sequence[int]], max_steps: int = 512
) -> tuple:
    """Stabilised union of psi^-m (L) over m >= 0, for a psi-invariant lattice L.

    Returns (hermite_basis, steps); any member x of the closure satisfies
    psi^steps (x) in L.  The ascending chain of lattices stabilises because
    rank and index are both bounded; ``max_steps`` is a defensive cap only.
    """
    if not psi.is_square:
        raise DimensionMismatchError("closure needs a square map")
    d = psi.rows
    current = hermite_row_basis(seed_rows, d)
    steps = 0
    while True:
        if current:
            stacked = psi.hstack(IntMatrix.from_columns([list(r) for r in current], d).scale(-1))
            kernel = integer_kernel(stacked)
            pre_rows = [k[:d] for k in kernel]
        else:
            pre_rows = [list(r) for r in integer_kernel(psi)]
        new = hermite_row_basis(list(pre_rows) + [list(r) for r in current], d)
        if new == current:
            return current, steps
        current = new
        steps += 1
        if steps > max_steps:
            raise RuntimeError("lattice closure failed to stabilise")


# ---------------------------------------------------------------------------
# polynomials (integer coefficients, low degree first)
# ---------------------------------------------------------------------------


def poly_trim(coeffs: Sequence[int]) -> tuple:
    c = list(coeffs)
    while c and c[-1] == 0:
        c.pop()
    return tuple(c)


def poly_add(a: Sequence[int], b: Sequence[int]) -> tuple:
    n = max(len(a), len(b))
    return poly_trim([(a[i] if i < len(a) else 0) + (b[i] if i < len(b) else 0) for i in range(n)])


def poly_mul(a: Sequence[int], b: Sequence[int]) -> tuple:
    if not a or not b:
        return ()
    out = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                out[i + j] += x * y
    return poly_trim(out)


def poly_mod(a: Sequence[int], m: Sequence[int]) -> tuple:
    """Remainder of ``a`` modulo the monic polynomial ``m``."""
    m = poly_trim(m)
    if not m or m[-1] != 1:
        raise ValueError("modulus must be monic")
    r = list(poly_trim(a))
    dm = len(m) - 1
    while len(r) - 1 >= dm and r:
        lead = r[-1]
        shift = len(r) - 1 - dm
        for i, c in enumerate(m):
            r[shift + i] -= lead * c
        while r and r[-1] == 0:
            r.pop()
    return tuple(r)


def poly_eval_matrix(coeffs: Sequence[int], m: IntMatrix) -> IntMatrix:
    """p(M) by Horner's rule."""
    if not m.is_square:
        raise DimensionMismatchError("polynomial evaluation needs a square matrix")
    n = m.rows
    acc = IntMatrix.zeros(n, n)
    ident = IntMatrix.identity(n)
    for c in reversed(list(coeffs)):
        acc = acc @ m + ident.scale(c)
    return acc


# ---------------------------------------------------------------------------
# characteristic and minimal polynomials
# ---------------------------------------------------------------------------


@functools.lru_cache(maxsize=None)
def characteristic_polynomial(m: IntMatrix) -> tuple:
    """Monic characteristic polynomial, low degree first (Faddeev-LeVerrier).

    The only divisions are by the step index and are exact over the integers.
    """
    if not m.is_square:
        raise DimensionMismatchError("characteristic polynomial needs a square matrix")
    n = m.rows
    coeffs = [0] * (n + 1)
    coeffs[n] = 1
    mk = IntMatrix.zeros(n, n)
    prev_c = 1
    ident = IntMatrix.identity(n)
    for k in range(1, n + 1):
        mk = m @ mk + ident.scale(prev_c)
        t = (m @ mk).trace()
        assert t % k == 0
        prev_c = -(t // k)
        coeffs[n - k] = prev_c
    return tuple(coeffs)


@dataclass(frozen=True)
class MinPolyData:
    """Minimal polynomial split m(x) = x^l * p(x) with p(0) != 0.

    ``l`` bounds every kernel-stabilisation argument used by the limit-group
    equality tests; ``k`` = deg p bounds polynomial representatives.
    Coefficients are low degree first and monic.
    """

    l: int
    k: int
    p_coeffs: tuple
    m_coeffs: tuple


@functools.lru_cache(maxsize=None)
def minimal_polynomial(m: IntMatrix) -> MinPolyData:
    """Minimal polynomial via the first linear dependency among powers of M.

    The dependency is found with an exact integer solve; the solution is the
    minimal polynomial's coefficient vector (monic and integral because the
    minimal polynomial is a monic divisor of the characteristic polynomial).
    """
    if not m.is_square:
        raise DimensionMismatchError("minimal polynomial needs a square matrix")
    n = m.rows
    if n == 0:
        raise DimensionMismatchError("empty matrix")
    powers = [IntMatrix.identity(n)]
    for deg in range(1, n + 1):
        powers.append(powers[-1] @ m)
        w = IntMatrix.from_columns([p.vec() for p in powers[:-1]], n * n)
        sol = solve_integer_linear(w, powers[-1].vec())
        if sol is not None:
            m_coeffs = tuple(-x for x in sol) + (1,)
            l = 0
            while m_coeffs[l] == 0:
                l += 1
            p_coeffs = m_coeffs[l:]
            return MinPolyData(l=l, k=len(p_coeffs) - 1, p_coeffs=p_coeffs, m_coeffs=m_coeffs)
    raise RuntimeError("no annihilating polynomial up to the matrix size")
