"""Perron-Frobenius data and the trace maps on the limit groups.

Floating point lives here and only here.  The dominant eigenvalue is an
algebraic irrational in general, so the eigen-data is computed in binary64 by
power iteration and every downstream assertion carries an explicit tolerance.

Normalisation convention: the left eigenvector is scaled to sum to 1 and the
right eigenvector is then scaled so that (left . right) = 1.  Only the second
condition is forced by the trace formulas; fixing the first as well makes the
reported vectors (and therefore golden tests) deterministic.
"""

from __future__ import annotations

import functools
import os
from dataclasses import dataclass

import numpy as np

from .sft import AdjacencyMatrix, NotPrimitiveError, is_primitive

DEFAULT_TOL = 1e-12
MAX_ITERS_ENV = "SFTDIM_MAX_ITERS"
_DEFAULT_MAX_ITERS = 1_000_000


class NoConvergenceError(RuntimeError):
    """Power iteration failed to converge within the iteration cap."""


@dataclass(frozen=True)
class PerronData:
    """Dominant eigenvalue with left/right eigenvectors and a residual bound."""

    eigenvalue: float
    left: tuple
    right: tuple
    residual: float
    iterations: int


def _max_iters() -> int:
    raw = os.environ.get(MAX_ITERS_ENV)
    return int(raw) if raw else _DEFAULT_MAX_ITERS


def _power_iterate(mat: np.ndarray, tol: float) -> tuple:
    n = mat.shape[0]
    x = np.full(n, 1.0 / n)
    cap = _max_iters()
    for it in range(cap):
        y = x @ mat
        s = y.sum()
        y = y / s
        if np.abs(y - x).sum() < tol:
            return y, it + 1
        x = y
    raise NoConvergenceError(f"no convergence within {cap} iterations (tol={tol})")


@functools.lru_cache(maxsize=None)
def perron(a: AdjacencyMatrix, tol: float = DEFAULT_TOL) -> PerronData:
    """Dominant eigen-data of a primitive matrix by power iteration."""
    if not is_primitive(a):
        raise NotPrimitiveError("Perron data needs a primitive matrix")
    mat = np.array(a.matrix.to_rows(), dtype=np.float64)
    left, it_l = _power_iterate(mat, tol)
    right, it_r = _power_iterate(mat.T, tol)
    lam = float((left @ mat).sum())  # left sums to 1, so sum(left A) = lambda
    right = right / float(left @ right)
    res_l = float(np.abs(left @ mat - lam * left).max())
    res_r = float(np.abs(mat @ right - lam * right).max())
    return PerronData(
        eigenvalue=lam,
        left=tuple(float(v) for v in left),
        right=tuple(float(v) for v in right),
        residual=max(res_l, res_r),
        iterations=it_l + it_r,
    )


def _dot(u, v) -> float:
    return float(sum(float(a) * float(b) for a, b in zip(u, v)))


def trace_s(element, tol: float = DEFAULT_TOL) -> float:
    """lambda^-N * (v . right) for a stable element [v, N]."""
    data = perron(element.ambient, tol)
    return _dot(element.vector, data.right) / data.eigenvalue**element.level


def trace_u(element, tol: float = DEFAULT_TOL) -> float:
    """lambda^-N * (left . w) for an unstable element [w, N]."""
    data = perron(element.ambient, tol)
    return _dot(data.left, element.vector) / data.eigenvalue**element.level


def trace_ch(element, tol: float = DEFAULT_TOL) -> float:
    """lambda^-2N * (left . X . right) for a cylinder class [X, N]."""
    data = perron(element.ambient, tol)
    xw = [
        sum(element.matrix.entry(i, j) * data.right[j] for j in range(element.matrix.cols))
        for i in range(element.matrix.rows)
    ]
    return _dot(data.left, xw) / data.eigenvalue ** (2 * element.level)
