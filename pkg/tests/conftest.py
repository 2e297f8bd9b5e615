import random

import pytest

from sftdim import IntMatrix, is_primitive, validate
from sftdim.cylinder_ring import centralizer_basis


FULL_TWO_SHIFT = [[2]]
GOLDEN_MEAN = [[1, 1], [1, 0]]
SYMMETRIC_3 = [[2, 1, 1], [1, 2, 1], [1, 1, 2]]
ABELIAN_2 = [[1, 2], [2, 1]]
SPARSE_3 = [[0, 1, 5], [1, 0, 1], [1, 1, 0]]
DOUBLED = [[4, 2], [2, 4]]
NILPOTENT_PART = [[1, 1], [1, 1]]


@pytest.fixture(scope="session")
def two():
    return validate(FULL_TWO_SHIFT)


@pytest.fixture(scope="session")
def fib():
    return validate(GOLDEN_MEAN)


@pytest.fixture(scope="session")
def sym3():
    return validate(SYMMETRIC_3)


@pytest.fixture(scope="session")
def abelian2():
    return validate(ABELIAN_2)


@pytest.fixture(scope="session")
def sparse3():
    return validate(SPARSE_3)


def random_matrix(rng, rows, cols, lo=-5, hi=5):
    return IntMatrix.from_rows(
        [[rng.randint(lo, hi) for _ in range(cols)] for _ in range(rows)]
    )


def random_valid_adjacency(rng, size, hi=3):
    while True:
        rows = [[max(0, rng.randint(-1, hi)) for _ in range(size)] for _ in range(size)]
        try:
            return validate(rows)
        except ValueError:
            continue


def random_primitive_adjacency(rng, size, hi=3):
    while True:
        a = random_valid_adjacency(rng, size, hi)
        if is_primitive(a):
            return a


@pytest.fixture(scope="session")
def primitive_pool():
    """A deterministic pool of small primitive matrices, sizes 1 through 4."""
    rng = random.Random(20240811)
    pool = [validate(FULL_TWO_SHIFT), validate(GOLDEN_MEAN), validate(SYMMETRIC_3),
            validate(ABELIAN_2), validate(DOUBLED)]
    for size in (2, 3, 4):
        for _ in range(2):
            pool.append(random_primitive_adjacency(rng, size))
    return pool


def random_centralizer_element(rng, ambient, bound=3):
    basis = centralizer_basis(ambient).basis
    k = ambient.size
    acc = IntMatrix.zeros(k, k)
    for b in basis:
        acc = acc + b.scale(rng.randint(-bound, bound))
    return acc
