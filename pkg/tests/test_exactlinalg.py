import random

import pytest
import sympy

from sftdim.exactlinalg import (
    DimensionMismatchError,
    IntMatrix,
    characteristic_polynomial,
    determinant,
    hermite_row_basis,
    integer_kernel,
    lattice_contains,
    matrix_power,
    minimal_polynomial,
    poly_eval_matrix,
    poly_mod,
    poly_mul,
    smith_normal_form,
    solve_integer_linear,
    xgcd,
)

from conftest import random_matrix


def sympy_matrix(m):
    return sympy.Matrix(m.to_rows())


def _min_annihilating_divisor(m):
    """Independent oracle: the minimal-degree monic divisor of the
    characteristic polynomial (factored by sympy) that annihilates m,
    returned as low-to-high integer coefficients."""
    lam = sympy.symbols("lam")
    char = sympy.Poly(sympy_matrix(m).charpoly(lam).all_coeffs(), lam, domain="ZZ")
    _, factors = char.factor_list()
    divisors = [sympy.Poly(1, lam, domain="ZZ")]
    for base, mult in factors:
        divisors = [d * base**e for d in divisors for e in range(mult + 1)]
    best = None
    me = sympy_matrix(m)
    for d in divisors:
        if d.degree() == 0:
            continue
        coeffs = [int(c) for c in d.all_coeffs()[::-1]]
        value = sum(
            (c * me**i for i, c in enumerate(coeffs)),
            start=sympy.zeros(m.rows, m.rows),
        )
        if value.is_zero_matrix and (best is None or d.degree() < best.degree()):
            best = d
    assert best is not None
    return [int(c) for c in best.all_coeffs()[::-1]]


class TestIntMatrix:
    def test_shape_validation(self):
        with pytest.raises(DimensionMismatchError):
            IntMatrix(2, 2, (1, 2, 3))
        with pytest.raises(DimensionMismatchError):
            IntMatrix.from_rows([[1, 2], [3]])
        with pytest.raises(TypeError):
            IntMatrix.from_rows([[1.5]])

    def test_matmul_and_vectors(self):
        a = IntMatrix.from_rows([[1, 2], [3, 4]])
        b = IntMatrix.from_rows([[0, 1], [1, 0]])
        assert (a @ b).to_rows() == [[2, 1], [4, 3]]
        assert a.row_apply((1, 1)) == (4, 6)
        assert a.col_apply((1, 1)) == (3, 7)
        with pytest.raises(DimensionMismatchError):
            a @ IntMatrix.from_rows([[1, 2, 3]])

    def test_power(self):
        a = IntMatrix.from_rows([[1, 1], [1, 0]])
        assert matrix_power(a, 0) == IntMatrix.identity(2)
        # Fibonacci growth stays exact
        p = matrix_power(a, 50)
        assert p.entry(0, 0) == 20365011074  # F_51

    def test_kron_vec_convention(self):
        # vec(P X Q^T) = (P kron Q) vec(X) in row-major layout
        from sftdim.exactlinalg import kron

        rng = random.Random(7)
        for _ in range(10):
            p = random_matrix(rng, 2, 2)
            q = random_matrix(rng, 2, 2)
            x = random_matrix(rng, 2, 2)
            lhs = (p @ x @ q.transpose()).vec()
            rhs = kron(p, q).col_apply(x.vec())
            assert lhs == rhs


class TestSmithNormalForm:
    def test_already_diagonal(self):
        snf = smith_normal_form(IntMatrix.from_rows([[3, 0], [0, 6]]))
        assert snf.invariant_factors == (3, 6)

    def test_zero_matrix(self):
        snf = smith_normal_form(IntMatrix.zeros(2, 2))
        assert snf.invariant_factors == ()
        assert snf.rank == 0

    def test_already_diagonal_edge_cases(self):
        snf = smith_normal_form(IntMatrix.from_rows([[-1]]))
        assert snf.invariant_factors == (1,)
        assert snf.u @ IntMatrix.from_rows([[-1]]) @ snf.v == snf.d
        m = IntMatrix.from_rows([[0, 0], [0, 3]])
        snf = smith_normal_form(m)
        assert snf.invariant_factors == (3,)
        assert snf.diagonal() == (3, 0)
        assert snf.u @ m @ snf.v == snf.d

    def test_moderate_size_terminates_quickly(self):
        # the naive two-sided elimination explodes here; the Hermite-based
        # reduction must stay polynomial-sized
        import time

        rng = random.Random(909)
        m = random_matrix(rng, 25, 25, lo=-3, hi=3)
        start = time.monotonic()
        snf = smith_normal_form(m)
        assert time.monotonic() - start < 20.0
        assert snf.u @ m @ snf.v == snf.d
        assert snf.u_inv @ snf.d @ snf.v_inv == m

    def test_classic_example(self):
        m = IntMatrix.from_rows([[2, 4], [6, 8]])
        snf = smith_normal_form(m)
        # gcd of entries is 2 and |det| = 8, so the factors must be (2, 4)
        assert snf.invariant_factors == (2, 4)
        assert snf.u @ m @ snf.v == snf.d

    def test_random_properties(self):
        rng = random.Random(101)
        for _ in range(60):
            rows = rng.randint(1, 5)
            cols = rng.randint(1, 5)
            m = random_matrix(rng, rows, cols)
            snf = smith_normal_form(m)
            assert snf.u @ m @ snf.v == snf.d
            assert abs(determinant(snf.u)) == 1
            assert abs(determinant(snf.v)) == 1
            assert snf.u_inv @ snf.d @ snf.v_inv == m
            assert snf.u @ snf.u_inv == IntMatrix.identity(rows)
            assert snf.v @ snf.v_inv == IntMatrix.identity(cols)
            diag = snf.diagonal()
            for i, d in enumerate(diag):
                assert d >= 0
                if i + 1 < len(diag) and diag[i + 1] != 0:
                    assert d != 0 and diag[i + 1] % d == 0
            # zeros trail
            seen_zero = False
            for d in diag:
                if d == 0:
                    seen_zero = True
                else:
                    assert not seen_zero


class TestKernel:
    def test_identity_has_trivial_kernel(self):
        assert integer_kernel(IntMatrix.identity(3)) == ()

    def test_zero_matrix_kernel_is_standard_basis(self):
        assert integer_kernel(IntMatrix.zeros(2, 2)) == ((1, 0), (0, 1))

    def test_ones_matrix(self):
        assert integer_kernel(IntMatrix.from_rows([[1, 1], [1, 1]])) == ((1, -1),)

    def test_kernel_vectors_and_saturation(self):
        rng = random.Random(202)
        for _ in range(40):
            m = random_matrix(rng, rng.randint(1, 4), rng.randint(1, 4))
            kernel = integer_kernel(m)
            for v in kernel:
                assert all(x == 0 for x in m.col_apply(v))
            if kernel:
                stacked = IntMatrix.from_rows([list(v) for v in kernel])
                # a saturated basis has unit invariant factors
                assert all(d == 1 for d in smith_normal_form(stacked).invariant_factors)


class TestSolve:
    def test_identity(self):
        m = IntMatrix.identity(3)
        assert solve_integer_linear(m, (4, 5, 6)) == (4, 5, 6)

    def test_parity_obstruction(self):
        assert solve_integer_linear(IntMatrix.from_rows([[2]]), (3,)) is None

    def test_bezout(self):
        m = IntMatrix.from_rows([[2, 3]])
        x = solve_integer_linear(m, (1,))
        assert x is not None and m.col_apply(x) == (1,)

    def test_random_solvable_and_not(self):
        rng = random.Random(303)
        for _ in range(40):
            m = random_matrix(rng, rng.randint(1, 4), rng.randint(1, 4))
            x0 = tuple(rng.randint(-4, 4) for _ in range(m.cols))
            b = m.col_apply(x0)
            x = solve_integer_linear(m, b)
            assert x is not None and m.col_apply(x) == b
        with pytest.raises(DimensionMismatchError):
            solve_integer_linear(IntMatrix.identity(2), (1, 2, 3))


class TestHermite:
    def test_canonical_form(self):
        basis = hermite_row_basis([(2, 4), (6, 8)], 2)
        assert basis == ((2, 0), (0, 4))

    def test_generating_sets_agree(self):
        rng = random.Random(404)
        for _ in range(60):
            width = rng.randint(2, 6)
            vectors = [
                tuple(rng.randint(-6, 6) for _ in range(width))
                for _ in range(rng.randint(1, width + 2))
            ]
            h1 = hermite_row_basis(vectors, width)
            shuffled = list(vectors)
            rng.shuffle(shuffled)
            # add redundant combinations
            extra = tuple(a + b for a, b in zip(vectors[0], vectors[-1]))
            scaled = tuple(3 * a for a in vectors[0])
            h2 = hermite_row_basis(shuffled + [extra, scaled], width)
            assert h1 == h2
            for v in vectors:
                assert lattice_contains(h1, v)


class TestPolynomials:
    def test_mod_monic(self):
        # x^2 mod (x^2 - x - 1) = x + 1
        assert poly_mod((0, 0, 1), (-1, -1, 1)) == (1, 1)
        assert poly_mod((-1, -1, 1), (-1, -1, 1)) == ()

    def test_mul(self):
        assert poly_mul((1, 1), (-1, 1)) == (-1, 0, 1)

    def test_eval(self):
        a = IntMatrix.from_rows([[1, 1], [1, 0]])
        # p(A) for the annihilating polynomial is zero
        assert poly_eval_matrix((-1, -1, 1), a).is_zero

    def test_xgcd(self):
        for a, b in [(12, 18), (-5, 7), (0, 0), (4, 0), (0, -9)]:
            g, x, y = xgcd(a, b)
            assert g >= 0 and x * a + y * b == g


class TestCharPoly:
    def test_against_sympy(self):
        rng = random.Random(505)
        lam = sympy.symbols("lam")
        for _ in range(25):
            n = rng.randint(1, 5)
            m = random_matrix(rng, n, n)
            mine = characteristic_polynomial(m)
            ref = sympy_matrix(m).charpoly(lam).all_coeffs()[::-1]
            assert list(mine) == [int(c) for c in ref]
            assert determinant(m) == (-1) ** n * mine[0]


class TestMinimalPolynomial:
    def test_scalar(self):
        mp = minimal_polynomial(IntMatrix.from_rows([[2]]))
        assert (mp.l, mp.k, mp.p_coeffs) == (0, 1, (-2, 1))

    def test_fibonacci(self):
        mp = minimal_polynomial(IntMatrix.from_rows([[1, 1], [1, 0]]))
        assert (mp.l, mp.p_coeffs) == (0, (-1, -1, 1))

    def test_repeated_eigenvalue(self):
        mp = minimal_polynomial(IntMatrix.from_rows([[2, 1, 1], [1, 2, 1], [1, 1, 2]]))
        assert (mp.l, mp.k, mp.p_coeffs) == (0, 2, (4, -5, 1))

    def test_zero_root(self):
        mp = minimal_polynomial(IntMatrix.from_rows([[1, 1], [1, 1]]))
        assert (mp.l, mp.k, mp.p_coeffs) == (1, 1, (-2, 1))
        assert mp.m_coeffs == (0, -2, 1)

    def test_annihilates_and_divisor_oracle_agreement(self):
        rng = random.Random(606)
        for _ in range(20):
            n = rng.randint(1, 5)
            m = random_matrix(rng, n, n, lo=-3, hi=3)
            mp = minimal_polynomial(m)
            assert poly_eval_matrix(mp.m_coeffs, m).is_zero
            assert mp.p_coeffs[0] != 0 and mp.p_coeffs[-1] == 1
            ref = _min_annihilating_divisor(m)
            assert list(mp.m_coeffs) == ref

    def test_divisor_lattice_minimality(self):
        # No proper monic divisor of the characteristic polynomial of lower
        # degree annihilates the matrix (desk-scale brute force via factoring).
        rng = random.Random(707)
        lam = sympy.symbols("lam")
        for _ in range(10):
            n = rng.randint(2, 4)
            m = random_matrix(rng, n, n, lo=-2, hi=2)
            mp = minimal_polynomial(m)
            char = sympy.Poly(
                list(characteristic_polynomial(m))[::-1], lam, domain="ZZ"
            )
            _, factors = char.factor_list()
            divisors = [sympy.Poly(1, lam, domain="ZZ")]
            for base, mult in factors:
                divisors = [
                    d * base**e for d in divisors for e in range(mult + 1)
                ]
            me = sympy_matrix(m)
            for d in divisors:
                if d.degree() >= mp.l + mp.k or d.degree() == 0:
                    continue
                coeffs = [int(c) for c in d.all_coeffs()[::-1]]
                value = poly_eval_matrix(tuple(coeffs), m)
                assert not value.is_zero, "a smaller divisor annihilates the matrix"
