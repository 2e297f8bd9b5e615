import random

import pytest

from sftdim import (
    NegativeEntryError,
    NonSquareError,
    ReducibleError,
    ZeroRowOrColumnError,
    is_irreducible,
    is_primitive,
    period,
    spectral_decomposition,
    validate,
)
from sftdim.sft import wielandt_bound
from sftdim import traces

from conftest import random_valid_adjacency


class TestValidate:
    def test_accepts_scalar(self):
        assert validate([[2]]).size == 1

    def test_zero_column(self):
        with pytest.raises(ZeroRowOrColumnError) as exc:
            validate([[0, 1], [0, 1]])
        assert (exc.value.kind, exc.value.index) == ("column", 0)

    def test_zero_row(self):
        with pytest.raises(ZeroRowOrColumnError) as exc:
            validate([[0, 1], [0, 0]])
        assert exc.value.kind == "row"

    def test_negative_entry(self):
        with pytest.raises(NegativeEntryError) as exc:
            validate([[1, -1], [1, 0]])
        assert exc.value.position == (0, 1)

    def test_non_square(self):
        with pytest.raises(NonSquareError):
            validate([[1, 2, 3], [4, 5, 6]])

    def test_nilpotent_is_rejected(self):
        with pytest.raises(ZeroRowOrColumnError):
            validate([[0, 1], [0, 0]])


class TestPrimitivity:
    def test_golden_mean(self, fib):
        assert is_primitive(fib)

    def test_period_two_is_not_primitive(self):
        assert not is_primitive(validate([[0, 1], [1, 0]]))

    def test_symmetric_example(self, sym3):
        assert is_primitive(sym3)

    def test_wielandt_bound_value(self):
        assert wielandt_bound(3) == 5

    def test_primitive_iff_irreducible_aperiodic(self):
        rng = random.Random(11)
        for _ in range(40):
            a = random_valid_adjacency(rng, rng.randint(1, 4))
            if is_irreducible(a):
                assert is_primitive(a) == (period(a) == 1)
            else:
                assert not is_primitive(a)


class TestIrreducibility:
    def test_swap_is_irreducible_period_two(self):
        a = validate([[0, 1], [1, 0]])
        assert is_irreducible(a)
        assert period(a) == 2

    def test_identity_is_reducible(self):
        a = validate([[1, 0], [0, 1]])
        assert not is_irreducible(a)
        with pytest.raises(ReducibleError):
            period(a)

    def test_weighted_swap(self):
        a = validate([[0, 2], [3, 0]])
        assert is_irreducible(a)
        assert period(a) == 2


class TestSpectralDecomposition:
    def test_primitive_is_its_own_component(self, fib):
        dec = spectral_decomposition(fib)
        assert dec.period == 1
        assert dec.component == fib
        assert dec.vertex_order == (0, 1)

    def test_swap(self):
        dec = spectral_decomposition(validate([[0, 1], [1, 0]]))
        assert dec.period == 2
        assert dec.classes == ((0,), (1,))
        assert dec.component.matrix.to_rows() == [[1]]

    def test_weighted_swap(self):
        dec = spectral_decomposition(validate([[0, 2], [3, 0]]))
        assert dec.period == 2
        assert dec.component.matrix.to_rows() == [[6]]
        assert is_primitive(dec.component)

    def test_reducible_rejected(self):
        with pytest.raises(ReducibleError):
            spectral_decomposition(validate([[1, 0], [0, 1]]))

    def test_block_cyclic_structure_and_eigenvalue(self):
        rng = random.Random(23)
        cases = [validate([[0, 1], [1, 0]]), validate([[0, 2], [3, 0]])]
        # a 3-cycle with multiplicities
        cases.append(validate([[0, 2, 0], [0, 0, 1], [3, 0, 0]]))
        for _ in range(20):
            a = random_valid_adjacency(rng, rng.randint(2, 4))
            if is_irreducible(a):
                cases.append(a)
        for a in cases:
            dec = spectral_decomposition(a)
            n = dec.period
            cls_of = {}
            for i, cls in enumerate(dec.classes):
                for v in cls:
                    cls_of[v] = i
            assert sorted(cls_of) == list(range(a.size))
            for u in range(a.size):
                for v in range(a.size):
                    if a.matrix.entry(u, v) > 0:
                        assert cls_of[v] == (cls_of[u] + 1) % n
            assert is_primitive(dec.component)
            lam_comp = traces.perron(dec.component).eigenvalue
            # oracle for the spectral radius of the full matrix: numpy eigvals
            import numpy as np

            lam = max(abs(v) for v in np.linalg.eigvals(np.array(a.matrix.to_rows(), dtype=float)))
            assert abs(lam_comp - lam**n) < 1e-6
