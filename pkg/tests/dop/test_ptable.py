"""Tests for P-table extraction."""

import random

import pytest

from latticewitt.dop import DOperator, PTable, extract_p_table, multi_indices, scalar_part
from latticewitt.dop.ptable import monomial
from latticewitt.errors import InterpolationMismatchError
from latticewitt.matrices import equal, identity, matrix
from latticewitt.modules import AVModule, TensorFieldModule
from latticewitt.poisson import ad_matrix, vector_product
from latticewitt.scalars import HALF, RHO, gauss, symplectic


class CubicModule(AVModule):
    """A rank-one family whose D-operator is cubic in lambda."""

    kind = "cubic"

    def fiber_dim(self, k):
        return 1

    def act_v_matrix(self, lam, k):
        return matrix([[lam[0] ** 3]], 1)


class TestMultiIndices:
    """Tests for the multi-index helpers."""

    def test_order(self):
        """Test ordering by total degree, then lexicographically descending."""
        assert multi_indices(2, 2) == [(0, 0), (1, 0), (0, 1), (2, 0), (1, 1), (0, 2)]

    def test_monomial(self):
        """Test lambda^K / K!."""
        assert monomial((2, 3), (1, 2)) == gauss(9, 0)
        assert monomial((5, -1), (0, 0)) == gauss(1, 0)


class TestExtractPTable:
    """Tests for extract_p_table."""

    @pytest.mark.parametrize("n", [0, 1, 2, 3])
    def test_tensor_field_table(self, demo, generic_beta, n):
        """Test the closed form of the P-table of M^n at the origin."""
        module = TensorFieldModule(demo, generic_beta, n)
        table = extract_p_table(module)
        dim = n + 1
        assert table.max_order <= 2
        assert equal(table.entry((0, 0)), identity(dim) * symplectic(RHO, generic_beta))
        for i, image in enumerate(demo.images):
            unit = tuple(1 if j == i else 0 for j in range(2))
            expected = identity(dim) * symplectic(image, generic_beta + RHO) + ad_matrix(
                vector_product(image, RHO) * HALF, n
            )
            assert equal(table.entry(unit), expected)
        assert equal(table.entry((1, 1)), ad_matrix(vector_product(*demo.images), n))
        square = vector_product(demo.images[0], demo.images[0])
        assert equal(table.entry((2, 0)), ad_matrix(square, n))

    def test_evaluate_reproduces_d(self, m2):
        """Test that the table rebuilds D at seeded random points."""
        table = extract_p_table(m2, (1, 2))
        operator = DOperator(m2, (1, 2))
        rng = random.Random(23)
        for _ in range(10):
            lam = (rng.randint(-6, 6), rng.randint(-6, 6))
            assert equal(table.evaluate(lam), operator.d_matrix(lam))

    def test_cubic_dependence_detected(self, demo):
        """Test that a D of degree 3 fails off-grid validation at degree 2."""
        with pytest.raises(InterpolationMismatchError):
            extract_p_table(CubicModule(demo, RHO), degree=2)

    def test_cubic_dependence_at_higher_degree(self, demo):
        """Test that a larger grid interpolates the cubic family exactly."""
        table = extract_p_table(CubicModule(demo, RHO), degree=3)
        assert table.support() == [(3, 0)]
        assert equal(table.entry((3, 0)), matrix([[6]], 1))

    def test_degree_too_small(self, m2):
        """Test that a grid of degree below 2 is rejected."""
        with pytest.raises(ValueError):
            extract_p_table(m2, degree=1)


class TestPTable:
    """Tests for PTable."""

    def test_zero_entries_dropped(self, demo):
        """Test that zero coefficients are not stored and read back as zero."""
        table = PTable(demo, {(0, 0): identity(2), (1, 0): identity(2) * 0}, 2, 2)
        assert table.support() == [(0, 0)]
        assert table.entry((1, 0)).is_zero_matrix
        assert table.entry((-1, 0)).is_zero_matrix

    def test_perturbed_copy(self, demo):
        """Test that perturbing leaves the original untouched."""
        table = PTable(demo, {(0, 0): identity(1)}, 2, 1)
        changed = table.perturbed((0, 1), identity(1))
        assert changed.support() == [(0, 0), (0, 1)]
        assert table.support() == [(0, 0)]

    def test_scalar_part(self):
        """Test trace over dimension."""
        assert scalar_part(matrix([[1, 5], [0, 3]], 2)) == gauss(2, 0)
