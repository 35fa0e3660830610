"""Tests for the D-operators on one component."""

import pytest

from latticewitt.dop import DOperator
from latticewitt.errors import DegenerateInputError
from latticewitt.lattice import box_points
from latticewitt.matrices import equal, identity
from latticewitt.modules import ReducedSliceModule, TensorFieldModule, TrivialModule
from latticewitt.scalars import RHO, symplectic


class TestDOperator:
    """Tests for DOperator."""

    def test_d_at_zero_is_l0_eigenvalue(self, m2, generic_beta):
        """Test D(0) = <rho, weight> on the fiber."""
        operator = DOperator(m2, (0, 0))
        assert equal(operator.d_matrix((0, 0)), identity(3) * symplectic(RHO, generic_beta))

    @pytest.mark.parametrize("n", [0, 1, 2, 3])
    def test_dd_identity(self, demo, generic_beta, n):
        """Test the commutation identity of D on a grid."""
        operator = DOperator(TensorFieldModule(demo, generic_beta, n), (1, -1))
        for lam in box_points(2, 1):
            for mu in box_points(2, 1):
                assert operator.dd_residual(lam, mu).is_zero_matrix

    def test_dimension(self, m2):
        """Test the fiber dimension of the operator."""
        assert DOperator(m2, (0, 0)).dim == 3

    def test_cached(self, m2):
        """Test that repeated evaluation returns the cached matrix."""
        operator = DOperator(m2, (0, 0))
        assert operator.d_matrix((1, 2)) is operator.d_matrix((1, 2))

    def test_requires_av_module(self, demo):
        """Test that modules without an A-action are rejected."""
        with pytest.raises(DegenerateInputError):
            DOperator(TrivialModule(demo), (0, 0))
        with pytest.raises(DegenerateInputError):
            DOperator(ReducedSliceModule(demo, -RHO), (1, 0))
