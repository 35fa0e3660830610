"""Tests for S_Gamma and its reduced and trivial relatives."""

import pytest

from latticewitt.errors import ConfigError, DegenerateInputError
from latticewitt.lattice import box_points
from latticewitt.models import ModuleConfig, ModuleKind
from latticewitt.modules import (
    ModuleVector,
    ReducedSliceModule,
    SymbolSliceModule,
    TensorFieldModule,
    TrivialModule,
    av_compatibility_residual,
    build_module,
    lie_action_residual,
)
from latticewitt.scalars import RHO, CVec2, symplectic


class TestSymbolSliceModule:
    """Tests for S_Gamma."""

    def test_action_coefficient(self, sgamma, demo, generic_beta):
        """Test L_lambda L_mu = <lambda+rho, mu+rho> L_{lambda+mu}."""
        image = sgamma.act_v((1, 0), ModuleVector.single((0, 1), [1]))
        expected = symplectic(demo.embed((1, 0)) + RHO, sgamma.weight((0, 1)) + RHO)
        assert image == ModuleVector.single((1, 1), [expected])

    def test_lie_action(self, sgamma):
        """Test [L_lambda, L_mu] v = <lambda+rho, mu+rho> L_{lambda+mu} v."""
        v = ModuleVector.single((0, 0), [1])
        for lam in box_points(2, 1):
            for mu in box_points(2, 1):
                assert lie_action_residual(sgamma, lam, mu, v).is_zero()

    def test_av_compatibility(self, sgamma):
        """Test the compatibility of the A- and W-actions."""
        v = ModuleVector.single((1, -1), [1])
        for lam in box_points(2, 1):
            assert av_compatibility_residual(sgamma, lam, (2, 1), v).is_zero()

    def test_config_roundtrip(self, sgamma, demo):
        """Test that the module config rebuilds the module."""
        rebuilt = build_module(sgamma.to_config(), demo)
        assert isinstance(rebuilt, SymbolSliceModule)
        assert rebuilt.coset == sgamma.coset


class TestReducedSliceModule:
    """Tests for the quotient of S_{-rho + Lambda} by its trivial line."""

    def test_removed_component(self, demo):
        """Test that the component of weight -rho is removed."""
        module = ReducedSliceModule(demo, -RHO)
        assert module.fiber_dim((0, 0)) == 0
        assert module.fiber_dim((1, 0)) == 1
        assert not module.is_av

    def test_lie_action(self, demo):
        """Test that the quotient is still a module."""
        module = ReducedSliceModule(demo, -RHO)
        v = ModuleVector.single((1, 0), [1])
        for lam in box_points(2, 1):
            for mu in box_points(2, 1):
                assert lie_action_residual(module, lam, mu, v).is_zero()

    def test_requires_minus_rho(self, demo, generic_beta):
        """Test that a coset without -rho raises."""
        with pytest.raises(DegenerateInputError):
            ReducedSliceModule(demo, generic_beta)


class TestTrivialModule:
    """Tests for the trivial module."""

    def test_action_is_zero(self, demo):
        """Test that every L_lambda kills the trivial module."""
        module = TrivialModule(demo)
        v = ModuleVector.single((0, 0), [1])
        for lam in box_points(2, 1):
            assert module.act_v(lam, v).is_zero()

    def test_no_a_action(self, demo):
        """Test that the trivial module carries no A-action."""
        with pytest.raises(NotImplementedError):
            TrivialModule(demo).act_a_matrix((0, 0), (0, 0))


class TestBuildModule:
    """Tests for build_module."""

    def test_tensor_field(self, demo):
        """Test building M^n from a config."""
        module = build_module(ModuleConfig(kind=ModuleKind.MN, n=3, beta=["0", "i"]), demo)
        assert isinstance(module, TensorFieldModule)
        assert module.n == 3
        assert module.coset.base == CVec2.of(0, "i")

    def test_missing_degree(self, demo):
        """Test that an M^n config without n raises."""
        with pytest.raises(ConfigError):
            build_module(ModuleConfig(kind=ModuleKind.MN, beta=["0", "0"]), demo)
