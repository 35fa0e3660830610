"""Tests for the tensor-field modules M^n(Gamma)."""

import random

import pytest

from latticewitt.errors import DegenerateInputError
from latticewitt.lattice import box_points
from latticewitt.matrices import equal
from latticewitt.modules import (
    ModuleVector,
    SymbolSliceModule,
    TensorFieldModule,
    av_compatibility_residual,
    lie_action_residual,
    maurer_cartan_residual,
)
from latticewitt.poisson import polyv


def _random_point(rng):
    return (rng.randint(-3, 3), rng.randint(-3, 3))


class TestTensorFieldModule:
    """Tests for TensorFieldModule."""

    @pytest.mark.parametrize("n", [0, 1, 2, 3])
    def test_lie_action(self, demo, generic_beta, n):
        """Test the module relation on seeded random inputs."""
        module = TensorFieldModule(demo, generic_beta, n)
        rng = random.Random(n)
        for _ in range(5):
            lam, mu, k = _random_point(rng), _random_point(rng), _random_point(rng)
            v = module.fiber_basis(k)[rng.randrange(n + 1)]
            assert lie_action_residual(module, lam, mu, v).is_zero()

    @pytest.mark.parametrize("n", [0, 1, 2])
    def test_av_compatibility(self, demo, generic_beta, n):
        """Test the compatibility of the A- and W-actions."""
        module = TensorFieldModule(demo, generic_beta, n)
        rng = random.Random(10 + n)
        for _ in range(5):
            lam, mu, k = _random_point(rng), _random_point(rng), _random_point(rng)
            v = module.fiber_basis(k)[0]
            assert av_compatibility_residual(module, lam, mu, v).is_zero()

    def test_degree_zero_is_symbol_slice(self, demo, generic_beta):
        """Test that M^0 and S_Gamma have the same action matrices."""
        m0 = TensorFieldModule(demo, generic_beta, 0)
        sgamma = SymbolSliceModule(demo, generic_beta)
        for lam in box_points(2, 1):
            assert equal(m0.act_v_matrix(lam, (1, 2)), sgamma.act_v_matrix(lam, (1, 2)))

    def test_polynomial_fibers(self, m2):
        """Test acting on a fiber given as a polynomial."""
        u = polyv({(2, 0): 1, (0, 2): -1})
        coords = m2.coords(u)
        assert m2.from_coords(coords) == u
        image = m2.act_v((1, 0), ModuleVector.single((0, 0), coords))
        assert image.support() == [(1, 0)]

    def test_fiber_actions(self, m2):
        """Test that acting on a native fiber matches acting on a component."""
        u = polyv({(1, 1): 2, (0, 2): 1})
        single = ModuleVector.single((0, 1), m2.coords(u))
        image = m2.act_v((1, -1), single).component((1, 0), 3)
        assert tuple(m2.act_v_fiber((1, -1), (0, 1), u)) == image
        image = m2.act_a((2, 0), single).component((2, 1), 3)
        assert tuple(m2.act_a_fiber((2, 0), (0, 1), u)) == image

    def test_inhomogeneous_fiber_rejected(self, m2):
        """Test that a fiber of the wrong degree raises."""
        with pytest.raises(ValueError):
            m2.coords(polyv({(1, 0): 1}))

    def test_negative_degree(self, demo, generic_beta):
        """Test that a negative fiber degree raises."""
        with pytest.raises(DegenerateInputError):
            TensorFieldModule(demo, generic_beta, -1)

    def test_config(self, m2):
        """Test the config form."""
        config = m2.to_config()
        assert config.kind == "mn"
        assert config.n == 2
        assert config.beta == ["1/3", "1/7+2/5i"]


class TestMaurerCartan:
    """Tests for the cocycle identity."""

    def test_residual_vanishes(self, demo):
        """Test the Maurer-Cartan residual on a grid of lattice points."""
        for lam in box_points(2, 1):
            for mu in box_points(2, 1):
                assert maurer_cartan_residual(demo, lam, mu).is_zero()
