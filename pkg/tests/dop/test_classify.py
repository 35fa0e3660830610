"""Tests for classification from P-tables."""

import pytest

from latticewitt.dop import CONVENTION_OFFSET, classify, classify_table, extract_p_table
from latticewitt.errors import InconsistentParametersError
from latticewitt.lattice import Coset
from latticewitt.matrices import identity, matrix
from latticewitt.models import ClassificationCase
from latticewitt.modules import SymbolSliceModule, TensorFieldModule
from latticewitt.scalars import ONE, RHO, CVec2, symplectic


class TestClassify:
    """Tests for classify."""

    @pytest.mark.parametrize("n", [1, 2, 3])
    def test_tensor_fields(self, demo, generic_beta, n):
        """Test that M^n is recognized with its degree and base point."""
        result = classify(TensorFieldModule(demo, generic_beta, n))
        assert result.case == ClassificationCase.MN
        assert result.n == n
        assert result.gamma_base == generic_beta
        assert result.K0 == symplectic(RHO, generic_beta)
        assert result.irreducible == (n != 1)

    def test_generic_symbol_slice(self, sgamma, generic_beta):
        """Test that S_Gamma on a generic coset is irreducible."""
        result = classify(sgamma)
        assert result.case == ClassificationCase.SGAMMA_IRREDUCIBLE
        assert result.n == 0
        assert result.gamma_base == generic_beta
        assert result.condition_flags == {
            "minus_rho_in_coset": "no",
            "minus_two_rho_in_coset": "no",
        }

    def test_minus_rho_coset(self, demo):
        """Test the case of a coset through -rho."""
        result = classify(SymbolSliceModule(demo, -RHO + demo.images[0]))
        assert result.case == ClassificationCase.MBAR
        assert result.condition_flags["minus_rho_in_coset"] == "yes"

    def test_minus_two_rho_coset(self, demo):
        """Test the case of a coset through -2 rho."""
        result = classify(SymbolSliceModule(demo, RHO * -2))
        assert result.case == ClassificationCase.MBAR_DUAL

    def test_nonzero_component(self, m2, generic_beta, demo):
        """Test that classifying at k0 recovers the weight of that component."""
        result = classify(m2, k0=(1, -1))
        assert result.gamma_base == generic_beta + demo.embed((1, -1))
        assert result.n == 2

    def test_key(self, m1, m2):
        """Test that key separates modules of different degree."""
        assert classify(m1).key() != classify(m2).key()
        assert classify(m1).key() == classify(m1).key()

    def test_report(self, m2):
        """Test the report form."""
        report = classify(m2).to_report()
        assert report.case == "Mn"
        assert report.n == 2
        assert report.gamma_base == ["1/3", "1/7+2/5i"]
        assert report.convention_offset == "1"


class TestClassifyTable:
    """Tests for classify_table."""

    def test_offset(self, m2, generic_beta):
        """Test that K1 carries the convention offset."""
        result = classify_table(extract_p_table(m2), m2.coset)
        assert CONVENTION_OFFSET == ONE
        assert result.convention_offset == ONE
        assert RHO * (result.K1 - ONE) + CVec2.of(0, 1) * result.K0 == generic_beta

    def test_wrong_coset(self, demo, m2, generic_beta):
        """Test that a coset not containing the recovered base raises."""
        wrong = Coset(generic_beta + CVec2.of("1/2", 0), demo)
        with pytest.raises(InconsistentParametersError):
            classify_table(extract_p_table(m2), wrong)

    def test_non_scalar_p0(self, m1):
        """Test that a non-scalar P_0 raises."""
        table = extract_p_table(m1).perturbed((0, 0), matrix([[0, 1], [0, 0]]))
        with pytest.raises(InconsistentParametersError, match="P_0 is not a scalar"):
            classify_table(table, m1.coset)

    def test_cubic_term(self, m1):
        """Test that a nonzero P_K with |K| = 3 raises."""
        table = extract_p_table(m1).perturbed((3, 0), identity(2))
        with pytest.raises(InconsistentParametersError, match=r"\|K\| >= 3"):
            classify_table(table, m1.coset)

    def test_perturbed_quadratic_term(self, m1):
        """Test that a P_{(1,1)} other than ad(pi(e_1) pi(e_2)) raises."""
        table = extract_p_table(m1).perturbed((1, 1), identity(2))
        with pytest.raises(InconsistentParametersError, match="differs"):
            classify_table(table, m1.coset)
