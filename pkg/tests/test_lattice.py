"""Tests for lattice embeddings, cosets and the admissibility conditions."""

import pytest

from latticewitt.errors import DegenerateInputError
from latticewitt.lattice import (
    Coset,
    LatticeEmbedding,
    box_points,
    check_conditions,
    coset_contains,
    coset_equal,
    embed,
    is_injective,
    lattice_coordinates,
)
from latticewitt.models import ConditionStatus, EmbeddingConfig
from latticewitt.scalars import RHO, CVec2, gauss, symplectic


class TestLatticeEmbedding:
    """Tests for LatticeEmbedding."""

    def test_embed_examples(self, demo):
        """Test embedding of a few lattice points."""
        assert embed(demo, (0, 0)) == CVec2.of(0, 0)
        assert embed(demo, (1, 0)) == CVec2.of(0, 1)
        assert embed(demo, (1, 1)) == CVec2.of(-3, "-2+i")

    def test_cached_pairings(self, demo):
        """Test the pairings of the generators."""
        assert demo.pairings[0][1] == gauss(3, 0)
        assert demo.pairings[1][0] == gauss(-3, 0)
        assert demo.rho_pairings == (gauss(1, 0), gauss(0, 1))

    def test_bracket_coefficient(self, demo):
        """Test <pi(p)+rho, pi(q)+rho> against the cached form."""
        for p in box_points(2, 1):
            for q in box_points(2, 1):
                expected = (embed(demo, p) + RHO, embed(demo, q) + RHO)
                assert demo.bracket_coefficient(p, q) == symplectic(*expected)

    def test_rank_one_rejected(self):
        """Test that rank-1 lattices are rejected."""
        with pytest.raises(DegenerateInputError):
            LatticeEmbedding([CVec2.of(1, 0)])

    def test_config_roundtrip(self, demo):
        """Test conversion to and from the config form."""
        config = demo.to_config()
        assert config.images == [["0", "1"], ["-3", "-3+i"]]
        assert LatticeEmbedding.from_config(config).images == demo.images

    def test_config_rank_mismatch(self):
        """Test that a rank mismatch in a config raises."""
        config = EmbeddingConfig(rank=3, images=[["0", "1"], ["1", "0"]])
        with pytest.raises(DegenerateInputError):
            LatticeEmbedding.from_config(config)


class TestBoxPoints:
    """Tests for the search order on lattice points."""

    def test_order(self):
        """Test max-norm, then l1-norm, positive before negative."""
        points = box_points(2, 1)
        assert points[0] == (0, 0)
        assert points[1:5] == [(0, 1), (0, -1), (1, 0), (-1, 0)]
        assert len(points) == 9


class TestCosets:
    """Tests for coset membership."""

    def test_zero_coset_contains_origin(self, demo):
        """Test 0 + Lambda contains 0 with witness (0,0)."""
        assert coset_contains(Coset(CVec2.of(0, 0), demo), CVec2.of(0, 0)) == (True, (0, 0))

    def test_minus_rho_coset(self, minus_rho_coset):
        """Test -rho + Lambda contains -rho with witness (0,0)."""
        assert coset_contains(minus_rho_coset, -RHO) == (True, (0, 0))

    def test_not_contained(self, demo):
        """Test 0 + Lambda does not contain (2,2)."""
        contained, witness = coset_contains(Coset(CVec2.of(0, 0), demo), CVec2.of(2, 2))
        assert not contained
        assert witness is None

    def test_witness_recovers_point(self, generic_coset, demo):
        """Test that the witness k satisfies v = base + pi(k)."""
        v = generic_coset.weight((2, -1))
        assert coset_contains(generic_coset, v) == (True, (2, -1))

    def test_equality_by_membership(self, demo, generic_beta):
        """Test cosets with different bases in the same class are equal."""
        shifted = Coset(generic_beta + embed(demo, (3, 1)), demo)
        assert shifted == Coset(generic_beta, demo)
        assert Coset(generic_beta, demo) != Coset(generic_beta + RHO, demo)

    def test_coset_equal(self, demo, failing_embedding, generic_beta):
        """Test lattice shifts of the base and a change of embedding."""
        shifted = Coset(generic_beta - embed(demo, (0, 2)), demo)
        assert coset_equal(Coset(generic_beta, demo), shifted)
        assert not coset_equal(Coset(generic_beta, demo), Coset(generic_beta, failing_embedding))

    def test_lattice_coordinates(self, demo):
        """Test the exact solve of v = pi(k)."""
        assert lattice_coordinates(demo, CVec2.of(-3, "-2+i")) == (1, 1)
        assert lattice_coordinates(demo, CVec2.of("1/2", 0)) is None

    @pytest.mark.parametrize(
        "v,expected",
        [
            (CVec2.of(1, 1), True),
            (CVec2.of(-3, -3), True),
            (CVec2.of("1/2", "1/2"), False),
            (CVec2.of(1, 2), False),
        ],
    )
    def test_collinear_membership(self, v, expected):
        """Test membership in the image of a non-injective embedding."""
        e = LatticeEmbedding([CVec2.of(1, 1), CVec2.of(2, 2)])
        contained, witness = coset_contains(Coset(CVec2.of(0, 0), e), v)
        assert contained is expected
        if expected:
            assert embed(e, witness) == v
        else:
            assert witness is None

    def test_non_injective_finer_lattice(self):
        """Test a vector with rational but no integer coordinates."""
        e = LatticeEmbedding([CVec2.of(1, 0), CVec2.of(0, 1), CVec2.of("1/2", "1/2")])
        v = CVec2.of("3/2", "1/2")
        witness = lattice_coordinates(e, v)
        assert embed(e, witness) == v
        assert lattice_coordinates(e, CVec2.of("1/2", 0)) is None


class TestCheckConditions:
    """Tests for check_conditions."""

    def test_demo_passes(self, demo):
        """Test that the demo lattice passes every condition at radius 6."""
        report = check_conditions(demo, 6)
        assert report.passed
        for name in ("injective", "i", "ii", "iii"):
            assert report.get(name).status == ConditionStatus.HOLDS.value
        assert report.get("C").status == ConditionStatus.VERIFIED_UP_TO_RADIUS.value
        assert report.get("C").radius == 6

    def test_condition_c_witness(self, failing_embedding):
        """Test the (C) failure and its smallest witness."""
        report = check_conditions(failing_embedding, 3)
        result = report.get("C")
        assert result.status == ConditionStatus.FAILS.value
        assert result.witness == {"alpha": [-2, 0], "beta": [0, 1]}
        assert not report.passed

    def test_weak_condition_is_informational(self, demo):
        """Test that the weaker form of (C) never fails the report."""
        assert check_conditions(demo, 2).get("C-weak").status == "informational"

    def test_collinear_embedding(self):
        """Test an embedding on the line C rho fails i), ii) and injectivity."""
        e = LatticeEmbedding([CVec2.of(1, 1), CVec2.of(2, 2)])
        report = check_conditions(e, 2)
        assert report.get("i").status == ConditionStatus.FAILS.value
        assert report.get("injective").status == ConditionStatus.FAILS.value
        assert not is_injective(e)
        result = report.get("ii")
        assert result.status == ConditionStatus.FAILS.value
        assert embed(e, tuple(result.witness["a"])) == RHO * 2

    def test_two_rho_in_image(self):
        """Test condition ii) fails with a witness when 2 rho is a lattice vector."""
        e = LatticeEmbedding([CVec2.of(2, 2), CVec2.of(0, 1), CVec2.of(0, "i")])
        result = check_conditions(e, 1).get("ii")
        assert result.status == ConditionStatus.FAILS.value
        assert result.witness == {"a": [1, 0, 0]}

    def test_bad_radius(self, demo):
        """Test that a non-positive radius raises."""
        with pytest.raises(DegenerateInputError):
            check_conditions(demo, 0)
