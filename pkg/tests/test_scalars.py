"""Tests for exact scalars and the symplectic plane."""

import random

import pytest

from latticewitt.errors import ScalarParseError
from latticewitt.scalars import (
    ONE,
    RHO,
    RHO_DAGGER,
    ZERO,
    CVec2,
    format_scalar,
    gauss,
    inv,
    parse_scalar,
    symplectic,
)


def _random_scalar(rng):
    return gauss(
        f"{rng.randint(-9, 9)}/{rng.randint(1, 9)}", f"{rng.randint(-9, 9)}/{rng.randint(1, 9)}"
    )


def _random_vector(rng):
    return CVec2(_random_scalar(rng), _random_scalar(rng))


class TestParseScalar:
    """Tests for the scalar literal grammar."""

    @pytest.mark.parametrize(
        "text,expected",
        [
            ("3", gauss(3, 0)),
            ("-1/2", gauss("-1/2", 0)),
            ("2+i", gauss(2, 1)),
            ("-3+i", gauss(-3, 1)),
            ("i", gauss(0, 1)),
            ("-i", gauss(0, -1)),
            ("-3/4i", gauss(0, "-3/4")),
            (" 1/2 - 3i ", gauss("1/2", -3)),
            ("4/6", gauss("2/3", 0)),
        ],
    )
    def test_parse(self, text, expected):
        """Test literals in the grammar parse to the right value."""
        assert parse_scalar(text) == expected

    @pytest.mark.parametrize("text", ["", "abc", "1/0", "1/2/3", "2i3", "1.5", "i+2"])
    def test_malformed_literal(self, text):
        """Test that malformed literals raise ScalarParseError."""
        with pytest.raises(ScalarParseError):
            parse_scalar(text)

    def test_format_canonical(self):
        """Test formatting in lowest terms."""
        assert format_scalar(gauss("3/2", "-1/2")) == "3/2-1/2i"
        assert format_scalar(gauss(0, 1)) == "i"
        assert format_scalar(gauss(-3, 1)) == "-3+i"
        assert format_scalar(gauss("-6/4", 0)) == "-3/2"
        assert format_scalar(ZERO) == "0"

    def test_format_parses_back(self):
        """Test that formatted scalars are valid literals of the same value."""
        rng = random.Random(7)
        for _ in range(20):
            a = _random_scalar(rng)
            assert parse_scalar(format_scalar(a)) == a


class TestFieldOperations:
    """Tests for exact field arithmetic."""

    def test_examples(self):
        """Test the worked examples."""
        assert gauss(1, 1) * gauss(1, -1) == gauss(2, 0)
        assert inv(gauss(0, 1)) == gauss(0, -1)
        assert gauss(2, 1) / gauss(1, 1) == gauss("3/2", "-1/2")

    def test_division_by_zero(self):
        """Test that inverting zero raises."""
        with pytest.raises(ZeroDivisionError):
            inv(ZERO)

    def test_field_axioms(self):
        """Test distributivity and inverses on seeded random inputs."""
        rng = random.Random(11)
        for _ in range(20):
            a, b, c = _random_scalar(rng), _random_scalar(rng), _random_scalar(rng)
            assert a * (b + c) == a * b + a * c
            assert (a + b) - b == a
            if a:
                assert a * inv(a) == ONE


class TestSymplectic:
    """Tests for the symplectic form <u, v> = u.x v.y - u.y v.x."""

    def test_examples(self):
        """Test the worked examples."""
        assert symplectic(RHO, RHO) == ZERO
        assert symplectic(RHO, RHO_DAGGER) == ONE
        assert symplectic(CVec2.of(1, 2), CVec2.of(-2, "-2+i")) == gauss(2, 1)

    def test_antisymmetric_and_bilinear(self):
        """Test antisymmetry and linearity in the first slot."""
        rng = random.Random(3)
        for _ in range(20):
            u, v, w = _random_vector(rng), _random_vector(rng), _random_vector(rng)
            c = _random_scalar(rng)
            assert symplectic(u, v) == -symplectic(v, u)
            assert symplectic(u * c + w, v) == symplectic(u, v) * c + symplectic(w, v)


class TestCVec2:
    """Tests for the CVec2 value type."""

    def test_parse_pair(self):
        """Test building a vector from a config pair."""
        assert CVec2.parse(["-3", "-3+i"]) == CVec2.of(-3, "-3+i")

    def test_parse_wrong_length(self):
        """Test that a pair of the wrong length raises."""
        with pytest.raises(ScalarParseError):
            CVec2.parse(["1"])

    def test_arithmetic(self):
        """Test vector-space operations."""
        assert RHO - RHO_DAGGER == CVec2.of(1, 0)
        assert -RHO * 2 == CVec2.of(-2, -2)
        assert (RHO + RHO).as_strings() == ("2", "2")
        assert CVec2.of(0, 0).is_zero()

    def test_hashable(self):
        """Test that vectors can key dictionaries."""
        assert {RHO: 1}[CVec2.of(1, 1)] == 1
