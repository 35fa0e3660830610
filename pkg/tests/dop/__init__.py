"""Tests for latticewitt.dop."""
