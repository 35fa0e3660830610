"""Tests for latticewitt.modules."""
