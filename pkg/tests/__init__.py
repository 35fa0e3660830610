"""Tests for latticewitt."""
