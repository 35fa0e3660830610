"""Tests for latticewitt.verification."""
