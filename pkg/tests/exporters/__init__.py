"""Tests for latticewitt.exporters."""
