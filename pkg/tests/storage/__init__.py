"""Tests for latticewitt.storage."""
