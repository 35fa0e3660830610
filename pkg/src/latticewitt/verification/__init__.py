"""Randomized identity suites with deterministic seeds."""

from .engine import VerificationEngine, random_beta, random_point, vanishes

__all__ = ["VerificationEngine", "random_beta", "random_point", "vanishes"]
