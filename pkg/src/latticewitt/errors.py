"""Exception hierarchy for latticewitt."""


class LatticeWittError(Exception):
    """Base exception for latticewitt errors."""
    pass


class ScalarParseError(LatticeWittError):
    """Raised when a scalar or vector literal does not match the grammar."""
    pass


class DegenerateInputError(LatticeWittError):
    """Raised when an input makes a formula divide by zero (degenerate pair, xi or L_0)."""
    pass


class WordLengthExceededError(LatticeWittError):
    """Raised when a word in U(W) is longer than the configured bound."""
    pass


class InterpolationMismatchError(LatticeWittError):
    """Raised when the interpolated D(lambda) disagrees with D(lambda) off the grid."""
    pass


class InconsistentParametersError(LatticeWittError):
    """Raised when a P-table does not have the shape required for classification."""
    pass


class ConfigError(LatticeWittError):
    """Raised when a config file is missing or invalid."""
    pass


class UnknownSuiteError(LatticeWittError):
    """Raised when a verification suite name is not registered."""
    pass
