"""Latticewitt - exact computer algebra for lattice Witt algebras and their modules."""

__version__ = "0.1.0"

from .errors import (
    ConfigError,
    DegenerateInputError,
    InconsistentParametersError,
    InterpolationMismatchError,
    LatticeWittError,
    ScalarParseError,
    UnknownSuiteError,
    WordLengthExceededError,
)
from .lattice import (
    Coset,
    LatticeEmbedding,
    check_conditions,
    coset_contains,
    coset_equal,
    demo_embedding,
)
from .models import (
    ClassificationReport,
    ConditionReport,
    CoverAuditReport,
    EmbeddingConfig,
    ModuleConfig,
    RunConfig,
    SuiteReport,
)
from .scalars import CVec2, RHO, RHO_DAGGER, format_scalar, parse_scalar, symplectic
from .storage.json_storage import ReportStorage
from .verification import VerificationEngine

__all__ = [
    "ConfigError",
    "DegenerateInputError",
    "InconsistentParametersError",
    "InterpolationMismatchError",
    "LatticeWittError",
    "ScalarParseError",
    "UnknownSuiteError",
    "WordLengthExceededError",
    "Coset",
    "LatticeEmbedding",
    "check_conditions",
    "coset_contains",
    "coset_equal",
    "demo_embedding",
    "ClassificationReport",
    "ConditionReport",
    "CoverAuditReport",
    "EmbeddingConfig",
    "ModuleConfig",
    "RunConfig",
    "SuiteReport",
    "CVec2",
    "RHO",
    "RHO_DAGGER",
    "format_scalar",
    "parse_scalar",
    "symplectic",
    "ReportStorage",
    "VerificationEngine",
]
