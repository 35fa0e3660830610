"""Data models for configs and reports."""

from enum import Enum
from typing import Any, Dict, List, Optional

from pydantic import BaseModel, Field

DEFAULT_TRIALS = 20
DEFAULT_SEED = 7
DEFAULT_WINDOW_RADIUS = 2
DEFAULT_ANNIHILATOR_ORDER = 5
DEFAULT_MAX_WORD_LENGTH = 6
DEFAULT_INTERPOLATION_DEGREE = 2


class ConditionStatus(str, Enum):
    """Outcome of an admissibility condition."""
    HOLDS = "holds"
    FAILS = "fails"
    VERIFIED_UP_TO_RADIUS = "verified-up-to-radius"
    INFORMATIONAL = "informational"


class ModuleKind(str, Enum):
    """Module families that can be built from a config file."""
    SGAMMA = "sgamma"
    MN = "mn"


class ClassificationCase(str, Enum):
    """The cases of the cuspidal classification."""
    SGAMMA_IRREDUCIBLE = "SGammaIrreducible"
    MBAR = "MBar"
    MBAR_DUAL = "MBarDual"
    MN = "Mn"


class EmbeddingConfig(BaseModel):
    """On-disk form of a lattice embedding."""
    rank: int = Field(..., ge=2, description="Lattice rank N")
    images: List[List[str]] = Field(
        ..., description="Images pi(e_1), ..., pi(e_N) as pairs of scalar literals"
    )


class ModuleConfig(BaseModel):
    """On-disk form of a graded module."""
    kind: ModuleKind
    n: Optional[int] = Field(None, ge=0, description="Fiber degree for kind 'mn'")
    beta: List[str] = Field(..., min_length=2, max_length=2, description="Coset base point")

    class Config:
        use_enum_values = True


class EnvelopingConfig(BaseModel):
    """Bounds for enveloping-algebra rewriting."""
    max_word_length: int = Field(DEFAULT_MAX_WORD_LENGTH, ge=1)


class RunConfig(BaseModel):
    """Parameters of one CLI run; the seed determines every randomized sweep."""
    embedding_path: Optional[str] = None
    suite: Optional[str] = None
    trials: int = Field(DEFAULT_TRIALS, ge=1)
    seed: int = DEFAULT_SEED
    radius: int = Field(DEFAULT_WINDOW_RADIUS, ge=1, description="Window radius")
    order: Optional[int] = Field(None, ge=0, description="Differentiator order override")
    out: Optional[str] = None


class ConditionResult(BaseModel):
    """One entry of a condition report."""
    condition: str
    status: ConditionStatus
    witness: Optional[Dict[str, Any]] = None
    radius: Optional[int] = None
    detail: Optional[str] = None

    class Config:
        use_enum_values = True


class ConditionReport(BaseModel):
    """Admissibility conditions of an embedding."""
    embedding: EmbeddingConfig
    results: List[ConditionResult] = Field(default_factory=list)

    @property
    def passed(self) -> bool:
        """False iff some non-informational condition fails outright."""
        return all(r.status != ConditionStatus.FAILS.value for r in self.results)

    def get(self, condition: str) -> Optional[ConditionResult]:
        for result in self.results:
            if result.condition == condition:
                return result
        return None


class TrialResult(BaseModel):
    """Residual of one trial of a verification suite."""
    trial: int
    passed: bool
    parameters: Dict[str, Any] = Field(default_factory=dict)
    residual: Optional[str] = Field(None, description="Rendered nonzero residual, if any")
    location: Optional[str] = Field(None, description="Where the residual was found")


class SuiteReport(BaseModel):
    """Outcome of a verification suite."""
    suite: str
    seed: int
    trials: int
    passed: bool = True
    results: List[TrialResult] = Field(default_factory=list)
    notes: Dict[str, Any] = Field(default_factory=dict)

    @property
    def failures(self) -> List[TrialResult]:
        return [r for r in self.results if not r.passed]


class ClassificationReport(BaseModel):
    """Classification of a cuspidal module."""
    case: ClassificationCase
    n: int
    K0: str
    K1: str
    convention_offset: str
    gamma_base: List[str]
    irreducible: bool = True
    condition_flags: Dict[str, str] = Field(default_factory=dict)

    class Config:
        use_enum_values = True


class CoverAuditRow(BaseModel):
    """Windowed cover rank at one degree."""
    gamma: List[int]
    rank: int
    bound: int
    stabilized: bool
    windows: List[int] = Field(..., description="Probe radii compared for stabilization")


class CoverAuditReport(BaseModel):
    """Boundedness audit of the cover against d * n^N."""
    module: str = Field(..., description="Module description")
    fiber_dim: int
    order: int
    bound: int
    within_bound: bool
    rows: List[CoverAuditRow] = Field(default_factory=list)
    annihilator_order: Optional[int] = Field(
        None, description="Smallest observed order of a vanishing differentiator"
    )


class M1SequenceReport(BaseModel):
    """Window check of 0 -> S_{Gamma+rho/2} -> M^1(Gamma) -> S_{Gamma-rho/2} -> 0."""
    gamma_base: List[str]
    window_radius: int
    embed_ok: bool
    quotient_ok: bool
    splits: bool
    composition_zero: bool
    perturbed: bool = False
