"""The D-operator calculus: P-tables, their relations and the classifier."""

from .classify import CONVENTION_OFFSET, Classification, classify, classify_table
from .operator import DOperator
from .ptable import PTable, extract_p_table, multi_indices, scalar_part
from .recover import RecoveredModule, recover_module
from .relations import (
    ResidualRow,
    p2s2_bracket,
    push_forward,
    relation_family,
    relation_rhs,
    structural_maps_check,
    verify_p_relations,
)

__all__ = [
    "CONVENTION_OFFSET",
    "Classification",
    "classify",
    "classify_table",
    "DOperator",
    "PTable",
    "extract_p_table",
    "multi_indices",
    "scalar_part",
    "RecoveredModule",
    "recover_module",
    "ResidualRow",
    "p2s2_bracket",
    "push_forward",
    "relation_family",
    "relation_rhs",
    "structural_maps_check",
    "verify_p_relations",
]
