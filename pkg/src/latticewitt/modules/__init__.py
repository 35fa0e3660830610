"""Graded W_pi-modules and the identities they satisfy."""

from ..errors import ConfigError
from ..lattice import LatticeEmbedding
from ..models import ModuleConfig, ModuleKind
from ..scalars import CVec2
from .base import AVModule, GradedModule, ModuleVector, Window
from .checks import (
    OmegaWitness,
    act_u,
    av_compatibility_residual,
    find_omega_witness,
    lie_action_residual,
    maurer_cartan_residual,
    omega_action,
)
from .slices import ReducedSliceModule, SymbolSliceModule, TrivialModule
from .structure import (
    WindowSpan,
    dual_pairing_invariance,
    m1_sequence_check,
    restricted_dual_pairing,
    submodule_window_span,
    tensor_action_residual,
    tensor_parameters,
)
from .tensor_fields import TensorFieldModule


def build_module(config: ModuleConfig, embedding: LatticeEmbedding) -> AVModule:
    """Instantiate the module described by ``config`` over ``embedding``.

    Raises:
        ConfigError: If a tensor-field module has no fiber degree
    """
    base = CVec2.parse(config.beta)
    if config.kind == ModuleKind.SGAMMA.value:
        return SymbolSliceModule(embedding, base)
    if config.n is None:
        raise ConfigError("Module kind 'mn' requires the fiber degree n")
    return TensorFieldModule(embedding, base, config.n)


__all__ = [
    "AVModule",
    "GradedModule",
    "ModuleVector",
    "Window",
    "SymbolSliceModule",
    "ReducedSliceModule",
    "TrivialModule",
    "TensorFieldModule",
    "build_module",
    "OmegaWitness",
    "act_u",
    "av_compatibility_residual",
    "find_omega_witness",
    "lie_action_residual",
    "maurer_cartan_residual",
    "omega_action",
    "WindowSpan",
    "dual_pairing_invariance",
    "m1_sequence_check",
    "restricted_dual_pairing",
    "submodule_window_span",
    "tensor_action_residual",
    "tensor_parameters",
]
