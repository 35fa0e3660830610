"""Multiplicity-one modules: coset slices of the symbol algebra and their relatives."""

import logging

from sympy.polys.matrices import DomainMatrix

from ..errors import DegenerateInputError
from ..lattice import LatticeEmbedding, LatticePoint, add_points, coset_contains, zero_point
from ..matrices import matrix, zeros
from ..models import ModuleConfig, ModuleKind
from ..scalars import RHO, CVec2, symplectic
from .base import AVModule, GradedModule

logger = logging.getLogger(__name__)


class SymbolSliceModule(AVModule):
    """S_Gamma: span of L_mu, mu in Gamma, with L_lambda acting by the Poisson bracket."""

    kind = "sgamma"

    def fiber_dim(self, k: LatticePoint) -> int:
        return 1

    def act_v_matrix(self, lam: LatticePoint, k: LatticePoint) -> DomainMatrix:
        coefficient = symplectic(self.embedding.embed(lam) + RHO, self.weight(k) + RHO)
        return matrix([[coefficient]], 1)

    def to_config(self) -> ModuleConfig:
        return ModuleConfig(kind=ModuleKind.SGAMMA, beta=list(self.coset.base.as_strings()))


class ReducedSliceModule(GradedModule):
    """The quotient of S_{-rho + Lambda} by the trivial line C L_{-rho}."""

    kind = "sgamma-reduced"

    def __init__(self, embedding: LatticeEmbedding, base: CVec2):
        super().__init__(embedding, base)
        contained, witness = coset_contains(self.coset, -RHO)
        if not contained:
            raise DegenerateInputError(f"Coset {self.coset} does not contain -rho")
        self.removed = witness
        self._slice = SymbolSliceModule(embedding, base)

    def fiber_dim(self, k: LatticePoint) -> int:
        return 0 if tuple(k) == self.removed else 1

    def act_v_matrix(self, lam: LatticePoint, k: LatticePoint) -> DomainMatrix:
        target = add_points(k, lam)
        if tuple(k) == self.removed or target == self.removed:
            return zeros(self.fiber_dim(target), self.fiber_dim(k))
        return self._slice.act_v_matrix(lam, k)

    def max_fiber_dim(self) -> int:
        return 1


class TrivialModule(GradedModule):
    """The one-dimensional trivial module, concentrated at weight zero."""

    kind = "trivial"

    def __init__(self, embedding: LatticeEmbedding):
        super().__init__(embedding, CVec2.of(0, 0))

    def fiber_dim(self, k: LatticePoint) -> int:
        return 1 if tuple(k) == zero_point(self.rank) else 0

    def act_v_matrix(self, lam: LatticePoint, k: LatticePoint) -> DomainMatrix:
        return zeros(self.fiber_dim(add_points(k, lam)), self.fiber_dim(k))

    def max_fiber_dim(self) -> int:
        return 1
