"""Rebuilding an AV-module from its P-table.

    L_lambda (L_mu (x) u) = <lambda + rho, mu + rho> L_{lambda+mu} (x) u
                            + L_{lambda+mu} (x) D(lambda) u

with fibers identified through the A_pi-action.
"""

import logging
from typing import Dict

from sympy.polys.matrices import DomainMatrix

from ..lattice import Coset, LatticePoint
from ..matrices import identity
from ..modules.base import AVModule
from ..scalars import RHO, CVec2, symplectic
from .ptable import PTable

logger = logging.getLogger(__name__)


class RecoveredModule(AVModule):
    """AV-module whose actions are read off a P-table; k = 0 is the table's component."""

    kind = "recovered"

    def __init__(self, table: PTable, base: CVec2):
        super().__init__(table.embedding, base)
        self.table = table
        self._d_cache: Dict[LatticePoint, DomainMatrix] = {}

    def fiber_dim(self, k: LatticePoint) -> int:
        return self.table.dim

    def d_matrix(self, lam: LatticePoint) -> DomainMatrix:
        lam = tuple(lam)
        if lam not in self._d_cache:
            self._d_cache[lam] = self.table.evaluate(lam)
        return self._d_cache[lam]

    def act_v_matrix(self, lam: LatticePoint, k: LatticePoint) -> DomainMatrix:
        shift = symplectic(self.embedding.embed(lam) + RHO, self.embedding.embed(k))
        return self.d_matrix(lam) + identity(self.table.dim) * shift


def recover_module(table: PTable, coset: Coset) -> RecoveredModule:
    """Module with P-table ``table`` whose origin component has weight ``coset.base``."""
    logger.debug(f"Recovering a module of fiber dimension {table.dim} on {coset}")
    return RecoveredModule(table, coset.base)
