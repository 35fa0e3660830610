"""The operators D(lambda) = L^A_{-lambda-rho} o L^V_lambda on one homogeneous component."""

import logging
from typing import Dict

from sympy.polys.matrices import DomainMatrix

from ..errors import DegenerateInputError
from ..lattice import LatticePoint, add_points, neg_point
from ..matrices import commutator
from ..modules.base import GradedModule

logger = logging.getLogger(__name__)


class DOperator:
    """D(lambda) restricted to the component at ``k0`` of an AV-module.

    L_lambda carries the component at k0 to k0 + lambda, and multiplication by
    L_{-lambda-rho} brings it back, so every D(lambda) is an endomorphism of the
    fiber at k0.
    """

    def __init__(self, module: GradedModule, k0: LatticePoint):
        if not module.is_av:
            raise DegenerateInputError(f"{module} carries no A_pi-action")
        self.module = module
        self.k0 = tuple(k0)
        self._cache: Dict[LatticePoint, DomainMatrix] = {}

    @property
    def dim(self) -> int:
        return self.module.fiber_dim(self.k0)

    def d_matrix(self, lam: LatticePoint) -> DomainMatrix:
        lam = tuple(lam)
        cached = self._cache.get(lam)
        if cached is None:
            target = add_points(self.k0, lam)
            back = self.module.act_a_matrix(neg_point(lam), target)
            cached = back * self.module.act_v_matrix(lam, self.k0)
            self._cache[lam] = cached
        return cached

    def dd_residual(self, lam: LatticePoint, mu: LatticePoint) -> DomainMatrix:
        """[D(l), D(m)] - <l+rho, m+rho> D(l+m) + <l, m+rho> D(l) + <l+rho, m> D(m)."""
        e = self.module.embedding
        pair = e.pair(lam, mu)
        return (
            commutator(self.d_matrix(lam), self.d_matrix(mu))
            - self.d_matrix(add_points(lam, mu)) * e.bracket_coefficient(lam, mu)
            + self.d_matrix(lam) * (pair - e.rho_pair(lam))
            + self.d_matrix(mu) * (pair + e.rho_pair(mu))
        )

    def __repr__(self) -> str:
        return f"DOperator({self.module!r}, k0={self.k0})"
