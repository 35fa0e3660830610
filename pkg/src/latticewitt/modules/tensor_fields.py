"""The modules M^n(Gamma) with fiber S^n V built from the Maurer-Cartan cocycle.

    L_lambda (L_mu (x) u) = <lambda+rho, mu+rho> L_{lambda+mu} (x) u
                            + 1/2 L_{lambda+mu} (x) {lambda(lambda+rho), u}
"""

import logging
import threading
from typing import Dict, List, Sequence

from sympy.polys.matrices import DomainMatrix

from ..errors import DegenerateInputError
from ..lattice import LatticeEmbedding, LatticePoint
from ..matrices import identity
from ..models import ModuleConfig, ModuleKind
from ..poisson import PoissonPolynomial, ad_matrix, poly_coords, poly_from_coords, vector_product
from ..scalars import HALF, RHO, CVec2, Scalar, symplectic
from .base import AVModule

logger = logging.getLogger(__name__)


class TensorFieldModule(AVModule):
    """M^n(Gamma); the component at mu is stored against L_mu."""

    kind = "mn"

    def __init__(self, embedding: LatticeEmbedding, base: CVec2, n: int):
        if n < 0:
            raise DegenerateInputError(f"Fiber degree must be nonnegative, got {n}")
        super().__init__(embedding, base)
        self.n = n
        self._ad_cache: Dict[LatticePoint, DomainMatrix] = {}
        self._lock = threading.Lock()

    def fiber_dim(self, k: LatticePoint) -> int:
        return self.n + 1

    def cocycle_ad(self, lam: LatticePoint) -> DomainMatrix:
        """Matrix of u -> {1/2 lambda(lambda+rho), u} on S^n V, cached per lambda."""
        lam = tuple(lam)
        cached = self._ad_cache.get(lam)
        if cached is None:
            point = self.embedding.embed(lam)
            cached = ad_matrix(vector_product(point, point + RHO) * HALF, self.n)
            with self._lock:
                self._ad_cache[lam] = cached
        return cached

    def act_v_matrix(self, lam: LatticePoint, k: LatticePoint) -> DomainMatrix:
        scalar = symplectic(self.embedding.embed(lam) + RHO, self.weight(k) + RHO)
        return identity(self.n + 1) * scalar + self.cocycle_ad(lam)

    def coords(self, fiber) -> List[Scalar]:
        if isinstance(fiber, PoissonPolynomial):
            if not fiber.is_homogeneous(self.n):
                raise ValueError(f"Fiber {fiber} is not homogeneous of degree {self.n}")
            return poly_coords(fiber, self.n)
        return super().coords(fiber)

    def from_coords(self, coords: Sequence[Scalar]) -> PoissonPolynomial:
        return poly_from_coords(coords, self.n)

    def format_fiber(self, coords: Sequence[Scalar]) -> str:
        return self.from_coords(coords).format()

    def to_config(self) -> ModuleConfig:
        return ModuleConfig(
            kind=ModuleKind.MN, n=self.n, beta=list(self.coset.base.as_strings())
        )

    def __repr__(self) -> str:
        return f"TensorFieldModule(n={self.n}, beta={self.coset.base})"
