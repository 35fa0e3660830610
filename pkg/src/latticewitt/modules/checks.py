"""Action identities on graded modules."""

import logging
from dataclasses import dataclass
from typing import Iterable, Optional, Tuple

from ..enveloping import DifferentiatorSpec, UElement, differentiator_terms
from ..lattice import LatticeEmbedding, LatticePoint, add_points, zero_point
from ..poisson import SymbolTensor, cocycle, symbol
from .base import GradedModule, ModuleVector

logger = logging.getLogger(__name__)


def av_compatibility_residual(
    module: GradedModule, lam: LatticePoint, mu: LatticePoint, v: ModuleVector
) -> ModuleVector:
    """L_lambda (a v) - {L_lambda, a} v - a (L_lambda v) for a = L_{mu - rho}."""
    e = module.embedding
    # {L_lambda, L_{mu-rho}} = <lambda+rho, mu> L_{lambda+mu-rho}
    weight = e.pair(lam, mu) + e.rho_pair(mu)
    left = module.act_v(lam, module.act_a(mu, v))
    middle = module.act_a(add_points(lam, mu), v).scale(weight)
    right = module.act_a(mu, module.act_v(lam, v))
    return left - middle - right


def lie_action_residual(
    module: GradedModule, lam: LatticePoint, mu: LatticePoint, v: ModuleVector
) -> ModuleVector:
    """[L_lambda, L_mu] v - <lambda+rho, mu+rho> L_{lambda+mu} v."""
    commutator = module.act_v(lam, module.act_v(mu, v)) - module.act_v(mu, module.act_v(lam, v))
    weight = module.embedding.bracket_coefficient(lam, mu)
    return commutator - module.act_v(add_points(lam, mu), v).scale(weight)


def maurer_cartan_residual(
    e: LatticeEmbedding, lam: LatticePoint, mu: LatticePoint
) -> SymbolTensor:
    """c([X,Y]) - X.c(Y) + Y.c(X) - [c(X), c(Y)] in A (x) S^2 V for X = L_lambda, Y = L_mu."""
    x, y = e.embed(lam), e.embed(mu)
    bracket = cocycle(e.embed(add_points(lam, mu))).scale(e.bracket_coefficient(lam, mu))
    c_x, c_y = cocycle(x), cocycle(y)
    return (
        bracket
        - c_y.acted_on_by(symbol(x))
        + c_x.acted_on_by(symbol(y))
        - c_x.bracket(c_y)
    )


def act_u(module: GradedModule, element: UElement, v: ModuleVector) -> ModuleVector:
    """Action of an enveloping-algebra element; each word acts right to left."""
    result = ModuleVector()
    for word, c in element.terms.items():
        image = v
        for letter in reversed(word):
            image = module.act_v(letter, image)
            if image.is_zero():
                break
        result = result + image.scale(c)
    return result


def omega_action(
    module: GradedModule, delta: LatticePoint, xi: LatticePoint, p: int, v: ModuleVector
) -> ModuleVector:
    """Differentiator of order p with alpha = delta, beta = 0 applied to v."""
    spec = DifferentiatorSpec(tuple(delta), zero_point(module.rank), tuple(xi), p)
    result = ModuleVector()
    for c, left, right in differentiator_terms(spec):
        image = module.act_v(left, module.act_v(right, v))
        result = result + image.scale(c)
    return result


@dataclass
class OmegaWitness:
    """A component vector on which a differentiator does not vanish."""

    delta: LatticePoint
    xi: LatticePoint
    order: int
    component: LatticePoint
    basis_index: int
    image: ModuleVector


def find_omega_witness(
    module: GradedModule,
    order: int,
    pairs: Iterable[Tuple[LatticePoint, LatticePoint]],
    probes: Iterable[LatticePoint],
) -> Optional[OmegaWitness]:
    """First (delta, xi, probe) whose differentiator image is nonzero, in iteration order."""
    probes = list(probes)
    for delta, xi in pairs:
        for k in probes:
            for index, basis_vector in enumerate(module.fiber_basis(k)):
                image = omega_action(module, delta, xi, order, basis_vector)
                if not image.is_zero():
                    logger.debug(f"Order {order} differentiator survives at delta={delta}, xi={xi}")
                    return OmegaWitness(tuple(delta), tuple(xi), order, tuple(k), index, image)
    return None
