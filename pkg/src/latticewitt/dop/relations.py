"""Commutation relations among the P_K and the structural maps of the P-algebra.

Expanding [D(lambda), D(mu)] against the commutation identity of D and comparing the
coefficients of lambda^K mu^S / (K! S!) gives one relation per pair (K, S):

    [P_K, P_S] = sum_{i,j} K_i S_j <e_i, e_j> P_{K+S-e_i-e_j}
               + sum_i (S_i - K_i) <rho, e_i> P_{K+S-e_i}
               + boundary terms when |K| <= 1 or |S| <= 1.
"""

import logging
import random
from dataclasses import dataclass
from typing import Any, List, Optional

from sympy.polys.matrices import DomainMatrix

from ..lattice import LatticeEmbedding, LatticePoint, add_points, sub_points, unit_point
from ..matrices import commutator, zeros
from ..models import DEFAULT_SEED
from ..poisson import PoissonPolynomial, lattice_poisson_ring, linear_form, vector_product
from ..scalars import HALF, RHO, symplectic
from .ptable import MultiIndex, PTable, multi_indices

logger = logging.getLogger(__name__)


@dataclass
class ResidualRow:
    """Residual of one relation instance, with the indices it was evaluated at."""

    relation: str
    left: tuple
    right: tuple
    residual: Any

    @property
    def vanishes(self) -> bool:
        value = self.residual
        if isinstance(value, DomainMatrix):
            return value.is_zero_matrix
        return value.is_zero()


def relation_family(k: MultiIndex, s: MultiIndex) -> str:
    """Name of the relation family the pair (K, S) belongs to."""
    small = sorted((sum(k), sum(s)))
    if small[0] == 0:
        return "centrality"
    if small == [1, 1]:
        return "linear"
    if small[0] == 1:
        return "mixed"
    return "higher"


def _boundary(table: PTable, k: MultiIndex, s: MultiIndex) -> DomainMatrix:
    """Terms of the commutation identity contributed by D(lambda) and D(mu) alone."""
    e = table.embedding
    rank_n = table.rank
    result = zeros(table.dim, table.dim)
    units = [unit_point(rank_n, i) for i in range(rank_n)]
    if sum(s) == 1:
        j = s.index(1)
        for i, unit in enumerate(units):
            if k[i]:
                weight = e.pairings[i][j] * k[i]
                result = result - table.entry(sub_points(k, unit)) * weight
    if sum(s) == 0:
        for i, unit in enumerate(units):
            if k[i]:
                weight = -e.rho_pairings[i] * k[i]
                result = result - table.entry(sub_points(k, unit)) * weight
    if sum(k) == 1:
        i = k.index(1)
        for j, unit in enumerate(units):
            if s[j]:
                weight = e.pairings[i][j] * s[j]
                result = result - table.entry(sub_points(s, unit)) * weight
    if sum(k) == 0:
        for j, unit in enumerate(units):
            if s[j]:
                weight = e.rho_pairings[j] * s[j]
                result = result - table.entry(sub_points(s, unit)) * weight
    return result


def relation_rhs(table: PTable, k: MultiIndex, s: MultiIndex) -> DomainMatrix:
    """Right-hand side of the commutation relation for [P_K, P_S]."""
    e = table.embedding
    rank_n = table.rank
    total = add_points(k, s)
    units = [unit_point(rank_n, i) for i in range(rank_n)]
    result = zeros(table.dim, table.dim)
    for i, u in enumerate(units):
        if not k[i]:
            continue
        for j, v in enumerate(units):
            if s[j] and e.pairings[i][j]:
                index = sub_points(sub_points(total, u), v)
                result = result + table.entry(index) * (e.pairings[i][j] * (k[i] * s[j]))
    for i, u in enumerate(units):
        weight = s[i] - k[i]
        if weight and e.rho_pairings[i]:
            result = result + table.entry(sub_points(total, u)) * (e.rho_pairings[i] * weight)
    return result + _boundary(table, k, s)


def verify_p_relations(table: PTable, max_order: Optional[int] = None) -> List[ResidualRow]:
    """Evaluate every commutation relation on index pairs up to ``max_order``.

    Args:
        table: The table under test
        max_order: Largest |K| and |S| considered; defaults to one past the support

    Returns:
        One ResidualRow per pair (K, S), in index order
    """
    if max_order is None:
        max_order = table.max_order + 1
    indices = multi_indices(table.rank, max_order)
    rows = []
    for k in indices:
        for s in indices:
            residual = commutator(table.entry(k), table.entry(s)) - relation_rhs(table, k, s)
            rows.append(ResidualRow(relation_family(k, s), k, s, residual))
    failing = [row for row in rows if not row.vanishes]
    logger.info(f"P relations: {len(rows)} pairs checked, {len(failing)} nonzero")
    for row in failing:
        logger.debug(f"Nonzero {row.relation} residual at K={row.left}, S={row.right}")
    return rows


def _s2_ring(e: LatticeEmbedding) -> PoissonPolynomial:
    """Zero of S(C^N) with the bracket {e_i, e_j} = <pi(e_i), pi(e_j)>."""
    return lattice_poisson_ring(e.pairings)


def _monomial(ring: PoissonPolynomial, k: MultiIndex) -> PoissonPolynomial:
    return PoissonPolynomial({tuple(k): 1}, ring.form)


def push_forward(e: LatticeEmbedding, p: PoissonPolynomial) -> PoissonPolynomial:
    """pi_*: S(C^N) -> S(V), e_i -> pi(e_i)."""
    return p.substitute([linear_form(image) for image in e.images])


def _random_quadratic(ring: PoissonPolynomial, rng: random.Random) -> PoissonPolynomial:
    result = ring.zero()
    for k in multi_indices(ring.nvars, 2):
        if sum(k) == 2:
            result = result + _monomial(ring, k) * rng.randint(-3, 3)
    return result


def _tau_rows(e: LatticeEmbedding) -> List[ResidualRow]:
    rows = []
    for i in range(e.rank):
        for j in range(e.rank):
            a, b = e.images[i], e.images[j]
            residual = a * symplectic(RHO, b) - b * symplectic(RHO, a) - RHO * symplectic(a, b)
            rows.append(ResidualRow("tau", (i,), (j,), residual))
    return rows


def _eta_rows(e: LatticeEmbedding) -> List[ResidualRow]:
    """eta: P_K -> e^K on |K| = 2, against the degree-two part of the commutation relation."""
    ring = _s2_ring(e)
    quadratic = [k for k in multi_indices(e.rank, 2) if sum(k) == 2]
    units = [unit_point(e.rank, i) for i in range(e.rank)]
    rows = []
    for k in quadratic:
        for s in quadratic:
            image = ring.zero()
            total = add_points(k, s)
            for i, u in enumerate(units):
                for j, v in enumerate(units):
                    if k[i] and s[j]:
                        index = sub_points(sub_points(total, u), v)
                        image = image + _monomial(ring, index) * (e.pairings[i][j] * k[i] * s[j])
            residual = image - _monomial(ring, k).bracket(_monomial(ring, s))
            rows.append(ResidualRow("eta", k, s, residual))
    return rows


def _push_forward_rows(e: LatticeEmbedding, rng: random.Random, samples: int) -> List[ResidualRow]:
    ring = _s2_ring(e)
    rows = []
    for trial in range(samples):
        p, q = _random_quadratic(ring, rng), _random_quadratic(ring, rng)
        residual = push_forward(e, p.bracket(q)) - push_forward(e, p).bracket(push_forward(e, q))
        rows.append(ResidualRow("pi_*", (trial,), (trial,), residual))
    return rows


def p2s2_bracket(e: LatticeEmbedding, i: int, lam: LatticePoint, mu: LatticePoint):
    """The bracket [P_{e_i}, lambda mu] pushed into S^2 V.

    It equals -<rho, e_i> lambda mu + <rho, lambda> e_i mu + <rho, mu> e_i lambda.
    """
    x, y, a = e.embed(lam), e.embed(mu), e.images[i]
    return (
        vector_product(x, y) * -symplectic(RHO, a)
        + vector_product(a, y) * symplectic(RHO, x)
        + vector_product(a, x) * symplectic(RHO, y)
    )


def _phi_rows(e: LatticeEmbedding, points: List[LatticePoint]) -> List[ResidualRow]:
    rows = []
    for i in range(e.rank):
        phi_image = vector_product(e.images[i], RHO) * HALF
        for lam in points:
            for mu in points:
                residual = phi_image.bracket(vector_product(e.embed(lam), e.embed(mu)))
                residual = residual - p2s2_bracket(e, i, lam, mu)
                rows.append(ResidualRow("phi", (i,), (lam, mu), residual))
    return rows


def structural_maps_check(
    e: LatticeEmbedding, samples: int = 3, seed: int = DEFAULT_SEED
) -> List[ResidualRow]:
    """Homomorphism residuals of tau, eta, pi_* and phi over the embedding.

    Returns:
        Rows for every map; all residuals vanish on an admissible embedding
    """
    rng = random.Random(seed)
    units = [unit_point(e.rank, i) for i in range(e.rank)]
    rows = _tau_rows(e) + _eta_rows(e) + _push_forward_rows(e, rng, samples) + _phi_rows(e, units)
    failing = [row for row in rows if not row.vanishes]
    logger.info(f"Structural maps: {len(rows)} residuals, {len(failing)} nonzero")
    return rows
