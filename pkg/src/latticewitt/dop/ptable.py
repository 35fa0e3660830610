"""P_K tables: the coefficients of D(lambda) = sum_K lambda^K / K! P_K.

Extraction evaluates D on the grid {0..d}^N, takes tensor-product forward
differences (the Newton coefficients in the binomial basis) and converts them to
the monomial basis with signed Stirling numbers of the first kind.
"""

import itertools
import logging
import random
from math import factorial
from typing import Dict, Iterator, List, Optional

from sympy import binomial
from sympy.functions.combinatorial.numbers import stirling
from sympy.polys.matrices import DomainMatrix

from ..errors import InterpolationMismatchError
from ..lattice import LatticeEmbedding, LatticePoint
from ..matrices import equal, zeros
from ..models import DEFAULT_INTERPOLATION_DEGREE, DEFAULT_SEED, DEFAULT_TRIALS
from ..modules.base import GradedModule
from ..scalars import ZERO, Scalar, to_scalar
from .operator import DOperator

logger = logging.getLogger(__name__)

MultiIndex = LatticePoint

VALIDATION_RADIUS = 4


def multi_indices(rank_n: int, max_order: int) -> List[MultiIndex]:
    """All K in Z_+^N with |K| <= max_order, ordered by |K| then lexicographically."""
    indices = [
        k for k in itertools.product(range(max_order + 1), repeat=rank_n) if sum(k) <= max_order
    ]
    return sorted(indices, key=lambda k: (sum(k), tuple(-a for a in k)))


def multi_factorial(k: MultiIndex) -> int:
    result = 1
    for a in k:
        result *= factorial(a)
    return result


def monomial(lam: LatticePoint, k: MultiIndex) -> Scalar:
    """lambda^K / K!."""
    value = 1
    for a, e in zip(lam, k):
        value *= a ** e
    return to_scalar(value) / multi_factorial(k)


class PTable:
    """Finitely supported map K -> P_K of fiber endomorphisms."""

    def __init__(
        self,
        embedding: LatticeEmbedding,
        entries: Dict[MultiIndex, DomainMatrix],
        degree: int,
        dim: int,
    ):
        self.embedding = embedding
        self.degree = degree
        self.dim = dim
        self.entries: Dict[MultiIndex, DomainMatrix] = {
            tuple(k): m for k, m in entries.items() if not m.is_zero_matrix
        }

    @property
    def rank(self) -> int:
        return self.embedding.rank

    def entry(self, k: MultiIndex) -> DomainMatrix:
        if any(a < 0 for a in k):
            return zeros(self.dim, self.dim)
        found = self.entries.get(tuple(k))
        return found if found is not None else zeros(self.dim, self.dim)

    def support(self) -> List[MultiIndex]:
        return sorted(self.entries, key=lambda k: (sum(k), tuple(-a for a in k)))

    @property
    def max_order(self) -> int:
        return max((sum(k) for k in self.entries), default=0)

    def evaluate(self, lam: LatticePoint) -> DomainMatrix:
        """D(lambda) rebuilt from the table."""
        result = zeros(self.dim, self.dim)
        for k, m in self.entries.items():
            c = monomial(lam, k)
            if c:
                result = result + m * c
        return result

    def perturbed(self, k: MultiIndex, delta: DomainMatrix) -> "PTable":
        """Copy of the table with ``delta`` added to P_K."""
        entries = dict(self.entries)
        entries[tuple(k)] = self.entry(k) + delta
        return PTable(self.embedding, entries, self.degree, self.dim)

    def __repr__(self) -> str:
        return f"PTable(dim={self.dim}, support={self.support()})"


def _forward_difference(values: Dict[MultiIndex, DomainMatrix], j: MultiIndex, dim: int):
    result = zeros(dim, dim)
    for i in itertools.product(*[range(a + 1) for a in j]):
        weight = 1
        for a, b in zip(j, i):
            weight *= int(binomial(a, b))
        if (sum(j) - sum(i)) % 2:
            weight = -weight
        result = result + values[i] * to_scalar(weight)
    return result


def _stirling_weight(j: MultiIndex, k: MultiIndex) -> Scalar:
    """Coefficient of lambda^K in prod_i binomial(lambda_i, J_i)."""
    numerator = 1
    for a, b in zip(j, k):
        if b > a:
            return ZERO
        numerator *= int(stirling(a, b, kind=1, signed=True))
    return to_scalar(numerator) / multi_factorial(j)


def _grid(rank_n: int, degree: int) -> Iterator[MultiIndex]:
    return itertools.product(range(degree + 1), repeat=rank_n)


def _validation_points(rank_n: int, degree: int, count: int, seed: int) -> List[LatticePoint]:
    rng = random.Random(seed)
    points = []
    while len(points) < count:
        p = tuple(rng.randint(-VALIDATION_RADIUS, VALIDATION_RADIUS) for _ in range(rank_n))
        if all(0 <= a <= degree for a in p):
            continue
        points.append(p)
    return points


def extract_p_table(
    module: GradedModule,
    k0: Optional[LatticePoint] = None,
    degree: int = DEFAULT_INTERPOLATION_DEGREE,
    validation_points: int = DEFAULT_TRIALS,
    seed: int = DEFAULT_SEED,
) -> PTable:
    """Interpolate D(lambda) on the component at ``k0`` and validate off the grid.

    Args:
        module: AV-module whose D-operators are interpolated
        k0: Component to work on (the origin by default)
        degree: Per-coordinate grid size d; the grid is {0..d}^N
        validation_points: Number of seeded out-of-grid checks
        seed: Seed of the validation sample

    Returns:
        The extracted PTable

    Raises:
        InterpolationMismatchError: If the interpolant disagrees with D off the grid
    """
    if degree < 2:
        raise ValueError(f"Interpolation degree must be at least 2, got {degree}")
    k0 = tuple(k0) if k0 is not None else module.embedding.zero()
    operator = DOperator(module, k0)
    dim = operator.dim
    rank_n = module.rank

    grid = list(_grid(rank_n, degree))
    values = {j: operator.d_matrix(j) for j in grid}
    differences = {j: _forward_difference(values, j, dim) for j in grid}

    entries: Dict[MultiIndex, DomainMatrix] = {}
    for k in grid:
        coefficient = zeros(dim, dim)
        for j, delta in differences.items():
            if delta.is_zero_matrix:
                continue
            weight = _stirling_weight(j, k)
            if weight:
                coefficient = coefficient + delta * weight
        entries[k] = coefficient * to_scalar(multi_factorial(k))

    table = PTable(module.embedding, entries, degree, dim)
    logger.debug(f"Extracted {table} from {module} at {k0}")

    for p in _validation_points(rank_n, degree, validation_points, seed):
        if not equal(table.evaluate(p), operator.d_matrix(p)):
            raise InterpolationMismatchError(
                f"Degree-{degree} interpolant of D disagrees with {module} at lambda={p}"
            )
    logger.info(
        f"P-table of {module}: support {table.support()}, validated at {validation_points} points"
    )
    return table


def scalar_part(m: DomainMatrix) -> Scalar:
    """Trace divided by the dimension."""
    n = m.shape[0]
    total = ZERO
    for i in range(n):
        total += m[i, i].element
    return total / n if n else ZERO
