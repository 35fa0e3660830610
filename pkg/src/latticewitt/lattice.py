"""Lattice embeddings pi: Z^N -> C^2, admissibility conditions and cosets."""

import itertools
import logging
from typing import Iterator, List, Optional, Sequence, Tuple

from sympy.polys.domains import QQ

from .errors import DegenerateInputError
from .matrices import rank, solve_integer
from .models import ConditionReport, ConditionResult, ConditionStatus, EmbeddingConfig
from .scalars import CVec2, RHO, ZERO, format_scalar, symplectic

logger = logging.getLogger(__name__)

LatticePoint = Tuple[int, ...]

DEFAULT_CONDITION_RADIUS = 8


def add_points(p: LatticePoint, q: LatticePoint) -> LatticePoint:
    return tuple(a + b for a, b in zip(p, q))


def sub_points(p: LatticePoint, q: LatticePoint) -> LatticePoint:
    return tuple(a - b for a, b in zip(p, q))


def neg_point(p: LatticePoint) -> LatticePoint:
    return tuple(-a for a in p)


def scale_point(c: int, p: LatticePoint) -> LatticePoint:
    return tuple(c * a for a in p)


def unit_point(rank_n: int, i: int) -> LatticePoint:
    return tuple(1 if j == i else 0 for j in range(rank_n))


def zero_point(rank_n: int) -> LatticePoint:
    return (0,) * rank_n


def point_key(p: LatticePoint) -> tuple:
    """Search order on lattice points: max-norm, then l1-norm, positive before negative."""
    return (
        max((abs(c) for c in p), default=0),
        sum(abs(c) for c in p),
        tuple((abs(c), c < 0) for c in p),
    )


def box_points(rank_n: int, radius: int) -> List[LatticePoint]:
    """All points with max-norm at most ``radius``, in :func:`point_key` order."""
    points = itertools.product(range(-radius, radius + 1), repeat=rank_n)
    return sorted(points, key=point_key)


class LatticeEmbedding:
    """The data of pi: Z^N -> C^2 with cached symplectic pairings.

    Injectivity is not enforced at construction; :func:`check_conditions`
    reports it together with the other admissibility conditions.
    """

    def __init__(self, images: Sequence[CVec2]):
        if len(images) < 2:
            raise DegenerateInputError(f"Lattice rank must be at least 2, got {len(images)}")
        self.images: Tuple[CVec2, ...] = tuple(images)
        self.rank = len(self.images)
        self.pairings = tuple(
            tuple(symplectic(u, v) for v in self.images) for u in self.images
        )
        self.rho_pairings = tuple(symplectic(RHO, u) for u in self.images)

    @classmethod
    def from_config(cls, config: EmbeddingConfig) -> "LatticeEmbedding":
        if len(config.images) != config.rank:
            raise DegenerateInputError(
                f"Config declares rank {config.rank} but lists {len(config.images)} images"
            )
        return cls([CVec2.parse(pair) for pair in config.images])

    def to_config(self) -> EmbeddingConfig:
        return EmbeddingConfig(
            rank=self.rank, images=[list(image.as_strings()) for image in self.images]
        )

    def embed(self, p: LatticePoint) -> CVec2:
        x, y = ZERO, ZERO
        for coefficient, image in zip(p, self.images):
            if coefficient:
                x += image.x * coefficient
                y += image.y * coefficient
        return CVec2(x, y)

    def pair(self, p: LatticePoint, q: LatticePoint):
        """<pi(p), pi(q)> from the cached pairings."""
        total = ZERO
        for i, a in enumerate(p):
            if not a:
                continue
            row = self.pairings[i]
            for j, b in enumerate(q):
                if b:
                    total += row[j] * (a * b)
        return total

    def rho_pair(self, p: LatticePoint):
        """<rho, pi(p)> from the cached pairings."""
        total = ZERO
        for a, r in zip(p, self.rho_pairings):
            if a:
                total += r * a
        return total

    def bracket_coefficient(self, p: LatticePoint, q: LatticePoint):
        """<pi(p)+rho, pi(q)+rho>, the structure constant of W_pi."""
        return self.pair(p, q) - self.rho_pair(p) + self.rho_pair(q)

    def zero(self) -> LatticePoint:
        return zero_point(self.rank)

    def unit(self, i: int) -> LatticePoint:
        return unit_point(self.rank, i)

    def __eq__(self, other) -> bool:
        return isinstance(other, LatticeEmbedding) and self.images == other.images

    def __hash__(self) -> int:
        return hash(self.images)

    def __repr__(self) -> str:
        return f"LatticeEmbedding({', '.join(str(image) for image in self.images)})"


def demo_embedding() -> LatticeEmbedding:
    """The shipped fixture: pi(e1) = (0,1), pi(e2) = (-3,-3+i)."""
    return LatticeEmbedding([CVec2.of(0, 1), CVec2.of(-3, "-3+i")])


def embed(e: LatticeEmbedding, p: LatticePoint) -> CVec2:
    return e.embed(p)


def _real_rows(e: LatticeEmbedding) -> List[list]:
    columns = [(image.x.x, image.x.y, image.y.x, image.y.y) for image in e.images]
    return [[column[r] for column in columns] for r in range(4)]


def lattice_coordinates(e: LatticeEmbedding, v: CVec2) -> Optional[LatticePoint]:
    """Integer coordinates of ``v`` in the image lattice, or None if v is not in pi(Z^N).

    For a non-injective embedding the coordinates are not unique and one
    witness is returned.
    """
    solution = solve_integer(_real_rows(e), [v.x.x, v.x.y, v.y.x, v.y.y])
    return None if solution is None else tuple(solution)


def is_injective(e: LatticeEmbedding) -> bool:
    return rank(_real_rows(e), e.rank, QQ) == e.rank


class Coset:
    """The coset base + pi(Z^N); equality is decided by membership."""

    def __init__(self, base: CVec2, embedding: LatticeEmbedding):
        self.base = base
        self.embedding = embedding

    def weight(self, k: LatticePoint) -> CVec2:
        return self.base + self.embedding.embed(k)

    def contains(self, v: CVec2) -> Tuple[bool, Optional[LatticePoint]]:
        return coset_contains(self, v)

    def __eq__(self, other) -> bool:
        return isinstance(other, Coset) and coset_equal(self, other)

    __hash__ = None

    def __repr__(self) -> str:
        return f"Coset({self.base} + pi(Z^{self.embedding.rank}))"


def coset_contains(g: Coset, v: CVec2) -> Tuple[bool, Optional[LatticePoint]]:
    """Decide v in g and return a coordinate witness k with v = base + pi(k)."""
    witness = lattice_coordinates(g.embedding, v - g.base)
    return witness is not None, witness


def coset_equal(g: Coset, h: Coset) -> bool:
    """Same embedding and base points differing by a lattice vector."""
    if g.embedding != h.embedding:
        return False
    return coset_contains(g, h.base)[0]


def _affine_zero_witness(
    e: LatticeEmbedding, beta: LatticePoint, radius: int
) -> Optional[LatticePoint]:
    """Smallest alpha in the box with <pi(alpha) + 2 rho, pi(beta)> = 0, if any."""
    weights = [e.pair(e.unit(i), beta) for i in range(e.rank)]
    constant = e.rho_pair(beta) * 2
    nonzero = [i for i, w in enumerate(weights) if w]
    if not nonzero:
        return e.zero() if not constant else None

    pivot = nonzero[-1]
    free = [i for i in range(e.rank) if i != pivot]
    candidates = []
    for values in itertools.product(range(-radius, radius + 1), repeat=len(free)):
        partial = constant
        for i, a in zip(free, values):
            if a:
                partial += weights[i] * a
        solved = -partial / weights[pivot]
        if solved.y or QQ.denom(solved.x) != 1:
            continue
        a_pivot = int(QQ.numer(solved.x))
        if abs(a_pivot) > radius:
            continue
        alpha = [0] * e.rank
        alpha[pivot] = a_pivot
        for i, a in zip(free, values):
            alpha[i] = a
        candidates.append(tuple(alpha))
    return min(candidates, key=point_key) if candidates else None


def _iter_condition_c(
    e: LatticeEmbedding, betas: Iterator[LatticePoint], radius: int
) -> Optional[Tuple[LatticePoint, LatticePoint]]:
    for beta in betas:
        alpha = _affine_zero_witness(e, beta, radius)
        if alpha is not None:
            return alpha, beta
    return None


def check_conditions(
    e: LatticeEmbedding, radius: int = DEFAULT_CONDITION_RADIUS
) -> ConditionReport:
    """Check injectivity, conditions i)-iii) exactly and condition (C) on a box.

    Args:
        e: The lattice embedding
        radius: Max-norm bound for the (C) search box

    Returns:
        ConditionReport with one entry per condition plus the informational
        weaker form of (C)
    """
    if radius < 1:
        raise DegenerateInputError(f"Condition radius must be positive, got {radius}")
    results: List[ConditionResult] = []

    if is_injective(e):
        results.append(ConditionResult(condition="injective", status=ConditionStatus.HOLDS))
    else:
        results.append(
            ConditionResult(
                condition="injective",
                status=ConditionStatus.FAILS,
                detail="the real coordinate map has a nontrivial kernel",
            )
        )

    if any(e.rho_pairings):
        results.append(ConditionResult(condition="i", status=ConditionStatus.HOLDS))
    else:
        results.append(
            ConditionResult(
                condition="i",
                status=ConditionStatus.FAILS,
                witness={"rho_pairings": [format_scalar(r) for r in e.rho_pairings]},
                detail="every image lies on the complex line C rho",
            )
        )

    two_rho = lattice_coordinates(e, RHO * 2)
    if two_rho is None:
        results.append(ConditionResult(condition="ii", status=ConditionStatus.HOLDS))
    else:
        results.append(
            ConditionResult(
                condition="ii",
                status=ConditionStatus.FAILS,
                witness={"a": list(two_rho)},
                detail="2 rho lies in the image lattice",
            )
        )

    spans_plane = any(
        e.pairings[i][j] for i in range(e.rank) for j in range(i + 1, e.rank)
    )
    if spans_plane:
        results.append(ConditionResult(condition="iii", status=ConditionStatus.HOLDS))
    else:
        results.append(
            ConditionResult(
                condition="iii",
                status=ConditionStatus.FAILS,
                detail="the image lies in a complex line",
            )
        )

    betas = (p for p in box_points(e.rank, radius) if any(p))
    witness = _iter_condition_c(e, betas, radius)
    if witness is None:
        results.append(
            ConditionResult(
                condition="C", status=ConditionStatus.VERIFIED_UP_TO_RADIUS, radius=radius
            )
        )
    else:
        alpha, beta = witness
        logger.info(f"Condition (C) fails at alpha={alpha}, beta={beta}")
        results.append(
            ConditionResult(
                condition="C",
                status=ConditionStatus.FAILS,
                witness={"alpha": list(alpha), "beta": list(beta)},
                radius=radius,
            )
        )

    weak = _iter_condition_c(e, (e.unit(k) for k in range(e.rank)), radius)
    results.append(
        ConditionResult(
            condition="C-weak",
            status=ConditionStatus.INFORMATIONAL,
            witness=None if weak is None else {"alpha": list(weak[0]), "beta": list(weak[1])},
            radius=radius,
            detail="no zero found" if weak is None else "zero found on a basis vector",
        )
    )

    report = ConditionReport(embedding=e.to_config(), results=results)
    logger.info(f"Condition check at radius {radius}: passed={report.passed}")
    return report


