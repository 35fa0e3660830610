"""Base interface for graded modules over W_pi, probed through finite windows."""

import itertools
from abc import ABC, abstractmethod
from typing import Dict, Iterable, List, Optional, Sequence

from sympy.polys.matrices import DomainMatrix

from ..lattice import Coset, LatticeEmbedding, LatticePoint, add_points, zero_point
from ..matrices import apply, identity
from ..models import ModuleConfig
from ..scalars import CVec2, Scalar, ZERO, format_scalar, to_scalar


class Window:
    """Coordinate box lower <= k <= upper in Z^N."""

    def __init__(self, lower: Sequence[int], upper: Sequence[int]):
        if len(lower) != len(upper) or any(a > b for a, b in zip(lower, upper)):
            raise ValueError(f"Empty window {tuple(lower)}..{tuple(upper)}")
        self.lower = tuple(lower)
        self.upper = tuple(upper)

    @classmethod
    def centered(cls, rank: int, radius: int, center: Optional[LatticePoint] = None) -> "Window":
        center = center or zero_point(rank)
        return cls([c - radius for c in center], [c + radius for c in center])

    @property
    def rank(self) -> int:
        return len(self.lower)

    def contains(self, p: LatticePoint) -> bool:
        return all(a <= c <= b for a, c, b in zip(self.lower, p, self.upper))

    def points(self) -> List[LatticePoint]:
        ranges = [range(a, b + 1) for a, b in zip(self.lower, self.upper)]
        return list(itertools.product(*ranges))

    def grow(self, k: int = 1) -> "Window":
        return Window([a - k for a in self.lower], [b + k for b in self.upper])

    def interior(self, shifts: Iterable[LatticePoint]) -> List[LatticePoint]:
        """Points whose every shift stays inside the window."""
        shifts = list(shifts)
        return [p for p in self.points() if all(self.contains(add_points(p, s)) for s in shifts)]

    def __len__(self) -> int:
        size = 1
        for a, b in zip(self.lower, self.upper):
            size *= b - a + 1
        return size

    def __repr__(self) -> str:
        return f"Window({self.lower}..{self.upper})"


class ModuleVector:
    """Finitely supported map from lattice points to fiber coordinates."""

    __slots__ = ("components",)

    def __init__(self, components: Optional[Dict[LatticePoint, Sequence[Scalar]]] = None):
        self.components: Dict[LatticePoint, tuple] = {}
        for k, fiber in (components or {}).items():
            fiber = tuple(to_scalar(c) for c in fiber)
            if any(fiber):
                self.components[tuple(k)] = fiber

    @classmethod
    def single(cls, k: LatticePoint, fiber: Sequence[Scalar]) -> "ModuleVector":
        return cls({k: fiber})

    def component(self, k: LatticePoint, dim: int) -> tuple:
        return self.components.get(tuple(k), (ZERO,) * dim)

    def support(self) -> List[LatticePoint]:
        return sorted(self.components)

    def is_zero(self) -> bool:
        return not self.components

    def _combine(self, other: "ModuleVector", sign: int) -> "ModuleVector":
        components = dict(self.components)
        for k, fiber in other.components.items():
            if k in components:
                components[k] = tuple(a + b * sign for a, b in zip(components[k], fiber))
            else:
                components[k] = tuple(b * sign for b in fiber)
        return ModuleVector(components)

    def __add__(self, other: "ModuleVector") -> "ModuleVector":
        return self._combine(other, 1)

    def __sub__(self, other: "ModuleVector") -> "ModuleVector":
        return self._combine(other, -1)

    def __neg__(self) -> "ModuleVector":
        return self.scale(-1)

    def scale(self, c) -> "ModuleVector":
        c = to_scalar(c)
        return ModuleVector({k: tuple(a * c for a in f) for k, f in self.components.items()})

    def __eq__(self, other) -> bool:
        return isinstance(other, ModuleVector) and (self - other).is_zero()

    __hash__ = None

    def __repr__(self) -> str:
        parts = [
            f"{k}: [{', '.join(format_scalar(c) for c in self.components[k])}]"
            for k in self.support()
        ]
        return "{" + "; ".join(parts) + "}"


class GradedModule(ABC):
    """A W_pi-module graded by a coset Gamma = beta + pi(Z^N).

    Component k sits at weight beta + pi(k). Actions are given by matrices between
    finite-dimensional fibers, so every check reduces to exact linear algebra.
    """

    kind: str = "graded"
    is_av: bool = False

    def __init__(self, embedding: LatticeEmbedding, base: CVec2):
        self.embedding = embedding
        self.coset = Coset(base, embedding)

    @property
    def rank(self) -> int:
        return self.embedding.rank

    def weight(self, k: LatticePoint) -> CVec2:
        return self.coset.weight(k)

    @abstractmethod
    def fiber_dim(self, k: LatticePoint) -> int:
        """Dimension of the component at k."""
        pass

    @abstractmethod
    def act_v_matrix(self, lam: LatticePoint, k: LatticePoint) -> DomainMatrix:
        """Matrix of L_lambda from the component at k to the component at k + lambda."""
        pass

    def act_a_matrix(self, lam: LatticePoint, k: LatticePoint) -> DomainMatrix:
        """Matrix of multiplication by L_{lambda - rho}; AV modules only."""
        raise NotImplementedError(f"{self.kind} carries no A_pi-action")

    def max_fiber_dim(self) -> int:
        return self.fiber_dim(zero_point(self.rank))

    def fiber_basis(self, k: LatticePoint) -> List[ModuleVector]:
        dim = self.fiber_dim(k)
        return [
            ModuleVector.single(k, [1 if i == j else 0 for j in range(dim)]) for i in range(dim)
        ]

    def coords(self, fiber) -> List[Scalar]:
        """Coordinates of a native fiber element."""
        return [to_scalar(c) for c in fiber]

    def from_coords(self, coords: Sequence[Scalar]):
        return tuple(coords)

    def format_fiber(self, coords: Sequence[Scalar]) -> str:
        return ", ".join(format_scalar(c) for c in coords)

    def _act(self, matrix_of, lam: LatticePoint, v: ModuleVector) -> ModuleVector:
        result: Dict[LatticePoint, List[Scalar]] = {}
        for k, fiber in v.components.items():
            target = add_points(k, lam)
            image = apply(matrix_of(lam, k), fiber)
            if target in result:
                result[target] = [a + b for a, b in zip(result[target], image)]
            else:
                result[target] = image
        return ModuleVector(result)

    def act_v(self, lam: LatticePoint, v: ModuleVector) -> ModuleVector:
        return self._act(self.act_v_matrix, lam, v)

    def act_a(self, lam: LatticePoint, v: ModuleVector) -> ModuleVector:
        return self._act(self.act_a_matrix, lam, v)

    def act_v_fiber(self, lam: LatticePoint, k: LatticePoint, fiber) -> list:
        return apply(self.act_v_matrix(lam, k), self.coords(fiber))

    def act_a_fiber(self, lam: LatticePoint, k: LatticePoint, fiber) -> list:
        return apply(self.act_a_matrix(lam, k), self.coords(fiber))

    def to_config(self) -> Optional[ModuleConfig]:
        return None

    def __repr__(self) -> str:
        return f"{type(self).__name__}(beta={self.coset.base})"


class AVModule(GradedModule):
    """Module over both A_pi and W_pi with a constant fiber; L_{lambda-rho} acts by identity."""

    is_av = True

    def act_a_matrix(self, lam: LatticePoint, k: LatticePoint) -> DomainMatrix:
        return identity(self.fiber_dim(k))
