"""Submodules, pairings and parameters of graded modules, witnessed on windows."""

import logging
from collections import deque
from dataclasses import dataclass, field
from typing import Dict, List, Sequence, Tuple

from ..errors import DegenerateInputError
from ..lattice import LatticeEmbedding, LatticePoint, add_points, box_points, sub_points
from ..matrices import apply, in_span, is_consistent, row_space_basis
from ..models import M1SequenceReport
from ..poisson import linear_form, poly_coords
from ..scalars import HALF, ONE, RHO, ZERO, CVec2, Scalar, symplectic, to_scalar
from .base import GradedModule, ModuleVector, Window
from .slices import SymbolSliceModule
from .tensor_fields import TensorFieldModule

logger = logging.getLogger(__name__)

THREE_HALVES_RHO = RHO * to_scalar("3/2")
THREE_RHO = RHO * 3


@dataclass
class WindowSpan:
    """Per-component basis of the invariant span generated inside a window."""

    bases: Dict[LatticePoint, List[list]] = field(default_factory=dict)
    graded_by_l0: bool = True

    def dim(self, k: LatticePoint) -> int:
        return len(self.bases.get(tuple(k), []))

    @property
    def total(self) -> int:
        return sum(len(b) for b in self.bases.values())

    def contains(self, k: LatticePoint, fiber: Sequence[Scalar]) -> bool:
        basis = self.bases.get(tuple(k), [])
        if not any(fiber):
            return True
        return bool(basis) and in_span(basis, list(fiber))


def submodule_window_span(module: GradedModule, seed: ModuleVector, w: Window) -> WindowSpan:
    """Closure of ``seed`` under all L_lambda with source and target in ``w``.

    The closure is computed per component. L_0 acts on the component at k by
    <rho, weight(k)>, and ``graded_by_l0`` records whether these values are
    distinct on the window.
    """
    points = w.points()
    eigenvalues = [symplectic(RHO, module.weight(k)) for k in points]
    span = WindowSpan(
        bases={k: [] for k in points}, graded_by_l0=len(set(eigenvalues)) == len(points)
    )
    if not span.graded_by_l0:
        logger.warning(f"L_0 does not separate the components of {w}")

    queue = deque()

    def add(k: LatticePoint, fiber: List[Scalar]) -> None:
        if not any(fiber) or span.contains(k, fiber):
            return
        dim = module.fiber_dim(k)
        span.bases[k] = row_space_basis(span.bases[k] + [list(fiber)], dim)
        queue.append((k, fiber))

    for k, fiber in seed.components.items():
        if not w.contains(k):
            raise ValueError(f"Seed component {k} lies outside {w}")
        add(k, list(fiber))

    while queue:
        k, fiber = queue.popleft()
        for target in points:
            image = apply(module.act_v_matrix(sub_points(target, k), k), fiber)
            add(target, image)

    logger.debug(f"Window span of {module}: total dimension {span.total}")
    return span


def restricted_dual_pairing(a: CVec2, b: CVec2) -> Scalar:
    """<L_a, L_b> = 1 when a + b = -3 rho, else 0."""
    return ONE if a + b == -THREE_RHO else ZERO


def dual_pairing_invariance(
    e: LatticeEmbedding, beta: CVec2, lam: LatticePoint, mu: LatticePoint, nu: LatticePoint
) -> Scalar:
    """<L_lambda a, b> + <a, L_lambda b> for a in S_{beta+Lambda}, b in S_{-beta-3rho+Lambda}."""
    a = beta + e.embed(mu)
    b = -beta - THREE_RHO + e.embed(nu)
    x = e.embed(lam)
    left = symplectic(x + RHO, a + RHO) * restricted_dual_pairing(a + x, b)
    right = symplectic(x + RHO, b + RHO) * restricted_dual_pairing(a, b + x)
    return left + right


def _embedding_vector(module: TensorFieldModule, k: LatticePoint, shift: CVec2) -> list:
    return poly_coords(linear_form(module.weight(k) + shift), 1)


def _quotient_row(module: TensorFieldModule, k: LatticePoint) -> list:
    # v -> <weight + 3/2 rho, v> on the basis x, y
    p = module.weight(k) + THREE_HALVES_RHO
    return [-p.y, p.x]


def _dot(row: Sequence[Scalar], column: Sequence[Scalar]) -> Scalar:
    total = ZERO
    for a, b in zip(row, column):
        total += a * b
    return total


def m1_sequence_check(
    e: LatticeEmbedding, beta: CVec2, w: Window, perturbed: bool = False
) -> M1SequenceReport:
    """Check the short exact sequence around M^1(beta + Lambda) on a window.

    The embedding sends L_{nu + rho/2} to L_nu (x) (nu + 3/2 rho) and the quotient
    sends L_nu (x) v to <nu + 3/2 rho, v> L_{nu - rho/2}. With ``perturbed`` the
    embedding uses nu + rho instead.

    Returns:
        M1SequenceReport with both intertwining flags, the composition flag and
        whether an equivariant section exists on the window
    """
    module = TensorFieldModule(e, beta, 1)
    upper = SymbolSliceModule(e, beta + RHO * HALF)
    lower = SymbolSliceModule(e, beta - RHO * HALF)
    shift = RHO if perturbed else THREE_HALVES_RHO
    points = w.points()

    embed_ok = quotient_ok = composition_zero = True
    for k in points:
        embedded = _embedding_vector(module, k, shift)
        row = _quotient_row(module, k)
        if _dot(row, embedded):
            composition_zero = False
        for target in points:
            lam = sub_points(target, k)
            action = module.act_v_matrix(lam, k)
            image = apply(action, embedded)
            upper_coefficient = apply(upper.act_v_matrix(lam, k), [ONE])[0]
            expected = [c * upper_coefficient for c in _embedding_vector(module, target, shift)]
            if image != expected:
                embed_ok = False
            lower_coefficient = apply(lower.act_v_matrix(lam, k), [ONE])[0]
            target_row = _quotient_row(module, target)
            for basis in ([ONE, ZERO], [ZERO, ONE]):
                if _dot(target_row, apply(action, basis)) != lower_coefficient * _dot(row, basis):
                    quotient_ok = False

    splits = _section_exists(module, lower, w)
    report = M1SequenceReport(
        gamma_base=list(beta.as_strings()),
        window_radius=(w.upper[0] - w.lower[0]) // 2,
        embed_ok=embed_ok,
        quotient_ok=quotient_ok,
        splits=splits,
        composition_zero=composition_zero,
        perturbed=perturbed,
    )
    logger.info(f"M^1 sequence on {w}: {report.model_dump()}")
    return report


def _section_exists(module: TensorFieldModule, lower: SymbolSliceModule, w: Window) -> bool:
    """Decide whether s_k with <weight + 3/2 rho, s_k> = 1 is equivariant on the window.

    Equivariance is imposed for the shifts of max-norm one, which generate the
    algebra; the system is consistent iff its rank equals the augmented rank.
    """
    points = w.points()
    index = {k: 2 * i for i, k in enumerate(points)}
    ncols = 2 * len(points)
    shifts = [p for p in box_points(module.rank, 1) if any(p)]
    rows: List[list] = []
    rhs: List[Scalar] = []

    for k in points:
        for lam in shifts:
            target = add_points(k, lam)
            if not w.contains(target):
                continue
            action = module.act_v_matrix(lam, k).to_list()
            coefficient = apply(lower.act_v_matrix(lam, k), [ONE])[0]
            for r in range(2):
                row = [ZERO] * ncols
                row[index[k]] = action[r][0]
                row[index[k] + 1] = action[r][1]
                row[index[target] + r] -= coefficient
                rows.append(row)
                rhs.append(ZERO)
        normalization = [ZERO] * ncols
        q = _quotient_row(module, k)
        normalization[index[k]] = q[0]
        normalization[index[k] + 1] = q[1]
        rows.append(normalization)
        rhs.append(ONE)

    return is_consistent(rows, rhs)


def tensor_parameters(
    e: LatticeEmbedding, mu: CVec2, xi: LatticePoint, n: int
) -> Tuple[Scalar, Scalar]:
    """Witt tensor-module parameters of M^n along the line through xi.

    alpha = <rho, mu>/<rho, xi> and beta = n/2 + <xi, mu>/<rho, xi> - 1.
    """
    rho_xi = e.rho_pair(xi)
    if not rho_xi:
        raise DegenerateInputError(f"<rho, pi({xi})> = 0; xi does not define a Witt line")
    x = e.embed(xi)
    alpha = symplectic(RHO, mu) / rho_xi
    beta = to_scalar(n) / 2 + symplectic(x, mu) / rho_xi - 1
    return alpha, beta


def tensor_action_residual(
    module: TensorFieldModule, mu_point: LatticePoint, xi: LatticePoint, m: int, k: int
) -> ModuleVector:
    """Direct action of L_{m xi} on L_{mu + k xi} (x) xi^n against the tensor-module formula.

    The expected image is <rho, xi>(k + alpha + m beta) L_{mu + (k+m) xi} (x) xi^n.
    """
    e = module.embedding
    alpha, beta = tensor_parameters(e, module.weight(mu_point), xi, module.n)
    power = poly_coords(linear_form(e.embed(xi)) ** module.n, module.n)
    source = add_points(mu_point, tuple(k * a for a in xi))
    target = add_points(source, tuple(m * a for a in xi))
    image = module.act_v(tuple(m * a for a in xi), ModuleVector.single(source, power))
    expected_scale = e.rho_pair(xi) * (alpha + beta * m + k)
    expected = ModuleVector.single(target, [c * expected_scale for c in power])
    return image - expected
