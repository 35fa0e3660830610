"""The A_pi-cover of a W_pi-module, probed through finite evaluation matrices.

The cover component at gamma is spanned by the functionals psi(L_lambda, x),
x in the component at gamma - lambda, with psi(L_lambda, x)(delta) = L_{lambda+delta} x.
Only finitely many of them are evaluated at finitely many delta, so ranks are
window witnesses and stabilization is reported, never assumed.
"""

import logging
from typing import Iterable, List, Optional, Sequence, Tuple

from sympy import binomial

from .dop.relations import ResidualRow
from .errors import DegenerateInputError
from .lattice import LatticePoint, add_points, box_points, scale_point, sub_points, unit_point
from .matrices import rank
from .models import (
    DEFAULT_ANNIHILATOR_ORDER,
    DEFAULT_WINDOW_RADIUS,
    CoverAuditReport,
    CoverAuditRow,
)
from .modules.base import GradedModule, ModuleVector, Window
from .modules.checks import find_omega_witness
from .scalars import RHO, Scalar, inv, symplectic, to_scalar

logger = logging.getLogger(__name__)

MAX_PROBED_ORDER = 6


class PsiFunctional:
    """psi(L_lambda, x) for x a fiber vector of the component at k."""

    def __init__(self, module: GradedModule, lam: LatticePoint, k: LatticePoint, fiber):
        self.module = module
        self.lam = tuple(lam)
        self.k = tuple(k)
        self.fiber = list(module.coords(fiber))

    @property
    def degree(self) -> LatticePoint:
        """Component of the cover the functional belongs to."""
        return add_points(self.k, self.lam)

    def evaluate(self, delta: LatticePoint) -> ModuleVector:
        """L_{lambda+delta} x, which lies in the component at k + lambda + delta."""
        shift = add_points(self.lam, delta)
        return self.module.act_v(shift, ModuleVector.single(self.k, self.fiber))

    def row(self, probes: Sequence[LatticePoint]) -> List[Scalar]:
        """Concatenated fiber coordinates of the evaluations at ``probes``."""
        values: List[Scalar] = []
        for delta in probes:
            target = add_points(self.degree, delta)
            dim = self.module.fiber_dim(target)
            values.extend(self.evaluate(delta).component(target, dim))
        return values


def _evaluation_rows(
    module: GradedModule, gamma: LatticePoint, w: Window, g: Window
) -> Tuple[List[List[Scalar]], int]:
    probes = w.points()
    ncols = sum(module.fiber_dim(add_points(gamma, delta)) for delta in probes)
    rows = []
    for lam in g.points():
        k = sub_points(gamma, lam)
        for basis_vector in module.fiber_basis(k):
            psi = PsiFunctional(module, lam, k, basis_vector.component(k, module.fiber_dim(k)))
            rows.append(psi.row(probes))
    return rows, ncols


def _window_rank(module: GradedModule, gamma: LatticePoint, w: Window, g: Window) -> int:
    rows, ncols = _evaluation_rows(module, gamma, w, g)
    return rank(rows, ncols)


def cover_rank(
    module: GradedModule, gamma: LatticePoint, w: Window, g: Window
) -> Tuple[int, bool]:
    """Rank of the cover component at ``gamma`` seen through probes ``w`` and generators ``g``.

    Returns:
        The rank and whether it is unchanged when both windows grow by one
    """
    gamma = tuple(gamma)
    observed = _window_rank(module, gamma, w, g)
    grown = _window_rank(module, gamma, w.grow(1), g.grow(1))
    logger.debug(f"Cover rank of {module} at {gamma}: {observed} -> {grown}")
    return observed, observed == grown


def spanning_reduction_check(
    module: GradedModule,
    n: int,
    gamma: LatticePoint,
    alpha: LatticePoint,
    k: int,
    sign: int,
    w: Window,
) -> List[ResidualRow]:
    """Compare psi(L_{gamma-alpha}, x) with its reduction along xi = sign * e_k.

    For x = L_0 y in the component at alpha the reduction is
    -sum_{i=1}^n (-1)^i C(n,i) psi(L_{gamma-alpha-i xi}, L_{i xi} y), and it agrees
    with psi(L_{gamma-alpha}, x) wherever the order-n differentiator kills y.

    Raises:
        DegenerateInputError: If L_0 acts by zero on the component at alpha
    """
    alpha = tuple(alpha)
    xi = scale_point(sign, unit_point(module.rank, k))
    dim = module.fiber_dim(alpha)
    if not dim:
        return []
    eigenvalue = symplectic(RHO, module.weight(alpha))
    if not eigenvalue:
        raise DegenerateInputError(f"L_0 is not invertible on the component at {alpha}")
    lam = sub_points(gamma, alpha)
    rows = []
    for index, x in enumerate(module.fiber_basis(alpha)):
        y = x.scale(inv(eigenvalue))
        for delta in w.points():
            left = PsiFunctional(module, lam, alpha, x.component(alpha, dim)).evaluate(delta)
            right = ModuleVector()
            for i in range(1, n + 1):
                step = scale_point(i, xi)
                shifted = module.act_v(step, y)
                c = to_scalar(int((-1) ** i * binomial(n, i)))
                image = module.act_v(add_points(sub_points(lam, step), delta), shifted)
                right = right - image.scale(c)
            rows.append(
                ResidualRow("spanning-reduction", (alpha, index), tuple(delta), left - right)
            )
    failing = sum(1 for row in rows if not row.vanishes)
    logger.info(f"Spanning reduction of order {n} along {xi}: {failing}/{len(rows)} nonzero")
    return rows


def observed_annihilator_order(
    module: GradedModule,
    max_order: int = MAX_PROBED_ORDER,
    radius: int = 1,
) -> Optional[int]:
    """Smallest p such that every probed differentiator of order p kills the module.

    The differentiators have alpha = delta, beta = 0 and xi = +-e_i with delta and the
    probed components ranging over the box of the given radius.
    """
    points = box_points(module.rank, radius)
    directions = []
    for i in range(module.rank):
        directions.append(unit_point(module.rank, i))
        directions.append(scale_point(-1, unit_point(module.rank, i)))
    pairs = [(delta, xi) for delta in points for xi in directions]
    for order in range(max_order + 1):
        if find_omega_witness(module, order, pairs, points) is None:
            logger.info(f"Differentiators of order {order} annihilate {module} on the probes")
            return order
    return None


def boundedness_audit(
    module: GradedModule,
    d: int,
    n: int = DEFAULT_ANNIHILATOR_ORDER,
    gammas: Optional[Iterable[LatticePoint]] = None,
    radius: int = DEFAULT_WINDOW_RADIUS,
    probe_annihilator: bool = False,
) -> CoverAuditReport:
    """Compare stabilized cover ranks with the bound d * n^N.

    Args:
        module: Module whose cover is audited
        d: Bound on the fiber dimensions
        n: Order of an annihilating differentiator
        gammas: Components to sample; the unit box by default
        radius: Radius of the probe and generator windows
        probe_annihilator: Also record the observed annihilator order

    Returns:
        CoverAuditReport with one row per sampled component
    """
    bound = d * n ** module.rank
    if gammas is None:
        gammas = box_points(module.rank, 1)
    window = Window.centered(module.rank, radius)
    rows = []
    for gamma in gammas:
        observed, stabilized = cover_rank(module, gamma, window, window)
        rows.append(
            CoverAuditRow(
                gamma=list(gamma),
                rank=observed,
                bound=bound,
                stabilized=stabilized,
                windows=[radius, radius + 1],
            )
        )
    report = CoverAuditReport(
        module=repr(module),
        fiber_dim=d,
        order=n,
        bound=bound,
        within_bound=all(row.rank <= bound for row in rows),
        rows=rows,
        annihilator_order=observed_annihilator_order(module) if probe_annihilator else None,
    )
    logger.info(
        f"Cover audit of {module}: max rank {max((r.rank for r in rows), default=0)} "
        f"against bound {bound}"
    )
    return report
