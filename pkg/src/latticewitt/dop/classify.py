"""Classification of cuspidal AV-modules from their P-tables."""

import logging
from dataclasses import dataclass, field
from typing import Dict, List, Optional

from ..errors import DegenerateInputError, InconsistentParametersError
from ..lattice import Coset, LatticePoint, coset_contains, unit_point
from ..matrices import equal, identity, scalar_value
from ..models import (
    DEFAULT_INTERPOLATION_DEGREE,
    DEFAULT_SEED,
    ClassificationCase,
    ClassificationReport,
)
from ..modules.base import GradedModule
from ..poisson import ad_matrix, vector_product
from ..scalars import HALF, ONE, RHO, RHO_DAGGER, CVec2, Scalar, format_scalar, symplectic
from .ptable import PTable, extract_p_table, scalar_part
from .relations import verify_p_relations

logger = logging.getLogger(__name__)

# K0 rho_dagger + K1 rho minus the recovered base point, in units of rho. Fibers are
# stored against L_mu while the P-action formulas index them by L_{mu - rho}.
CONVENTION_OFFSET = ONE


@dataclass
class Classification:
    """Isomorphism type of a cuspidal module together with its invariants."""

    case: ClassificationCase
    n: int
    K0: Scalar
    K1: Scalar
    gamma_base: CVec2
    convention_offset: Scalar = CONVENTION_OFFSET
    irreducible: bool = True
    condition_flags: Dict[str, str] = field(default_factory=dict)

    def key(self) -> tuple:
        """Invariants that separate non-isomorphic outputs: case, n and the coset base."""
        return (self.case, self.n, self.gamma_base)

    def to_report(self) -> ClassificationReport:
        return ClassificationReport(
            case=self.case,
            n=self.n,
            K0=format_scalar(self.K0),
            K1=format_scalar(self.K1),
            convention_offset=format_scalar(self.convention_offset),
            gamma_base=list(self.gamma_base.as_strings()),
            irreducible=self.irreducible,
            condition_flags=self.condition_flags,
        )


def _check_linear_terms(table: PTable) -> List[Scalar]:
    """Scalar parts c_i of P_{e_i}, after checking P_{e_i} = c_i + ad(1/2 e_i rho)."""
    e = table.embedding
    n = table.dim - 1
    scalars = []
    for i, image in enumerate(e.images):
        entry = table.entry(unit_point(e.rank, i))
        c = scalar_part(entry)
        expected = identity(table.dim) * c + ad_matrix(vector_product(image, RHO) * HALF, n)
        if not equal(entry, expected):
            raise InconsistentParametersError(
                f"P_e{i + 1} is not a scalar plus ad(1/2 pi(e_{i + 1}) rho)"
            )
        scalars.append(c)
    return scalars


def _check_quadratic_terms(table: PTable) -> None:
    e = table.embedding
    n = table.dim - 1
    for k in table.support():
        if sum(k) >= 3:
            raise InconsistentParametersError(f"P_{k} is nonzero but |K| >= 3")
    for i in range(e.rank):
        for j in range(i, e.rank):
            k = tuple(a + b for a, b in zip(unit_point(e.rank, i), unit_point(e.rank, j)))
            expected = ad_matrix(vector_product(e.images[i], e.images[j]), n)
            if not equal(table.entry(k), expected):
                raise InconsistentParametersError(
                    f"P_{k} differs from ad(pi(e_{i + 1}) pi(e_{j + 1}))"
                )


def _solve_k1(table: PTable, k0_value: Scalar, scalars: List[Scalar]) -> Scalar:
    """Solve c_i = <e_i, K0 rho_dagger + K1 rho> for K1 and check every i agrees."""
    e = table.embedding
    solution: Optional[Scalar] = None
    for image, c in zip(e.images, scalars):
        rest = c - k0_value * symplectic(image, RHO_DAGGER)
        weight = symplectic(image, RHO)
        if not weight:
            if rest:
                raise InconsistentParametersError(f"Scalar part of P at {image} admits no K1")
            continue
        candidate = rest / weight
        if solution is not None and candidate != solution:
            raise InconsistentParametersError(
                f"Inconsistent K1: {format_scalar(solution)} vs {format_scalar(candidate)}"
            )
        solution = candidate
    if solution is None:
        raise DegenerateInputError("Every <pi(e_i), rho> vanishes; K1 is undetermined")
    return solution


def classify_table(table: PTable, coset: Coset) -> Classification:
    """Classify the module with P-table ``table`` graded by ``coset``.

    Raises:
        InconsistentParametersError: If the table does not have the shape of a
            tensor-field module, or its recovered base point lies outside ``coset``
    """
    ok, k0_value = scalar_value(table.entry(table.embedding.zero()))
    if not ok:
        raise InconsistentParametersError("P_0 is not a scalar")
    scalars = _check_linear_terms(table)
    _check_quadratic_terms(table)
    k1_value = _solve_k1(table, k0_value, scalars)

    base = RHO_DAGGER * k0_value + RHO * (k1_value - CONVENTION_OFFSET)
    if not coset_contains(coset, base)[0]:
        raise InconsistentParametersError(f"Recovered base {base} is not in {coset}")

    n = table.dim - 1
    minus_rho = coset_contains(coset, -RHO)[0]
    minus_two_rho = coset_contains(coset, -(RHO * 2))[0]
    flags = {
        "minus_rho_in_coset": "yes" if minus_rho else "no",
        "minus_two_rho_in_coset": "yes" if minus_two_rho else "no",
    }
    if n > 0:
        case = ClassificationCase.MN
    elif minus_rho:
        case = ClassificationCase.MBAR
    elif minus_two_rho:
        case = ClassificationCase.MBAR_DUAL
    else:
        case = ClassificationCase.SGAMMA_IRREDUCIBLE

    result = Classification(
        case=case,
        n=n,
        K0=k0_value,
        K1=k1_value,
        gamma_base=base,
        irreducible=n != 1,
        condition_flags=flags,
    )
    logger.info(f"Classified as {case.value} with n={n}, base {base}")
    return result


def classify(
    module: GradedModule,
    k0: Optional[LatticePoint] = None,
    degree: int = DEFAULT_INTERPOLATION_DEGREE,
    seed: int = DEFAULT_SEED,
) -> Classification:
    """Extract the P-table of ``module``, check its relations and classify it."""
    table = extract_p_table(module, k0, degree=degree, seed=seed)
    failing = [row for row in verify_p_relations(table) if not row.vanishes]
    if failing:
        first = failing[0]
        raise InconsistentParametersError(
            f"P-table fails the {first.relation} relation at K={first.left}, S={first.right}"
        )
    return classify_table(table, module.coset)
