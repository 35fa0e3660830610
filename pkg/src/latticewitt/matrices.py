"""Exact matrix helpers over QQ and QQ_I built on sympy's DomainMatrix."""

from typing import List, Optional, Sequence, Tuple

from sympy.polys.domains import QQ, QQ_I, ZZ
from sympy.polys.matrices import DomainMatrix
from sympy.polys.matrices.normalforms import smith_normal_decomp

Row = Sequence


def matrix(rows: Sequence[Row], ncols: Optional[int] = None, domain=QQ_I) -> DomainMatrix:
    """Build a dense DomainMatrix from rows of domain elements.

    Args:
        rows: Row sequences; entries are converted into ``domain``
        ncols: Column count, required when ``rows`` is empty
        domain: Ground domain (QQ_I by default)

    Returns:
        The matrix as a DomainMatrix
    """
    rows = [[domain.convert(entry) for entry in row] for row in rows]
    if ncols is None:
        ncols = len(rows[0]) if rows else 0
    return DomainMatrix(rows, (len(rows), ncols), domain)


def identity(n: int, domain=QQ_I) -> DomainMatrix:
    return DomainMatrix.eye(n, domain).to_dense()


def zeros(nrows: int, ncols: int, domain=QQ_I) -> DomainMatrix:
    return DomainMatrix.zeros((nrows, ncols), domain).to_dense()


def scalar_matrix(c, n: int) -> DomainMatrix:
    return identity(n) * QQ_I.convert(c)


def from_columns(columns: Sequence[Row], nrows: int) -> DomainMatrix:
    """Matrix whose j-th column is ``columns[j]``."""
    return matrix([[column[i] for column in columns] for i in range(nrows)], len(columns))


def entries(m: DomainMatrix) -> List[list]:
    return m.to_list()


def is_zero(m: DomainMatrix) -> bool:
    return m.is_zero_matrix


def equal(a: DomainMatrix, b: DomainMatrix) -> bool:
    return a.shape == b.shape and (a - b).is_zero_matrix


def commutator(a: DomainMatrix, b: DomainMatrix) -> DomainMatrix:
    return a * b - b * a


def scalar_value(m: DomainMatrix) -> Tuple[bool, object]:
    """Return (True, c) when ``m`` equals c times the identity, else (False, None)."""
    nrows, ncols = m.shape
    if nrows != ncols or nrows == 0:
        return False, None
    c = m[0, 0].element
    return equal(m, scalar_matrix(c, nrows)), c


def rank(rows: Sequence[Row], ncols: int, domain=QQ_I) -> int:
    if not rows or ncols == 0:
        return 0
    return matrix(rows, ncols, domain).rank()


def row_space_basis(rows: Sequence[Row], ncols: int, domain=QQ_I) -> List[list]:
    """Nonzero rows of the reduced row echelon form of ``rows``."""
    if not rows or ncols == 0:
        return []
    reduced, pivots = matrix(rows, ncols, domain).rref()
    return reduced.to_list()[: len(pivots)]


def in_span(basis: Sequence[Row], vector: Row, domain=QQ_I) -> bool:
    ncols = len(vector)
    return rank(list(basis) + [vector], ncols, domain) == rank(basis, ncols, domain)


def is_consistent(rows: Sequence[Row], rhs: Row, domain=QQ_I) -> bool:
    """Decide whether the system rows * x = rhs has a solution."""
    ncols = len(rows[0]) if rows else 0
    augmented = [list(row) + [value] for row, value in zip(rows, rhs)]
    return rank(rows, ncols, domain) == rank(augmented, ncols + 1, domain)


def solve_integer(rows: Sequence[Row], rhs: Row) -> Optional[List[int]]:
    """Find an integer solution of a rational system, whatever its rank.

    Each row of the augmented system is cleared of denominators and the
    coefficient part is brought to Smith normal form D = S A T, so that
    A x = b becomes D y = S b with x = T y.

    Returns:
        One integer solution, or None when the system has none over Z.
        The solution is unique when A has full column rank.
    """
    ncols = len(rows[0])
    augmented = matrix([list(row) + [value] for row, value in zip(rows, rhs)], ncols + 1, QQ)
    _, cleared = augmented.clear_denoms_rowwise(convert=True)
    cleared_rows = cleared.to_list()
    coefficients = matrix([row[:ncols] for row in cleared_rows], ncols, ZZ)
    smf, s, t = smith_normal_decomp(coefficients)
    target = s * matrix([[row[ncols]] for row in cleared_rows], 1, ZZ)
    diagonal = smf.to_list()
    y = [ZZ.zero] * ncols
    for i, (c,) in enumerate(target.to_list()):
        d = diagonal[i][i] if i < ncols else ZZ.zero
        if not d:
            if c:
                return None
        elif c % d:
            return None
        else:
            y[i] = c // d
    x = t * matrix([[value] for value in y], 1, ZZ)
    return [int(value) for (value,) in x.to_list()]


def apply(m: DomainMatrix, vector: Row) -> list:
    """The column ``m * vector`` as a list, allowing empty source or target."""
    nrows, ncols = m.shape
    if nrows == 0:
        return []
    if ncols == 0:
        return [QQ_I.zero] * nrows
    column = matrix([[entry] for entry in vector], 1)
    return [row[0] for row in (m * column).to_list()]
