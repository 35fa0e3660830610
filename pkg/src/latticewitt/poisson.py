"""Poisson algebras: the symbol algebra S, polynomial algebras S(V) and the sl2 triple.

The symbol algebra has basis L_lambda, lambda in C^2, with

    L_lambda . L_mu = L_{lambda+mu+rho}
    {L_lambda, L_mu} = <lambda+rho, mu+rho> L_{lambda+mu}

W_pi and A_pi are the subspaces supported on pi(Z^N) and pi(Z^N) - rho.
"""

import logging
from dataclasses import dataclass
from typing import Dict, List, Optional, Sequence, Tuple

import sympy
from sympy.polys.domains import QQ_I
from sympy.polys.polyerrors import CoercionFailed
from sympy.polys.matrices import DomainMatrix

from .errors import DegenerateInputError
from .matrices import equal, from_columns, identity, zeros
from .scalars import ONE, RHO, ZERO, CVec2, Scalar, format_scalar, symplectic, to_scalar

logger = logging.getLogger(__name__)

Monomial = Tuple[int, ...]


def _scaled_literal(c: Scalar, body: str) -> str:
    if not body:
        return format_scalar(c)
    if c == ONE:
        return body
    if c == -ONE:
        return f"-{body}"
    text = format_scalar(c)
    if c.x and c.y:
        text = f"({text})"
    return f"{text}*{body}"


class SymbolElement:
    """Finite linear combination of symbols L_lambda; zero coefficients are never stored."""

    __slots__ = ("terms",)

    def __init__(self, terms: Optional[Dict[CVec2, Scalar]] = None):
        self.terms: Dict[CVec2, Scalar] = {}
        for point, coefficient in (terms or {}).items():
            coefficient = to_scalar(coefficient)
            if coefficient:
                self.terms[point] = coefficient

    @classmethod
    def basis(cls, point: CVec2, coefficient=ONE) -> "SymbolElement":
        return cls({point: coefficient})

    def coefficient(self, point: CVec2) -> Scalar:
        return self.terms.get(point, ZERO)

    def support(self) -> List[CVec2]:
        return list(self.terms)

    def is_zero(self) -> bool:
        return not self.terms

    def _combine(self, other: "SymbolElement", sign: int) -> "SymbolElement":
        terms = dict(self.terms)
        for point, coefficient in other.terms.items():
            terms[point] = terms.get(point, ZERO) + coefficient * sign
        return SymbolElement(terms)

    def __add__(self, other: "SymbolElement") -> "SymbolElement":
        return self._combine(other, 1)

    def __sub__(self, other: "SymbolElement") -> "SymbolElement":
        return self._combine(other, -1)

    def __neg__(self) -> "SymbolElement":
        return SymbolElement({p: -c for p, c in self.terms.items()})

    def scale(self, c) -> "SymbolElement":
        c = to_scalar(c)
        return SymbolElement({p: v * c for p, v in self.terms.items()})

    def __eq__(self, other) -> bool:
        return isinstance(other, SymbolElement) and (self - other).is_zero()

    __hash__ = None

    def __repr__(self) -> str:
        if not self.terms:
            return "0"
        ordered = sorted(
            self.terms.items(), key=lambda kv: (kv[0].x.x, kv[0].x.y, kv[0].y.x, kv[0].y.y)
        )
        return " + ".join(
            _scaled_literal(c, f"L[{format_scalar(p.x)}, {format_scalar(p.y)}]")
            for p, c in ordered
        )


def symbol(point: CVec2, coefficient=ONE) -> SymbolElement:
    return SymbolElement.basis(point, coefficient)


def s_product(a: SymbolElement, b: SymbolElement) -> SymbolElement:
    """Commutative product L_lambda . L_mu = L_{lambda+mu+rho}, extended bilinearly."""
    terms: Dict[CVec2, Scalar] = {}
    for p, c in a.terms.items():
        for q, d in b.terms.items():
            point = p + q + RHO
            terms[point] = terms.get(point, ZERO) + c * d
    return SymbolElement(terms)


def s_bracket(a: SymbolElement, b: SymbolElement) -> SymbolElement:
    """Poisson bracket {L_lambda, L_mu} = <lambda+rho, mu+rho> L_{lambda+mu}."""
    terms: Dict[CVec2, Scalar] = {}
    for p, c in a.terms.items():
        for q, d in b.terms.items():
            weight = symplectic(p + RHO, q + RHO)
            if not weight:
                continue
            point = p + q
            terms[point] = terms.get(point, ZERO) + c * d * weight
    return SymbolElement(terms)


def _monomial_text(exponents: Monomial, names: Sequence[str]) -> str:
    factors = []
    for name, e in zip(names, exponents):
        if e == 1:
            factors.append(name)
        elif e > 1:
            factors.append(f"{name}^{e}")
    return "*".join(factors)


class PoissonPolynomial:
    """Sparse polynomial in k commuting variables with the Poisson bracket of a skew form.

    The bracket is {p, q} = sum_{a,b} form[a][b] * dp/dz_a * dq/dz_b.
    """

    __slots__ = ("form", "terms")

    def __init__(self, terms: Dict[Monomial, Scalar], form: Tuple[Tuple[Scalar, ...], ...]):
        self.form = form
        self.terms: Dict[Monomial, Scalar] = {}
        for exponents, coefficient in terms.items():
            coefficient = to_scalar(coefficient)
            if coefficient:
                self.terms[tuple(exponents)] = coefficient

    @property
    def nvars(self) -> int:
        return len(self.form)

    def _new(self, terms: Dict[Monomial, Scalar]) -> "PoissonPolynomial":
        return PoissonPolynomial(terms, self.form)

    def zero(self) -> "PoissonPolynomial":
        return self._new({})

    def constant(self, c) -> "PoissonPolynomial":
        return self._new({(0,) * self.nvars: c})

    def variable(self, i: int) -> "PoissonPolynomial":
        return self._new({tuple(1 if j == i else 0 for j in range(self.nvars)): ONE})

    def linear(self, coefficients: Sequence) -> "PoissonPolynomial":
        """sum_i coefficients[i] * z_i."""
        terms = {}
        for i, c in enumerate(coefficients):
            terms[tuple(1 if j == i else 0 for j in range(self.nvars))] = c
        return self._new(terms)

    def is_zero(self) -> bool:
        return not self.terms

    def degree(self) -> int:
        return max((sum(m) for m in self.terms), default=-1)

    def is_homogeneous(self, n: int) -> bool:
        return all(sum(m) == n for m in self.terms)

    def coefficient(self, exponents: Monomial) -> Scalar:
        return self.terms.get(tuple(exponents), ZERO)

    def _combine(self, other: "PoissonPolynomial", sign: int) -> "PoissonPolynomial":
        terms = dict(self.terms)
        for m, c in other.terms.items():
            terms[m] = terms.get(m, ZERO) + c * sign
        return self._new(terms)

    def __add__(self, other: "PoissonPolynomial") -> "PoissonPolynomial":
        return self._combine(other, 1)

    def __sub__(self, other: "PoissonPolynomial") -> "PoissonPolynomial":
        return self._combine(other, -1)

    def __neg__(self) -> "PoissonPolynomial":
        return self._new({m: -c for m, c in self.terms.items()})

    def __mul__(self, other) -> "PoissonPolynomial":
        if isinstance(other, PoissonPolynomial):
            terms: Dict[Monomial, Scalar] = {}
            for m, c in self.terms.items():
                for n, d in other.terms.items():
                    key = tuple(a + b for a, b in zip(m, n))
                    terms[key] = terms.get(key, ZERO) + c * d
            return self._new(terms)
        c = to_scalar(other)
        return self._new({m: v * c for m, v in self.terms.items()})

    __rmul__ = __mul__

    def __pow__(self, k: int) -> "PoissonPolynomial":
        result = self.constant(ONE)
        for _ in range(k):
            result = result * self
        return result

    def derivative(self, i: int) -> "PoissonPolynomial":
        terms = {}
        for m, c in self.terms.items():
            if m[i]:
                lowered = m[:i] + (m[i] - 1,) + m[i + 1:]
                terms[lowered] = c * m[i]
        return self._new(terms)

    def bracket(self, other: "PoissonPolynomial") -> "PoissonPolynomial":
        result = self.zero()
        if self.is_zero() or other.is_zero():
            return result
        left = [self.derivative(a) for a in range(self.nvars)]
        right = [other.derivative(b) for b in range(self.nvars)]
        for a, row in enumerate(self.form):
            if left[a].is_zero():
                continue
            for b, weight in enumerate(row):
                if weight and not right[b].is_zero():
                    result = result + left[a] * right[b] * weight
        return result

    def substitute(self, images: Sequence["PoissonPolynomial"]) -> "PoissonPolynomial":
        """Evaluate at z_i = images[i]; the result lives in the images' ring."""
        target = images[0]
        result = target.zero()
        for m, c in self.terms.items():
            value = target.constant(c)
            for image, e in zip(images, m):
                if e:
                    value = value * image ** e
            result = result + value
        return result

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, PoissonPolynomial)
            and other.nvars == self.nvars
            and (self - other).is_zero()
        )

    __hash__ = None

    def format(self, names: Optional[Sequence[str]] = None) -> str:
        """Render in degree-lex order."""
        if not self.terms:
            return "0"
        if names is None:
            names = ("x", "y") if self.nvars == 2 else [f"e{i + 1}" for i in range(self.nvars)]
        ordered = sorted(self.terms.items(), key=lambda kv: (-sum(kv[0]), [-e for e in kv[0]]))
        text = " + ".join(_scaled_literal(c, _monomial_text(m, names)) for m, c in ordered)
        return text.replace("+ -", "- ")

    def __repr__(self) -> str:
        return self.format()


STANDARD_FORM = ((ZERO, ONE), (-ONE, ZERO))


def polyv(terms: Dict[Monomial, object]) -> PoissonPolynomial:
    """Element of S(V), V = C^2, with {x, y} = 1."""
    return PoissonPolynomial(terms, STANDARD_FORM)


PolyV = PoissonPolynomial


def linear_form(v: CVec2) -> PoissonPolynomial:
    """The vector v = (a, b) as the degree-1 element a*x + b*y of S(V)."""
    return polyv({(1, 0): v.x, (0, 1): v.y})


def vector_product(u: CVec2, v: CVec2) -> PoissonPolynomial:
    """The symmetric product uv in S^2 V."""
    return linear_form(u) * linear_form(v)


def poly_bracket(p: PoissonPolynomial, q: PoissonPolynomial) -> PoissonPolynomial:
    return p.bracket(q)


def lattice_poisson_ring(pairings: Sequence[Sequence[Scalar]]) -> PoissonPolynomial:
    """Zero of S(C^N) with the form <pi(e_i), pi(e_j)>."""
    form = tuple(tuple(row) for row in pairings)
    return PoissonPolynomial({}, form)


def degree_basis(n: int) -> List[Monomial]:
    """Monomial basis x^(n-j) y^j of S^n V, j = 0..n."""
    return [(n - j, j) for j in range(n + 1)]


def poly_coords(p: PoissonPolynomial, n: int) -> List[Scalar]:
    return [p.coefficient(m) for m in degree_basis(n)]


def poly_from_coords(coords: Sequence, n: int) -> PoissonPolynomial:
    return polyv(dict(zip(degree_basis(n), coords)))


def ad_matrix(q: PoissonPolynomial, n: int) -> DomainMatrix:
    """Matrix of u -> {q, u} on S^n V for q of degree 0 or 2."""
    if not q.is_homogeneous(2) and not q.is_homogeneous(0):
        raise ValueError(f"ad_matrix needs a quadratic element, got degree {q.degree()}")
    columns = [poly_coords(q.bracket(polyv({m: ONE})), n) for m in degree_basis(n)]
    return from_columns(columns, n + 1)


@dataclass(frozen=True)
class Sl2Triple:
    """Quadratic elements satisfying [h,e] = 2e, [h,f] = -2f, [e,f] = h."""

    e: PoissonPolynomial
    f: PoissonPolynomial
    h: PoissonPolynomial

    def relation_residuals(self) -> Dict[str, PoissonPolynomial]:
        return {
            "he": self.h.bracket(self.e) - self.e * 2,
            "hf": self.h.bracket(self.f) + self.f * 2,
            "ef": self.e.bracket(self.f) - self.h,
        }


def sl2_triple(xi: CVec2, eta: CVec2) -> Sl2Triple:
    """e = -xi^2/(2<xi,eta>), f = eta^2/(2<xi,eta>), h = -xi eta/<xi,eta>."""
    pairing = symplectic(xi, eta)
    if not pairing:
        raise DegenerateInputError(f"sl2 pair is degenerate: <{xi}, {eta}> = 0")
    scale = ONE / pairing
    half = scale / 2
    return Sl2Triple(
        e=vector_product(xi, xi) * (-half),
        f=vector_product(eta, eta) * half,
        h=vector_product(xi, eta) * (-scale),
    )


def casimir_matrix(t: Sl2Triple, n: int) -> DomainMatrix:
    """ad(e)ad(f) + ad(f)ad(e) - ad(h)^2 on S^n V."""
    e, f, h = ad_matrix(t.e, n), ad_matrix(t.f, n), ad_matrix(t.h, n)
    return e * f + f * e - h * h


@dataclass
class Spectrum:
    """Exact spectrum of an operator; ``eigenvalues`` is None when a root leaves Q(i)."""

    dimension: int
    eigenvalues: Optional[List[Tuple[Scalar, int]]]
    charpoly: List[Scalar]
    diagonalizable: Optional[bool]

    @property
    def invertible(self) -> bool:
        return bool(self.charpoly[-1])

    def as_dict(self) -> Dict[str, int]:
        return {format_scalar(value): mult for value, mult in self.eigenvalues or []}


def spectrum(m: DomainMatrix) -> Spectrum:
    """Eigenvalues with multiplicities from the characteristic polynomial over Q(i)."""
    n = m.shape[0]
    coefficients = m.charpoly()
    t = sympy.Symbol("t")
    poly = sympy.Poly([QQ_I.to_sympy(c) for c in coefficients], t)
    found = sympy.roots(poly)

    eigenvalues: List[Tuple[Scalar, int]] = []
    try:
        for root, mult in found.items():
            eigenvalues.append((QQ_I.from_sympy(root), mult))
    except CoercionFailed:
        eigenvalues = []
    if not eigenvalues or sum(mult for _, mult in eigenvalues) != n:
        logger.info(f"Spectrum leaves Q(i); reporting the characteristic polynomial {poly}")
        return Spectrum(n, None, list(coefficients), None)

    eigenvalues.sort(key=lambda vm: (-vm[0].x, -vm[0].y))
    product = identity(n)
    for value, _ in eigenvalues:
        product = product * (m - identity(n) * value)
    return Spectrum(n, eigenvalues, list(coefficients), equal(product, zeros(n, n)))


def casimir_like_spectrum(t: Sl2Triple, n: int) -> Spectrum:
    """Spectrum of ef + fe - h^2 acting on S^n V."""
    return spectrum(casimir_matrix(t, n))


def casimir_eigenvalue(n: int, m: int) -> Scalar:
    """Closed form n^2/2 + n - 3m^2/2 on h-weight m."""
    return to_scalar(n * n + 2 * n - 3 * m * m) / 2


class SymbolTensor:
    """Sparse element of A (x) S(V), stored as point -> polynomial.

    The Lie bracket is [a(x)u, b(x)v] = ab (x) {u, v}; W acts by X.(a(x)u) = {X, a}(x)u.
    """

    __slots__ = ("terms",)

    def __init__(self, terms: Optional[Dict[CVec2, PoissonPolynomial]] = None):
        self.terms: Dict[CVec2, PoissonPolynomial] = {
            p: u for p, u in (terms or {}).items() if not u.is_zero()
        }

    @classmethod
    def pure(cls, point: CVec2, u: PoissonPolynomial, coefficient=ONE) -> "SymbolTensor":
        return cls({point: u * coefficient})

    def is_zero(self) -> bool:
        return not self.terms

    def __add__(self, other: "SymbolTensor") -> "SymbolTensor":
        terms = dict(self.terms)
        for p, u in other.terms.items():
            terms[p] = terms[p] + u if p in terms else u
        return SymbolTensor(terms)

    def __neg__(self) -> "SymbolTensor":
        return SymbolTensor({p: -u for p, u in self.terms.items()})

    def __sub__(self, other: "SymbolTensor") -> "SymbolTensor":
        return self + (-other)

    def scale(self, c) -> "SymbolTensor":
        return SymbolTensor({p: u * c for p, u in self.terms.items()})

    def bracket(self, other: "SymbolTensor") -> "SymbolTensor":
        result = SymbolTensor()
        for p, u in self.terms.items():
            for q, v in other.terms.items():
                result = result + SymbolTensor({p + q + RHO: u.bracket(v)})
        return result

    def acted_on_by(self, x: SymbolElement) -> "SymbolTensor":
        result = SymbolTensor()
        for p, u in self.terms.items():
            for q, c in s_bracket(x, symbol(p)).terms.items():
                result = result + SymbolTensor({q: u * c})
        return result

    def __repr__(self) -> str:
        if not self.terms:
            return "0"
        return " + ".join(
            f"L[{format_scalar(p.x)}, {format_scalar(p.y)}] (x) ({u.format()})"
            for p, u in self.terms.items()
        )


def cocycle(lam: CVec2) -> SymbolTensor:
    """c(L_lambda) = 1/2 L_{lambda-rho} (x) lambda(lambda+rho)."""
    return SymbolTensor.pure(lam - RHO, vector_product(lam, lam + RHO), to_scalar(1) / 2)


def supported_on(a: SymbolElement, contains) -> bool:
    """True iff every support point satisfies the membership predicate ``contains``."""
    return all(contains(p) for p in a.terms)

