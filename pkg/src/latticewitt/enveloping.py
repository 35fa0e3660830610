"""PBW normal forms in U(W_pi) and the differentiator calculus.

Words are tuples of lattice points, each letter standing for L_{pi(point)}. A word is
normal when its letters are nondecreasing in lexicographic order of the coordinates.
"""

import logging
import random
import threading
from dataclasses import dataclass
from enum import Enum
from typing import Dict, List, Optional, Sequence, Tuple

from sympy import binomial

from .errors import WordLengthExceededError
from .lattice import LatticeEmbedding, LatticePoint, add_points, scale_point, sub_points
from .models import DEFAULT_MAX_WORD_LENGTH, EnvelopingConfig
from .scalars import ONE, ZERO, Scalar, format_scalar, to_scalar

logger = logging.getLogger(__name__)

UWord = Tuple[LatticePoint, ...]


def is_normal(word: Sequence[LatticePoint]) -> bool:
    return all(word[i] <= word[i + 1] for i in range(len(word) - 1))


class UElement:
    """Linear combination of normal words; zero coefficients are never stored."""

    __slots__ = ("terms",)

    def __init__(self, terms: Optional[Dict[UWord, Scalar]] = None):
        self.terms: Dict[UWord, Scalar] = {}
        for word, coefficient in (terms or {}).items():
            coefficient = to_scalar(coefficient)
            if coefficient:
                self.terms[tuple(word)] = coefficient

    @classmethod
    def one(cls) -> "UElement":
        return cls({(): ONE})

    def is_zero(self) -> bool:
        return not self.terms

    def degree(self) -> int:
        return max((len(w) for w in self.terms), default=-1)

    def coefficient(self, word: Sequence[LatticePoint]) -> Scalar:
        return self.terms.get(tuple(word), ZERO)

    def _combine(self, other: "UElement", sign: int) -> "UElement":
        terms = dict(self.terms)
        for word, coefficient in other.terms.items():
            terms[word] = terms.get(word, ZERO) + coefficient * sign
        return UElement(terms)

    def __add__(self, other: "UElement") -> "UElement":
        return self._combine(other, 1)

    def __sub__(self, other: "UElement") -> "UElement":
        return self._combine(other, -1)

    def __neg__(self) -> "UElement":
        return UElement({w: -c for w, c in self.terms.items()})

    def scale(self, c) -> "UElement":
        c = to_scalar(c)
        return UElement({w: v * c for w, v in self.terms.items()})

    def __eq__(self, other) -> bool:
        return isinstance(other, UElement) and (self - other).is_zero()

    __hash__ = None

    def __repr__(self) -> str:
        if not self.terms:
            return "0"
        parts = []
        for word in sorted(self.terms, key=lambda w: (len(w), w)):
            letters = "·".join(f"L[{', '.join(str(a) for a in p)}]" for p in word) or "1"
            parts.append(f"{format_scalar(self.terms[word])} * {letters}")
        return " + ".join(parts)


class PBWRewriter:
    """Normal forms in U(W_pi) over a fixed embedding.

    Inserting a letter into a normal word is memoized per (letter, word); the cache
    is shared between threads and guarded by a lock.
    """

    def __init__(self, embedding: LatticeEmbedding, config: Optional[EnvelopingConfig] = None):
        self.embedding = embedding
        self.max_word_length = (config or EnvelopingConfig()).max_word_length
        self._brackets: Dict[Tuple[LatticePoint, LatticePoint], Scalar] = {}
        self._inserts: Dict[Tuple[LatticePoint, UWord], Dict[UWord, Scalar]] = {}
        self._lock = threading.Lock()

    def bracket(self, a: LatticePoint, b: LatticePoint) -> Scalar:
        """Structure constant of [L_a, L_b] = c L_{a+b}."""
        key = (a, b)
        value = self._brackets.get(key)
        if value is None:
            value = self.embedding.bracket_coefficient(a, b)
            with self._lock:
                self._brackets[key] = value
        return value

    def _check_length(self, length: int) -> None:
        if length > self.max_word_length:
            raise WordLengthExceededError(
                f"Word of length {length} exceeds the bound {self.max_word_length}"
            )

    def _insert(self, letter: LatticePoint, word: UWord) -> Dict[UWord, Scalar]:
        """Normal form of L_letter times the normal word ``word``."""
        if not word or letter <= word[0]:
            return {(letter,) + word: ONE}
        key = (letter, word)
        cached = self._inserts.get(key)
        if cached is not None:
            return cached

        # L_a L_b rest = L_b (L_a rest) + [L_a, L_b] rest
        head, rest = word[0], word[1:]
        result: Dict[UWord, Scalar] = {}
        for tail, c in self._insert(letter, rest).items():
            for normal, d in self._insert(head, tail).items():
                result[normal] = result.get(normal, ZERO) + c * d
        weight = self.bracket(letter, head)
        if weight:
            for normal, d in self._insert(add_points(letter, head), rest).items():
                result[normal] = result.get(normal, ZERO) + weight * d
        result = {w: c for w, c in result.items() if c}

        with self._lock:
            self._inserts.setdefault(key, result)
        return result

    def normal_form(self, word: Sequence[LatticePoint], coeff=ONE) -> UElement:
        """PBW normal form of coeff * L_{w1} ... L_{wk}."""
        word = tuple(tuple(p) for p in word)
        self._check_length(len(word))
        current: Dict[UWord, Scalar] = {(): to_scalar(coeff)}
        for letter in reversed(word):
            updated: Dict[UWord, Scalar] = {}
            for tail, c in current.items():
                for normal, d in self._insert(letter, tail).items():
                    updated[normal] = updated.get(normal, ZERO) + c * d
            current = updated
        return UElement(current)

    def letter(self, p: LatticePoint) -> UElement:
        return UElement({(tuple(p),): ONE})

    def u_mul(self, a: UElement, b: UElement) -> UElement:
        """Concatenate and normalize, bilinearly."""
        self._check_length(max(a.degree(), 0) + max(b.degree(), 0))
        result = UElement()
        for u, c in a.terms.items():
            for v, d in b.terms.items():
                result = result + self.normal_form(u + v, c * d)
        return result

    def anticommutator(self, a: UElement, b: UElement) -> UElement:
        return self.u_mul(a, b) + self.u_mul(b, a)

    def rewrite_randomly(self, word: Sequence[LatticePoint], rng: random.Random) -> UElement:
        """Normal form reached by rewriting randomly chosen descents, without the memo."""
        word = tuple(tuple(p) for p in word)
        self._check_length(len(word))
        pending: Dict[UWord, Scalar] = {word: ONE}
        finished: Dict[UWord, Scalar] = {}
        while pending:
            current = rng.choice(sorted(pending))
            c = pending.pop(current)
            if not c:
                continue
            descents = [i for i in range(len(current) - 1) if current[i] > current[i + 1]]
            if not descents:
                finished[current] = finished.get(current, ZERO) + c
                continue
            i = rng.choice(descents)
            a, b = current[i], current[i + 1]
            swapped = current[:i] + (b, a) + current[i + 2:]
            pending[swapped] = pending.get(swapped, ZERO) + c
            weight = self.bracket(a, b)
            if weight:
                merged = current[:i] + (add_points(a, b),) + current[i + 2:]
                pending[merged] = pending.get(merged, ZERO) + c * weight
        return UElement(finished)

    def cache_size(self) -> int:
        return len(self._inserts)


def normal_form(
    embedding: LatticeEmbedding,
    word: Sequence[LatticePoint],
    coeff=ONE,
    max_word_length: int = DEFAULT_MAX_WORD_LENGTH,
) -> UElement:
    rewriter = PBWRewriter(embedding, EnvelopingConfig(max_word_length=max_word_length))
    return rewriter.normal_form(word, coeff)


@dataclass(frozen=True)
class DifferentiatorSpec:
    """Parameters of sum_i (-1)^i C(m,i) L_{alpha - i xi} L_{beta + i xi}."""

    alpha: LatticePoint
    beta: LatticePoint
    xi: LatticePoint
    m: int

    def shifted(self, k: int) -> "DifferentiatorSpec":
        """Same order, alpha - k xi and beta + k xi."""
        step = scale_point(k, self.xi)
        return DifferentiatorSpec(
            sub_points(self.alpha, step), add_points(self.beta, step), self.xi, self.m
        )


def differentiator_terms(
    spec: DifferentiatorSpec,
) -> List[Tuple[Scalar, LatticePoint, LatticePoint]]:
    """The unnormalized terms (coefficient, left letter, right letter)."""
    terms = []
    for i in range(spec.m + 1):
        c = to_scalar(int((-1) ** i * binomial(spec.m, i)))
        step = scale_point(i, spec.xi)
        terms.append((c, sub_points(spec.alpha, step), add_points(spec.beta, step)))
    return terms


def differentiator(rewriter: PBWRewriter, spec: DifferentiatorSpec) -> UElement:
    result = UElement()
    for c, left, right in differentiator_terms(spec):
        result = result + rewriter.normal_form((left, right), c)
    return result


def differentiator_relations(
    rewriter: PBWRewriter, spec: DifferentiatorSpec
) -> Dict[str, UElement]:
    """Residuals of the reflection relation and the recursion in the order m."""
    omega = differentiator(rewriter, spec)
    reflected = DifferentiatorSpec(
        sub_points(spec.alpha, scale_point(spec.m, spec.xi)),
        add_points(spec.beta, scale_point(spec.m, spec.xi)),
        tuple(-a for a in spec.xi),
        spec.m,
    )
    sign = 1 if spec.m % 2 == 0 else -1
    residuals = {"reflection": omega - differentiator(rewriter, reflected).scale(sign)}
    if spec.m >= 1:
        lower = DifferentiatorSpec(spec.alpha, spec.beta, spec.xi, spec.m - 1)
        residuals["recursion"] = (
            omega - differentiator(rewriter, lower) + differentiator(rewriter, lower.shifted(1))
        )
    else:
        residuals["recursion"] = UElement()
    return residuals


class BFForm(str, Enum):
    """Grouping of the mixed term of the large differentiator identity."""
    CORRECTED = "corrected"
    DOUBLED = "doubled"


@dataclass(frozen=True)
class BFCoefficients:
    b0: Scalar
    k_prime: Scalar
    m_term: Scalar
    d: Scalar
    n: int


def bf_coefficients(
    e: LatticeEmbedding,
    alpha: LatticePoint,
    beta: LatticePoint,
    gamma: LatticePoint,
    delta: LatticePoint,
    xi: LatticePoint,
    m: int,
    r: int,
) -> BFCoefficients:
    r_xi = scale_point(r, xi)
    b0 = e.bracket_coefficient(sub_points(beta, r_xi), sub_points(gamma, r_xi))
    k_prime = e.bracket_coefficient(alpha, add_points(delta, scale_point(2 * r, xi)))
    # <xi, delta+rho> and <alpha+rho, xi>
    xi_delta = e.pair(xi, delta) - e.rho_pair(xi)
    alpha_xi = e.pair(alpha, xi) + e.rho_pair(xi)
    m_term = xi_delta * m + alpha_xi * r
    d = e.pair(sub_points(beta, gamma), xi)
    return BFCoefficients(b0, k_prime, m_term, d, 2 * m + 2 * r)


def _bf_lhs(rewriter: PBWRewriter, alpha, beta, gamma, delta, xi, m: int, r: int) -> UElement:
    def omega(a, b, order):
        return differentiator(rewriter, DifferentiatorSpec(a, b, xi, order))

    lhs = UElement()
    for i in range(m + 1):
        for j in range(r + 1):
            c = to_scalar(int((-1) ** (i + j) * binomial(m, i) * binomial(r, j)))
            i_xi, j_xi = scale_point(i, xi), scale_point(j, xi)
            first = rewriter.anticommutator(
                omega(sub_points(alpha, i_xi), sub_points(beta, j_xi), m),
                omega(add_points(gamma, i_xi), add_points(delta, j_xi), r),
            )
            second = rewriter.anticommutator(
                omega(sub_points(alpha, i_xi), sub_points(gamma, j_xi), m),
                omega(add_points(beta, i_xi), add_points(delta, j_xi), r),
            )
            lhs = lhs + (first - second).scale(c)
    return lhs


def _bf_omegas(rewriter: PBWRewriter, alpha, beta, gamma, delta, xi, m: int, r: int):
    n = 2 * m + 2 * r
    a_point = add_points(add_points(alpha, delta), scale_point(2 * r, xi))
    b_point = sub_points(add_points(beta, gamma), scale_point(2 * r, xi))
    base = DifferentiatorSpec(a_point, b_point, xi, n)
    top = differentiator(rewriter, base)
    once = base.shifted(1)
    twice = base.shifted(2)
    middle = differentiator(rewriter, DifferentiatorSpec(once.alpha, once.beta, xi, n - 1))
    bottom = differentiator(rewriter, DifferentiatorSpec(twice.alpha, twice.beta, xi, n - 2))
    return top, middle, bottom


def bf_rhs(
    rewriter: PBWRewriter,
    alpha: LatticePoint,
    beta: LatticePoint,
    gamma: LatticePoint,
    delta: LatticePoint,
    xi: LatticePoint,
    m: int,
    r: int,
    form: BFForm = BFForm.CORRECTED,
    rhs_perturbation=0,
) -> UElement:
    """Right-hand side of the large differentiator identity.

    The coefficient of the leading differentiator is shifted by ``rhs_perturbation``.
    """
    k = bf_coefficients(rewriter.embedding, alpha, beta, gamma, delta, xi, m, r)
    top, middle, bottom = _bf_omegas(rewriter, alpha, beta, gamma, delta, xi, m, r)
    mixed_factor = (m + r) if form == BFForm.CORRECTED else 2 * (m + r)
    top_coefficient = k.b0 * k.k_prime + to_scalar(rhs_perturbation)
    middle_coefficient = k.b0 * k.m_term * 2 - k.d * (k.k_prime * mixed_factor - k.m_term)
    bottom_coefficient = -k.d * k.m_term * (k.n - 1)
    return top.scale(top_coefficient) + middle.scale(middle_coefficient) + bottom.scale(
        bottom_coefficient
    )


def corollary_rhs(
    rewriter: PBWRewriter,
    alpha: LatticePoint,
    beta: LatticePoint,
    gamma: LatticePoint,
    delta: LatticePoint,
    xi: LatticePoint,
    m: int,
    r: int,
) -> UElement:
    """Two-term right-hand side, valid when <beta - gamma, xi> = 0."""
    e = rewriter.embedding
    k = bf_coefficients(e, alpha, beta, gamma, delta, xi, m, r)
    top, middle, _ = _bf_omegas(rewriter, alpha, beta, gamma, delta, xi, m, r)
    outer = e.bracket_coefficient(beta, gamma)
    return top.scale(outer * k.k_prime) + middle.scale(outer * k.m_term * 2)


def verify_bf_identity(
    rewriter: PBWRewriter,
    alpha: LatticePoint,
    beta: LatticePoint,
    gamma: LatticePoint,
    delta: LatticePoint,
    xi: LatticePoint,
    m: int,
    r: int,
    form: BFForm = BFForm.CORRECTED,
    rhs_perturbation=0,
) -> UElement:
    """Normal-form residual LHS - RHS; the identity holds iff it is zero.

    Args:
        rewriter: PBW rewriter over the embedding
        alpha, beta, gamma, delta, xi: Lattice points
        m, r: Differentiator orders, both at least 2
        form: Grouping of the mixed coefficient
        rhs_perturbation: Added to the leading coefficient (checker sanity)

    Returns:
        The residual as a UElement
    """
    if m < 2 or r < 2:
        raise ValueError(f"Orders must be at least 2, got m={m}, r={r}")
    lhs = _bf_lhs(rewriter, alpha, beta, gamma, delta, xi, m, r)
    rhs = bf_rhs(rewriter, alpha, beta, gamma, delta, xi, m, r, form, rhs_perturbation)
    residual = lhs - rhs
    logger.debug(
        f"BF identity m={m} r={r} alpha={alpha} beta={beta} gamma={gamma} delta={delta} "
        f"xi={xi}: {len(residual.terms)} residual terms"
    )
    return residual
