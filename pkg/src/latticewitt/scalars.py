"""Exact Gaussian-rational scalars and the symplectic plane C^2.

Scalars are elements of sympy's ``QQ_I`` (the field Q(i)); their real and
imaginary parts are ``QQ`` rationals, always in lowest terms.
"""

import logging
import re
from dataclasses import dataclass
from typing import Any, Tuple, Union

from sympy.polys.domains import QQ, QQ_I
from sympy.polys.domains.gaussiandomains import GaussianRational

from .errors import ScalarParseError

logger = logging.getLogger(__name__)

Scalar = GaussianRational
ScalarLike = Union[GaussianRational, int, str, Any]

ZERO = QQ_I.zero
ONE = QQ_I.one
HALF = QQ_I(QQ(1, 2))
I = QQ_I(0, 1)

_RATIONAL_RE = re.compile(r"^([+-]?\d+)(?:/(\d+))?$")


def gauss(re_part: Any = 0, im_part: Any = 0) -> GaussianRational:
    """Build a Gaussian rational from real and imaginary parts.

    Args:
        re_part: int, QQ element or fraction string for the real part
        im_part: int, QQ element or fraction string for the imaginary part

    Returns:
        The element re_part + im_part*i of QQ_I
    """
    if isinstance(re_part, str):
        re_part = parse_rational(re_part)
    if isinstance(im_part, str):
        im_part = parse_rational(im_part)
    return QQ_I(QQ.convert(re_part), QQ.convert(im_part))


def to_scalar(value: ScalarLike) -> GaussianRational:
    """Coerce ints, rationals, literals and Gaussian rationals into QQ_I."""
    if isinstance(value, GaussianRational):
        return value
    if isinstance(value, str):
        return parse_scalar(value)
    return QQ_I.convert(value)


def inv(a: GaussianRational) -> GaussianRational:
    """Multiplicative inverse; raises ZeroDivisionError on zero."""
    return ONE / a


def parse_rational(text: str):
    """Parse ``int`` or ``int/posint`` into a QQ element."""
    match = _RATIONAL_RE.match(text)
    if not match:
        raise ScalarParseError(f"Not a rational literal: {text!r}")
    numerator = int(match.group(1))
    denominator = int(match.group(2)) if match.group(2) is not None else 1
    if denominator == 0:
        raise ScalarParseError(f"Zero denominator in {text!r}")
    return QQ(numerator, denominator)


def parse_scalar(text: str) -> GaussianRational:
    """Parse a Gaussian-rational literal such as ``3``, ``-1/2``, ``2+i`` or ``-3/4i``.

    Whitespace is ignored. A bare ``i`` stands for a unit imaginary coefficient.
    """
    compact = "".join(str(text).split())
    if not compact:
        raise ScalarParseError("Empty scalar literal")

    if not compact.endswith("i"):
        return QQ_I(parse_rational(compact), QQ.zero)

    body = compact[:-1]
    split_at = max(body.rfind("+"), body.rfind("-"))
    if split_at > 0:
        real_text, imag_text = body[:split_at], body[split_at:]
    else:
        real_text, imag_text = "", body

    if imag_text in ("", "+"):
        imag = QQ.one
    elif imag_text == "-":
        imag = -QQ.one
    else:
        imag = parse_rational(imag_text)
    real = parse_rational(real_text) if real_text else QQ.zero
    return QQ_I(real, imag)


def format_rational(q) -> str:
    numerator, denominator = int(QQ.numer(q)), int(QQ.denom(q))
    if denominator == 1:
        return str(numerator)
    return f"{numerator}/{denominator}"


def format_scalar(a: GaussianRational) -> str:
    """Render a scalar in the literal grammar accepted by :func:`parse_scalar`."""
    real, imag = a.x, a.y
    if not imag:
        return format_rational(real)
    if imag == QQ.one:
        imag_text = "i"
    elif imag == -QQ.one:
        imag_text = "-i"
    else:
        imag_text = f"{format_rational(imag)}i"
    if not real:
        return imag_text
    sign = "" if imag_text.startswith("-") else "+"
    return f"{format_rational(real)}{sign}{imag_text}"


@dataclass(frozen=True)
class CVec2:
    """A point of C^2 with Gaussian-rational coordinates."""

    x: GaussianRational
    y: GaussianRational

    @classmethod
    def of(cls, x: ScalarLike, y: ScalarLike) -> "CVec2":
        return cls(to_scalar(x), to_scalar(y))

    @classmethod
    def parse(cls, pair) -> "CVec2":
        """Build from a two-element sequence of literals (config-file form)."""
        if len(pair) != 2:
            raise ScalarParseError(f"Expected a pair of scalars, got {pair!r}")
        return cls(to_scalar(pair[0]), to_scalar(pair[1]))

    def __add__(self, other: "CVec2") -> "CVec2":
        return CVec2(self.x + other.x, self.y + other.y)

    def __sub__(self, other: "CVec2") -> "CVec2":
        return CVec2(self.x - other.x, self.y - other.y)

    def __neg__(self) -> "CVec2":
        return CVec2(-self.x, -self.y)

    def __mul__(self, scalar: ScalarLike) -> "CVec2":
        c = to_scalar(scalar)
        return CVec2(self.x * c, self.y * c)

    __rmul__ = __mul__

    def is_zero(self) -> bool:
        return not self.x and not self.y

    def as_strings(self) -> Tuple[str, str]:
        return (format_scalar(self.x), format_scalar(self.y))

    def __str__(self) -> str:
        return f"({format_scalar(self.x)}, {format_scalar(self.y)})"


ORIGIN = CVec2(ZERO, ZERO)
RHO = CVec2(ONE, ONE)
RHO_DAGGER = CVec2(ZERO, ONE)


def symplectic(u: CVec2, v: CVec2) -> GaussianRational:
    """The standard symplectic form <(a,b),(c,d)> = ad - bc."""
    return u.x * v.y - u.y * v.x
