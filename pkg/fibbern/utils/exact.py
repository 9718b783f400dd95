"""
Exact scalar and polynomial arithmetic over the rationals and the quadratic field Q(sqrt 5).

Rationals are ``fractions.Fraction`` (always normalized, arbitrary precision).
``QuadExt`` is a + b*sqrt(5) with rational a, b; ``DensePoly`` is a polynomial
with ``QuadExt`` coefficients stored by ascending degree.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Tuple, Union

Rational = Fraction

Scalar = Union[int, Fraction, "QuadExt"]


def to_fraction(value: Union[int, Fraction, str]) -> Fraction:
    """
    Convert an integer, Fraction or "p/q" string to an exact Fraction.

    Raises:
        TypeError: For floats and any other inexact or unknown type
    """
    if isinstance(value, Fraction):
        return value
    if isinstance(value, int):
        return Fraction(value)
    if isinstance(value, str):
        return Fraction(value.strip())
    raise TypeError(f"Cannot convert {type(value).__name__} to an exact rational")


@lru_cache(maxsize=None)
def binomial(n: int, k: int) -> int:
    """Binomial coefficient C(n, k); zero outside 0 <= k <= n."""
    if n < 0 or k < 0 or k > n:
        return 0
    return math.comb(n, k)


@dataclass(frozen=True, slots=True, eq=False)
class QuadExt:
    """An element rat + irr*sqrt(5) of Q(sqrt 5)."""

    rat: Fraction = Fraction(0)
    irr: Fraction = Fraction(0)

    def __post_init__(self) -> None:
        if type(self.rat) is not Fraction:
            object.__setattr__(self, "rat", to_fraction(self.rat))
        if type(self.irr) is not Fraction:
            object.__setattr__(self, "irr", to_fraction(self.irr))

    @staticmethod
    def lift(value: Scalar) -> "QuadExt":
        """Embed an int or Fraction into Q(sqrt 5); QuadExt values pass through."""
        if isinstance(value, QuadExt):
            return value
        return QuadExt(to_fraction(value), Fraction(0))

    # Field operations

    def __add__(self, other: Scalar) -> "QuadExt":
        try:
            o = QuadExt.lift(other)
        except TypeError:
            return NotImplemented
        return QuadExt(self.rat + o.rat, self.irr + o.irr)

    __radd__ = __add__

    def __sub__(self, other: Scalar) -> "QuadExt":
        try:
            o = QuadExt.lift(other)
        except TypeError:
            return NotImplemented
        return QuadExt(self.rat - o.rat, self.irr - o.irr)

    def __rsub__(self, other: Scalar) -> "QuadExt":
        try:
            o = QuadExt.lift(other)
        except TypeError:
            return NotImplemented
        return QuadExt(o.rat - self.rat, o.irr - self.irr)

    def __mul__(self, other: Scalar) -> "QuadExt":
        try:
            o = QuadExt.lift(other)
        except TypeError:
            return NotImplemented
        return QuadExt(
            self.rat * o.rat + 5 * self.irr * o.irr,
            self.rat * o.irr + self.irr * o.rat,
        )

    __rmul__ = __mul__

    def __truediv__(self, other: Scalar) -> "QuadExt":
        try:
            o = QuadExt.lift(other)
        except TypeError:
            return NotImplemented
        return self * o.inverse()

    def __rtruediv__(self, other: Scalar) -> "QuadExt":
        try:
            o = QuadExt.lift(other)
        except TypeError:
            return NotImplemented
        return o * self.inverse()

    def __neg__(self) -> "QuadExt":
        return QuadExt(-self.rat, -self.irr)

    def __pos__(self) -> "QuadExt":
        return self

    def __pow__(self, k: int) -> "QuadExt":
        if not isinstance(k, int):
            return NotImplemented
        if k < 0:
            return quad_pow(self.inverse(), -k)
        return quad_pow(self, k)

    def conj(self) -> "QuadExt":
        """Galois conjugate: sqrt(5) -> -sqrt(5)."""
        return QuadExt(self.rat, -self.irr)

    def norm(self) -> Fraction:
        """Field norm a^2 - 5b^2 (multiplicative)."""
        return self.rat * self.rat - 5 * self.irr * self.irr

    def inverse(self) -> "QuadExt":
        """
        Multiplicative inverse conj(a)/norm(a).

        Raises:
            ZeroDivisionError: If the element is zero
        """
        n = self.norm()
        if n == 0:
            raise ZeroDivisionError("inverse of zero in Q(sqrt 5)")
        return QuadExt(self.rat / n, -self.irr / n)

    # Predicates and comparison

    def is_zero(self) -> bool:
        return self.rat == 0 and self.irr == 0

    def is_rational(self) -> bool:
        return self.irr == 0

    def __bool__(self) -> bool:
        return not self.is_zero()

    def __eq__(self, other: object) -> bool:
        if isinstance(other, QuadExt):
            return self.rat == other.rat and self.irr == other.irr
        if isinstance(other, (int, Fraction)):
            return self.irr == 0 and self.rat == other
        return NotImplemented

    def __hash__(self) -> int:
        if self.irr == 0:
            return hash(self.rat)
        return hash((self.rat, self.irr))

    def sort_key(self) -> Tuple[Fraction, Fraction]:
        """Total order used for deterministic report ordering."""
        return (self.rat, self.irr)

    def __repr__(self) -> str:
        return f"QuadExt({self.rat}, {self.irr})"

    def __str__(self) -> str:
        return format_quad(self)


ZERO = QuadExt()
ONE = QuadExt(1)
SQRT5 = QuadExt(0, 1)
ALPHA = QuadExt(Fraction(1, 2), Fraction(1, 2))
BETA = ALPHA.conj()


def quad_mul(a: QuadExt, b: QuadExt) -> QuadExt:
    """Exact product in Q(sqrt 5)."""
    return a * b


def quad_pow(a: QuadExt, k: int) -> QuadExt:
    """
    a**k by repeated squaring.

    Args:
        a: Base
        k: Non-negative exponent

    Raises:
        ValueError: If k is negative (use ``a ** k`` for inverse powers)
    """
    if k < 0:
        raise ValueError(f"quad_pow needs a non-negative exponent, got {k}")
    result = ONE
    base = QuadExt.lift(a)
    while k:
        if k & 1:
            result = result * base
        k >>= 1
        if k:
            base = base * base
    return result


def quad_conj(a: QuadExt) -> QuadExt:
    return QuadExt.lift(a).conj()


def format_quad(q: Scalar) -> str:
    """Render as "p/q + (r/s)√5", dropping zero components."""
    q = QuadExt.lift(q)
    if q.irr == 0:
        return str(q.rat)
    magnitude = abs(q.irr)
    surd = "√5" if magnitude == 1 else f"({magnitude})√5"
    if q.rat == 0:
        return surd if q.irr > 0 else f"-{surd}"
    sign = "+" if q.irr > 0 else "-"
    return f"{q.rat} {sign} {surd}"


def parse_quad(text: str) -> QuadExt:
    """
    Parse a Q(sqrt 5) literal.

    Accepted forms: ``alpha``, ``beta``, ``sqrt5``, a rational ``p/q`` and
    ``a,b`` meaning a + b*sqrt(5).

    Raises:
        ValueError: If the text is not one of the accepted forms
    """
    token = text.strip().lower()
    named = {"alpha": ALPHA, "beta": BETA, "sqrt5": SQRT5, "-sqrt5": -SQRT5}
    if token in named:
        return named[token]
    try:
        if "," in token:
            rat, irr = token.split(",", 1)
            return QuadExt(Fraction(rat.strip()), Fraction(irr.strip()))
        return QuadExt(Fraction(token))
    except (ValueError, ZeroDivisionError) as e:
        raise ValueError(f"Not a Q(sqrt 5) literal: {text!r} ({e})")


@dataclass(frozen=True, slots=True)
class DensePoly:
    """
    Polynomial over Q(sqrt 5); ``coeffs[k]`` is the coefficient of x**k.

    Trailing zero coefficients are stripped, so the zero polynomial has
    ``coeffs == ()`` and degree -1.
    """

    coeffs: Tuple[QuadExt, ...] = ()

    def __post_init__(self) -> None:
        cs = [QuadExt.lift(c) for c in self.coeffs]
        while cs and cs[-1].is_zero():
            cs.pop()
        object.__setattr__(self, "coeffs", tuple(cs))

    @classmethod
    def constant(cls, c: Scalar) -> "DensePoly":
        return cls((c,))

    @classmethod
    def linear(cls, slope: Scalar, intercept: Scalar) -> "DensePoly":
        """slope*x + intercept."""
        return cls((intercept, slope))

    @classmethod
    def monomial(cls, k: int, c: Scalar = 1) -> "DensePoly":
        return cls(tuple([ZERO] * k) + (QuadExt.lift(c),))

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    def coeff(self, k: int) -> QuadExt:
        if 0 <= k < len(self.coeffs):
            return self.coeffs[k]
        return ZERO

    def is_zero(self) -> bool:
        return not self.coeffs

    def __add__(self, other: Union["DensePoly", Scalar]) -> "DensePoly":
        if not isinstance(other, DensePoly):
            try:
                other = DensePoly.constant(other)
            except TypeError:
                return NotImplemented
        size = max(len(self.coeffs), len(other.coeffs))
        return DensePoly(tuple(self.coeff(k) + other.coeff(k) for k in range(size)))

    __radd__ = __add__

    def __neg__(self) -> "DensePoly":
        return DensePoly(tuple(-c for c in self.coeffs))

    def __sub__(self, other: Union["DensePoly", Scalar]) -> "DensePoly":
        if not isinstance(other, DensePoly):
            try:
                other = DensePoly.constant(other)
            except TypeError:
                return NotImplemented
        return self + (-other)

    def __rsub__(self, other: Scalar) -> "DensePoly":
        return DensePoly.constant(other) - self

    def __mul__(self, other: Union["DensePoly", Scalar]) -> "DensePoly":
        if isinstance(other, DensePoly):
            if self.is_zero() or other.is_zero():
                return DensePoly()
            out = [ZERO] * (len(self.coeffs) + len(other.coeffs) - 1)
            for i, a in enumerate(self.coeffs):
                if a.is_zero():
                    continue
                for k, b in enumerate(other.coeffs):
                    out[i + k] = out[i + k] + a * b
            return DensePoly(tuple(out))
        try:
            return self.scale(other)
        except TypeError:
            return NotImplemented

    __rmul__ = __mul__

    def __pow__(self, k: int) -> "DensePoly":
        if not isinstance(k, int) or k < 0:
            raise ValueError(f"DensePoly power needs a non-negative integer, got {k!r}")
        result = DensePoly.constant(1)
        base = self
        while k:
            if k & 1:
                result = result * base
            k >>= 1
            if k:
                base = base * base
        return result

    def scale(self, c: Scalar) -> "DensePoly":
        c = QuadExt.lift(c)
        return DensePoly(tuple(a * c for a in self.coeffs))

    def compose_linear(self, a: Scalar, b: Scalar) -> "DensePoly":
        """Return p(a*x + b) by Horner's scheme over polynomials."""
        inner = DensePoly.linear(a, b)
        result = DensePoly()
        for c in reversed(self.coeffs):
            result = result * inner + c
        return result

    def __call__(self, x: Scalar) -> QuadExt:
        return poly_eval(self, x)

    def __str__(self) -> str:
        return format_poly(self)


def poly_eval(p: DensePoly, x: Scalar) -> QuadExt:
    """Exact value of p at x (Horner)."""
    x = QuadExt.lift(x)
    acc = ZERO
    for c in reversed(p.coeffs):
        acc = acc * x + c
    return acc


def format_poly(p: DensePoly, var: str = "x") -> str:
    """Render as "c0 + (c1)·x + (c2)·x^2", omitting zero terms."""
    if p.is_zero():
        return "0"
    terms = []
    for k, c in enumerate(p.coeffs):
        if c.is_zero():
            continue
        text = format_quad(c)
        if k == 0:
            terms.append(text)
        else:
            power = var if k == 1 else f"{var}^{k}"
            terms.append(f"({text})·{power}")
    return " + ".join(terms)
