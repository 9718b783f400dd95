"""
Truncated Laurent exponential generating functions over Q(sqrt 5).

A ``LaurentEgf`` stores a regular part in EGF normalization (entry n is a_n,
the coefficient of z**n being a_n/n!) plus raw coefficients of z**-2 and
z**-1. Every series carries the order N through which its coefficients are
known; products shrink that order by the partner's pole depth.
"""
from __future__ import annotations

import logging
import math
from dataclasses import dataclass
from enum import Enum
from fractions import Fraction
from functools import lru_cache
from typing import Callable, Optional, Tuple

from .bernoulli import bernoulli_number, bernoulli_poly_at
from .exact import SQRT5, ZERO, QuadExt, Scalar, binomial
from .models import FunctionalEquation, SeriesVerdict
from .sequences import fib, lucas

logger = logging.getLogger(__name__)


class TruncationError(IndexError):
    """Coefficient requested outside a series' valid range."""


class PoleOrderError(ValueError):
    """A series would need a pole of order greater than two."""


class HyperbolicKind(str, Enum):
    SINH = "sinh"
    COSH = "cosh"
    TANH = "tanh"
    COTH = "coth"
    INV_SINH_SQ = "inv_sinh_sq"
    INV_COSH_SQ = "inv_cosh_sq"


@dataclass(frozen=True)
class LaurentEgf:
    """
    principal: raw coefficients of (z**-2, z**-1)
    coeffs: EGF-normalized a_0..a_N
    """

    principal: Tuple[QuadExt, QuadExt]
    coeffs: Tuple[QuadExt, ...]

    @property
    def order(self) -> int:
        return len(self.coeffs) - 1

    @property
    def pole_depth(self) -> int:
        if not self.principal[0].is_zero():
            return 2
        if not self.principal[1].is_zero():
            return 1
        return 0

    def raw(self, n: int) -> QuadExt:
        """Plain power-series coefficient of z**n (a_n/n! for n >= 0)."""
        if n < 0:
            return egf_coeff(self, n)
        return egf_coeff(self, n) / math.factorial(n)

    def regular_part(self) -> "LaurentEgf":
        return LaurentEgf((ZERO, ZERO), self.coeffs)

    def scale(self, c: Scalar) -> "LaurentEgf":
        c = QuadExt.lift(c)
        return LaurentEgf(
            (self.principal[0] * c, self.principal[1] * c),
            tuple(a * c for a in self.coeffs),
        )

    def __add__(self, other: "LaurentEgf") -> "LaurentEgf":
        order = min(self.order, other.order)
        return LaurentEgf(
            (self.principal[0] + other.principal[0], self.principal[1] + other.principal[1]),
            tuple(self.coeffs[n] + other.coeffs[n] for n in range(order + 1)),
        )

    def __neg__(self) -> "LaurentEgf":
        return self.scale(-1)

    def __sub__(self, other: "LaurentEgf") -> "LaurentEgf":
        return self + (-other)

    def __mul__(self, other: "LaurentEgf") -> "LaurentEgf":
        return egf_mul(self, other)

    def shift(self, k: int) -> "LaurentEgf":
        return egf_shift(self, k)

    def coeff(self, n: int) -> QuadExt:
        return egf_coeff(self, n)


def egf_from_terms(term: Callable[[int], Scalar], order: int) -> LaurentEgf:
    """Regular series whose EGF coefficient a_n is ``term(n)`` for n <= order."""
    if order < 0:
        raise ValueError(f"order must be non-negative, got {order}")
    return LaurentEgf((ZERO, ZERO), tuple(QuadExt.lift(term(n)) for n in range(order + 1)))


def egf_exp(c: Scalar, order: int) -> LaurentEgf:
    """e^{cz}: a_n = c**n."""
    c = QuadExt.lift(c)
    if order < 0:
        raise ValueError(f"order must be non-negative, got {order}")
    out = []
    power = QuadExt(1)
    for _ in range(order + 1):
        out.append(power)
        power = power * c
    return LaurentEgf((ZERO, ZERO), tuple(out))


def _tanh_term(n: int) -> Fraction:
    # EGF coefficient of tanh(z) at odd n
    m = n + 1
    return Fraction(2 ** m * (2 ** m - 1)) * bernoulli_number(m) / m


def _coth_term(n: int) -> Fraction:
    # regular EGF coefficient of coth(z) at odd n
    m = n + 1
    return Fraction(2 ** m) * bernoulli_number(m) / m


def _inv_sinh_sq_term(n: int) -> Fraction:
    # regular EGF coefficient of 1/sinh^2(z) at even n
    m = n + 2
    return -Fraction(2 ** m) * bernoulli_number(m) / m


def _inv_cosh_sq_term(n: int) -> Fraction:
    # EGF coefficient of 1/cosh^2(z) at even n
    m = n + 2
    return Fraction(2 ** m * (2 ** m - 1)) * bernoulli_number(m) / m


def egf_hyperbolic(kind: HyperbolicKind, c: Scalar, order: int) -> LaurentEgf:
    """
    Series of kind(c*z) through ``order``.

    tanh and 1/cosh^2 use their Bernoulli-number coefficient formulas
    directly; coth and 1/sinh^2 carry the principal parts 1/(cz) and
    1/(cz)^2.

    Raises:
        ValueError: If c == 0 for tanh, coth, inv_sinh_sq or inv_cosh_sq,
            or if order is negative
    """
    kind = HyperbolicKind(kind)
    c = QuadExt.lift(c)
    if order < 0:
        raise ValueError(f"order must be non-negative, got {order}")
    if c.is_zero() and kind not in (HyperbolicKind.SINH, HyperbolicKind.COSH):
        raise ValueError(f"{kind.value} needs a nonzero argument scale")

    powers = [QuadExt(1)]
    for _ in range(order):
        powers.append(powers[-1] * c)

    coeffs = []
    principal = (ZERO, ZERO)
    for n in range(order + 1):
        odd = n % 2 == 1
        if kind is HyperbolicKind.SINH:
            value = powers[n] if odd else ZERO
        elif kind is HyperbolicKind.COSH:
            value = ZERO if odd else powers[n]
        elif kind is HyperbolicKind.TANH:
            value = powers[n] * _tanh_term(n) if odd else ZERO
        elif kind is HyperbolicKind.COTH:
            value = powers[n] * _coth_term(n) if odd else ZERO
        elif kind is HyperbolicKind.INV_SINH_SQ:
            value = ZERO if odd else powers[n] * _inv_sinh_sq_term(n)
        else:
            value = ZERO if odd else powers[n] * _inv_cosh_sq_term(n)
        coeffs.append(value)

    if kind is HyperbolicKind.COTH:
        principal = (ZERO, c.inverse())
    elif kind is HyperbolicKind.INV_SINH_SQ:
        principal = ((c * c).inverse(), ZERO)
    return LaurentEgf(principal, tuple(coeffs))


def egf_mul(a: LaurentEgf, b: LaurentEgf) -> LaurentEgf:
    """
    Cauchy product in EGF normalization.

    Regular part: c_m = sum_k C(m,k) a_k b_{m-k}, plus the cross terms of each
    principal coefficient with the partner's regular part. The result is
    valid through min(N_a - depth(b), N_b - depth(a)).

    Raises:
        PoleOrderError: If the product has a pole of order three or more
        TruncationError: If no coefficient of the product is determined
    """
    pa2, pa1 = a.principal
    pb2, pb1 = b.principal
    order = min(a.order, b.order, a.order - b.pole_depth, b.order - a.pole_depth)
    if order < 0:
        raise TruncationError(
            f"product of orders {a.order} and {b.order} with pole depths "
            f"{a.pole_depth}, {b.pole_depth} determines no coefficients"
        )

    if not (pa2 * pb2).is_zero() or not (pa2 * pb1 + pa1 * pb2).is_zero():
        raise PoleOrderError("product would have a pole of order greater than two")

    coeffs = []
    for m in range(order + 1):
        acc = ZERO
        for k in range(m + 1):
            x = a.coeffs[k]
            if x.is_zero():
                continue
            y = b.coeffs[m - k]
            if y.is_zero():
                continue
            acc = acc + x * y * binomial(m, k)
        # z^-1 times z^(m+1), z^-2 times z^(m+2) in EGF normalization
        if not pa1.is_zero():
            acc = acc + pa1 * b.coeffs[m + 1] / (m + 1)
        if not pb1.is_zero():
            acc = acc + pb1 * a.coeffs[m + 1] / (m + 1)
        if not pa2.is_zero():
            acc = acc + pa2 * b.coeffs[m + 2] / ((m + 1) * (m + 2))
        if not pb2.is_zero():
            acc = acc + pb2 * a.coeffs[m + 2] / ((m + 1) * (m + 2))
        coeffs.append(acc)

    minus_one = pa1 * b.coeffs[0] + pb1 * a.coeffs[0]
    if b.order >= 1:
        minus_one = minus_one + pa2 * b.coeffs[1]
    if a.order >= 1:
        minus_one = minus_one + pb2 * a.coeffs[1]
    minus_two = pa2 * b.coeffs[0] + pb2 * a.coeffs[0] + pa1 * pb1
    return LaurentEgf((minus_two, minus_one), tuple(coeffs))


def egf_shift(s: LaurentEgf, k: int) -> LaurentEgf:
    """Multiply by z**k (k >= 0); the order grows by k."""
    if k < 0:
        raise ValueError(f"shift must be non-negative, got {k}")
    if k == 0:
        return s
    raw = {-2: s.principal[0], -1: s.principal[1]}
    new_principal = (raw.get(-2 - k, ZERO), raw.get(-1 - k, ZERO))
    coeffs = []
    for m in range(s.order + k + 1):
        src = m - k
        if src >= 0:
            # m!/(m-k)! = falling factorial
            coeffs.append(s.coeffs[src] * (math.factorial(m) // math.factorial(src)))
        else:
            coeffs.append(raw.get(src, ZERO) * math.factorial(m))
    return LaurentEgf(new_principal, tuple(coeffs))


def egf_coeff(s: LaurentEgf, n: int) -> QuadExt:
    """
    a_n for 0 <= n <= order (EGF normalization), raw principal coefficient
    for n in {-2, -1}.

    Raises:
        TruncationError: If n is outside [-2, order]
    """
    if n < -2 or n > s.order:
        raise TruncationError(f"coefficient {n} outside valid range [-2, {s.order}]")
    if n < 0:
        return s.principal[n + 2]
    return s.coeffs[n]


# Functional equations


def _series_scale(j: int) -> QuadExt:
    """c = sqrt(5) F_j / 2, the argument scale of the hyperbolic factors."""
    return QuadExt(0, Fraction(fib(j), 2))


def fib_series(j: int, order: int) -> LaurentEgf:
    """EGF of (F_{jn})."""
    return egf_from_terms(lambda n: fib(j * n), order)


def lucas_series(j: int, order: int) -> LaurentEgf:
    """EGF of (L_{jn})."""
    return egf_from_terms(lambda n: lucas(j * n), order)


def bernoulli_series(x: QuadExt, scale: QuadExt, order: int) -> LaurentEgf:
    """H(x, scale*z): a_n = B_n(x) * scale**n."""
    return egf_from_terms(lambda n: bernoulli_poly_at(n, x) * scale ** n, order)


def _equation_sides(
    eq_id: FunctionalEquation, j: int, order: int, x: QuadExt
) -> Tuple[LaurentEgf, LaurentEgf]:
    c = _series_scale(j)
    big_l = lucas(j)
    big_f = fib(j)
    fz = fib_series(j, order)
    lz = lucas_series(j, order)
    sinh = egf_hyperbolic(HyperbolicKind.SINH, c, order)
    cosh = egf_hyperbolic(HyperbolicKind.COSH, c, order)

    if eq_id is FunctionalEquation.EGF_F_SQ:
        return fz * fz, (egf_exp(big_l, order) * sinh * sinh).scale(Fraction(4, 5))
    if eq_id is FunctionalEquation.EGF_L_SQ:
        return lz * lz, (egf_exp(big_l, order) * cosh * cosh).scale(4)
    if eq_id is FunctionalEquation.FL_ID:
        inv_sq = egf_hyperbolic(HyperbolicKind.INV_SINH_SQ, c, order)
        coth = egf_hyperbolic(HyperbolicKind.COTH, c, order)
        return fz * lz * inv_sq, (egf_exp(big_l, order) * coth).scale(QuadExt(4) / SQRT5)
    if eq_id is FunctionalEquation.TANH_FORM:
        lhs = (fz * egf_exp(Fraction(-big_l, 2), order)).scale(SQRT5 / 2)
        return lhs, egf_hyperbolic(HyperbolicKind.TANH, c, order) * cosh
    if eq_id is FunctionalEquation.COTH_FORM:
        lhs = (lz * egf_exp(Fraction(-big_l, 2), order)).scale(Fraction(1, 2))
        return lhs, egf_hyperbolic(HyperbolicKind.COTH, c, order) * sinh
    # H_RELATION
    h = bernoulli_series(x, SQRT5 * big_f, order)
    rhs = egf_exp(big_l, order) * egf_exp(c * (2 * x - 1), order) * cosh
    return fz * lz * h, rhs.shift(1).scale(2 * big_f)


def check_functional_equation(
    eq_id: FunctionalEquation, j: int, order: int, x: Optional[QuadExt] = None
) -> SeriesVerdict:
    """
    Build both sides of a generating-function equation from independent
    ingredients and compare coefficients -2..order.

    Raises:
        ValueError: If j < 1 or order < 4
    """
    eq_id = FunctionalEquation(eq_id)
    if j < 1:
        raise ValueError(f"j must be positive, got {j}")
    if order < 4:
        raise ValueError(f"order must be at least 4, got {order}")
    x = QuadExt.lift(x) if x is not None else QuadExt(0)

    lhs, rhs = _equation_sides(eq_id, j, order + 2, x)
    reach = min(lhs.order, rhs.order, order)
    mismatch = None
    for n in range(-2, reach + 1):
        if egf_coeff(lhs, n) != egf_coeff(rhs, n):
            mismatch = n
            break
    confirmed = mismatch is None and reach >= order
    logger.debug(f"{eq_id.value} j={j}: compared through {reach}, mismatch={mismatch}")
    return SeriesVerdict(
        equation=eq_id,
        j=j,
        order=order,
        x=str(x) if eq_id is FunctionalEquation.H_RELATION else None,
        confirmed=confirmed,
        checked_through=reach,
        first_mismatch=mismatch,
        principal=(str(lhs.principal[0]), str(lhs.principal[1])),
    )


@lru_cache(maxsize=256)
def cached_hyperbolic(kind: HyperbolicKind, c: QuadExt, order: int) -> LaurentEgf:
    return egf_hyperbolic(kind, c, order)


@lru_cache(maxsize=256)
def cached_exp(c: QuadExt, order: int) -> LaurentEgf:
    return egf_exp(c, order)
