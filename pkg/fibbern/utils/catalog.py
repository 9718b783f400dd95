"""
Identity catalog: every Fibonacci/Lucas-Bernoulli identity as a pair of
exact left- and right-hand side evaluators plus its declared domain.

Each evaluator is a literal transcription of the displayed formula (after
the ledgered corrections). Side conditions (parity, lower bounds on n, j and
q) are data on the entry, so the grid runner can gate without per-identity
code. Entries whose printed form differs from the verified one also carry
the printed variant for ledger evidence.
"""
from __future__ import annotations

from dataclasses import dataclass
from enum import Enum
from fractions import Fraction
from typing import Callable, Dict, List, Optional, Sequence, Tuple, Union

from .bernoulli import (
    bernoulli_number,
    bernoulli_poly,
    bernoulli_poly_at,
    scaled_bernoulli_poly,
    shifted_bernoulli_poly,
)
from .exact import ALPHA, BETA, SQRT5, ZERO, DensePoly, QuadExt, Scalar, binomial
from .models import IdentityId, IdentityParams
from .sequences import alpha_power, beta_power, fib, lucas

Value = Union[QuadExt, DensePoly]
Evaluator = Callable[[IdentityParams], Union[Scalar, DensePoly]]


class Family(str, Enum):
    SCALAR = "scalar"
    POLYNOMIAL = "polynomial"
    POINTWISE = "pointwise"


class Parity(str, Enum):
    EVEN = "even"
    ODD = "odd"


class SequenceKind(str, Enum):
    F = "F"
    L = "L"


@dataclass(frozen=True)
class CatalogEntry:
    """
    One identity and its declared domain.

    axes: parameter names the grid must supply (x is an axis only for
        pointwise identities; polynomial identities are compared in x)
    printed_rhs / printed_n_min / printed_axes: the literal printed variant,
        when it differs from the verified one
    """

    tag: IdentityId
    title: str
    family: Family
    axes: Tuple[str, ...]
    lhs: Evaluator
    rhs: Evaluator
    parity: Optional[Parity] = None
    n_min: int = 0
    j_min: int = 1
    q_min: int = 2
    printed_rhs: Optional[Evaluator] = None
    printed_n_min: Optional[int] = None
    printed_axes: Optional[Tuple[str, ...]] = None

    @property
    def has_printed_form(self) -> bool:
        return (
            self.printed_rhs is not None
            or self.printed_n_min is not None
            or self.printed_axes is not None
        )

    def admits(self, n: int, printed: bool = False) -> bool:
        """True when n satisfies the parity and range side conditions."""
        n_min = self.printed_n_min if printed and self.printed_n_min is not None else self.n_min
        if n < n_min:
            return False
        if self.parity is Parity.EVEN and n % 2:
            return False
        if self.parity is Parity.ODD and n % 2 == 0:
            return False
        return True


# Shared pieces


def _root(j: int) -> QuadExt:
    """sqrt(5) * F_j."""
    return QuadExt(0, fib(j))


def _signed_root(p: IdentityParams) -> QuadExt:
    return _root(p.j) * p.sign_value


def _b(n: int) -> Fraction:
    return bernoulli_number(n)


def _golden_point(j: int) -> QuadExt:
    """alpha**j / L_j."""
    return alpha_power(j) / lucas(j)


def _frac_pow(base: int, e: int) -> Fraction:
    return Fraction(base) ** e


def _lj_ratio(j: int) -> QuadExt:
    """L_j / (sqrt(5) F_j)."""
    return QuadExt(lucas(j)) / _root(j)


# Lucas transforms (finite coefficient lists)

Coefficients = Sequence[Tuple[Scalar, int]]


def lucas_transform(
    coeffs: Coefficients, i: int, m: int, z: Scalar, kind: SequenceKind
) -> QuadExt:
    """
    sum_k v_k S_{i w_k + m} z**w_k with S = F or L.

    Args:
        coeffs: Finite list of (v_k, w_k) pairs describing h(z) = sum v_k z**w_k
        i: Index multiplier
        m: Index offset
        z: Evaluation point (nonzero when some w_k is negative)
        kind: ``F`` or ``L``
    """
    seq = fib if SequenceKind(kind) is SequenceKind.F else lucas
    z = QuadExt.lift(z)
    acc = ZERO
    for v, w in coeffs:
        acc = acc + QuadExt.lift(v) * seq(i * w + m) * z ** w
    return acc


def evaluate_h(coeffs: Coefficients, z: Scalar) -> QuadExt:
    """h(z) = sum v_k z**w_k."""
    z = QuadExt.lift(z)
    acc = ZERO
    for v, w in coeffs:
        acc = acc + QuadExt.lift(v) * z ** w
    return acc


def lucas_transform_closed(
    coeffs: Coefficients, i: int, m: int, z: Scalar, kind: SequenceKind, printed: bool = False
) -> QuadExt:
    """
    Closed form of ``lucas_transform`` through h(alpha**i z) and h(beta**i z).

    F: (alpha**m h(alpha**i z) - beta**m h(beta**i z)) / sqrt(5)
    L:  alpha**m h(alpha**i z) + beta**m h(beta**i z)

    With ``printed=True`` the two signs are swapped, reproducing the form
    that disagrees with the Binet formula.
    """
    z = QuadExt.lift(z)
    a = alpha_power(m) * evaluate_h(coeffs, alpha_power(i) * z)
    b = beta_power(m) * evaluate_h(coeffs, beta_power(i) * z)
    is_f = SequenceKind(kind) is SequenceKind.F
    if is_f != printed:
        combined = a - b
    else:
        combined = a + b
    return combined / SQRT5 if is_f else combined


def bernoulli_shift_coeffs(n: int, x: Scalar) -> List[Tuple[QuadExt, int]]:
    """(C(n,k) B_{n-k}(x), k) for k = 0..n, the coefficients of B_n(x + z) in z."""
    x = QuadExt.lift(x)
    return [(bernoulli_poly_at(n - k, x) * binomial(n, k), k) for k in range(n + 1)]


# Binomial convolutions of F and L


def _l1a_lhs(p: IdentityParams) -> Scalar:
    n, j = p.n, p.j
    return sum(binomial(n, k) * fib(j * k) * fib(j * (n - k)) for k in range(n + 1))


def _l1a_rhs(p: IdentityParams) -> Scalar:
    n, j = p.n, p.j
    return Fraction(2 ** n * lucas(j * n) - 2 * lucas(j) ** n, 5)


def _l1b_lhs(p: IdentityParams) -> Scalar:
    n, j = p.n, p.j
    return sum(binomial(n, k) * lucas(j * k) * lucas(j * (n - k)) for k in range(n + 1))


def _l1b_rhs(p: IdentityParams) -> Scalar:
    n, j = p.n, p.j
    return 2 ** n * lucas(j * n) + 2 * lucas(j) ** n


def _l1c_lhs(p: IdentityParams) -> Scalar:
    n, j = p.n, p.j
    return sum(binomial(n, k) * fib(j * k) * lucas(j * (n - k)) for k in range(n + 1))


def _l1c_rhs(p: IdentityParams) -> Scalar:
    return 2 ** p.n * fib(p.j * p.n)


# Threefold convolutions and their j = 1 specials


def _t1a_sum(n: int, j: int) -> QuadExt:
    root = _root(j)
    acc = ZERO
    for k in range(n + 1):
        i = n - k
        if i % 2:
            continue
        weight = 2 ** k * lucas(j * k) - 2 * lucas(j) ** k
        acc = acc + root ** i * (binomial(n, k) * weight * _b(i + 2) / (i + 2))
    return acc


def _t1b_sum(n: int, j: int) -> QuadExt:
    root = _root(j)
    acc = ZERO
    for k in range(n + 1):
        i = n - k
        if i % 2:
            continue
        weight = 2 ** k * lucas(j * k) + 2 * lucas(j) ** k
        acc = acc + root ** i * (binomial(n, k) * weight * Fraction(2 ** (i + 2) - 1, i + 2) * _b(i + 2))
    return acc


def _t1c_sum(n: int, j: int) -> QuadExt:
    root = _root(j)
    even_part = ZERO
    odd_part = ZERO
    for k in range(n + 1):
        i = n - k
        if i % 2 == 0:
            even_part = even_part + root ** i * (binomial(n, k) * 2 ** k * fib(j * k) * _b(i + 2) / (i + 2))
        elif k <= n - 1:
            odd_part = odd_part + root ** i * (binomial(n, k) * lucas(j) ** k * _b(i + 1) / (i + 1))
    return even_part + odd_part * 2 / SQRT5


def _t1a_lhs(p: IdentityParams) -> Scalar:
    return _t1a_sum(p.n, p.j)


def _t1a_rhs(p: IdentityParams) -> Scalar:
    n, j = p.n, p.j
    big_l, big_f = lucas(j), fib(j)
    head = Fraction(
        2 ** (n + 2) * lucas(j * (n + 2)) - 2 * big_l ** (n + 2),
        5 * (n + 1) * (n + 2) * big_f ** 2,
    )
    return head - big_l ** n


def _t1b_lhs(p: IdentityParams) -> Scalar:
    return _t1b_sum(p.n, p.j)


def _t1b_rhs(p: IdentityParams) -> Scalar:
    return lucas(p.j) ** p.n


def _t1c_lhs(p: IdentityParams) -> Scalar:
    return _t1c_sum(p.n, p.j)


def _t1c_closed(n: int, j: int, power: int) -> Fraction:
    big_l, big_f = lucas(j), fib(j)
    head = Fraction(2 ** power * fib(j * (n + 2)), 5 * (n + 1) * (n + 2) * big_f ** 2)
    return head - Fraction(2 * big_l ** (n + 1), 5 * (n + 1) * big_f)


def _t1c_rhs(p: IdentityParams) -> Scalar:
    return _t1c_closed(p.n, p.j, p.n + 2)


def _t1c_printed_rhs(p: IdentityParams) -> Scalar:
    return _t1c_closed(p.n, p.j, p.n + 3)


def _spec_a_lhs(p: IdentityParams) -> Scalar:
    return _t1a_sum(p.n, 1)


def _spec_a_rhs(p: IdentityParams) -> Scalar:
    n = p.n
    return Fraction(2 ** (n + 2) * lucas(n + 2) - 2, 5 * (n + 1) * (n + 2)) - 1


def _spec_b_lhs(p: IdentityParams) -> Scalar:
    return _t1b_sum(p.n, 1)


def _spec_c_lhs(p: IdentityParams) -> Scalar:
    return _t1c_sum(p.n, 1)


def _spec_c_rhs(p: IdentityParams) -> Scalar:
    n = p.n
    return Fraction(2, 5 * (n + 1)) * (Fraction(2 ** (n + 1) * fib(n + 2), n + 2) - 1)


# Mod-free forms (n even)


def _rem1_a_lhs(p: IdentityParams) -> Scalar:
    n, j = p.n, p.j
    big_l, big_f = lucas(j), fib(j)
    acc = Fraction(0)
    for k in range(n // 2 + 1):
        ratio = Fraction(
            big_l ** (2 * k + 2) - 2 ** (2 * k + 1) * lucas(2 * j * (k + 1)),
            (5 * big_f ** 2) ** (k + 1),
        )
        acc += binomial(n, 2 * k) * Fraction(n - 2 * k - 1, (k + 1) * (2 * k + 1)) * ratio * _b(n - 2 * k)
    return acc


def _rem1_rhs(p: IdentityParams) -> Scalar:
    return _lj_ratio(p.j) ** p.n


def _rem1_b_lhs(p: IdentityParams) -> Scalar:
    n, j = p.n, p.j
    big_l, big_f = lucas(j), fib(j)
    acc = Fraction(0)
    for k in range(n // 2 + 1):
        i = n - 2 * k
        ratio = Fraction(2 * big_l ** (2 * k) + 2 ** (2 * k) * lucas(2 * j * k), (5 * big_f ** 2) ** k)
        acc += binomial(n, 2 * k) * Fraction(2 ** (i + 2) - 1, i + 2) * ratio * _b(i + 2)
    return acc


def _rem1_c_lhs(p: IdentityParams) -> Scalar:
    n, j = p.n, p.j
    big_l, big_f = lucas(j), fib(j)
    acc = Fraction(0)
    for k in range(n // 2 + 1):
        inner = Fraction(n - 2 * k - 1, 2 * k + 1) * fib(j * (2 * k + 1)) + Fraction(big_f * big_l ** (2 * k), 4 ** k)
        acc += binomial(n, 2 * k) * Fraction(4, 5 * big_f ** 2) ** k * inner * _b(n - 2 * k)
    return acc


def _zero(p: IdentityParams) -> Scalar:
    return 0


# tanh and coth forms


def _t2a_lhs(p: IdentityParams) -> Scalar:
    n, j = p.n, p.j
    big_l, big_f = lucas(j), fib(j)
    ratio_n = _lj_ratio(j) ** n
    acc = ZERO
    for k in range(n + 1):
        first = ratio_n * (Fraction((-1) ** k * fib(j * (k + 1)), big_l ** k))
        second = (1 + (-1) ** n) * Fraction(2 ** (k + 3) - 2, k + 2) * big_f * _b(k + 2)
        acc = acc + (first - second) * (binomial(n, k) * Fraction(2 ** k, k + 1))
    return acc


def _t2a_part_lhs(p: IdentityParams) -> Scalar:
    n, j = p.n, p.j
    big_l = lucas(j)
    return sum(
        (Fraction((-1) ** k * binomial(2 * n - 1, k - 1) * 2 ** k * fib(j * k), k * big_l ** k) for k in range(1, 2 * n + 1)),
        Fraction(0),
    )


def _t2b_lhs(p: IdentityParams) -> Scalar:
    n, j = p.n, p.j
    big_l = lucas(j)
    ratio_n = _lj_ratio(j) ** n
    acc = ZERO
    for k in range(n + 1):
        first = ratio_n * Fraction((-1) ** k * lucas(j * k), big_l ** k)
        second = Fraction(1 + (-1) ** n, n - k + 1) * _b(k)
        acc = acc + (first - second) * (binomial(n, k) * 2 ** k)
    return acc


def _t2b_rhs(p: IdentityParams) -> Scalar:
    return 1 + (-1) ** p.n


def _t2b_part_lhs(p: IdentityParams) -> Scalar:
    n, j = p.n, p.j
    big_l = lucas(j)
    return sum(
        (Fraction((-1) ** k * binomial(2 * n - 1, k) * 2 ** k * lucas(j * k), big_l ** k) for k in range(2 * n)),
        Fraction(0),
    )


def _t2_conseq_lhs(p: IdentityParams) -> Scalar:
    n = p.n
    return sum((binomial(n, k) * 2 ** k * _b(k) / (n - k + 1) for k in range(n + 1)), Fraction(0))


# sinh over coth and cosh over tanh


def _t3a_lhs(p: IdentityParams) -> Scalar:
    n, j = p.n, p.j
    big_l, big_f = lucas(j), fib(j)
    acc = Fraction(0)
    for k in range(n // 2 + 1):
        inner = Fraction(fib(j * (n - 2 * k + 1)), n - 2 * k + 1) * _b(2 * k) - Fraction(big_f * big_l ** (n - 2 * k), 2 ** n)
        acc += binomial(n, 2 * k) * (5 * big_f ** 2) ** k * inner
    return acc


def _t3b_lhs(p: IdentityParams) -> Scalar:
    n, j = p.n, p.j
    big_l, big_f = lucas(j), fib(j)
    acc = Fraction(0)
    for k in range(n // 2 + 1):
        inner = (
            Fraction(4 ** (k + 1) - 1, k + 1) * lucas(j * (n - 2 * k)) * _b(2 * k + 2)
            - Fraction(big_l ** (n - 2 * k), 2 ** n)
        )
        acc += binomial(n, 2 * k) * Fraction((5 * big_f ** 2) ** k, 2 * k + 1) * inner
    return acc


def _t3a_even_lhs(p: IdentityParams) -> Scalar:
    n, j = p.n, p.j
    big_f = fib(j)
    acc = Fraction(0)
    for k in range(n // 2 + 1):
        acc += binomial(n, 2 * k) * Fraction((5 * big_f ** 2) ** k * fib(j * (n - 2 * k + 1)), n - 2 * k + 1) * _b(2 * k)
    return acc


def _t3a_even_rhs(p: IdentityParams) -> Scalar:
    return Fraction(fib(p.j) * lucas(p.n * p.j), 2)


# Polynomial identities from the introduction


def _fbpol_lhs(p: IdentityParams) -> DensePoly:
    n, j = p.n, p.j
    t = _signed_root(p)
    acc = DensePoly()
    for k in range(n + 1):
        acc = acc + bernoulli_poly(n - k).scale(t ** (n - k) * (binomial(n, k) * fib(j * k)))
    return acc


def _power_poly(n: int, scale: Scalar, base: DensePoly) -> DensePoly:
    """scale * n * base**(n-1), zero when n == 0."""
    if n == 0:
        return DensePoly()
    return (base ** (n - 1)).scale(QuadExt.lift(scale) * n)


def _fbpol1_rhs(p: IdentityParams) -> DensePoly:
    j = p.j
    big_f = fib(j)
    base = DensePoly.linear(_root(j), BETA * big_f + fib(j - 1))
    return _power_poly(p.n, big_f, base)


def _fbpol2_rhs(p: IdentityParams) -> DensePoly:
    j = p.j
    big_f = fib(j)
    base = DensePoly.linear(-_root(j), ALPHA * big_f + fib(j - 1))
    return _power_poly(p.n, big_f, base)


# Shifted Bernoulli polynomial sums and their x = 0 cases


def _t7_lhs(p: IdentityParams, seq: Callable[[int], int]) -> DensePoly:
    n, j, m = p.n, p.j, p.m
    z = p.z
    acc = DensePoly()
    for k in range(n + 1):
        acc = acc + bernoulli_poly(n - k).scale(z ** k * (binomial(n, k) * seq(j * k + m)))
    return acc


def _t7a_lhs(p: IdentityParams) -> DensePoly:
    return _t7_lhs(p, fib)


def _t7b_lhs(p: IdentityParams) -> DensePoly:
    return _t7_lhs(p, lucas)


def _t7_pair(p: IdentityParams) -> Tuple[DensePoly, DensePoly]:
    a = shifted_bernoulli_poly(p.n, alpha_power(p.j) * p.z).scale(alpha_power(p.m))
    b = shifted_bernoulli_poly(p.n, beta_power(p.j) * p.z).scale(beta_power(p.m))
    return a, b


def _t7a_rhs(p: IdentityParams) -> DensePoly:
    a, b = _t7_pair(p)
    return (a - b).scale(SQRT5.inverse())


def _t7b_rhs(p: IdentityParams) -> DensePoly:
    a, b = _t7_pair(p)
    return a + b


def _c8_lhs(p: IdentityParams, seq: Callable[[int], int]) -> DensePoly:
    n, j, m = p.n, p.j, p.m
    return DensePoly(tuple(QuadExt(binomial(n, k) * seq(j * k + m) * _b(n - k)) for k in range(n + 1)))


def _c8a_lhs(p: IdentityParams) -> DensePoly:
    return _c8_lhs(p, fib)


def _c8b_lhs(p: IdentityParams) -> DensePoly:
    return _c8_lhs(p, lucas)


def _c8_pair(p: IdentityParams) -> Tuple[DensePoly, DensePoly]:
    a = scaled_bernoulli_poly(p.n, alpha_power(p.j)).scale(alpha_power(p.m))
    b = scaled_bernoulli_poly(p.n, beta_power(p.j)).scale(beta_power(p.m))
    return a, b


def _c8a_rhs(p: IdentityParams) -> DensePoly:
    a, b = _c8_pair(p)
    return (a - b).scale(SQRT5.inverse())


def _c8b_rhs(p: IdentityParams) -> DensePoly:
    a, b = _c8_pair(p)
    return a + b


# Ratio sums over powers of L_j


def _ratio_sum(n: int, j: int, index: Callable[[int], int], alternate: bool = False, start: int = 0) -> Fraction:
    """sum_k (+-1)**k C(n,k) S(k) / L_j**k B_{n-k}."""
    big_l = lucas(j)
    acc = Fraction(0)
    for k in range(start, n + 1):
        sign = -1 if alternate and k % 2 else 1
        acc += Fraction(sign * binomial(n, k) * index(k), big_l ** k) * _b(n - k)
    return acc


def _golden_b(p: IdentityParams) -> QuadExt:
    return bernoulli_poly_at(p.n, _golden_point(p.j))


def _t9a_lhs(p: IdentityParams) -> Scalar:
    return _ratio_sum(p.n, p.j, lambda k: fib(p.j * k + p.m))


def _t9a_rhs(p: IdentityParams) -> Scalar:
    if p.n % 2 == 0:
        return _golden_b(p) * fib(p.m)
    return _golden_b(p) * lucas(p.m) / SQRT5


def _t9b_lhs(p: IdentityParams) -> Scalar:
    return _ratio_sum(p.n, p.j, lambda k: lucas(p.j * k + p.m))


def _t9b_rhs(p: IdentityParams) -> Scalar:
    if p.n % 2 == 0:
        return _golden_b(p) * lucas(p.m)
    return _golden_b(p) * SQRT5 * fib(p.m)


def _c10a_lhs(p: IdentityParams) -> Scalar:
    return _ratio_sum(p.n, p.j, lambda k: fib(p.j * k - 1))


def _c10b_lhs(p: IdentityParams) -> Scalar:
    return _ratio_sum(p.n, p.j, lambda k: fib(p.j * k), start=1)


def _c10c_lhs(p: IdentityParams) -> Scalar:
    return _ratio_sum(p.n, p.j, lambda k: lucas(p.j * k - 1))


def _c10c_rhs(p: IdentityParams) -> Scalar:
    return _golden_b(p) * SQRT5


def _c10d_lhs(p: IdentityParams) -> Scalar:
    return _ratio_sum(p.n, p.j, lambda k: lucas(p.j * k))


def _tail(p: IdentityParams, seq: Callable[[int], int]) -> Fraction:
    """n S_{j(n-1)+m} / L_j**(n-1), zero when n == 0."""
    n, j, m = p.n, p.j, p.m
    if n == 0:
        return Fraction(0)
    return Fraction(n * seq(j * (n - 1) + m)) / _frac_pow(lucas(j), n - 1)


def _t11a_lhs(p: IdentityParams) -> Scalar:
    return _ratio_sum(p.n, p.j, lambda k: fib(p.j * k + p.m), alternate=True)


def _t11a_rhs(p: IdentityParams) -> Scalar:
    if p.n % 2 == 0:
        return _golden_b(p) * fib(p.m) + _tail(p, fib)
    return -(_golden_b(p) * lucas(p.m) / SQRT5) - _tail(p, fib)


def _t11b_lhs(p: IdentityParams) -> Scalar:
    return _ratio_sum(p.n, p.j, lambda k: lucas(p.j * k + p.m), alternate=True)


def _t11b_rhs(p: IdentityParams) -> Scalar:
    if p.n % 2 == 0:
        return _golden_b(p) * lucas(p.m) + _tail(p, lucas)
    return -(_golden_b(p) * SQRT5 * fib(p.m)) - _tail(p, lucas)


def _t11b_printed_rhs(p: IdentityParams) -> Scalar:
    if p.n % 2 == 0:
        return _golden_b(p) * lucas(p.m) + _tail(p, fib)
    return _t11b_rhs(p)


def _t12_power(p: IdentityParams) -> QuadExt:
    """n (sqrt(5) F_j / L_j)**(n-1), zero when n == 0."""
    if p.n == 0:
        return ZERO
    return (_root(p.j) / lucas(p.j)) ** (p.n - 1) * p.n


def _t12a_lhs(p: IdentityParams) -> Scalar:
    return _ratio_sum(p.n, p.j, lambda k: 2 ** k * fib(p.j * k))


def _t12a_rhs(p: IdentityParams) -> Scalar:
    return _t12_power(p) / SQRT5


def _t12b_lhs(p: IdentityParams) -> Scalar:
    return _ratio_sum(p.n, p.j, lambda k: 2 ** k * lucas(p.j * k))


def _t12b_rhs(p: IdentityParams) -> Scalar:
    return _t12_power(p)


# Signed-root polynomial identity and its consequences


def _doubled_sum(n: int, j: int, t: QuadExt, value: Callable[[int], Scalar]) -> QuadExt:
    """sum_k C(n,k) 2**k F_{jk} t**(n-k) value(n-k); the k = 0 term vanishes."""
    acc = ZERO
    for k in range(1, n + 1):
        acc = acc + t ** (n - k) * QuadExt.lift(value(n - k)) * (binomial(n, k) * 2 ** k * fib(j * k))
    return acc


def _power_pair(n: int, first: QuadExt, second: QuadExt) -> QuadExt:
    """n (first**(n-1) + second**(n-1)), zero when n == 0."""
    if n == 0:
        return ZERO
    return (first ** (n - 1) + second ** (n - 1)) * n


def _t13_lhs(p: IdentityParams) -> DensePoly:
    n, j = p.n, p.j
    t = _signed_root(p)
    acc = DensePoly()
    for k in range(n + 1):
        acc = acc + bernoulli_poly(n - k).scale(t ** (n - k) * (binomial(n, k) * 2 ** k * fib(j * k)))
    return acc


def _t13_rhs(p: IdentityParams) -> DensePoly:
    n, j = p.n, p.j
    if n == 0:
        return DensePoly()
    t = _signed_root(p)
    big_l = lucas(j)
    first = DensePoly.linear(t, big_l) ** (n - 1)
    second = DensePoly.linear(t, big_l - t) ** (n - 1)
    return (first + second).scale(n * fib(j))


def _c21_lhs(p: IdentityParams) -> Scalar:
    return _doubled_sum(p.n, p.j, _signed_root(p), _b)


def _c21_rhs(p: IdentityParams) -> Scalar:
    big_l = QuadExt(lucas(p.j))
    return _power_pair(p.n, big_l, big_l - _signed_root(p)) * fib(p.j)


def _at_alpha(i: int) -> QuadExt:
    return bernoulli_poly_at(i, ALPHA)


def _c22a_lhs(p: IdentityParams) -> Scalar:
    return _doubled_sum(p.n, p.j, _root(p.j), _at_alpha)


def _c22a_rhs(p: IdentityParams) -> Scalar:
    n, j = p.n, p.j
    root = _root(j)
    shift = lucas(j + 3)
    return _power_pair(n, root + shift, shift - root) * (fib(j) * _frac_pow(2, 1 - n))


def _c22b_lhs(p: IdentityParams) -> Scalar:
    return _doubled_sum(p.n, p.j, -_root(p.j), _at_alpha)


def _c22b_rhs(p: IdentityParams) -> Scalar:
    n, j = p.n, p.j
    root = _root(j)
    shift = lucas(j - 3)
    return _power_pair(n, root - shift, -root - shift) * (fib(j) * _frac_pow(2, 1 - n))


def _ex_j3_lhs(p: IdentityParams) -> Scalar:
    n = p.n
    acc = ZERO
    for k in range(n + 1):
        acc = acc + (-SQRT5) ** (n - k) * _at_alpha(n - k) * (binomial(n, k) * fib(3 * k))
    return acc


def _ex_j3_rhs(p: IdentityParams) -> Scalar:
    n = p.n
    return (-1) ** (n - 1) * n * lucas(n - 1)


def _ex_beta_lhs(p: IdentityParams) -> Scalar:
    n = p.n
    acc = ZERO
    for k in range(n + 1):
        acc = acc + SQRT5 ** (n - k) * bernoulli_poly_at(n - k, BETA) * (binomial(n, k) * 2 ** k * fib(k))
    return acc


def _ex_beta_rhs(p: IdentityParams) -> Scalar:
    n = p.n
    return (-1) ** (n - 1) * n * lucas(2 * n - 2)


# q-Raabe corollary and its examples


def _raabe_lhs(n: int, j: int, q: int, t: QuadExt) -> QuadExt:
    return _doubled_sum(n, j, t, lambda i: (_frac_pow(q, 1 - i) - 1) * _b(i))


def _c23_lhs(p: IdentityParams) -> Scalar:
    return _raabe_lhs(p.n, p.j, p.q, _signed_root(p))


def _c23_rhs(p: IdentityParams) -> Scalar:
    n, j, q = p.n, p.j, p.q
    t = _signed_root(p)
    big_l = lucas(j)
    acc = ZERO
    for r in range(1, q):
        acc = acc + _power_pair(n, t * r + q * big_l, t * (r - q) + q * big_l)
    return acc * (fib(j) * _frac_pow(q, 1 - n))


def _ex_q2_gen_lhs(p: IdentityParams) -> Scalar:
    return _raabe_lhs(p.n, p.j, 2, _root(p.j))


def _ex_q2_gen_rhs(p: IdentityParams) -> Scalar:
    n, j = p.n, p.j
    big_l = lucas(j)
    total = sum(binomial(n - 1, m) * 2 ** m * lucas(j * m) * big_l ** (n - 1 - m) for m in range(n))
    return Fraction(n * fib(j) * total) * _frac_pow(2, 1 - n)


def ex_q2_intermediate(n: int, j: int) -> QuadExt:
    """n F_j 2**(1-n) ((L_j + 2 alpha**j)**(n-1) + (L_j + 2 beta**j)**(n-1))."""
    big_l = lucas(j)
    pair = _power_pair(n, alpha_power(j) * 2 + big_l, beta_power(j) * 2 + big_l)
    return pair * (fib(j) * _frac_pow(2, 1 - n))


def _ex_q2_j1_lhs(p: IdentityParams) -> Scalar:
    n = p.n
    quarter_root = SQRT5 / 4
    acc = ZERO
    for k in range(n + 1):
        acc = acc + quarter_root ** k * (binomial(n, k) * (2 - 2 ** k) * fib(n - k) * _b(k))
    return acc


def _ex_q2_j1_rhs(p: IdentityParams) -> Scalar:
    n = p.n
    return Fraction(n * lucas(3 * (n - 1))) / _frac_pow(2, 2 * n - 1)


def _q3_lhs(n: int, j: int) -> QuadExt:
    root = _root(j)
    acc = ZERO
    for k in range(n + 1):
        weight = 6 ** k * (1 - _frac_pow(3, n - k - 1)) * fib(j * k) * _b(n - k)
        acc = acc + root ** (n - k) * (binomial(n, k) * weight)
    return acc


def _ex_q3_gen_lhs(p: IdentityParams) -> Scalar:
    return _q3_lhs(p.n, p.j)


def _ex_q3_gen_rhs(p: IdentityParams) -> Scalar:
    n, j = p.n, p.j
    big_l = lucas(j)
    total = sum(
        binomial(n - 1, m) * (2 ** (n - 1) + 4 ** m) * big_l ** (n - 1 - m) * lucas(j * m) for m in range(n)
    )
    return n * fib(j) * total


def _ex_q3_gen_printed_rhs(p: IdentityParams) -> Scalar:
    # the stray x multiplies every summand
    return p.x * _ex_q3_gen_rhs(p)


def _ex_q3_j1_lhs(p: IdentityParams) -> Scalar:
    return _q3_lhs(p.n, 1)


def _ex_q3_j1_rhs(p: IdentityParams) -> Scalar:
    n = p.n
    head = n * _frac_pow(2, n - 1) * lucas(2 * n - 2) if n else Fraction(0)
    tail = sum(binomial(n, m) * m * 4 ** (m - 1) * lucas(m - 1) for m in range(1, n + 1))
    return head + tail


# Transforms of h(z) = B_n(x + z)


def _lem6_lhs(p: IdentityParams, kind: SequenceKind) -> Scalar:
    return lucas_transform(bernoulli_shift_coeffs(p.n, p.x), p.j, p.m, p.z, kind)


def _lem6_rhs(p: IdentityParams, kind: SequenceKind, printed: bool = False) -> Scalar:
    return lucas_transform_closed(bernoulli_shift_coeffs(p.n, p.x), p.j, p.m, p.z, kind, printed=printed)


def _build_catalog() -> Dict[IdentityId, CatalogEntry]:
    I = IdentityId
    S, P, W = Family.SCALAR, Family.POLYNOMIAL, Family.POINTWISE
    EVEN, ODD = Parity.EVEN, Parity.ODD
    nj = ("n", "j")
    njm = ("n", "j", "m")
    njs = ("n", "j", "sign")
    entries = [
        CatalogEntry(I.L1A, "sum C(n,k) F_jk F_j(n-k)", S, nj, _l1a_lhs, _l1a_rhs),
        CatalogEntry(I.L1B, "sum C(n,k) L_jk L_j(n-k)", S, nj, _l1b_lhs, _l1b_rhs),
        CatalogEntry(I.L1C, "sum C(n,k) F_jk L_j(n-k)", S, nj, _l1c_lhs, _l1c_rhs),
        CatalogEntry(I.T1A, "threefold convolution, 1/sinh^2 weights", S, nj, _t1a_lhs, _t1a_rhs),
        CatalogEntry(I.T1B, "threefold convolution, 1/cosh^2 weights", S, nj, _t1b_lhs, _t1b_rhs),
        CatalogEntry(
            I.T1C, "threefold convolution, coth weights", S, nj, _t1c_lhs, _t1c_rhs,
            printed_rhs=_t1c_printed_rhs,
        ),
        CatalogEntry(I.SPEC_J1_A, "threefold convolution at j = 1, sinh form", S, ("n",), _spec_a_lhs, _spec_a_rhs),
        CatalogEntry(I.SPEC_J1_B, "threefold convolution at j = 1, cosh form", S, ("n",), _spec_b_lhs, lambda p: 1),
        CatalogEntry(I.SPEC_J1_C, "threefold convolution at j = 1, coth form", S, ("n",), _spec_c_lhs, _spec_c_rhs),
        CatalogEntry(I.REM1_A, "mod-free form of T1A", S, nj, _rem1_a_lhs, _rem1_rhs, parity=EVEN),
        CatalogEntry(I.REM1_B, "mod-free form of T1B", S, nj, _rem1_b_lhs, _rem1_rhs, parity=EVEN),
        CatalogEntry(I.REM1_C, "mod-free form of T1C", S, nj, _rem1_c_lhs, _zero, parity=EVEN),
        CatalogEntry(I.T2A, "tanh form", S, nj, _t2a_lhs, _zero),
        CatalogEntry(I.T2A_PART, "tanh form, alternating part", S, nj, _t2a_part_lhs, _zero, n_min=1),
        CatalogEntry(I.T2B, "coth form", S, nj, _t2b_lhs, _t2b_rhs, n_min=1),
        CatalogEntry(I.T2B_PART, "coth form, alternating part", S, nj, _t2b_part_lhs, _zero, n_min=1),
        CatalogEntry(
            I.T2_CONSEQ, "sum C(n,k) 2^k B_k / (n-k+1)", S, ("n",), _t2_conseq_lhs, _zero,
            parity=EVEN, n_min=2, printed_n_min=0,
        ),
        CatalogEntry(I.T3A, "sinh over coth", S, nj, _t3a_lhs, _zero),
        CatalogEntry(I.T3B, "cosh over tanh", S, nj, _t3b_lhs, _zero),
        CatalogEntry(I.T3A_EVEN, "sinh over coth, closed right side", S, nj, _t3a_even_lhs, _t3a_even_rhs),
        CatalogEntry(I.FBPOL1, "F_jk (sqrt5 F_j)^(n-k) B_(n-k)(x)", P, nj, _fbpol_lhs, _fbpol1_rhs),
        CatalogEntry(I.FBPOL2, "F_jk (-sqrt5 F_j)^(n-k) B_(n-k)(x)", P, nj, _negated(_fbpol_lhs), _fbpol2_rhs),
        CatalogEntry(I.T7A, "F_(jk+m) B_(n-k)(x) z^k", P, ("n", "j", "m", "z"), _t7a_lhs, _t7a_rhs),
        CatalogEntry(I.T7B, "L_(jk+m) B_(n-k)(x) z^k", P, ("n", "j", "m", "z"), _t7b_lhs, _t7b_rhs),
        CatalogEntry(I.C8A, "F_(jk+m) B_(n-k) z^k", P, njm, _c8a_lhs, _c8a_rhs),
        CatalogEntry(I.C8B, "L_(jk+m) B_(n-k) z^k", P, njm, _c8b_lhs, _c8b_rhs),
        CatalogEntry(I.T9A, "F_(jk+m) / L_j^k B_(n-k)", S, njm, _t9a_lhs, _t9a_rhs),
        CatalogEntry(I.T9B, "L_(jk+m) / L_j^k B_(n-k)", S, njm, _t9b_lhs, _t9b_rhs),
        CatalogEntry(I.C10A, "F_(jk-1) / L_j^k B_(n-k)", S, nj, _c10a_lhs, lambda p: _golden_b(p), parity=EVEN),
        CatalogEntry(I.C10B, "F_jk / L_j^k B_(n-k), k >= 1", S, nj, _c10b_lhs, _zero, parity=EVEN),
        CatalogEntry(I.C10C, "L_(jk-1) / L_j^k B_(n-k)", S, nj, _c10c_lhs, _c10c_rhs, parity=ODD),
        CatalogEntry(I.C10D, "L_jk / L_j^k B_(n-k)", S, nj, _c10d_lhs, _zero, parity=ODD),
        CatalogEntry(I.T11A, "alternating F_(jk+m) / L_j^k B_(n-k)", S, njm, _t11a_lhs, _t11a_rhs),
        CatalogEntry(
            I.T11B, "alternating L_(jk+m) / L_j^k B_(n-k)", S, njm, _t11b_lhs, _t11b_rhs,
            printed_rhs=_t11b_printed_rhs,
        ),
        CatalogEntry(I.T12A, "2^k F_jk / L_j^k B_(n-k)", S, nj, _t12a_lhs, _t12a_rhs, parity=EVEN),
        CatalogEntry(I.T12B, "2^k L_jk / L_j^k B_(n-k)", S, nj, _t12b_lhs, _t12b_rhs, parity=ODD),
        CatalogEntry(I.T13, "2^k F_jk (+-sqrt5 F_j)^(n-k) B_(n-k)(x)", P, njs, _t13_lhs, _t13_rhs),
        CatalogEntry(I.C21, "T13 at x = 0", S, njs, _c21_lhs, _c21_rhs),
        CatalogEntry(I.C22A, "T13 at x = alpha, + branch", S, nj, _c22a_lhs, _c22a_rhs),
        CatalogEntry(I.C22B, "T13 at x = alpha, - branch", S, nj, _c22b_lhs, _c22b_rhs, j_min=3),
        CatalogEntry(I.EX_J3, "C22B at j = 3", S, ("n",), _ex_j3_lhs, _ex_j3_rhs),
        CatalogEntry(I.EX_BETA, "T13 at x = beta, j = 1", S, ("n",), _ex_beta_lhs, _ex_beta_rhs),
        CatalogEntry(I.C23, "q-Raabe form of T13", S, ("n", "j", "q", "sign"), _c23_lhs, _c23_rhs, n_min=1),
        CatalogEntry(I.EX_Q2_GEN, "q-Raabe form at q = 2", S, nj, _ex_q2_gen_lhs, _ex_q2_gen_rhs),
        CatalogEntry(I.EX_Q2_J1, "q-Raabe form at q = 2, j = 1", S, ("n",), _ex_q2_j1_lhs, _ex_q2_j1_rhs),
        CatalogEntry(
            I.EX_Q3_GEN, "q-Raabe form at q = 3", S, nj, _ex_q3_gen_lhs, _ex_q3_gen_rhs,
            printed_rhs=_ex_q3_gen_printed_rhs, printed_axes=("n", "j", "x"),
        ),
        CatalogEntry(I.EX_Q3_J1, "q-Raabe form at q = 3, j = 1", S, ("n",), _ex_q3_j1_lhs, _ex_q3_j1_rhs),
        CatalogEntry(
            I.LEM6_F, "Fibonacci transform of h(z) = B_n(x + z)", W, ("n", "j", "m", "x", "z"),
            lambda p: _lem6_lhs(p, SequenceKind.F), lambda p: _lem6_rhs(p, SequenceKind.F),
            printed_rhs=lambda p: _lem6_rhs(p, SequenceKind.F, printed=True),
        ),
        CatalogEntry(
            I.LEM6_L, "Lucas transform of h(z) = B_n(x + z)", W, ("n", "j", "m", "x", "z"),
            lambda p: _lem6_lhs(p, SequenceKind.L), lambda p: _lem6_rhs(p, SequenceKind.L),
            printed_rhs=lambda p: _lem6_rhs(p, SequenceKind.L, printed=True),
        ),
    ]
    return {entry.tag: entry for entry in entries}


def _negated(lhs: Evaluator) -> Evaluator:
    """Evaluate ``lhs`` on the "-" branch of the signed root."""
    return lambda p: lhs(p.model_copy(update={"sign": "-"}))


CATALOG: Dict[IdentityId, CatalogEntry] = _build_catalog()
