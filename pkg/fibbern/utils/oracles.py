"""
Independent derivation paths for catalog identities.

Convolution identities are recomputed from exponential generating
functions: Fibonacci and Lucas values come out as coefficients of
exponential and hyperbolic closed forms, and Bernoulli-weighted
convolutions as coefficients of Laurent products. Bernoulli-polynomial
identities are recomputed by substituting the Binet forms into the
binomial sum and collapsing it with the binomial theorem, which turns each
sum into Bernoulli polynomials evaluated at alpha- and beta-points.

Each oracle returns an alternate value for the identity's left-hand side.
"""
from __future__ import annotations

import logging
from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property, lru_cache
from typing import Callable, Dict, Optional, Tuple, Union

from .bernoulli import bernoulli_number, bernoulli_poly_at, bernoulli_translation
from .catalog import SequenceKind, bernoulli_shift_coeffs
from .egf import HyperbolicKind, LaurentEgf, cached_exp, cached_hyperbolic
from .exact import ALPHA, BETA, SQRT5, ZERO, DensePoly, QuadExt, binomial
from .models import IdentityId, IdentityParams
from .sequences import alpha_power, beta_power, fib, lucas

logger = logging.getLogger(__name__)

Value = Union[QuadExt, DensePoly]
Oracle = Callable[[IdentityParams], Value]

EGF_PATH = "egf"
BINET_PATH = "binet"

_ORDER_STEP = 16


def _order_for(n: int) -> int:
    """Truncation order covering coefficient n + 2, rounded up so tables are shared."""
    needed = max(32, n + 4)
    return -(-needed // _ORDER_STEP) * _ORDER_STEP
@dataclass(frozen=True)
class EgfTables:
    """
    Generating functions for one j. Sequence series are built from
    exp/sinh/cosh; the tanh, coth and reciprocal-square series carry the
    Bernoulli numbers and enter only through products.
    """

    order: int
    lucas_j: int
    scale: QuadExt  # c = sqrt5 F_j / 2
    exp_l: LaurentEgf  # e^{L_j z}
    half: LaurentEgf  # e^{L_j z/2}
    f_sq: LaurentEgf  # F(z)^2 = (4/5) e^{L_j z} sinh^2
    l_sq: LaurentEgf  # L(z)^2 = 4 e^{L_j z} cosh^2
    f_l: LaurentEgf  # F(z) L(z) = (4/sqrt5) e^{L_j z} sinh cosh
    f_ser: LaurentEgf  # F(z) = (2/sqrt5) e^{L_j z/2} sinh
    l_ser: LaurentEgf  # L(z) = 2 e^{L_j z/2} cosh
    sinh: LaurentEgf
    cosh: LaurentEgf
    tanh: LaurentEgf
    coth: LaurentEgf  # coth(cz) with its 1/(cz) pole
    inv_sinh_sq: LaurentEgf  # 1/sinh^2(cz) with its 1/(cz)^2 pole
    inv_cosh_sq: LaurentEgf
    coth_half: LaurentEgf  # coth(cz/2)
    inv_sinh_sq_half: LaurentEgf  # 1/sinh^2(cz/2)

    @cached_property
    def f_damped(self) -> LaurentEgf:
        """F(z) e^{-L_j z/2}."""
        return self.f_ser * cached_exp(QuadExt(Fraction(-self.lucas_j, 2)), self.f_ser.order)

    @cached_property
    def tanh_cosh(self) -> LaurentEgf:
        return self.tanh * self.cosh

    @cached_property
    def coth_sinh(self) -> LaurentEgf:
        return self.coth * self.sinh

    @cached_property
    def f_coth(self) -> LaurentEgf:
        return self.f_ser * self.coth

    @cached_property
    def l_tanh(self) -> LaurentEgf:
        return self.l_ser * self.tanh

    @cached_property
    def half_cosh(self) -> LaurentEgf:
        return self.half * self.cosh

    @cached_property
    def half_sinh(self) -> LaurentEgf:
        return self.half * self.sinh

    @cached_property
    def f_sq_over_sinh_sq(self) -> LaurentEgf:
        return self.f_sq * self.inv_sinh_sq

    @cached_property
    def l_sq_over_cosh_sq(self) -> LaurentEgf:
        return self.l_sq * self.inv_cosh_sq

    @cached_property
    def zf_over_sinh_sq_half(self) -> LaurentEgf:
        """z F(z) / sinh^2(cz/2)."""
        return self.f_ser.shift(1) * self.inv_sinh_sq_half

    @cached_property
    def z_coth_half_damped(self) -> LaurentEgf:
        """z coth(cz/2) e^{L_j z/2}."""
        return self.coth_half.shift(1) * self.half


@lru_cache(maxsize=64)
def egf_tables(j: int, order: int) -> EgfTables:
    """Build (and cache) the generating functions for index multiplier j."""
    logger.debug(f"Building EGF tables for j={j} through order {order}")
    c = QuadExt(0, Fraction(fib(j), 2))
    big_l = QuadExt(lucas(j))
    # products lose up to two orders to poles and one to z-shifts
    size = order + 4
    exp_l = cached_exp(big_l, size)
    half = cached_exp(big_l / 2, size)
    sinh = cached_hyperbolic(HyperbolicKind.SINH, c, size)
    cosh = cached_hyperbolic(HyperbolicKind.COSH, c, size)
    return EgfTables(
        order=order,
        lucas_j=lucas(j),
        scale=c,
        exp_l=exp_l,
        half=half,
        f_sq=(exp_l * sinh * sinh).scale(Fraction(4, 5)),
        l_sq=(exp_l * cosh * cosh).scale(4),
        f_l=(exp_l * sinh * cosh).scale(QuadExt(4) / SQRT5),
        f_ser=(half * sinh).scale(QuadExt(2) / SQRT5),
        l_ser=(half * cosh).scale(2),
        sinh=sinh,
        cosh=cosh,
        tanh=cached_hyperbolic(HyperbolicKind.TANH, c, size),
        coth=cached_hyperbolic(HyperbolicKind.COTH, c, size),
        inv_sinh_sq=cached_hyperbolic(HyperbolicKind.INV_SINH_SQ, c, size),
        inv_cosh_sq=cached_hyperbolic(HyperbolicKind.INV_COSH_SQ, c, size),
        coth_half=cached_hyperbolic(HyperbolicKind.COTH, c / 2, size),
        inv_sinh_sq_half=cached_hyperbolic(HyperbolicKind.INV_SINH_SQ, c / 2, size),
    )


def _tables(p: IdentityParams) -> EgfTables:
    return egf_tables(p.j, _order_for(p.n))


def _over_z(s: LaurentEgf, n: int) -> QuadExt:
    """Coefficient n of s(z)/z, for s with s(0) = 0."""
    return s.coeff(n + 1) / (n + 1)


# Convolution identities: products of generating functions


def _lemma_oracle(attr: str) -> Oracle:
    return lambda p: getattr(_tables(p), attr).coeff(p.n)


def _t1a_egf(n: int, t: EgfTables) -> QuadExt:
    # sum C(n,k) 5[F^2]_k (-R_{n-k}/4)
    return (t.f_sq * t.inv_sinh_sq.regular_part()).coeff(n) * Fraction(-5, 4)


def _t1b_egf(n: int, t: EgfTables) -> QuadExt:
    return t.l_sq_over_cosh_sq.coeff(n) / 4


def _t1c_egf(n: int, t: EgfTables) -> QuadExt:
    first = (t.f_l * t.inv_sinh_sq.regular_part()).coeff(n) * Fraction(-1, 4)
    second = (t.exp_l * t.coth.regular_part()).coeff(n) / SQRT5
    return first + second


# Mod-free forms: the even Bernoulli weights are coefficients of
# w coth w, whose z d/dz - 1 image is -w^2 / sinh^2 w.


def _rem1_a_egf(p: IdentityParams) -> QuadExt:
    # (sqrt5 F_j)^n lhs = (5/4) [F(z)^2 / sinh^2(cz)]_n
    t = _tables(p)
    return t.f_sq_over_sinh_sq.coeff(p.n) * Fraction(5, 4) / (2 * t.scale) ** p.n


def _rem1_b_egf(p: IdentityParams) -> QuadExt:
    # (sqrt5 F_j)^n lhs = (1/4) [L(z)^2 / cosh^2(cz)]_n
    t = _tables(p)
    return t.l_sq_over_cosh_sq.coeff(p.n) / 4 / (2 * t.scale) ** p.n


def _rem1_c_egf(p: IdentityParams) -> QuadExt:
    t = _tables(p)
    c = t.scale
    weighted = t.zf_over_sinh_sq_half.coeff(p.n) * (-(c * c) / 4)
    plain = t.z_coth_half_damped.coeff(p.n) * (c * fib(p.j) / 2)
    return (weighted + plain) / c ** p.n


# tanh and coth forms: sqrt5/2 F(z) e^{-L_j z/2} = tanh(cz) cosh(cz) and
# 1/2 L(z) e^{-L_j z/2} = coth(cz) sinh(cz)


def _t2a_egf(p: IdentityParams) -> QuadExt:
    n, t = p.n, _tables(p)
    c = t.scale
    damped = _over_z(t.f_damped, n) * (-c.inverse()) ** n
    hyperbolic = _over_z(t.tanh_cosh, n) * fib(p.j) / c ** (n + 1)
    return damped - hyperbolic


def _t2a_part_egf(p: IdentityParams) -> QuadExt:
    t = egf_tables(p.j, _order_for(2 * p.n))
    weight = (QuadExt(-2) / t.lucas_j) ** (2 * p.n) * 2 / SQRT5
    return _over_z(t.tanh_cosh, 2 * p.n - 1) * weight


def _half_tanh_complement(n: int) -> QuadExt:
    """Coefficient n of 2/(e^z + 1) = 1 - tanh(z/2), the EGF of sum C(n,k) 2^k B_k/(n-k+1)."""
    tanh = cached_hyperbolic(HyperbolicKind.TANH, QuadExt(Fraction(1, 2)), _order_for(n))
    return QuadExt(1 if n == 0 else 0) - tanh.coeff(n)


def _t2b_egf(p: IdentityParams) -> QuadExt:
    n, t = p.n, _tables(p)
    damped = t.coth_sinh.coeff(n) * 2 * (-t.scale.inverse()) ** n
    return damped - _half_tanh_complement(n) * (1 + (-1) ** n)


def _t2b_part_egf(p: IdentityParams) -> QuadExt:
    t = egf_tables(p.j, _order_for(2 * p.n))
    m = 2 * p.n - 1
    return t.coth_sinh.coeff(m) * 2 * (QuadExt(-2) / t.lucas_j) ** m


# sinh = cosh / coth and cosh = sinh / tanh


def _t3a_egf(p: IdentityParams, closed: bool = False) -> QuadExt:
    # F(z)/z times cz coth(cz) carries (5F_j^2)^k B_2k F_{j(n-2k+1)}/(n-2k+1)
    n, t = p.n, _tables(p)
    value = t.f_coth.coeff(n) * t.scale
    if not closed:
        value = value - t.half_cosh.coeff(n) * fib(p.j)
    return value


def _t3b_egf(p: IdentityParams) -> QuadExt:
    n, t = p.n, _tables(p)
    c = t.scale
    return _over_z(t.l_tanh, n) / (2 * c) - _over_z(t.half_sinh, n) / c


def _t2_conseq_closed(p: IdentityParams) -> QuadExt:
    # sum C(n,k) 2^k B_k/(n-k+1) = 2^(n+1) (B_{n+1}(1/2) - B_{n+1}) / (n+1)
    n = p.n
    half = bernoulli_poly_at(n + 1, QuadExt(Fraction(1, 2)))
    return (half - bernoulli_number(n + 1)) * Fraction(2 ** (n + 1), n + 1)


# Bernoulli-polynomial identities: Binet substitution and the binomial theorem


def _root(j: int) -> QuadExt:
    return QuadExt(0, fib(j))


def _binet_difference(n: int, t: QuadExt, a: QuadExt, b: QuadExt, x: QuadExt = ZERO) -> QuadExt:
    """(t**n / sqrt5) (B_n(x + a/t) - B_n(x + b/t))."""
    return (bernoulli_poly_at(n, x + a / t) - bernoulli_poly_at(n, x + b / t)) * t ** n / SQRT5


def _fbpol_binet(sign: int) -> Oracle:
    def oracle(p: IdentityParams) -> DensePoly:
        t = _root(p.j) * sign
        a = bernoulli_translation(p.n, alpha_power(p.j) / t)
        b = bernoulli_translation(p.n, beta_power(p.j) / t)
        return (a - b).scale(t ** p.n / SQRT5)

    return oracle


def _t7_binet(kind: SequenceKind) -> Oracle:
    def oracle(p: IdentityParams) -> DensePoly:
        a = bernoulli_translation(p.n, alpha_power(p.j) * p.z).scale(alpha_power(p.m))
        b = bernoulli_translation(p.n, beta_power(p.j) * p.z).scale(beta_power(p.m))
        if kind is SequenceKind.F:
            return (a - b).scale(SQRT5.inverse())
        return a + b

    return oracle


def _binet_value(kind: SequenceKind, index: int) -> QuadExt:
    a, b = ALPHA ** index, BETA ** index
    if kind is SequenceKind.F:
        return (a - b) / SQRT5
    return a + b


def _c8_binet(kind: SequenceKind) -> Oracle:
    def oracle(p: IdentityParams) -> DensePoly:
        n = p.n
        return DensePoly(tuple(
            _binet_value(kind, p.j * k + p.m) * (binomial(n, k) * bernoulli_number(n - k))
            for k in range(n + 1)
        ))

    return oracle


def _collapsed(p: IdentityParams, kind: SequenceKind, m: int, z: QuadExt) -> QuadExt:
    """alpha**m B_n(alpha**j z) -+ beta**m B_n(beta**j z), over sqrt5 for F."""
    a = alpha_power(m) * bernoulli_poly_at(p.n, alpha_power(p.j) * z)
    b = beta_power(m) * bernoulli_poly_at(p.n, beta_power(p.j) * z)
    if kind is SequenceKind.F:
        return (a - b) / SQRT5
    return a + b


def _point_oracle(kind: SequenceKind, m: Callable[[IdentityParams], int], scale: int) -> Oracle:
    return lambda p: _collapsed(p, kind, m(p), QuadExt(Fraction(scale, lucas(p.j))))


def _c10b_binet(p: IdentityParams) -> QuadExt:
    # the k = 0 term is F_0 B_n = 0
    return _collapsed(p, SequenceKind.F, 0, QuadExt(Fraction(1, lucas(p.j))))


def _t13_binet(p: IdentityParams) -> DensePoly:
    t = _root(p.j) * p.sign_value
    a = bernoulli_translation(p.n, alpha_power(p.j) * 2 / t)
    b = bernoulli_translation(p.n, beta_power(p.j) * 2 / t)
    return (a - b).scale(t ** p.n / SQRT5)


def _c21_binet(p: IdentityParams) -> QuadExt:
    t = _root(p.j) * p.sign_value
    return _binet_difference(p.n, t, alpha_power(p.j) * 2, beta_power(p.j) * 2)


def _c22_binet(sign: int) -> Oracle:
    def oracle(p: IdentityParams) -> QuadExt:
        t = _root(p.j) * sign
        return _binet_difference(p.n, t, alpha_power(p.j) * 2, beta_power(p.j) * 2, x=ALPHA)

    return oracle


def _ex_j3_binet(p: IdentityParams) -> QuadExt:
    t = _root(3) * -1
    value = _binet_difference(p.n, t, alpha_power(3) * 2, beta_power(3) * 2, x=ALPHA)
    return value / 2 ** p.n


def _ex_beta_binet(p: IdentityParams) -> QuadExt:
    return _binet_difference(p.n, SQRT5, ALPHA * 2, BETA * 2, x=BETA)


def raabe_binet(n: int, j: int, q: int, t: QuadExt) -> QuadExt:
    """
    Collapsed q-Raabe sum:
    (q/sqrt5)(t/q)**n [B_n(2 alpha**j q/t) - B_n(2 beta**j q/t)]
    - (t**n/sqrt5) [B_n(2 alpha**j/t) - B_n(2 beta**j/t)].
    """
    a, b = alpha_power(j) * 2, beta_power(j) * 2
    scaled = _binet_difference(n, t / q, a, b) * q
    return scaled - _binet_difference(n, t, a, b)


def _c23_binet(p: IdentityParams) -> QuadExt:
    return raabe_binet(p.n, p.j, p.q, _root(p.j) * p.sign_value)


def _ex_q2_gen_binet(p: IdentityParams) -> QuadExt:
    return raabe_binet(p.n, p.j, 2, _root(p.j))


def _ex_q2_j1_binet(p: IdentityParams) -> QuadExt:
    return raabe_binet(p.n, 1, 2, SQRT5) / 2 ** p.n


def _ex_q3_binet(j_fixed: Optional[int] = None) -> Oracle:
    def oracle(p: IdentityParams) -> QuadExt:
        j = p.j if j_fixed is None else j_fixed
        return raabe_binet(p.n, j, 3, _root(j)) * Fraction(3) ** (p.n - 1)

    return oracle


def _lem6_binet(kind: SequenceKind) -> Oracle:
    def oracle(p: IdentityParams) -> QuadExt:
        acc = ZERO
        for v, w in bernoulli_shift_coeffs(p.n, p.x):
            acc = acc + v * _binet_value(kind, p.j * w + p.m) * p.z ** w
        return acc

    return oracle


def _with_j(j: Optional[int], fn: Callable[[int, EgfTables], QuadExt]) -> Oracle:
    """Apply a table-based oracle at a fixed j, or at the parameter j when None."""
    return lambda p: fn(p.n, egf_tables(p.j if j is None else j, _order_for(p.n)))


def _build_oracles() -> Dict[IdentityId, Tuple[str, Oracle]]:
    I = IdentityId
    F, L = SequenceKind.F, SequenceKind.L
    egf = {
        I.L1A: _lemma_oracle("f_sq"),
        I.L1B: _lemma_oracle("l_sq"),
        I.L1C: _lemma_oracle("f_l"),
        I.T1A: _with_j(None, _t1a_egf),
        I.T1B: _with_j(None, _t1b_egf),
        I.T1C: _with_j(None, _t1c_egf),
        I.SPEC_J1_A: _with_j(1, _t1a_egf),
        I.SPEC_J1_B: _with_j(1, _t1b_egf),
        I.SPEC_J1_C: _with_j(1, _t1c_egf),
        I.REM1_A: _rem1_a_egf,
        I.REM1_B: _rem1_b_egf,
        I.REM1_C: _rem1_c_egf,
        I.T2A: _t2a_egf,
        I.T2A_PART: _t2a_part_egf,
        I.T2B: _t2b_egf,
        I.T2B_PART: _t2b_part_egf,
        I.T3A: _t3a_egf,
        I.T3B: _t3b_egf,
        I.T3A_EVEN: lambda p: _t3a_egf(p, closed=True),
    }
    binet = {
        I.T2_CONSEQ: _t2_conseq_closed,
        I.FBPOL1: _fbpol_binet(1),
        I.FBPOL2: _fbpol_binet(-1),
        I.T7A: _t7_binet(F),
        I.T7B: _t7_binet(L),
        I.C8A: _c8_binet(F),
        I.C8B: _c8_binet(L),
        I.T9A: _point_oracle(F, lambda p: p.m, 1),
        I.T9B: _point_oracle(L, lambda p: p.m, 1),
        I.C10A: _point_oracle(F, lambda p: -1, 1),
        I.C10B: _c10b_binet,
        I.C10C: _point_oracle(L, lambda p: -1, 1),
        I.C10D: _point_oracle(L, lambda p: 0, 1),
        I.T11A: _point_oracle(F, lambda p: p.m, -1),
        I.T11B: _point_oracle(L, lambda p: p.m, -1),
        I.T12A: _point_oracle(F, lambda p: 0, 2),
        I.T12B: _point_oracle(L, lambda p: 0, 2),
        I.T13: _t13_binet,
        I.C21: _c21_binet,
        I.C22A: _c22_binet(1),
        I.C22B: _c22_binet(-1),
        I.EX_J3: _ex_j3_binet,
        I.EX_BETA: _ex_beta_binet,
        I.C23: _c23_binet,
        I.EX_Q2_GEN: _ex_q2_gen_binet,
        I.EX_Q2_J1: _ex_q2_j1_binet,
        I.EX_Q3_GEN: _ex_q3_binet(),
        I.EX_Q3_J1: _ex_q3_binet(1),
        I.LEM6_F: _lem6_binet(F),
        I.LEM6_L: _lem6_binet(L),
    }
    table: Dict[IdentityId, Tuple[str, Oracle]] = {}
    table.update({tag: (EGF_PATH, fn) for tag, fn in egf.items()})
    table.update({tag: (BINET_PATH, fn) for tag, fn in binet.items()})
    return table


ORACLES: Dict[IdentityId, Tuple[str, Oracle]] = _build_oracles()
