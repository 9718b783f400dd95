"""
Tests for truncated Laurent EGF algebra and the functional-equation checks.
"""
import random
from fractions import Fraction

import pytest

from fibbern.utils.exact import ALPHA, QuadExt
from fibbern.utils.egf import (
    HyperbolicKind,
    PoleOrderError,
    TruncationError,
    check_functional_equation,
    egf_coeff,
    egf_exp,
    egf_from_terms,
    egf_hyperbolic,
    egf_mul,
    fib_series,
)
from fibbern.utils.models import FunctionalEquation

H = HyperbolicKind


def _random_series(rng: random.Random, order: int):
    return egf_from_terms(lambda n: QuadExt(Fraction(rng.randint(-5, 5), rng.randint(1, 4)), rng.randint(-2, 2)), order)


class TestConstruction:
    def test_exp(self):
        zero = egf_exp(0, 6)
        assert egf_coeff(zero, 0) == 1
        assert all(egf_coeff(zero, n) == 0 for n in range(1, 7))
        assert all(egf_coeff(egf_exp(1, 4), n) == 1 for n in range(5))
        assert egf_coeff(egf_exp(ALPHA, 3), 3) == QuadExt(2, 1)
        assert egf_coeff(egf_exp(2, 10), 3) == 8

    def test_sinh_and_cosh(self):
        sinh = egf_hyperbolic(H.SINH, 1, 6)
        assert [egf_coeff(sinh, n) for n in (1, 2, 3)] == [1, 0, 1]
        assert egf_coeff(egf_hyperbolic(H.COSH, 1, 10), 5) == 0

    def test_coth_principal_part(self):
        coth = egf_hyperbolic(H.COTH, 1, 8)
        assert coth.principal == (QuadExt(0), QuadExt(1))
        assert coth.raw(1) == Fraction(1, 3)

    def test_inv_sinh_sq_principal_part(self):
        inv = egf_hyperbolic(H.INV_SINH_SQ, 1, 8)
        assert egf_coeff(inv, -2) == 1
        assert egf_coeff(inv, -1) == 0
        assert egf_coeff(inv, 0) == Fraction(-1, 3)

    @pytest.mark.parametrize("kind", [H.TANH, H.COTH, H.INV_SINH_SQ, H.INV_COSH_SQ])
    def test_degenerate_argument_rejected(self, kind):
        with pytest.raises(ValueError):
            egf_hyperbolic(kind, 0, 4)

    def test_fibonacci_series(self):
        assert egf_coeff(fib_series(1, 10), 6) == 8

    def test_out_of_range_coefficient(self):
        s = egf_exp(1, 5)
        with pytest.raises(TruncationError):
            egf_coeff(s, 6)
        with pytest.raises(TruncationError):
            egf_coeff(s, -3)


class TestProducts:
    def test_exponent_additivity(self):
        a, b = QuadExt(Fraction(2, 3)), ALPHA
        product = egf_mul(egf_exp(a, 10), egf_exp(b, 10))
        expected = egf_exp(a + b, 10)
        assert product.coeffs == expected.coeffs

    def test_double_angle(self):
        product = egf_hyperbolic(H.SINH, 1, 8) * egf_hyperbolic(H.COSH, 1, 8)
        half_sinh = egf_hyperbolic(H.SINH, 2, 8).scale(Fraction(1, 2))
        assert product.coeffs == half_sinh.coeffs

    def test_coth_times_sinh(self):
        product = egf_hyperbolic(H.COTH, 1, 10) * egf_hyperbolic(H.SINH, 1, 10)
        cosh = egf_hyperbolic(H.COSH, 1, 10)
        assert product.principal == (QuadExt(0), QuadExt(0))
        assert product.order == 9
        for n in range(9):
            assert egf_coeff(product, n) == egf_coeff(cosh, n)

    def test_order_shrinks_by_pole_depth(self):
        product = egf_hyperbolic(H.INV_SINH_SQ, 1, 10) * egf_exp(1, 10)
        assert product.order == 8

    def test_pole_too_deep(self):
        with pytest.raises(PoleOrderError):
            egf_hyperbolic(H.INV_SINH_SQ, 1, 8) * egf_hyperbolic(H.COTH, 1, 8)

    def test_ring_laws(self):
        rng = random.Random(1729)
        for _ in range(10):
            a, b, c = (_random_series(rng, 8) for _ in range(3))
            assert (a * b).coeffs == (b * a).coeffs
            assert ((a * b) * c).coeffs == (a * (b * c)).coeffs
            assert (a * (b + c)).coeffs == (a * b + a * c).coeffs

    def test_mixed_parity_product(self):
        rng = random.Random(99)
        a = _random_series(rng, 12)
        even = egf_hyperbolic(H.COSH, QuadExt(Fraction(1, 2)), 12)
        product = a * even
        for n in range(13):
            expected = sum((a.raw(n - 2 * k) * even.raw(2 * k) for k in range(n // 2 + 1)), QuadExt(0))
            assert product.raw(n) == expected

    def test_shift(self):
        s = egf_exp(1, 5).shift(1)
        assert s.order == 6
        assert s.raw(0) == 0
        for n in range(1, 7):
            assert s.raw(n) == egf_exp(1, 5).raw(n - 1)


class TestFunctionalEquations:
    @pytest.mark.parametrize("equation", list(FunctionalEquation))
    def test_all_equations_confirmed(self, equation):
        for j in range(1, 7):
            verdict = check_functional_equation(equation, j, 32)
            assert verdict.confirmed, f"{equation.value} j={j} mismatch at {verdict.first_mismatch}"
            assert verdict.checked_through == 32

    def test_small_orders_confirmed(self):
        assert check_functional_equation(FunctionalEquation.EGF_F_SQ, 1, 12).confirmed
        assert check_functional_equation(FunctionalEquation.EGF_L_SQ, 2, 12).confirmed

    def test_fl_identity_principal_part(self):
        for j in (1, 2, 5):
            verdict = check_functional_equation(FunctionalEquation.FL_ID, j, 12)
            assert verdict.confirmed
            assert verdict.principal[1] == str(Fraction(8, 5 * [1, 1, 2, 3, 5][j - 1]))

    def test_h_relation_at_alpha(self):
        verdict = check_functional_equation(FunctionalEquation.H_RELATION, 2, 16, x=ALPHA)
        assert verdict.confirmed
        assert verdict.x is not None

    def test_invalid_arguments(self):
        with pytest.raises(ValueError):
            check_functional_equation(FunctionalEquation.EGF_F_SQ, 0, 12)
        with pytest.raises(ValueError):
            check_functional_equation(FunctionalEquation.EGF_F_SQ, 1, 3)
