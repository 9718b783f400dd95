"""
Tests for exact arithmetic over Q(sqrt 5) and dense polynomials.
"""
import random
from fractions import Fraction

import pytest

from fibbern.utils.exact import (
    ALPHA,
    BETA,
    SQRT5,
    DensePoly,
    QuadExt,
    binomial,
    format_poly,
    format_quad,
    parse_quad,
    poly_eval,
    quad_conj,
    quad_mul,
    quad_pow,
)
from fibbern.utils.bernoulli import bernoulli_poly

RNG_SEED = 20240611


def _random_quad(rng: random.Random) -> QuadExt:
    return QuadExt(Fraction(rng.randint(-9, 9), rng.randint(1, 7)), Fraction(rng.randint(-9, 9), rng.randint(1, 7)))


class TestQuadExt:
    def test_products(self):
        assert quad_mul(ALPHA, BETA) == -1
        assert quad_mul(ALPHA, ALPHA) == QuadExt(Fraction(3, 2), Fraction(1, 2))
        assert ALPHA * ALPHA == ALPHA + 1
        assert SQRT5 * SQRT5 == 5

    def test_powers(self):
        assert quad_pow(ALPHA, 0) == 1
        assert quad_pow(ALPHA, 5) == QuadExt(Fraction(11, 2), Fraction(5, 2))
        assert quad_pow(BETA, 2) == QuadExt(Fraction(3, 2), Fraction(-1, 2))
        assert ALPHA ** -1 == -BETA

    def test_negative_quad_pow_rejected(self):
        with pytest.raises(ValueError):
            quad_pow(ALPHA, -1)

    def test_conjugation(self):
        assert quad_conj(ALPHA) == BETA
        assert quad_conj(QuadExt(7)) == 7
        assert quad_conj(quad_pow(ALPHA, 3)) == quad_pow(BETA, 3)

    def test_inverse_of_zero(self):
        with pytest.raises(ZeroDivisionError):
            QuadExt(0).inverse()
        with pytest.raises(ZeroDivisionError):
            QuadExt(1) / QuadExt(0)

    def test_floats_rejected(self):
        with pytest.raises(TypeError):
            QuadExt(0.5)

    def test_equality_with_rationals(self):
        assert QuadExt(Fraction(1, 2)) == Fraction(1, 2)
        assert QuadExt(3) == 3
        assert ALPHA != Fraction(1, 2)
        assert hash(QuadExt(3)) == hash(Fraction(3))

    def test_field_laws_randomized(self):
        rng = random.Random(RNG_SEED)
        for _ in range(200):
            a, b, c = _random_quad(rng), _random_quad(rng), _random_quad(rng)
            assert a * b == b * a
            assert (a * b) * c == a * (b * c)
            assert a * (b + c) == a * b + a * c
            assert (a * b).conj() == a.conj() * b.conj()
            assert (a * b).norm() == a.norm() * b.norm()
            if not a.is_zero():
                assert a * a.inverse() == 1


class TestParseAndFormat:
    @pytest.mark.parametrize("text,expected", [
        ("alpha", ALPHA),
        ("beta", BETA),
        ("sqrt5", SQRT5),
        ("2/3", QuadExt(Fraction(2, 3))),
        ("1,-1/2", QuadExt(1, Fraction(-1, 2))),
        (" -1 ", QuadExt(-1)),
    ])
    def test_parse(self, text, expected):
        assert parse_quad(text) == expected

    @pytest.mark.parametrize("text", ["gamma", "1/0", "", "1,2,3"])
    def test_parse_rejects(self, text):
        with pytest.raises(ValueError):
            parse_quad(text)

    def test_format(self):
        assert format_quad(QuadExt(3)) == "3"
        assert format_quad(SQRT5) == "√5"
        assert format_quad(ALPHA) == "1/2 + (1/2)√5"
        assert format_quad(BETA) == "1/2 - (1/2)√5"
        assert format_quad(QuadExt(0, -2)) == "-(2)√5"
        assert str(QuadExt()) == "0"


class TestDensePoly:
    def test_zero_polynomial(self):
        zero = DensePoly((QuadExt(0), QuadExt(0)))
        assert zero.is_zero() and zero.degree == -1
        assert poly_eval(zero, ALPHA) == 0
        assert format_poly(zero) == "0"

    def test_arithmetic(self):
        x_plus_one = DensePoly.linear(1, 1)
        square = x_plus_one ** 2
        assert square == DensePoly((QuadExt(1), QuadExt(2), QuadExt(1)))
        assert square - x_plus_one * x_plus_one == DensePoly()
        assert (x_plus_one * 3).coeff(1) == 3

    def test_compose_linear(self):
        p = DensePoly.monomial(2)
        shifted = p.compose_linear(2, 1)
        assert shifted == DensePoly((QuadExt(1), QuadExt(4), QuadExt(4)))

    def test_evaluation_examples(self):
        assert poly_eval(bernoulli_poly(1), ALPHA) == QuadExt(0, Fraction(1, 2))
        assert poly_eval(bernoulli_poly(2), QuadExt(0)) == Fraction(1, 6)

    def test_negative_power_rejected(self):
        with pytest.raises(ValueError):
            DensePoly.linear(1, 0) ** -1


def test_binomial():
    assert binomial(5, 2) == 10
    assert binomial(5, -1) == 0
    assert binomial(3, 4) == 0
    assert binomial(0, 0) == 1
