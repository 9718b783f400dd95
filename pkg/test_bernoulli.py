"""
Tests for Bernoulli numbers and polynomials.
"""
import random
from fractions import Fraction

import pytest

from fibbern.utils.exact import ALPHA, DensePoly, QuadExt
from fibbern.utils.bernoulli import (
    akiyama_tanigawa,
    bernoulli_number,
    bernoulli_numbers,
    bernoulli_poly,
    bernoulli_poly_at,
    bernoulli_translation,
    raabe_fraction_sum,
    reset_table,
    shifted_bernoulli_poly,
    von_staudt_clausen_denominator,
    von_staudt_clausen_integer,
    von_staudt_clausen_primes,
)

FIRST_VALUES = [
    Fraction(1), Fraction(-1, 2), Fraction(1, 6), Fraction(0),
    Fraction(-1, 30), Fraction(0), Fraction(1, 42),
]


def test_first_values():
    assert bernoulli_numbers(6) == FIRST_VALUES


@pytest.mark.parametrize("n,expected", [(4, Fraction(-1, 30)), (7, Fraction(0)), (12, Fraction(-691, 2730))])
def test_named_values(n, expected):
    assert bernoulli_number(n) == expected


def test_negative_index_rejected():
    with pytest.raises(ValueError):
        bernoulli_number(-1)
    with pytest.raises(ValueError):
        bernoulli_poly(-2)


def test_akiyama_tanigawa_agrees_with_recurrence():
    assert akiyama_tanigawa(60) == bernoulli_numbers(60)


def test_reset_table_recomputes_same_values():
    before = bernoulli_numbers(40)
    reset_table()
    assert bernoulli_numbers(40) == before


def test_von_staudt_clausen():
    for n in range(2, 31, 2):
        assert bernoulli_number(n).denominator == von_staudt_clausen_denominator(n)
        assert von_staudt_clausen_integer(n).denominator == 1
    with pytest.raises(ValueError):
        von_staudt_clausen_denominator(3)


def test_von_staudt_clausen_primes():
    assert von_staudt_clausen_primes(2) == [2, 3]
    assert von_staudt_clausen_primes(12) == [2, 3, 5, 7, 13]
    assert von_staudt_clausen_denominator(12) == 2730
    assert von_staudt_clausen_primes(30) == [2, 3, 7, 11, 31]


def test_polynomials():
    assert bernoulli_poly(0) == DensePoly.constant(1)
    b1 = bernoulli_poly(1)
    assert [c.rat for c in b1.coeffs] == [Fraction(-1, 2), Fraction(1)]
    b3 = bernoulli_poly(3)
    assert [c.rat for c in b3.coeffs] == [Fraction(0), Fraction(1, 2), Fraction(-3, 2), Fraction(1)]


def test_polynomial_values():
    assert bernoulli_poly_at(2, QuadExt(0)) == Fraction(1, 6)
    assert bernoulli_poly_at(1, ALPHA) == QuadExt(0, Fraction(1, 2))
    assert bernoulli_poly_at(2, QuadExt(1)) == Fraction(1, 6)


def test_difference_and_reflection():
    rng = random.Random(7)
    for _ in range(20):
        x = QuadExt(Fraction(rng.randint(-6, 6), rng.randint(1, 5)), Fraction(rng.randint(-3, 3), rng.randint(1, 4)))
        for n in range(0, 9):
            # B_n(x + 1) - B_n(x) = n x^(n-1)
            expected = x ** (n - 1) * n if n else QuadExt(0)
            assert bernoulli_poly_at(n, x + 1) - bernoulli_poly_at(n, x) == expected
            # B_n(1 - x) = (-1)^n B_n(x)
            assert bernoulli_poly_at(n, 1 - x) == bernoulli_poly_at(n, x) * (-1) ** n


def test_translation_matches_substitution():
    for n in range(0, 12):
        for w in (QuadExt(Fraction(1, 3)), ALPHA, QuadExt(-2, 1)):
            assert bernoulli_translation(n, w) == shifted_bernoulli_poly(n, w)


def test_raabe_fraction_sum():
    for q in range(2, 7):
        for n in range(0, 16):
            assert raabe_fraction_sum(n, q) == (Fraction(q) ** (1 - n) - 1) * bernoulli_number(n)
    with pytest.raises(ValueError):
        raabe_fraction_sum(3, 1)
