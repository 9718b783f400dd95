"""
Tests for Fibonacci and Lucas numbers and their Binet forms.
"""
from fractions import Fraction

import pytest

from fibbern.utils.exact import QuadExt
from fibbern.utils.sequences import (
    alpha_power,
    beta_power,
    binet_fib,
    binet_lucas,
    fib,
    fib_naive,
    lucas,
    lucas_naive,
)


@pytest.mark.parametrize("n,expected", [(0, 0), (1, 1), (10, 55), (-1, 1), (-2, -1)])
def test_fib_values(n, expected):
    assert fib(n) == expected


@pytest.mark.parametrize("n,expected", [(0, 2), (1, 1), (5, 11), (-3, -4)])
def test_lucas_values(n, expected):
    assert lucas(n) == expected


def test_fast_doubling_matches_iteration():
    for n in range(-60, 400):
        assert fib(n) == fib_naive(n)
        assert lucas(n) == lucas_naive(n)
    assert fib(5000) == fib_naive(5000)


def test_recurrence_and_reflection():
    for n in range(-40, 40):
        assert fib(n + 2) == fib(n + 1) + fib(n)
        assert lucas(n + 2) == lucas(n + 1) + lucas(n)
        assert fib(-n) == (-1) ** (n + 1) * fib(n)
        assert lucas(-n) == (-1) ** n * lucas(n)
        assert lucas(n) == fib(n - 1) + fib(n + 1)


def test_binet_forms():
    for n in range(-20, 40):
        assert binet_fib(n) == fib(n)
        assert binet_lucas(n) == lucas(n)


def test_alpha_power():
    assert alpha_power(0) == 1
    assert alpha_power(5) == QuadExt(Fraction(11, 2), Fraction(5, 2))
    assert alpha_power(-1) == QuadExt(Fraction(-1, 2), Fraction(1, 2))
    for j in range(-10, 10):
        assert alpha_power(j) * beta_power(j) == (-1) ** (j % 2)
        assert alpha_power(j) + beta_power(j) == lucas(j)
