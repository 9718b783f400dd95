"""
Fibonacci and Lucas numbers for all integer indices.

Positive indices use fast doubling; negative indices are reflected with
F(-n) = (-1)**(n+1) F(n) and L(-n) = (-1)**n L(n).
"""
from __future__ import annotations

from fractions import Fraction
from functools import lru_cache
from typing import Tuple

from .exact import ALPHA, BETA, SQRT5, QuadExt


@lru_cache(maxsize=8192)
def _fib_pair(n: int) -> Tuple[int, int]:
    """(F(n), F(n+1)) for n >= 0."""
    if n == 0:
        return (0, 1)
    a, b = _fib_pair(n >> 1)
    c = a * (2 * b - a)  # F(2k)
    d = a * a + b * b  # F(2k+1)
    if n & 1:
        return (d, c + d)
    return (c, d)


def clear_cache() -> None:
    """Forget memoized fast-doubling pairs (used before timing runs)."""
    _fib_pair.cache_clear()


def fib(n: int) -> int:
    """Fibonacci number F(n) for any integer n."""
    if n >= 0:
        return _fib_pair(n)[0]
    value = _fib_pair(-n)[0]
    return value if (-n) % 2 == 1 else -value


def lucas(n: int) -> int:
    """Lucas number L(n) for any integer n."""
    if n >= 0:
        a, b = _fib_pair(n)
        return 2 * b - a
    value = lucas(-n)
    return value if (-n) % 2 == 0 else -value


def fib_naive(n: int) -> int:
    """F(n) by plain iteration of the recurrence (both directions)."""
    a, b = 0, 1  # F(0), F(1)
    if n >= 0:
        for _ in range(n):
            a, b = b, a + b
        return a
    for _ in range(-n):
        a, b = b - a, a
    return a


def lucas_naive(n: int) -> int:
    """L(n) by plain iteration of the recurrence (both directions)."""
    a, b = 2, 1  # L(0), L(1)
    if n >= 0:
        for _ in range(n):
            a, b = b, a + b
        return a
    for _ in range(-n):
        a, b = b - a, a
    return a


def alpha_power(j: int) -> QuadExt:
    """alpha**j = L(j)/2 + (F(j)/2)*sqrt(5), valid for negative j as well."""
    return QuadExt(Fraction(lucas(j), 2), Fraction(fib(j), 2))


def beta_power(j: int) -> QuadExt:
    """beta**j, the conjugate of alpha**j."""
    return alpha_power(j).conj()


def binet_fib(n: int) -> QuadExt:
    """F(n) recomputed from powers of alpha and beta in Q(sqrt 5)."""
    return (ALPHA ** n - BETA ** n) / SQRT5


def binet_lucas(n: int) -> QuadExt:
    """L(n) recomputed from powers of alpha and beta in Q(sqrt 5)."""
    return ALPHA ** n + BETA ** n
