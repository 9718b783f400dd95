"""
Bernoulli numbers and polynomials over Q(sqrt 5).

The convention is B_1 = -1/2. Numbers come from the recurrence
sum_{k<=n} C(n+1, k) B_k = 0, memoized in an append-only table guarded by a
lock; Akiyama-Tanigawa is kept as an independent path.
"""
from __future__ import annotations

import logging
import threading
from fractions import Fraction
from functools import lru_cache
from typing import List

from sympy import divisors
from sympy.ntheory import isprime

from .exact import DensePoly, QuadExt, Scalar, binomial, poly_eval

logger = logging.getLogger(__name__)

_table: List[Fraction] = [Fraction(1)]
_table_lock = threading.Lock()


def bernoulli_number(n: int) -> Fraction:
    """
    Exact B_n with B_1 = -1/2.

    Raises:
        ValueError: If n is negative
    """
    if n < 0:
        raise ValueError(f"Bernoulli index must be non-negative, got {n}")
    if n < len(_table):
        return _table[n]
    with _table_lock:
        start = len(_table)
        while len(_table) <= n:
            m = len(_table)
            if m > 1 and m % 2 == 1:
                _table.append(Fraction(0))
                continue
            acc = Fraction(0)
            for k in range(m):
                b = _table[k]
                if b:
                    acc += binomial(m + 1, k) * b
            _table.append(-acc / (m + 1))
        if len(_table) > start:
            logger.debug(f"Bernoulli table extended from {start} to {len(_table)} entries")
    return _table[n]


def reset_table() -> None:
    """Drop every memoized B_n except B_0 (used before timing runs)."""
    with _table_lock:
        del _table[1:]


def bernoulli_numbers(n: int) -> List[Fraction]:
    """[B_0, ..., B_n]."""
    bernoulli_number(n)
    return list(_table[: n + 1])


def akiyama_tanigawa(n: int) -> List[Fraction]:
    """
    [B_0, ..., B_n] by the Akiyama-Tanigawa triangle.

    The triangle yields B_1 = +1/2; the sign is flipped to match the
    convention used everywhere else.
    """
    if n < 0:
        raise ValueError(f"Bernoulli index must be non-negative, got {n}")
    row = [Fraction(0)] * (n + 1)
    out = []
    for m in range(n + 1):
        row[m] = Fraction(1, m + 1)
        for k in range(m, 0, -1):
            row[k - 1] = k * (row[k - 1] - row[k])
        out.append(row[0])
    if n >= 1:
        out[1] = -out[1]
    return out


@lru_cache(maxsize=512)
def bernoulli_poly(n: int) -> DensePoly:
    """B_n(x) = sum_k C(n, k) B_{n-k} x**k."""
    if n < 0:
        raise ValueError(f"Bernoulli index must be non-negative, got {n}")
    return DensePoly(tuple(QuadExt(binomial(n, k) * bernoulli_number(n - k)) for k in range(n + 1)))


@lru_cache(maxsize=16384)
def bernoulli_poly_at(n: int, x: QuadExt) -> QuadExt:
    """Exact B_n(x) for x in Q(sqrt 5)."""
    return poly_eval(bernoulli_poly(n), x)


@lru_cache(maxsize=4096)
def shifted_bernoulli_poly(n: int, w: QuadExt) -> DensePoly:
    """B_n(x + w) as a polynomial in x, by substitution."""
    return bernoulli_poly(n).compose_linear(1, w)


@lru_cache(maxsize=4096)
def bernoulli_translation(n: int, w: QuadExt) -> DensePoly:
    """B_n(x + w) built from the addition property sum_k C(n,k) B_{n-k}(x) w**k."""
    acc = DensePoly()
    power = QuadExt(1)
    for k in range(n + 1):
        acc = acc + bernoulli_poly(n - k).scale(power * binomial(n, k))
        power = power * w
    return acc


def scaled_bernoulli_poly(n: int, a: Scalar) -> DensePoly:
    """B_n(a*x) as a polynomial in x."""
    return bernoulli_poly(n).compose_linear(a, 0)


def raabe_fraction_sum(n: int, q: int) -> Fraction:
    """
    sum_{r=1}^{q-1} B_n(r/q), which equals (q**(1-n) - 1) B_n.

    Raises:
        ValueError: If q < 2
    """
    if q < 2:
        raise ValueError(f"q must be at least 2, got {q}")
    acc = QuadExt(0)
    for r in range(1, q):
        acc = acc + bernoulli_poly_at(n, QuadExt(Fraction(r, q)))
    return acc.rat


def von_staudt_clausen_primes(n: int) -> List[int]:
    """Primes p with (p - 1) | n, for even n >= 2."""
    if n < 2 or n % 2:
        raise ValueError(f"von Staudt-Clausen applies to even n >= 2, got {n}")
    return [d + 1 for d in divisors(n) if isprime(d + 1)]


def von_staudt_clausen_denominator(n: int) -> int:
    """Product of the primes p with (p - 1) | n; the denominator of B_n for even n >= 2."""
    product = 1
    for p in von_staudt_clausen_primes(n):
        product *= p
    return product


def von_staudt_clausen_integer(n: int) -> Fraction:
    """B_n + sum_{(p-1)|n} 1/p, an integer for even n >= 2."""
    return bernoulli_number(n) + sum((Fraction(1, p) for p in von_staudt_clausen_primes(n)), Fraction(0))


if __name__ == "__main__":
    for i in range(13):
        print(f"{i}: {bernoulli_number(i)}")
    print(f"B_3(x) = {bernoulli_poly(3)}")
