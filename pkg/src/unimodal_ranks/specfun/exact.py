"""Exact rational values of Bernoulli and Euler numbers and polynomials."""

from __future__ import annotations

from fractions import Fraction
from functools import lru_cache
from math import comb

Rat = Fraction

_bern = [Fraction(1)]
_euler = [1]


def bernoulli_number(n: int) -> Fraction:
    """``B_n`` with the convention ``B_1 = -1/2``."""
    if n < 0:
        raise ValueError("n must be non-negative")
    while len(_bern) <= n:
        m = len(_bern)
        s = sum(comb(m + 1, k) * _bern[k] for k in range(m))
        _bern.append(-s / (m + 1))
    return _bern[n]


@lru_cache(maxsize=4096)
def bernoulli_poly(n: int, x) -> Fraction:
    """``B_n(x) = sum_k C(n, k) B_k x^(n-k)`` at rational ``x``."""
    x = Fraction(x)
    return sum(comb(n, k) * bernoulli_number(k) * x ** (n - k) for k in range(n + 1))


def euler_number(n: int) -> int:
    """Euler (secant) numbers: ``E_0 = 1, E_2 = -1, E_4 = 5``; zero for odd ``n``."""
    if n < 0:
        raise ValueError("n must be non-negative")
    if n % 2:
        return 0
    half = n // 2
    while len(_euler) <= half:
        m = len(_euler)
        _euler.append(-sum(comb(2 * m, 2 * k) * _euler[k] for k in range(m)))
    return _euler[half]


@lru_cache(maxsize=4096)
def euler_poly(n: int, x) -> Fraction:
    """Euler polynomial ``E_n(x) = sum_k C(n,k) E_k / 2^k (x - 1/2)^(n-k)``."""
    if n < 0:
        raise ValueError("n must be non-negative")
    y = Fraction(x) - Fraction(1, 2)
    return sum(
        comb(n, k) * Fraction(euler_number(k), 2**k) * y ** (n - k) for k in range(0, n + 1, 2)
    )
