"""Exponentially scaled I-Bessel functions of integer order and the X/Y profiles."""

from __future__ import annotations

import math

import mpmath

DEFAULT_PREC = 192


def bessel_I_scaled(k: int, x, prec: int = DEFAULT_PREC):
    """``exp(-x) * I_|k|(x)`` for integer ``k`` and ``x > 0``.

    Sums the ascending series ``sum_j (x/2)^(2j+|k|) / (j! (j+|k|)!)``.  All
    terms are positive, so the only loss is from the magnitude range; the sum
    runs with ``ceil(x / ln 2) + 32`` guard bits before scaling.
    """
    if int(k) != k:
        raise ValueError("only integer orders are supported")
    k = abs(int(k))
    with mpmath.workprec(prec + 32):
        x = mpmath.mpf(x)
    if x <= 0:
        raise ValueError("bessel_I_scaled needs x > 0")
    guard = math.ceil(float(x) / math.log(2)) + 32
    with mpmath.workprec(prec + guard):
        x = mpmath.mpf(x)
        h2 = (x / 2) ** 2
        term = (x / 2) ** k / mpmath.factorial(k)
        total = term
        eps = mpmath.mpf(2) ** (-(prec + guard))
        j = 0
        while True:
            j += 1
            term = term * h2 / (j * (j + k))
            total += term
            if j > x and term < eps * total:
                break
        out = total * mpmath.exp(-x)
    with mpmath.workprec(prec):
        return +out


def bessel_profile(kind: str, k: int, n, prec: int = DEFAULT_PREC):
    """``(mantissa, scale)`` with ``profile_k(n) = mantissa * exp(scale)``.

    kind ``"X"``: ``(2 sqrt(3n))^-k I_-k(2 pi sqrt(n/3))``;
    kind ``"Y"``: ``(4 sqrt(n))^-k I_-k(pi sqrt(n))``.
    """
    kind = kind.upper()
    with mpmath.workprec(prec + 32):
        n = mpmath.mpf(n)
        if n <= 0:
            raise ValueError("n must be positive")
        if kind == "X":
            scale = 2 * mpmath.pi * mpmath.sqrt(n / 3)
            base = 2 * mpmath.sqrt(3 * n)
        elif kind == "Y":
            scale = mpmath.pi * mpmath.sqrt(n)
            base = 4 * mpmath.sqrt(n)
        else:
            raise ValueError(f"unknown profile kind {kind!r}")
        v = base ** (-k) * bessel_I_scaled(k, scale, prec + 32)
    with mpmath.workprec(prec):
        return +v, +scale
