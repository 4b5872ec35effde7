"""Exact asymptotic expansions of the rank counts and their numeric evaluation.

Each family's count has an expansion ``sum_k c_k * P_k(n)`` where ``P_k`` is
the Bessel profile ``X_k`` (U, W, V) or ``Y_k`` (NU) and the ``c_k`` are exact
:class:`~unimodal_ranks.specfun.PiPoly` constants.  Two independent routes
produce the ``c_k``:

* :func:`theorem_series` sums the real closed-form multi-index expressions;
* :func:`near_pole_input` builds the complex coefficients ``A(j)`` of the
  generating function near ``q = 1``, and :func:`wright_series` pushes them
  through the circle-method transform exactly.

:func:`corollary_series` holds the published three-term truncations as data.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from itertools import product
from math import factorial

import mpmath

from .genfun import Family
from .specfun import (
    DEFAULT_PREC,
    PiPoly,
    QuadNumber,
    bernoulli_poly,
    bessel_I_scaled,
    bessel_profile,
    euler_number,
    euler_poly,
)

I = QuadNumber.I
SQRT2 = QuadNumber.SQRT2


class AsymptoticsError(ArithmeticError):
    """Exact bookkeeping produced an impossible value (e.g. a leftover imaginary part)."""


def _pi(a, c=1) -> PiPoly:
    return PiPoly.pi_power(a, c)


def _ipow(k: int) -> QuadNumber:
    return (QuadNumber(1), I, QuadNumber(-1), -I)[k % 4]


# --------------------------------------------------------------------------
# constants


def alpha(m: int, index: int) -> PiPoly:
    """Coefficient ``alpha_{m,index}`` of ``z^index`` in ``-2 sin(pi z) cos(2 pi m z)``.

    Equivalently ``zeta^(-1/2) (1 - zeta) cos(2 pi m z) = sum_k i alpha_{m,2k+1} z^(2k+1)``.
    """
    if index < 1 or index % 2 == 0:
        raise ValueError(f"alpha needs an odd index >= 1, got {index}")
    k = (index - 1) // 2
    m = abs(m)
    c = Fraction(-((-1) ** k) * ((2 * m + 1) ** index - (2 * m - 1) ** index), factorial(index))
    return _pi(index, c)


def beta(m: int, index: int) -> PiPoly:
    """Coefficient of ``z^index`` in ``cos(2 pi m z) / (2 cos(pi z))``."""
    if index < 0 or index % 2:
        raise ValueError(f"beta needs an even index >= 0, got {index}")
    k = index // 2
    total = Fraction(0)
    for a in range(k + 1):
        b = k - a
        # sec x = sum (-1)^a E_2a x^2a / (2a)!;  cos y = sum (-1)^b y^2b / (2b)!
        total += Fraction(
            (-1) ** a * euler_number(2 * a) * (-1) ** b * (2 * m) ** (2 * b),
            factorial(2 * a) * factorial(2 * b),
        )
    return _pi(index, total / 2)


def gamma_const(two_l: int, j: int, kappa: int) -> PiPoly:
    """``(2k)^j (2k pi)^(2l) (-1)^l pi^j B_{2j+2l+1}(1/k) / ((2l)! j! (2j+2l+1))``, k = kappa."""
    if kappa not in (3, 4):
        raise ValueError("kappa must be 3 or 4")
    if two_l < 0 or two_l % 2 or j < 0:
        raise ValueError("gamma_const needs an even first index and j >= 0")
    l = two_l // 2
    n = 2 * j + 2 * l + 1
    c = (
        Fraction((2 * kappa) ** j * (2 * kappa) ** (2 * l) * (-1) ** l, factorial(2 * l) * factorial(j) * n)
        * bernoulli_poly(n, Fraction(1, kappa))
    )
    return _pi(2 * l + j, c)


def _E0(n: int) -> Fraction:
    return euler_poly(n, 0)


# --------------------------------------------------------------------------
# series containers


@dataclass(frozen=True)
class AsymSeries:
    """``sum_k coeff_k * profile_k(n)``; profile X for U, W, V and Y for NU."""

    family: Family
    m: int
    terms: tuple  # ((bessel index, PiPoly), ...) strictly increasing, nonzero

    @property
    def kind(self) -> str:
        return "Y" if self.family is Family.NU else "X"

    @property
    def L(self) -> int:
        return 8 if self.family is Family.NU else 6

    def as_dict(self) -> dict[int, PiPoly]:
        return dict(self.terms)

    def truncated(self, max_index: int) -> "AsymSeries":
        return AsymSeries(self.family, self.m, tuple(t for t in self.terms if t[0] <= max_index))

    def __str__(self):
        body = " + ".join(f"[{c}] {self.kind}_{k}" for k, c in self.terms) or "0"
        return f"{self.family.value}(m={self.m}): {body}"


def _make_series(family, m, acc: dict[int, PiPoly]) -> AsymSeries:
    terms = []
    for k in sorted(acc):
        c = acc[k]
        if not c.is_real():
            raise AsymptoticsError(
                f"{family.value}: coefficient of profile {k} has imaginary part {c.imag}"
            )
        if c:
            terms.append((k, c))
    return AsymSeries(Family.parse(family), m, tuple(terms))


def _ranges(total_max, weights):
    """All tuples of non-negative ints with sum(w * x) <= total_max."""
    def rec(i, budget):
        if i == len(weights):
            yield ()
            return
        for x in range(budget // weights[i] + 1):
            for rest in rec(i + 1, budget - weights[i] * x):
                yield (x,) + rest

    yield from rec(0, total_max)


# --------------------------------------------------------------------------
# closed-form theorem sums


def theorem_series(family, m: int, N: int) -> AsymSeries:
    """Main terms up to order ``N`` from the closed-form multi-index sums."""
    family = Family.parse(family)
    m = abs(m)
    acc: dict[int, PiPoly] = {}

    def add(idx, c):
        acc[idx] = acc.get(idx, PiPoly()) + c

    if family is Family.U:
        if N < 2:
            raise ValueError("N >= 2 required")
        for k, r, s, l, j in _ranges(N - 2, (2, 1, 1, 2, 1)):
            c = (
                alpha(m, 2 * k + 1)
                * gamma_const(2 * l, j, 4)
                * _pi(r + s + 1, Fraction(2 * (-1) ** (k + r + s + j + l + 1), 2**j * 12**s * factorial(r) * factorial(s)))
                * _E0(2 * k + 2 * r + 2 * l + 1)
            )
            add(2 * k + r + s + 2 * l + j + 3, c)
    elif family is Family.W:
        if N < 2:
            raise ValueError("N >= 2 required")
        for k, r, t in _ranges(N - 2, (2, 1, 1)):
            c = (
                alpha(m, 2 * k + 1)
                * _pi(r + t + 1, Fraction((-1) ** (r + t + k + 1), 6**t * factorial(r) * factorial(t)))
                * _E0(2 * k + 2 * r + 1)
            )
            add(2 * k + r + t + 3, c)
        for k, r, j, l, s, t in _ranges(N - 2, (2, 1, 1, 2, 2, 1)):
            c = (
                alpha(m, 2 * k + 1)
                * gamma_const(2 * l, j, 4)
                * _pi(
                    r + t + 2 * s + 1,
                    Fraction(4 * (-1) ** (r + t + k + j + l + s + 1) * 4**s, 2**j * 12**t * factorial(r) * factorial(t) * factorial(2 * s)),
                )
                * _E0(2 * r + 2 * k + 2 * l + 2 * s + 1)
            )
            add(2 * k + r + t + 2 * l + 2 * s + j + 3, c)
    elif family is Family.V:
        if N < 2:
            raise ValueError("N >= 2 required")
        for k, r, s, l, j in _ranges(N - 2, (2, 1, 1, 2, 1)):
            c = (
                alpha(m, 2 * k + 1)
                * gamma_const(2 * l, j, 3)
                * _pi(r + s + 1, Fraction(2 * (-1) ** (k + r + s + j + l + 1), 2**s * factorial(r) * factorial(s)))
                * _E0(2 * k + 2 * r + 2 * l + 1)
            )
            add(2 * k + r + s + 2 * l + j + 3, c)
    else:
        if N < 1:
            raise ValueError("N >= 1 required")
        for k, r, l, j, s in _ranges(N - 1, (2, 1, 2, 1, 1)):
            c = (
                beta(m, 2 * k)
                * gamma_const(2 * l, j, 4)
                * _pi(r + s + 1, Fraction((-1) ** (j + r + k + l + 1), 2 ** (r + s + j + 2 * l) * factorial(r) * factorial(s)))
                * euler_number(2 * k + 2 * r + 2 * l)
                * (2 * SQRT2)
            )
            add(j + r + s + 2 * k + 2 * l + 2, c)
    return _make_series(family, m, acc)


# --------------------------------------------------------------------------
# near-pole coefficients and the circle-method transform


@dataclass(frozen=True)
class WrightInput:
    """Expansion ``F(q) = exp(pi i / (L tau)) * sum_j A[j] tau^j`` near ``q = 1``.

    ``A`` maps the power ``j >= 1`` of ``tau`` to an exact coefficient.
    """

    L: int
    A: dict = field(default_factory=dict)

    def __post_init__(self):
        if self.L < 1:
            raise ValueError("L must be a positive integer")


def near_pole_input(family, m: int, N: int, convention: str = "main") -> WrightInput:
    """Coefficients ``A(j)`` (``j <= N``) of the generating function of ``family`` at rank ``m``.

    ``convention="display"`` keeps the alternating factors ``(-1)^s`` (U, V)
    and ``(-1)^(s+t)`` (second W sum) attached to the expansion of the
    ``q``-power prefactor and of ``cos``; ``convention="main"`` drops them,
    which is the bookkeeping under which the transform reproduces
    :func:`theorem_series`.  NU has no such factor after the transform and
    is the same under both.
    """
    if convention not in ("main", "display"):
        raise ValueError("convention must be 'main' or 'display'")
    family = Family.parse(family)
    m = abs(m)
    A: dict[int, PiPoly] = {}

    def add(M, c):
        if 1 <= M <= N:
            A[M] = A.get(M, PiPoly()) + c

    pi_i = lambda e: _pi(e) * _ipow(e)  # (pi i)^e
    sgn = -1 if convention == "display" else 1
    if family is Family.U:
        for k, r, s, l, j in _ranges(N - 2, (2, 1, 1, 2, 1)):
            c = (
                alpha(m, 2 * k + 1)
                * pi_i(r + s)
                * Fraction(sgn**s, 12**s * factorial(r) * factorial(s))
                * gamma_const(2 * l, j, 4)
                * (_ipow(j) / 2**j)
                * _E0(2 * k + 2 * r + 2 * l + 1)
            )
            add(2 * k + r + s + 2 * l + j + 2, c)
    elif family is Family.W:
        for k, r, t in _ranges(N - 2, (2, 1, 1)):
            c = (
                alpha(m, 2 * k + 1)
                * pi_i(r + t)
                * Fraction(1, 2 * 6**t * factorial(r) * factorial(t))
                * _E0(2 * k + 2 * r + 1)
            )
            add(2 * k + r + t + 2, c)
        for k, r, j, l, s, t in _ranges(N - 2, (2, 1, 1, 2, 2, 1)):
            c = (
                alpha(m, 2 * k + 1)
                * pi_i(r + t)
                * Fraction(2 * sgn ** (t + s) * 4**s, 12**t * factorial(r) * factorial(t) * factorial(2 * s))
                * (_ipow(j) / 2**j)
                * gamma_const(2 * l, j, 4)
                * _pi(2 * s)
                * _E0(2 * r + 2 * k + 2 * l + 2 * s + 1)
            )
            add(j + r + t + 2 * k + 2 * l + 2 * s + 2, c)
    elif family is Family.V:
        for k, r, s, l, j in _ranges(N - 2, (2, 1, 1, 2, 1)):
            c = (
                alpha(m, 2 * k + 1)
                * pi_i(r + s)
                * Fraction(sgn**s, 2**s * factorial(r) * factorial(s))
                * gamma_const(2 * l, j, 3)
                * _ipow(j)
                * _E0(2 * k + 2 * r + 2 * l + 1)
            )
            add(2 * k + r + s + 2 * l + j + 2, c)
    else:
        for k, r, l, j, s in _ranges(N - 1, (2, 1, 2, 1, 1)):
            c = (
                beta(m, 2 * k)
                * pi_i(r + s)
                * Fraction((-1) ** s, 2 ** (r + s + j + 2 * l) * factorial(r) * factorial(s))
                * _ipow(j + 1)
                * gamma_const(2 * l, j, 4)
                * euler_number(2 * k + 2 * r + 2 * l)
                * SQRT2
            )
            add(j + r + s + 2 * k + 2 * l + 1, c)
    L = 8 if family is Family.NU else 6
    return WrightInput(L, {j: c for j, c in sorted(A.items()) if c})


def wright_series(w: WrightInput, family, m: int = 0) -> AsymSeries:
    """Exact transform ``A(j) tau^j -> -2 pi i^(j+2) A(j) * profile_{j+1}``.

    Valid for L = 6 (X profiles) and L = 8 (Y profiles), where
    ``(i / sqrt(2 L n))^(j+1) I_(-j-1)(2 pi sqrt(2n/L))`` equals
    ``i^(j+1) * profile_{j+1}(n)``.
    """
    family = Family.parse(family)
    expected_L = 8 if family is Family.NU else 6
    if w.L != expected_L:
        raise ValueError(f"family {family.value} uses L={expected_L}, got L={w.L}")
    acc = {j + 1: a * _pi(1, -2) * _ipow(j + 2) for j, a in w.A.items()}
    return _make_series(family, m, acc)


def wright_input_from_series(s: AsymSeries) -> WrightInput:
    """Inverse of :func:`wright_series`: the ``A(j)`` that transform to ``s``."""
    A = {}
    for k, c in s.terms:
        if c[0]:
            raise AsymptoticsError("coefficient has a pi^0 part; cannot divide by 2 pi")
        # c = -2 pi i^(j+2) A(j) with j = k - 1
        shifted = PiPoly({a - 1: v for a, v in c.terms.items()})
        A[k - 1] = shifted * (_ipow(k + 1).inverse() * Fraction(-1, 2))
    return WrightInput(s.L, A)


def near_pole_series(family, m: int, N: int | None = None) -> AsymSeries:
    """Main terms obtained by transforming the near-pole coefficients as displayed.

    Against exact counts this series has relative error of order
    ``n^(-3/2)`` at the default order, which the closed-form sums for U, W
    and V do not achieve; see the README.
    """
    family = Family.parse(family)
    if N is None:
        N = COROLLARY_ORDER[family]
    return wright_series(near_pole_input(family, m, N, convention="display"), family, m)


# --------------------------------------------------------------------------
# published three-term main terms, stored as data


def corollary_series(family, m: int) -> AsymSeries:
    family = Family.parse(family)
    m2 = m * m
    F = Fraction
    if family is Family.U:
        table = {3: _pi(2, F(1, 2)), 4: _pi(3, F(1, 3)), 5: _pi(4, F(59 - 36 * m2, 72))}
    elif family is Family.W:
        table = {4: _pi(3, F(1, 3)), 5: _pi(4, F(55, 24)), 6: _pi(5, F(1841 - 108 * m2, 324))}
    elif family is Family.V:
        table = {3: _pi(2, F(1, 3)), 4: _pi(3, F(4, 27)), 5: _pi(4, F(101 - 72 * m2, 216))}
    else:
        inv = SQRT2.inverse()
        table = {
            2: _pi(1, inv / 2),
            3: _pi(2, inv * F(5, 8)),
            4: _pi(3, inv * F(77 - 64 * m2, 64)),
        }
    return _make_series(family, m, table)


# orders at which the closed-form sums yield exactly the published three terms
COROLLARY_ORDER = {Family.U: 4, Family.W: 5, Family.V: 4, Family.NU: 3}


# --------------------------------------------------------------------------
# numerics


def eval_series(s: AsymSeries, n, prec: int = DEFAULT_PREC):
    """``(mantissa, scale)`` with the series value ``mantissa * exp(scale)``."""
    with mpmath.workprec(prec):
        n_mp = mpmath.mpf(n)
        if n_mp < 1:
            raise ValueError("n must be >= 1")
        scale = 2 * mpmath.pi * mpmath.sqrt(2 * n_mp / s.L)
        total = mpmath.mpf(0)
        for k, c in s.terms:
            v, _ = bessel_profile(s.kind, k, n, prec)
            total += c.evaluate(prec) * v
        return +total, +scale


def log_value(s: AsymSeries, n, prec: int = DEFAULT_PREC):
    """Natural log of the series value (the value must be positive)."""
    v, scale = eval_series(s, n, prec)
    with mpmath.workprec(prec):
        if v <= 0:
            raise AsymptoticsError(f"series value at n={n} is not positive")
        return mpmath.log(v) + scale


def wright_eval(w: WrightInput, n, prec: int = DEFAULT_PREC):
    """``-2 pi i sum_j A(j) (i/sqrt(2Ln))^(j+1) I_(-j-1)(2 pi sqrt(2n/L))`` as mantissa, scale.

    Complex arithmetic throughout; the value is ``mantissa * exp(scale)``.
    """
    with mpmath.workprec(prec):
        n_mp = mpmath.mpf(n)
        if n_mp < 1:
            raise ValueError("n must be >= 1")
        scale = 2 * mpmath.pi * mpmath.sqrt(2 * n_mp / w.L)
        base = mpmath.mpc(0, 1) / mpmath.sqrt(2 * w.L * n_mp)
        total = mpmath.mpc(0)
        for j, a in w.A.items():
            val = a.evaluate(prec) if isinstance(a, PiPoly) else mpmath.mpmathify(a)
            total += val * base ** (j + 1) * bessel_I_scaled(j + 1, scale, prec)
        return +(-2 * mpmath.pi * mpmath.mpc(0, 1) * total), +scale
