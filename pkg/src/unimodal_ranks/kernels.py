"""Numeric checks of the analytic building blocks.

* the partial theta function ``F_{d,k}(z; tau) = sum_{n>=0} zeta^(kn+d) q^((kn+d)^2)``
  and its expansion near ``tau = 0``;
* the moment integrals ``int_0^a z^(2l+1)/sinh(pi i z/tau) dz`` and
  ``int_0^a z^(2l)/cosh(pi i z/tau) dz`` against their Euler closed forms;
* the truncated Wright contour integral against the I-Bessel function.

Everything runs on mpmath at an explicit precision in bits.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

import mpmath

from .specfun import DEFAULT_PREC, bernoulli_poly, bessel_I_scaled, euler_number, euler_poly


class KernelDomainError(ValueError):
    pass


class QuadratureError(ArithmeticError):
    pass


def _mpq(x):
    x = Fraction(x)
    return mpmath.mpf(x.numerator) / x.denominator


@dataclass(frozen=True)
class UpperHalfPoint:
    tau: mpmath.mpc

    def __post_init__(self):
        t = mpmath.mpc(self.tau)
        if t.imag <= 0:
            raise KernelDomainError("tau must lie in the upper half-plane")
        object.__setattr__(self, "tau", t)

    @classmethod
    def on_axis(cls, y):
        return cls(mpmath.mpc(0, y))

    @property
    def x(self):
        return self.tau.real

    @property
    def y(self):
        return self.tau.imag

    @property
    def q(self):
        return mpmath.exp(2j * mpmath.pi * self.tau)

    def zeta(self, z):
        return mpmath.exp(2j * mpmath.pi * mpmath.mpmathify(z))


def _as_tau(tau) -> mpmath.mpc:
    return tau.tau if isinstance(tau, UpperHalfPoint) else UpperHalfPoint(tau).tau


# --------------------------------------------------------------------------
# partial theta


def partial_theta_direct(d, k: int, z, tau, prec: int = DEFAULT_PREC):
    """Direct summation of ``F_{d,k}(z; tau)``."""
    if Fraction(d) <= 0 or k < 1:
        raise ValueError("need d > 0 and k >= 1")
    with mpmath.workprec(prec + 16):
        t = _as_tau(tau)
        z = mpmath.mpmathify(z)
        d_mp = _mpq(d)
        y = t.imag
        eps = mpmath.mpf(2) ** (-prec - 8)
        total = mpmath.mpc(0)
        n = 0
        while True:
            x = k * n + d_mp
            total += mpmath.exp(2j * mpmath.pi * (z * x + t * x * x))
            bound = mpmath.exp(-2 * mpmath.pi * y * x * x + 2 * mpmath.pi * abs(z.imag) * x)
            # past the vertex of the Gaussian the bound is decreasing
            if x * y > abs(z.imag) and bound < eps * abs(total):
                break
            n += 1
    with mpmath.workprec(prec):
        return +total


def partial_theta_expansion(d, k: int, z, tau, N: int, prec: int = DEFAULT_PREC):
    """Expansion of ``F_{d,k}(z; tau)`` to order ``tau^N``, summed over l to full precision."""
    d = Fraction(d)
    if d <= 0 or k < 1 or N < 0:
        raise ValueError("need d > 0, k >= 1, N >= 0")
    with mpmath.workprec(prec + 32):
        t = _as_tau(tau)
        z = mpmath.mpmathify(z)
        if abs(z) >= mpmath.mpf(1) / (4 * k):
            raise KernelDomainError(f"|z| must be < 1/(4k) = 1/{4 * k}")
        w = -1j * t  # principal branch: Re w > 0
        x = d / k
        two_pi = 2 * mpmath.pi
        eps = mpmath.mpf(2) ** (-prec - 8)
        total = mpmath.mpc(0)
        small = 0
        l = 0
        while True:
            pref = (2j * k * mpmath.pi * z) ** l / mpmath.factorial(l)
            main = mpmath.gamma(mpmath.mpf(l + 1) / 2) / (
                2 * two_pi ** (mpmath.mpf(l + 1) / 2) * mpmath.mpf(k) ** (l + 1)
            ) * w ** (-mpmath.mpf(l + 1) / 2)
            corr = mpmath.mpc(0)
            for j in range(N + 1):
                b = bernoulli_poly(2 * j + l + 1, x) / (2 * j + l + 1)
                corr += (2j * k * k * mpmath.pi) ** j / mpmath.factorial(j) * _mpq(b) * t**j
            term = pref * (main - corr)
            total += term
            if z == 0:
                break
            small = small + 1 if abs(term) < eps * abs(total) else 0
            if small >= 2:
                break
            l += 1
            if l > 20 * prec:
                raise ArithmeticError("l-series failed to converge")
    with mpmath.workprec(prec):
        return +total


# --------------------------------------------------------------------------
# moment integrals


def _quad_checked(f, a, scale, prec):
    """Integrate f on [0, a] with panels refined near 0 at the decay length ``scale``.

    Runs twice, the second time with every panel split in two, and requires
    agreement; returns the refined value.
    """
    def nodes(split):
        pts = [mpmath.mpf(0)]
        h = min(scale, a)
        while h < a:
            pts.append(h)
            h *= 2
        pts.append(a)
        if split:
            pts = sorted(set(pts) | {(u + v) / 2 for u, v in zip(pts, pts[1:])})
        return pts

    with mpmath.workprec(prec + 32):
        coarse = mpmath.quad(f, nodes(False))
        fine = mpmath.quad(f, nodes(True))
        tol = mpmath.mpf(2) ** (-prec + 16) * max(abs(fine), mpmath.mpf(2) ** (-prec * 2))
        if abs(coarse - fine) > tol:
            raise QuadratureError(
                f"subdivision check failed: |coarse - fine| = {mpmath.nstr(abs(coarse - fine), 5)}"
                f" > {mpmath.nstr(tol, 5)}"
            )
    return fine


def _check_moment_args(l, a, tau):
    if l < 0:
        raise ValueError("l must be >= 0")
    if a <= 0:
        raise ValueError("a must be positive")
    return _as_tau(tau)


def kernel_I(l: int, a, tau, prec: int = DEFAULT_PREC):
    """``(quadrature, closed)`` for ``int_0^a z^(2l+1) / sinh(pi i z / tau) dz``."""
    with mpmath.workprec(prec + 32):
        a = mpmath.mpmathify(a)
        t = _check_moment_args(l, a, tau)
        c = mpmath.pi * 1j / t

        def f(z):
            if z == 0:
                return c ** -1 if l == 0 else mpmath.mpc(0)
            return z ** (2 * l + 1) / mpmath.sinh(c * z)

        quad = _quad_checked(f, a, 1 / abs(c), prec)
        closed = _mpq(euler_poly(2 * l + 1, 0)) / 2 * t ** (2 * l + 2)
    with mpmath.workprec(prec):
        return +quad, +closed


def kernel_K(l: int, a, tau, prec: int = DEFAULT_PREC):
    """``(quadrature, closed)`` for ``int_0^a z^(2l) / cosh(pi i z / tau) dz``."""
    with mpmath.workprec(prec + 32):
        a = mpmath.mpmathify(a)
        t = _check_moment_args(l, a, tau)
        c = mpmath.pi * 1j / t

        def f(z):
            return z ** (2 * l) / mpmath.cosh(c * z)

        quad = _quad_checked(f, a, 1 / abs(c), prec)
        closed = -1j * euler_number(2 * l) * (t / 2) ** (2 * l + 1)
    with mpmath.workprec(prec):
        return +quad, +closed


# --------------------------------------------------------------------------
# Wright integral


def wright_P(s, k, n, prec: int = DEFAULT_PREC):
    """``(contour, bessel)`` for ``(1/2 pi i) int_{1-i}^{1+i} v^s e^{c(1/v + v)} dv``, c = pi sqrt(kn/6).

    ``bessel`` is ``I_{s+1}(pi sqrt(2kn/3))``; only integer ``s`` is supported.
    """
    if int(s) != s:
        raise NotImplementedError("wright_P supports integer s only")
    s = int(s)
    if s <= 0 or k <= 0 or n < 1:
        raise ValueError("need s > 0, k > 0, n >= 1")
    with mpmath.workprec(prec + 32):
        c = mpmath.pi * mpmath.sqrt(mpmath.mpf(k) * n / 6)

        def f(t):
            v = mpmath.mpc(1, t)
            return v**s * mpmath.exp(c * (1 / v + v))

        # v = 1 + it, dv = i dt; the integrand peaks at t = 0 with width ~ c^(-1/2)
        h = 1 / mpmath.sqrt(c)
        pts = sorted({mpmath.mpf(-1), -h, mpmath.mpf(0), h, mpmath.mpf(1)})
        contour = mpmath.quad(f, pts) / (2 * mpmath.pi)
        bessel = bessel_I_scaled(s + 1, 2 * c, prec + 32) * mpmath.exp(2 * c)
    with mpmath.workprec(prec):
        return +contour, +bessel
