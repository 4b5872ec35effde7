"""Exact constants: polynomials in pi with coefficients in Q(sqrt 2, i).

Every coefficient in the asymptotic expansions is a finite sum
``c * pi^a`` with ``c`` a rational multiple of ``1`` or ``sqrt(2)``.  Keeping
``i`` in the coefficient field lets the complex bookkeeping of the circle
method stay exact; the real formulas are checked to have vanishing imaginary
part instead of having it rounded away.
"""

from __future__ import annotations

from fractions import Fraction
from numbers import Rational

import mpmath


def _frac(x) -> Fraction:
    if isinstance(x, Fraction):
        return x
    if isinstance(x, (int, Rational)):
        return Fraction(x)
    raise TypeError(f"expected a rational, got {type(x).__name__}")


class QuadNumber:
    """``a + b*sqrt(2) + i*(c + d*sqrt(2))`` with rational a, b, c, d."""

    __slots__ = ("a", "b", "c", "d")

    def __init__(self, a=0, b=0, c=0, d=0):
        self.a = _frac(a)
        self.b = _frac(b)
        self.c = _frac(c)
        self.d = _frac(d)

    @classmethod
    def coerce(cls, x) -> "QuadNumber":
        if isinstance(x, QuadNumber):
            return x
        if isinstance(x, complex):
            raise TypeError("floating complex values are not exact")
        return cls(x)

    SQRT2: "QuadNumber"
    I: "QuadNumber"

    def _t(self):
        return (self.a, self.b, self.c, self.d)

    def __eq__(self, other):
        try:
            other = QuadNumber.coerce(other)
        except TypeError:
            return NotImplemented
        return self._t() == other._t()

    def __hash__(self):
        return hash(self._t())

    def __bool__(self):
        return any(self._t())

    def __add__(self, other):
        o = QuadNumber.coerce(other)
        return QuadNumber(self.a + o.a, self.b + o.b, self.c + o.c, self.d + o.d)

    __radd__ = __add__

    def __neg__(self):
        return QuadNumber(-self.a, -self.b, -self.c, -self.d)

    def __sub__(self, other):
        return self + (-QuadNumber.coerce(other))

    def __rsub__(self, other):
        return QuadNumber.coerce(other) - self

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            return QuadNumber(self.a * other, self.b * other, self.c * other, self.d * other)
        o = QuadNumber.coerce(other)
        # (x + iy)(u + iv), x, y, u, v in Q(sqrt2)
        def m(p, q, r, s):
            return (p * r + 2 * q * s, p * s + q * r)

        xu = m(self.a, self.b, o.a, o.b)
        yv = m(self.c, self.d, o.c, o.d)
        xv = m(self.a, self.b, o.c, o.d)
        yu = m(self.c, self.d, o.a, o.b)
        return QuadNumber(xu[0] - yv[0], xu[1] - yv[1], xv[0] + yu[0], xv[1] + yu[1])

    __rmul__ = __mul__

    def conjugate(self) -> "QuadNumber":
        return QuadNumber(self.a, self.b, -self.c, -self.d)

    def inverse(self) -> "QuadNumber":
        # 1/z = conj(z) / |z|^2, and |z|^2 = p + q sqrt2 is inverted by its Galois conjugate
        n = self * self.conjugate()
        p, q = n.a, n.b
        den = p * p - 2 * q * q
        if den == 0:
            raise ZeroDivisionError("QuadNumber division by zero")
        inv = QuadNumber(p / den, -q / den)
        return self.conjugate() * inv

    def __truediv__(self, other):
        if isinstance(other, (int, Fraction)):
            return self * (Fraction(1) / other)
        return self * QuadNumber.coerce(other).inverse()

    def __rtruediv__(self, other):
        return QuadNumber.coerce(other) * self.inverse()

    def __pow__(self, k: int):
        if k < 0:
            return self.inverse() ** (-k)
        out = QuadNumber(1)
        base = self
        while k:
            if k & 1:
                out = out * base
            base = base * base
            k >>= 1
        return out

    @property
    def real(self) -> "QuadNumber":
        return QuadNumber(self.a, self.b)

    @property
    def imag(self) -> "QuadNumber":
        return QuadNumber(self.c, self.d)

    def is_real(self) -> bool:
        return not (self.c or self.d)

    def is_rational(self) -> bool:
        return not (self.b or self.c or self.d)

    def to_mp(self):
        s2 = mpmath.sqrt(2)
        re = mpmath.mpf(self.a.numerator) / self.a.denominator + s2 * (
            mpmath.mpf(self.b.numerator) / self.b.denominator
        )
        if self.is_real():
            return re
        im = mpmath.mpf(self.c.numerator) / self.c.denominator + s2 * (
            mpmath.mpf(self.d.numerator) / self.d.denominator
        )
        return mpmath.mpc(re, im)

    def __repr__(self):
        return f"QuadNumber({self})"

    def __str__(self):
        def part(p, q):
            bits = []
            if p:
                bits.append(str(p))
            if q:
                bits.append(f"{q}*sqrt2")
            return " + ".join(bits)

        re, im = part(self.a, self.b), part(self.c, self.d)
        if not im:
            return re or "0"
        im = f"i*({im})"
        return f"{re} + {im}" if re else im


QuadNumber.SQRT2 = QuadNumber(0, 1)
QuadNumber.I = QuadNumber(0, 0, 1)


class PiPoly:
    """Finite sum ``sum_a c_a * pi^a`` with ``c_a`` in Q(sqrt 2, i); immutable."""

    __slots__ = ("_terms",)

    def __init__(self, terms=None):
        clean = {}
        for a, c in (terms or {}).items():
            if a < 0:
                raise ValueError("pi exponents must be non-negative")
            c = QuadNumber.coerce(c)
            if c:
                clean[int(a)] = c
        self._terms = clean

    @classmethod
    def const(cls, c) -> "PiPoly":
        return cls({0: c})

    @classmethod
    def pi_power(cls, a: int, c=1) -> "PiPoly":
        return cls({a: c})

    @property
    def terms(self) -> dict[int, QuadNumber]:
        return dict(self._terms)

    def __getitem__(self, a: int) -> QuadNumber:
        return self._terms.get(a, QuadNumber())

    def __bool__(self):
        return bool(self._terms)

    def __eq__(self, other):
        if isinstance(other, PiPoly):
            return self._terms == other._terms
        try:
            return self == PiPoly.const(other)
        except TypeError:
            return NotImplemented

    def __hash__(self):
        return hash(frozenset(self._terms.items()))

    def _coerce(self, other):
        return other if isinstance(other, PiPoly) else PiPoly.const(other)

    def __add__(self, other):
        o = self._coerce(other)
        out = dict(self._terms)
        for a, c in o._terms.items():
            out[a] = out.get(a, QuadNumber()) + c
        return PiPoly(out)

    __radd__ = __add__

    def __neg__(self):
        return PiPoly({a: -c for a, c in self._terms.items()})

    def __sub__(self, other):
        return self + (-self._coerce(other))

    def __rsub__(self, other):
        return self._coerce(other) - self

    def __mul__(self, other):
        if not isinstance(other, PiPoly):
            c = QuadNumber.coerce(other)
            return PiPoly({a: v * c for a, v in self._terms.items()})
        out: dict[int, QuadNumber] = {}
        for a, x in self._terms.items():
            for b, y in other._terms.items():
                out[a + b] = out.get(a + b, QuadNumber()) + x * y
        return PiPoly(out)

    __rmul__ = __mul__

    def __truediv__(self, other):
        if isinstance(other, PiPoly):
            raise TypeError("division by a PiPoly is not supported")
        c = QuadNumber.coerce(other).inverse()
        return self * c

    @property
    def real(self) -> "PiPoly":
        return PiPoly({a: c.real for a, c in self._terms.items()})

    @property
    def imag(self) -> "PiPoly":
        return PiPoly({a: c.imag for a, c in self._terms.items()})

    def is_real(self) -> bool:
        return all(c.is_real() for c in self._terms.values())

    def evaluate(self, prec: int = 192):
        return pi_poly_eval(self, prec)

    def __repr__(self):
        return f"PiPoly({self})"

    def __str__(self):
        if not self._terms:
            return "0"
        out = []
        for a in sorted(self._terms):
            c = self._terms[a]
            p = "" if a == 0 else ("pi" if a == 1 else f"pi^{a}")
            out.append(f"({c})*{p}" if p else f"({c})")
        return " + ".join(out)


def pi_poly_eval(c: PiPoly, prec: int = 192):
    """Numeric value of ``c``, substituting pi and sqrt(2) at ``prec`` bits."""
    with mpmath.workprec(prec):
        total = mpmath.mpf(0)
        for a, v in c.terms.items():
            total += v.to_mp() * mpmath.pi**a
        return +total
