"""Truncated power series in ``q`` with Laurent-polynomial coefficients in ``zeta``.

Every two-variable generating function in this package lives in the ring
``Z[zeta, 1/zeta][[q]] / (q^(N+1))``.  Public access goes through
:class:`LaurentPoly` (sparse, exponent -> integer) and :class:`QSeries`.

Internally a ``QSeries`` keeps each q-coefficient Kronecker-packed into a
single Python integer: the Laurent polynomial ``zeta^low * P(zeta)`` is stored
as the pair ``(low, P(2**width))``.  Evaluation at ``2**width`` is a ring
homomorphism, so sums, shifts and products of rows are exact big-integer
operations; only decoding needs every coefficient to satisfy
``|c| < 2**(width - 1)``.  The default width is derived from the truncation
order so that every series assembled in :mod:`unimodal_ranks.genfun` decodes
correctly.
"""

from __future__ import annotations

import math
from collections.abc import Iterable, Mapping
from dataclasses import dataclass
from functools import lru_cache

from gmpy2 import mpz

INF = math.inf


class SeriesError(ValueError):
    """Usage error in truncated series arithmetic."""


class IntegrityError(ArithmeticError):
    """An exact division left a nonzero remainder."""


class LaurentPoly(Mapping):
    """Immutable sparse Laurent polynomial in ``zeta`` with integer coefficients."""

    __slots__ = ("_c", "_hash")

    def __init__(self, coeffs: Mapping[int, int] | Iterable[tuple[int, int]] = ()):
        items = coeffs.items() if isinstance(coeffs, Mapping) else coeffs
        c: dict[int, int] = {}
        for e, v in items:
            v = c.get(int(e), 0) + int(v)
            if v:
                c[int(e)] = v
            else:
                c.pop(int(e), None)
        self._c = c
        self._hash = None

    @classmethod
    def monomial(cls, e: int, c: int = 1) -> "LaurentPoly":
        return cls({e: c})

    def __getitem__(self, e):
        return self._c[e]

    def get(self, e, default=0):
        return self._c.get(e, default)

    def __iter__(self):
        return iter(sorted(self._c))

    def __len__(self):
        return len(self._c)

    def __hash__(self):
        if self._hash is None:
            self._hash = hash(frozenset(self._c.items()))
        return self._hash

    def __eq__(self, other):
        if isinstance(other, LaurentPoly):
            return self._c == other._c
        if isinstance(other, int):
            return self._c == ({0: other} if other else {})
        if isinstance(other, Mapping):
            return self._c == {e: v for e, v in other.items() if v}
        return NotImplemented

    def __bool__(self):
        return bool(self._c)

    def __repr__(self):
        if not self._c:
            return "LaurentPoly(0)"
        terms = " + ".join(f"{self._c[e]}*z^{e}" for e in sorted(self._c))
        return f"LaurentPoly({terms})"

    @property
    def degree_range(self) -> tuple[int, int]:
        if not self._c:
            raise SeriesError("zero polynomial has no degree range")
        return min(self._c), max(self._c)

    def _coerce(self, other):
        if isinstance(other, LaurentPoly):
            return other
        if isinstance(other, int):
            return LaurentPoly({0: other})
        return NotImplemented

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        out = dict(self._c)
        for e, v in other._c.items():
            out[e] = out.get(e, 0) + v
        return LaurentPoly(out)

    __radd__ = __add__

    def __neg__(self):
        return LaurentPoly({e: -v for e, v in self._c.items()})

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        out: dict[int, int] = {}
        for e1, v1 in self._c.items():
            for e2, v2 in other._c.items():
                out[e1 + e2] = out.get(e1 + e2, 0) + v1 * v2
        return LaurentPoly(out)

    __rmul__ = __mul__

    def shift(self, e: int) -> "LaurentPoly":
        """Multiply by ``zeta**e``."""
        return LaurentPoly({k + e: v for k, v in self._c.items()})

    def at_one(self) -> int:
        return sum(self._c.values())

    def div_one_plus_zeta(self) -> "LaurentPoly":
        """Exact quotient by ``1 + zeta``; raises :class:`IntegrityError` otherwise."""
        if not self._c:
            return self
        lo, hi = self.degree_range
        quot: dict[int, int] = {}
        carry = 0
        # synthetic division from the top: p = (1 + z) * q
        for e in range(hi, lo - 1, -1):
            qe = self._c.get(e, 0) - carry
            if e == lo:
                if qe:
                    raise IntegrityError(
                        f"polynomial not divisible by (1+zeta): remainder {qe} at zeta^{e}"
                    )
                break
            quot[e - 1] = qe
            carry = qe
        return LaurentPoly(quot)


# --------------------------------------------------------------------------
# Kronecker packing


def default_width(trunc: int) -> int:
    """Digit width (bits) that safely holds every coefficient up to ``q^trunc``.

    Uses ``p_3(n) <= exp(pi*sqrt(2n))`` for three-coloured partitions, with a
    polynomial margin for the theta-function factors and sign.
    """
    n = max(int(trunc), 1)
    bits = math.pi * math.sqrt(2 * n) / math.log(2) + 3 * math.log2(n + 1) + 16
    return max(64, 8 * math.ceil(bits / 8))


def width_for_bound(bound: int) -> int:
    """Smallest admissible width whose digits hold any integer of size ``<= bound``."""
    return max(16, 8 * math.ceil((int(bound).bit_length() + 2) / 8))


def _series_bound(sums, exps, divide):
    """Row-wise bound on absolute coefficients after multiplying (or dividing)
    by ``prod (1 - sigma zeta^e q^j)`` over ``j in exps``.

    ``sums`` holds row sums of absolute values; the same recurrence with all
    signs positive dominates the true one coefficientwise.
    """
    b = list(sums)
    n = len(b)
    for j in exps:
        if divide:
            for k in range(j, n):
                b[k] += b[k - j]
        else:
            for k in range(n - 1, j - 1, -1):
                b[k] += b[k - j]
    return b


@lru_cache(maxsize=256)
def _bias(width: int, ndigits: int) -> int:
    half = mpz(1) << (width - 1)
    return half * (((mpz(1) << (width * ndigits)) - 1) // ((mpz(1) << width) - 1))


def pack(poly: Mapping[int, int], width: int) -> tuple[int, int]:
    """Pack a Laurent polynomial as ``(low, value at 2**width)``."""
    if not poly:
        return (0, 0)
    items = poly.items()
    lo = min(e for e, _ in items)
    x = mpz(0)
    for e, v in items:
        x += v << (width * (e - lo))
    return (lo, x)


def _ndigits(x: int, width: int) -> int:
    return (abs(x).bit_length() + width) // width + 1


def unpack(row: tuple[int, int], width: int) -> LaurentPoly:
    lo, x = row
    if not x:
        return LaurentPoly()
    nd = _ndigits(x, width)
    y = x + _bias(width, nd)
    nbytes = width // 8
    raw = y.to_bytes(nd * nbytes, "little")
    half = 1 << (width - 1)
    out = {}
    for i in range(nd):
        d = int.from_bytes(raw[i * nbytes:(i + 1) * nbytes], "little") - half
        if d:
            out[lo + i] = d
    return LaurentPoly(out)


def unpack_one(row: tuple[int, int], width: int, e: int) -> int:
    lo, x = row
    i = e - lo
    if not x or i < 0:
        return 0
    nd = _ndigits(x, width)
    if i >= nd:
        return 0
    y = (x + _bias(width, nd)) >> (width * i)
    return int(y & ((1 << width) - 1)) - (1 << (width - 1))


def _radd(r1, r2, width):
    l1, x1 = r1
    l2, x2 = r2
    if not x1:
        return r2
    if not x2:
        return r1
    if l1 == l2:
        return (l1, x1 + x2)
    if l1 < l2:
        return (l1, x1 + (x2 << (width * (l2 - l1))))
    return (l2, (x1 << (width * (l1 - l2))) + x2)


def _rscale(r, c):
    return (r[0], r[1] * c) if c else (0, 0)


def _rmul(r1, r2):
    if not r1[1] or not r2[1]:
        return (0, 0)
    return (r1[0] + r2[0], r1[1] * r2[1])


_ZERO = (0, 0)


# --------------------------------------------------------------------------


class QSeries:
    """Series in ``q`` known modulo ``q^(trunc+1)``; coefficients are :class:`LaurentPoly`.

    Instances are immutable.  All binary operations require equal ``trunc``.
    """

    __slots__ = ("trunc", "width", "_rows", "_decoded")

    def __init__(self, trunc: int, coeffs: Iterable = (), width: int | None = None):
        trunc = int(trunc)
        if trunc < 0:
            raise SeriesError("trunc must be non-negative")
        polys = []
        for c in coeffs:
            if isinstance(c, int):
                c = LaurentPoly({0: c})
            elif not isinstance(c, LaurentPoly):
                c = LaurentPoly(c)
            polys.append(c)
        if len(polys) > trunc + 1:
            raise SeriesError(f"{len(polys)} coefficients given for trunc={trunc}")
        if width is not None and (width < 16 or width % 8):
            raise SeriesError("width must be a multiple of 8 and at least 16")
        if width is None:
            width = default_width(trunc)
        biggest = max((abs(v) for p in polys for v in p.values()), default=0)
        width = max(width, width_for_bound(biggest))
        polys += [LaurentPoly()] * (trunc + 1 - len(polys))
        self.trunc = trunc
        self.width = width
        self._rows = [pack(p, width) for p in polys]
        self._decoded = None

    @classmethod
    def _from_rows(cls, trunc, width, rows):
        self = object.__new__(cls)
        self.trunc = trunc
        self.width = width
        self._rows = rows
        self._decoded = None
        return self

    @classmethod
    def one(cls, trunc: int, width: int | None = None) -> "QSeries":
        return cls.monomial(trunc, 0, 0, 1, width)

    @classmethod
    def zero(cls, trunc: int, width: int | None = None) -> "QSeries":
        w = width or default_width(trunc)
        return cls._from_rows(trunc, w, [_ZERO] * (trunc + 1))

    @classmethod
    def monomial(cls, trunc, q_exp, zeta_exp=0, c=1, width=None) -> "QSeries":
        """``c * zeta^zeta_exp * q^q_exp`` (zero if ``q_exp > trunc``)."""
        s = cls.zero(trunc, width)
        if 0 <= q_exp <= trunc:
            s._rows[q_exp] = (zeta_exp, mpz(c)) if c else _ZERO
        return s

    @classmethod
    def from_sparse(cls, trunc: int, terms: Iterable[tuple[int, int, int]], width=None):
        """Build from ``(q_exp, zeta_exp, coeff)`` triples; terms beyond trunc are dropped."""
        rows: list[dict] = [dict() for _ in range(trunc + 1)]
        for n, e, c in terms:
            if 0 <= n <= trunc:
                rows[n][e] = rows[n].get(e, 0) + c
        return cls(trunc, [LaurentPoly(r) for r in rows], width)

    # -- access -----------------------------------------------------------

    @property
    def coeffs(self) -> tuple[LaurentPoly, ...]:
        if self._decoded is None:
            self._decoded = tuple(unpack(r, self.width) for r in self._rows)
        return self._decoded

    def __getitem__(self, n: int) -> LaurentPoly:
        return self.coeffs[n]

    def __len__(self):
        return self.trunc + 1

    def coeff(self, m: int, n: int) -> int:
        """Coefficient of ``zeta^m q^n``."""
        if not 0 <= n <= self.trunc:
            raise SeriesError(f"q-order {n} outside 0..{self.trunc}")
        if self._decoded is not None:
            return self._decoded[n].get(m, 0)
        return unpack_one(self._rows[n], self.width, m)

    def valuation(self) -> int | None:
        for n, r in enumerate(self._rows):
            if r[1]:
                return n
        return None

    def at_zeta_one(self) -> list[int]:
        """Coefficients of the univariate series obtained at ``zeta = 1``."""
        return [p.at_one() for p in self.coeffs]

    def __eq__(self, other):
        if not isinstance(other, QSeries):
            return NotImplemented
        return self.trunc == other.trunc and self.coeffs == other.coeffs

    def __hash__(self):
        return hash((self.trunc, self.coeffs))

    def __repr__(self):
        shown = ", ".join(repr(c) for c in self.coeffs[:4])
        more = ", ..." if self.trunc >= 4 else ""
        return f"QSeries(trunc={self.trunc}, [{shown}{more}])"

    # -- arithmetic ---------------------------------------------------------

    def _aligned(self, other: "QSeries"):
        if not isinstance(other, QSeries):
            raise SeriesError(f"cannot combine QSeries with {type(other).__name__}")
        if other.trunc != self.trunc:
            raise SeriesError(f"truncation mismatch: {self.trunc} vs {other.trunc}")
        w = max(self.width, other.width)
        return self._repacked(w), other._repacked(w), w

    def abs_row_sums(self) -> list[int]:
        """Sum of absolute coefficient values in each q-row."""
        return [sum(abs(v) for v in p.values()) for p in self.coeffs]

    def _widened(self, bound: int) -> "QSeries":
        w = width_for_bound(bound)
        if w <= self.width:
            return self
        return QSeries._from_rows(self.trunc, w, self._repacked(w))

    def _repacked(self, width):
        if width == self.width:
            return self._rows
        return [pack(p, width) for p in self.coeffs]

    def __add__(self, other):
        if isinstance(other, int):
            other = QSeries.monomial(self.trunc, 0, 0, other, self.width)
        if not isinstance(other, QSeries):
            raise SeriesError(f"cannot combine QSeries with {type(other).__name__}")
        bound = max(self.abs_row_sums(), default=0) + max(other.abs_row_sums(), default=0)
        a, b, w = self._widened(bound)._aligned(other._widened(bound))
        return QSeries._from_rows(self.trunc, w, [_radd(x, y, w) for x, y in zip(a, b)])

    __radd__ = __add__

    def __neg__(self):
        return QSeries._from_rows(self.trunc, self.width, [_rscale(r, -1) for r in self._rows])

    def __sub__(self, other):
        if isinstance(other, int):
            return self + (-other)
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, int):
            a = self._widened(max(self.abs_row_sums(), default=0) * abs(other))
            return QSeries._from_rows(a.trunc, a.width, [_rscale(r, other) for r in a._rows])
        if isinstance(other, LaurentPoly):
            a = self._widened(max(self.abs_row_sums(), default=0) * sum(abs(v) for v in other.values()))
            lo, x = pack(other, a.width)
            return QSeries._from_rows(a.trunc, a.width, [_rmul(r, (lo, x)) for r in a._rows])
        return qs_mul(self, other)

    __rmul__ = __mul__

    def shift_q(self, k: int) -> "QSeries":
        """Multiply by ``q^k`` (k >= 0), dropping orders beyond trunc."""
        if k < 0:
            raise SeriesError("negative q-shift leaves the power-series ring")
        rows = ([_ZERO] * k + self._rows)[: self.trunc + 1]
        return QSeries._from_rows(self.trunc, self.width, rows)

    def shift_zeta(self, e: int) -> "QSeries":
        """Multiply by ``zeta^e``."""
        rows = [(lo + e, x) if x else _ZERO for lo, x in self._rows]
        return QSeries._from_rows(self.trunc, self.width, rows)


# --------------------------------------------------------------------------
# operations


def qs_mul(a: QSeries, b: QSeries) -> QSeries:
    """Product of two truncated series (rows that are zero are skipped)."""
    if not isinstance(b, QSeries) or a.trunc != b.trunc:
        a._aligned(b)  # raises the usage error
    sa, sb = a.abs_row_sums(), b.abs_row_sums()
    bound = min(sum(sa) * max(sb), max(sa) * sum(sb))
    ra, rb, w = a._widened(bound)._aligned(b._widened(bound))
    n = a.trunc
    nz_a = [(i, r) for i, r in enumerate(ra) if r[1]]
    nz_b = [(j, r) for j, r in enumerate(rb) if r[1]]
    if len(nz_b) < len(nz_a):
        nz_a, nz_b = nz_b, nz_a
    out = [_ZERO] * (n + 1)
    for i, ri in nz_a:
        for j, rj in nz_b:
            k = i + j
            if k > n:
                break
            out[k] = _radd(out[k], _rmul(ri, rj), w)
    return QSeries._from_rows(n, w, out)


def _check_factor(sign, e, step):
    if sign not in (1, -1):
        raise SeriesError(f"factor sign must be +1 or -1, got {sign}")
    if step < 1:
        raise SeriesError("factor (1 - sigma zeta^e q^j) needs j >= 1")


def _mul_factor_rows(rows, width, sign, e, j, start=0):
    # rows <- rows * (1 - sign zeta^e q^j), in place, top-down
    for k in range(len(rows) - 1, max(j, start + j) - 1, -1):
        lo, x = rows[k - j]
        if x:
            rows[k] = _radd(rows[k], (lo + e, -x if sign == 1 else x), width)


def _div_factor_rows(rows, width, sign, e, j, start=0):
    # rows <- rows / (1 - sign zeta^e q^j), in place, bottom-up
    for k in range(start + j, len(rows)):
        lo, x = rows[k - j]
        if x:
            rows[k] = _radd(rows[k], (lo + e, x if sign == 1 else -x), width)


def qs_mul_factor(a: QSeries, sign: int, e: int, j: int) -> QSeries:
    """``a * (1 - sign * zeta^e * q^j)``."""
    _check_factor(sign, e, j)
    a = a._widened(max(_series_bound(a.abs_row_sums(), [j], False), default=0))
    rows = list(a._rows)
    _mul_factor_rows(rows, a.width, sign, e, j, a.valuation() or 0)
    return QSeries._from_rows(a.trunc, a.width, rows)


def qs_div_factor(a: QSeries, sign: int, e: int, j: int) -> QSeries:
    """``a / (1 - sign * zeta^e * q^j)`` via the geometric series."""
    _check_factor(sign, e, j)
    a = a._widened(max(_series_bound(a.abs_row_sums(), [j], True), default=0))
    rows = list(a._rows)
    _div_factor_rows(rows, a.width, sign, e, j, a.valuation() or 0)
    return QSeries._from_rows(a.trunc, a.width, rows)


@dataclass(frozen=True)
class PochFactorSpec:
    """The product ``prod_{k=0}^{count-1} (1 - sign * zeta^e * q^(offset + k*step))``."""

    sign: int
    e: int
    offset: int
    step: int = 1
    count: float = INF

    def __post_init__(self):
        if self.sign not in (1, -1):
            raise SeriesError("sign must be +1 or -1")
        if self.offset < 1 or self.step < 1:
            raise SeriesError("offset and step must be >= 1")
        if self.count != INF and (self.count < 0 or int(self.count) != self.count):
            raise SeriesError("count must be a non-negative integer or INF")

    def exponents(self, trunc: int):
        k = 0
        while self.count == INF or k < self.count:
            j = self.offset + k * self.step
            if j > trunc:
                return
            yield j
            k += 1


def pochhammer(spec: PochFactorSpec, trunc: int, width: int | None = None) -> QSeries:
    return qs_mul_poch(QSeries.one(trunc, width), spec)


def qs_mul_poch(a: QSeries, spec: PochFactorSpec) -> QSeries:
    """``a`` times the product described by ``spec``."""
    a = a._widened(max(_series_bound(a.abs_row_sums(), spec.exponents(a.trunc), False), default=0))
    rows = list(a._rows)
    start = a.valuation() or 0
    for j in spec.exponents(a.trunc):
        _mul_factor_rows(rows, a.width, spec.sign, spec.e, j, start)
    return QSeries._from_rows(a.trunc, a.width, rows)


def qs_div_poch(a: QSeries, spec: PochFactorSpec) -> QSeries:
    """``a`` divided by the product described by ``spec``."""
    a = a._widened(max(_series_bound(a.abs_row_sums(), spec.exponents(a.trunc), True), default=0))
    rows = list(a._rows)
    start = a.valuation() or 0
    for j in spec.exponents(a.trunc):
        _div_factor_rows(rows, a.width, spec.sign, spec.e, j, start)
    return QSeries._from_rows(a.trunc, a.width, rows)


def qs_div_one_plus_zeta(a: QSeries) -> QSeries:
    """Exact quotient by ``1 + zeta``; every q-coefficient must be divisible."""
    out = []
    for n, p in enumerate(a.coeffs):
        try:
            out.append(p.div_one_plus_zeta())
        except IntegrityError as exc:
            raise IntegrityError(f"q^{n}: {exc}") from None
    return QSeries(a.trunc, out, a.width)


def coeff(a: QSeries, m: int, n: int) -> int:
    return a.coeff(m, n)
