"""Two-variable generating functions of the four unimodal rank statistics.

Each family has a *left side*, the sum over peak values of quotients of
q-Pochhammer symbols, and a *right side*, an infinite product times a partial
theta function plus a correction term.  Both are expanded exactly to a
requested q-order; ``check_identity`` compares them coefficientwise.

Rank counts are read off the left side, which is cached per family.
"""

from __future__ import annotations

import threading
from dataclasses import dataclass
from enum import Enum

from gmpy2 import mpz

from .qseries import (
    IntegrityError,
    LaurentPoly,
    PochFactorSpec,
    QSeries,
    SeriesError,
    _div_factor_rows,
    _mul_factor_rows,
    _radd,
    qs_div_one_plus_zeta,
    qs_div_poch,
    qs_mul,
    qs_mul_poch,
)

MAX_TRUNC = 2000


class Family(str, Enum):
    U = "U"
    W = "W"
    V = "V"
    NU = "NU"

    @classmethod
    def parse(cls, value) -> "Family":
        if isinstance(value, Family):
            return value
        try:
            return cls(str(value).upper())
        except ValueError:
            raise SeriesError(f"unknown family {value!r}; expected one of u, w, v, nu") from None


# --------------------------------------------------------------------------
# left sides, by Horner's rule over the ratio of consecutive terms
#
# term_n = prefix * g_1 * ... * g_n, and g_n = q^shift * (mul factors) / (div factors).
# Horner: T_{n-1} = 1 + g_n T_n, T_nmax = 1, sum = prefix * T_0.  T_n is only
# needed up to q^(trunc - prefix_exp - e_n) where e_n is the q-valuation of g_1...g_n.


@dataclass(frozen=True)
class _Ratio:
    shift: int
    mul: tuple = ()  # (sign, zeta_exp, q_exp)
    div: tuple = ()


def _ratio(family: Family, n: int) -> _Ratio:
    if family is Family.U:
        return _Ratio(1, (), ((1, 1, n), (1, -1, n)))
    if family is Family.W:
        return _Ratio(2, (), ((1, 1, n), (1, -1, n)))
    if family is Family.V:
        return _Ratio(
            1, ((1, 0, 2 * n - 1), (1, 0, 2 * n)), ((1, 0, n), (1, 1, n), (1, -1, n))
        )
    j = 2 * n + 1
    return _Ratio(2, ((-1, 0, 2 * n - 1), (-1, 0, 2 * n)), ((1, 1, j), (1, -1, j)))


def _lhs_layout(family: Family, trunc: int):
    """(prefix q-exponent, number of Horner levels)."""
    if family is Family.U:
        return 0, trunc
    if family is Family.W:
        return 0, trunc // 2
    if family is Family.V:
        return 0, trunc
    return 1, max((trunc - 1) // 2, 0)


def _horner_rows(family, trunc, width):
    p, nmax = _lhs_layout(family, trunc)
    if trunc < p:
        return None
    one = (0, mpz(1))
    valuations = [0]
    for n in range(1, nmax + 1):
        valuations.append(valuations[-1] + _ratio(family, n).shift)
    rows = [one] + [(0, 0)] * (trunc - p - valuations[nmax])
    for n in range(nmax, 0, -1):
        g = _ratio(family, n)
        length = trunc - p - valuations[n - 1] + 1
        rows = ([(0, 0)] * g.shift + rows)[:length]
        for sign, e, j in g.mul:
            _mul_factor_rows(rows, width, sign, e, j, g.shift)
        for sign, e, j in g.div:
            _div_factor_rows(rows, width, sign, e, j, g.shift)
        rows[0] = _radd(rows[0], one, width)
    return rows


def _lhs_totals(family: Family, trunc: int) -> list[int]:
    """Left side at zeta = 1 (plain integer series); used for sizing and checksums."""
    p, nmax = _lhs_layout(family, trunc)
    out = [0] * (trunc + 1)
    if trunc < p:
        return out
    tot = [1] + [0] * (trunc - p)
    valuations = [0]
    for n in range(1, nmax + 1):
        valuations.append(valuations[-1] + _ratio(family, n).shift)
    for n in range(nmax, 0, -1):
        g = _ratio(family, n)
        length = trunc - p - valuations[n - 1] + 1
        tot = ([0] * g.shift + tot)[:length]
        for sign, _e, j in g.mul:
            for k in range(length - 1, j - 1, -1):
                tot[k] -= sign * tot[k - j]
        for sign, _e, j in g.div:
            for k in range(j, length):
                tot[k] += sign * tot[k - j]
        tot[0] += 1
    tot += [0] * (trunc - p + 1 - len(tot))
    if family is Family.NU:
        # prefix q / (1 - q)^2
        tot = [0] + tot[: trunc]
        for _ in range(2):
            for k in range(1, trunc + 1):
                tot[k] += tot[k - 1]
    return tot


def _width_for(max_abs: int) -> int:
    bits = max_abs.bit_length() + 2
    return max(64, 8 * ((bits + 7) // 8))


def build_lhs(family, trunc: int) -> QSeries:
    """Left side (sum of Pochhammer quotients) modulo ``q^(trunc+1)``.

    The sum runs over every term whose lowest q-power is ``<= trunc``:
    ``q^n`` for U and V, ``q^(2n)`` for W and ``q^(2n+1)`` for NU.
    """
    family = Family.parse(family)
    if trunc < 0:
        raise SeriesError("trunc must be non-negative")
    totals = _lhs_totals(family, trunc)
    width = _width_for(max(totals))
    rows = _horner_rows(family, trunc, width)
    if rows is None:
        return QSeries.zero(trunc, width)
    rows = rows + [(0, 0)] * (trunc + 1 - len(rows))
    if family is Family.NU:
        rows = ([(0, 0)] + rows)[: trunc + 1]
        _div_factor_rows(rows, width, 1, 1, 1)
        _div_factor_rows(rows, width, 1, -1, 1)
    s = QSeries._from_rows(trunc, width, rows)
    for n, p in enumerate(s.coeffs):
        if p.at_one() != totals[n] or any(v < 0 for v in p.values()):
            raise IntegrityError(f"{family.value} left side failed its checksum at q^{n}")
    return s


# --------------------------------------------------------------------------
# right sides


def _sparse(trunc, terms, width=None):
    return QSeries.from_sparse(trunc, terms, width)


def crank_product(trunc: int) -> QSeries:
    """``1 / ((zeta q)_inf (zeta^-1 q)_inf)``."""
    s = QSeries.one(trunc)
    s = qs_div_poch(s, PochFactorSpec(1, 1, 1))
    return qs_div_poch(s, PochFactorSpec(1, -1, 1))


def _tri(n):
    return n * (n + 1) // 2


def _upto(trunc, f):
    n = 0
    while f(n) <= trunc:
        yield n
        n += 1


def build_rhs(family, trunc: int) -> QSeries:
    """Product-times-partial-theta side plus the correction term."""
    family = Family.parse(family)
    if trunc < 0:
        raise SeriesError("trunc must be non-negative")
    N = trunc
    if family is Family.U:
        theta = _sparse(N, (( _tri(n), 2 * n + 1, (-1) ** n) for n in _upto(N, _tri)))
        corr = []
        for n in _upto(N, lambda n: n * (3 * n + 1) // 2):
            a = n * (3 * n + 1) // 2
            s = (-1) ** n
            corr += [(a, 3 * n, s), (a, 3 * n + 1, -s)]
            corr += [(a + 2 * n + 1, 3 * n + 2, -s), (a + 2 * n + 1, 3 * n + 3, s)]
        return qs_mul(crank_product(N), theta) + _sparse(N, corr)
    if family is Family.W:
        num = [(0, 2, 1)]
        for n in _upto(N, _tri):
            if n:
                s = (-1) ** n
                num += [(_tri(n), 2 * n, s), (_tri(n), 2 * n + 2, s)]
        corr = [(0, 0, 1), (0, 2, -1)]
        # (1 + z^2)(1 - z) = 1 - z + z^2 - z^3
        edge = ((0, 1), (1, -1), (2, 1), (3, -1))
        for n in _upto(N, lambda n: n * (3 * n - 1) // 2):
            if not n:
                continue
            a = n * (3 * n - 1) // 2
            s = (-1) ** n
            for de, c in edge:
                corr.append((a, 3 * n - 2 + de, s * c))
                corr.append((a + n, 3 * n - 1 + de, s * c))
        return qs_mul(crank_product(N), _sparse(N, num)) + _sparse(N, corr)
    if family is Family.V:
        theta = []
        for n in _upto(N, lambda n: 3 * n * n + 2 * n):
            a = 3 * n * n + 2 * n
            theta += [(a, 3 * n + 1, 1), (a + 2 * n + 1, 3 * n + 2, -1)]
        corr = []
        for n in _upto(N, lambda n: n * n + n):
            corr += [(n * n + n, n, 1), (n * n + n, n + 1, -1)]
        return qs_mul(crank_product(N), _sparse(N, theta)) + _sparse(N, corr)
    # NU: zeta * [P * theta1 - theta2] / (1 + zeta),
    # P = (-q)_inf / ((zeta q; q^2)_inf (zeta^-1 q; q^2)_inf)
    prod = qs_mul_poch(QSeries.one(N), PochFactorSpec(-1, 0, 1))
    prod = qs_div_poch(prod, PochFactorSpec(1, 1, 1, 2))
    prod = qs_div_poch(prod, PochFactorSpec(1, -1, 1, 2))
    theta1 = _sparse(N, ((_tri(n), n + 1, (-1) ** n) for n in _upto(N, _tri)))
    theta2 = _sparse(N, ((n * n + n, n + 1, (-1) ** n) for n in _upto(N, lambda n: n * n + n)))
    return qs_div_one_plus_zeta(qs_mul(prod, theta1) - theta2)


# --------------------------------------------------------------------------
# identity checks


@dataclass
class IdentityReport:
    label: str
    trunc: int
    ok: bool
    mismatch: tuple | None = None  # (q-order, zeta-exponent, left value, right value)

    def __bool__(self):
        return self.ok

    def __str__(self):
        if self.ok:
            return f"{self.label} (trunc={self.trunc}): pass"
        n, m, a, b = self.mismatch
        return f"{self.label} (trunc={self.trunc}): FAIL at q^{n} zeta^{m}: {a} != {b}"


def compare_series(a: QSeries, b: QSeries, label: str = "series") -> IdentityReport:
    if a.trunc != b.trunc:
        raise SeriesError(f"truncation mismatch: {a.trunc} vs {b.trunc}")
    for n, (pa, pb) in enumerate(zip(a.coeffs, b.coeffs)):
        if pa != pb:
            m = min(e for e in set(pa) | set(pb) if pa.get(e, 0) != pb.get(e, 0))
            return IdentityReport(label, a.trunc, False, (n, m, pa.get(m, 0), pb.get(m, 0)))
    return IdentityReport(label, a.trunc, True)


def check_identity(family, trunc: int = 200) -> IdentityReport:
    family = Family.parse(family)
    return compare_series(
        build_lhs(family, trunc), build_rhs(family, trunc), f"identity {family.value}"
    )


def crank_rhs(trunc: int, prefactor: LaurentPoly | None = None) -> QSeries:
    """``prefactor / (q)_inf^2 * sum_n (-1)^n q^(n(n+1)/2) / (1 - zeta q^n)``.

    The n = 0 summand ``1/(1 - zeta)`` is cancelled against the default
    prefactor ``1 - zeta`` before expansion and contributes exactly 1.  The
    remaining summands are expanded geometrically; for n = -k < 0 the
    summand is first rewritten as ``-(-1)^k zeta^-1 q^(k(k+1)/2) / (1 - zeta^-1 q^k)``.
    """
    N = trunc
    if prefactor is None:
        prefactor = LaurentPoly({0: 1, 1: -1})
    terms = []
    for n in _upto(N, _tri):
        if n == 0:
            continue
        s = (-1) ** n
        i = 0
        while _tri(n) + n * i <= N:
            terms.append((_tri(n) + n * i, i, s))
            terms.append((_tri(n) + n * i, -1 - i, -s))
            i += 1
    lerch = _sparse(N, terms) * prefactor + 1
    one = QSeries.one(N)
    inv_q2 = qs_div_poch(qs_div_poch(one, PochFactorSpec(1, 0, 1)), PochFactorSpec(1, 0, 1))
    return qs_mul(inv_q2, lerch)


def check_crank_identity(trunc: int = 100, prefactor: LaurentPoly | None = None) -> IdentityReport:
    return compare_series(crank_product(trunc), crank_rhs(trunc, prefactor), "crank identity")


# --------------------------------------------------------------------------
# cached rank counts


class _Cache:
    def __init__(self):
        self._lock = threading.Lock()
        self._series: dict[Family, QSeries] = {}

    def get(self, family: Family, n: int, max_trunc: int) -> QSeries:
        s = self._series.get(family)
        if s is not None and s.trunc >= n:
            return s
        if n > max_trunc:
            raise SeriesError(f"n={n} exceeds the configured maximum truncation {max_trunc}")
        with self._lock:
            s = self._series.get(family)
            if s is None or s.trunc < n:
                old = s.trunc if s is not None else 0
                want = min(max(n, 200, old + old // 2), max_trunc)
                s = build_lhs(family, want)
                self._series[family] = s
            return s

    def clear(self):
        with self._lock:
            self._series.clear()


_cache = _Cache()


def ensure_built(family, trunc: int, max_trunc: int = MAX_TRUNC) -> QSeries:
    """Build (or reuse) the cached left side of ``family`` up to ``q^trunc``."""
    return _cache.get(Family.parse(family), trunc, max(max_trunc, trunc))


def rank_count(family, m: int, n: int, max_trunc: int = MAX_TRUNC) -> int:
    """Number of sequences of weight ``n`` and rank ``m`` in ``family``."""
    if n < 0:
        raise SeriesError("weight must be non-negative")
    return _cache.get(Family.parse(family), n, max_trunc).coeff(m, n)


def rank_row(family, n: int, max_trunc: int = MAX_TRUNC) -> dict[int, int]:
    """All nonzero ``rank -> count`` entries at weight ``n``."""
    if n < 0:
        raise SeriesError("weight must be non-negative")
    return dict(_cache.get(Family.parse(family), n, max_trunc)[n])


def clear_cache():
    _cache.clear()
