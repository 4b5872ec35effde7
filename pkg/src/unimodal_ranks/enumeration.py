"""Brute-force enumeration of the four unimodal-sequence families.

Each family is generated from its combinatorial description: a peak ``c``,
an ascending partition ``A`` to the left and a descending partition ``B`` to
the right.  Every admissible ``A`` and ``B`` is produced explicitly; the two
sides only meet through a tally keyed by (weight, rank contribution), which
keeps the cost at ``O(#A + #B)`` per peak instead of ``#A * #B``.

The counts returned here are an oracle for :mod:`unimodal_ranks.genfun` and
share no code with it.
"""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass, field
from typing import Iterator

DEFAULT_MAX_N = 40

FAMILIES = ("U", "W", "V", "NU")


@dataclass
class RankHistogram:
    n: int
    counts: dict[int, int] = field(default_factory=dict)

    @property
    def total(self) -> int:
        return sum(self.counts.values())

    def __getitem__(self, m: int) -> int:
        return self.counts.get(m, 0)

    def is_symmetric(self) -> bool:
        return all(self[m] == self[-m] for m in self.counts)


def partitions(n: int, max_part: int | None = None) -> Iterator[tuple[int, ...]]:
    """Partitions of ``n`` into parts ``<= max_part``, as non-increasing tuples."""
    if max_part is None:
        max_part = n
    if n == 0:
        yield ()
        return
    for first in range(min(n, max_part), 0, -1):
        for rest in partitions(n - first, first):
            yield (first,) + rest


def durfee(parts) -> int:
    """Side of the Durfee square: the largest k with at least k parts >= k."""
    ps = sorted(parts, reverse=True)
    k = 0
    while k < len(ps) and ps[k] >= k + 1:
        k += 1
    return k


def overpartitions(n: int, max_part: int, odd_only: bool = False):
    """Overpartitions of ``n``: tuples of ``(part, overlined)`` pairs.

    The first occurrence of each part size may carry an overline; a part
    appears at most once overlined.
    """
    sizes = [p for p in range(max_part, 0, -1) if not odd_only or p % 2]

    def rec(rem, idx):
        if rem == 0:
            yield ()
            return
        if idx == len(sizes):
            return
        p = sizes[idx]
        for mult in range(rem // p, -1, -1):
            plain = ((p, False),) * mult
            for tail in rec(rem - mult * p, idx + 1):
                yield plain + tail
            if mult >= 1:
                over = ((p, True),) + ((p, False),) * (mult - 1)
                for tail in rec(rem - mult * p, idx + 1):
                    yield over + tail

    yield from rec(n, 0)


def _side_tally(max_part, upto, rank_of, keep=lambda p: True, gen=None):
    """Counter over (weight, rank contribution) for one side of the peak."""
    tally: Counter = Counter()
    for w in range(upto + 1):
        for p in (gen(w) if gen else partitions(w, max_part)):
            if keep(p):
                tally[(w, rank_of(p))] += 1
    return tally


def _combine(hist: Counter, left: Counter, right: Counter, budget: int):
    right_by_w: dict[int, Counter] = {}
    for (w, r), c in right.items():
        right_by_w.setdefault(w, Counter())[r] += c
    for (wa, ra), ca in left.items():
        for rb, cb in right_by_w.get(budget - wa, {}).items():
            hist[rb - ra] += ca * cb


def _result(n, hist):
    return RankHistogram(n, {m: c for m, c in sorted(hist.items()) if c})


def enum_u(n: int) -> RankHistogram:
    """Unimodal sequences ``a_1<=...<=a_r<=c>=b_1>=...>=b_s``; rank ``s - r``."""
    hist: Counter = Counter()
    if n == 0:
        hist[0] = 1
    for c in range(1, n + 1):
        side = _side_tally(c, n - c, len)
        _combine(hist, side, side, n - c)
    return _result(n, hist)


def enum_w(n: int) -> RankHistogram:
    """Unimodal sequences with a doubled peak ``c c``; weight counts ``2c``."""
    hist: Counter = Counter()
    if n == 0:
        hist[0] = 1
    for c in range(1, n // 2 + 1):
        side = _side_tally(c, n - 2 * c, len)
        _combine(hist, side, side, n - 2 * c)
    return _result(n, hist)


def enum_v(n: int) -> RankHistogram:
    """Durfee unimodal sequences: parts right of the peak are ``<= c - durfee(A)``."""
    hist: Counter = Counter()
    if n == 0:
        hist[0] = 1
    for c in range(1, n + 1):
        budget = n - c
        by_durfee: dict[int, Counter] = {}
        for w in range(budget + 1):
            for a in partitions(w, c):
                by_durfee.setdefault(durfee(a), Counter())[(w, len(a))] += 1
        for k, left in by_durfee.items():
            right = _side_tally(c - k, budget, len) if c - k >= 1 else Counter({(0, 0): 1})
            _combine(hist, left, right, budget)
    return _result(n, hist)


def _nu_left_ok(parts):
    evens = [p for p in parts if p % 2 == 0]
    return len(evens) == len(set(evens))


def enum_nu(n: int) -> RankHistogram:
    """Odd-even unimodal sequences.

    The peak ``c`` is odd; ``A`` has no repeated even part; ``B`` is an
    overpartition into odd parts whose largest part is not an overlined ``c``.
    Rank: odd non-overlined parts of ``B`` minus odd parts of ``A``.
    """
    hist: Counter = Counter()
    # n = 0 stays empty: the generating function has no constant term
    for c in range(1, n + 1, 2):
        budget = n - c
        left = _side_tally(
            c, budget, lambda a: sum(1 for p in a if p % 2), keep=_nu_left_ok
        )
        right = _side_tally(
            c,
            budget,
            lambda b: sum(1 for p, o in b if p % 2 and not o),
            keep=lambda b: (c, True) not in b,
            gen=lambda w: overpartitions(w, c, odd_only=True),
        )
        _combine(hist, left, right, budget)
    return _result(n, hist)


_ENUMERATORS = {"U": enum_u, "W": enum_w, "V": enum_v, "NU": enum_nu}


def enumerate_family(family: str, n: int, max_n: int = DEFAULT_MAX_N) -> RankHistogram:
    family = family.upper()
    if family not in _ENUMERATORS:
        raise ValueError(f"unknown family {family!r}")
    if n < 0 or n > max_n:
        raise ValueError(f"n={n} outside enumeration range 0..{max_n}")
    return _ENUMERATORS[family](n)
