import pytest

from unimodal_ranks.genfun import (
    Family,
    build_lhs,
    build_rhs,
    check_crank_identity,
    check_identity,
    compare_series,
    rank_count,
    rank_row,
)
from unimodal_ranks.qseries import LaurentPoly, QSeries, SeriesError


def test_worked_totals_from_series():
    assert sum(build_lhs("U", 4)[4].values()) == 12
    assert sum(build_lhs("W", 6)[6].values()) == 11
    assert sum(build_lhs("V", 4)[4].values()) == 10
    assert sum(build_lhs("NU", 5)[5].values()) == 12


def test_constant_terms():
    assert build_lhs("W", 5).coeff(0, 0) == 1
    assert build_lhs("NU", 5)[0] == LaurentPoly()
    assert build_rhs("NU", 0)[0] == LaurentPoly()
    assert build_rhs("V", 0)[0] == LaurentPoly({0: 1})


def test_rank_count_examples():
    assert rank_count("U", 0, 0) == 1
    assert rank_count("U", 1, 2) == 1
    assert rank_count("U", 0, 1) == 1
    assert rank_count("W", 0, 2) == 1
    assert rank_count("V", -3, 4) == 1


def test_rank_count_limits():
    with pytest.raises(SeriesError):
        rank_count("U", 0, 5000)
    with pytest.raises(SeriesError):
        rank_count("U", 0, -1)
    with pytest.raises(SeriesError):
        Family.parse("x")


@pytest.mark.parametrize("family", list(Family))
def test_identity_small(family):
    rep = check_identity(family, 60)
    assert rep, str(rep)


def test_crank_identity_and_controls():
    assert check_crank_identity(0)
    assert check_crank_identity(40)
    bad = check_crank_identity(40, prefactor=LaurentPoly({0: 1, 1: 1}))
    assert not bad and bad.mismatch is not None


def test_injected_corruption_reports_order():
    lhs = build_lhs("U", 30)
    rows = list(lhs.coeffs)
    rows[17] = rows[17] + LaurentPoly({2: 1})
    rep = compare_series(lhs, QSeries(30, rows), "U")
    assert not rep
    assert rep.mismatch[0] == 17 and rep.mismatch[1] == 2


def test_row_sums_nondecreasing():
    totals = [sum(rank_row("U", n).values()) for n in range(1, 200)]
    assert all(a <= b for a, b in zip(totals, totals[1:]))


@pytest.mark.parametrize("family", list(Family))
def test_symmetry_to_300(family):
    for n in range(301):
        row = rank_row(family, n)
        assert all(row.get(-m, 0) == c for m, c in row.items()), (family, n)
