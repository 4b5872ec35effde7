import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from unimodal_ranks.qseries import (
    IntegrityError,
    LaurentPoly,
    PochFactorSpec,
    QSeries,
    SeriesError,
    pack,
    pochhammer,
    qs_div_factor,
    qs_div_one_plus_zeta,
    qs_div_poch,
    qs_mul,
    qs_mul_factor,
    qs_mul_poch,
    unpack,
)

Z = LaurentPoly.monomial


def S(trunc, terms):
    return QSeries.from_sparse(trunc, terms)


def test_laurent_basics():
    p = LaurentPoly({-1: 2, 0: 0, 3: -1})
    assert dict(p) == {-1: 2, 3: -1}
    assert p.degree_range == (-1, 3)
    assert (p * LaurentPoly({0: 1, 1: 1})).at_one() == p.at_one() * 2
    assert p - p == LaurentPoly()
    assert p.shift(2) == LaurentPoly({1: 2, 5: -1})


def test_laurent_div_one_plus_zeta():
    assert LaurentPoly({0: 1, 1: 1}).div_one_plus_zeta() == LaurentPoly({0: 1})
    assert LaurentPoly({-1: 1, 0: 1}).div_one_plus_zeta() == Z(-1)
    with pytest.raises(IntegrityError):
        LaurentPoly({0: 1}).div_one_plus_zeta()


@pytest.mark.parametrize("width", [16, 64, 256])
def test_pack_roundtrip(width):
    lim = 2 ** (width - 2)
    p = LaurentPoly({-3: lim - 1, 0: -lim + 5, 7: 1})
    assert unpack(pack(p, width), width) == p


def test_mul_examples():
    a = S(2, [(0, 0, 1), (1, 1, 1)])
    b = S(2, [(0, 0, 1), (1, -1, -1)])
    assert qs_mul(a, b) == S(2, [(0, 0, 1), (1, 1, 1), (1, -1, -1), (2, 0, -1)])
    assert a * QSeries.one(2) == a
    geo = QSeries(6, [1] * 7)
    assert geo * S(6, [(0, 0, 1), (1, 0, -1)]) == QSeries.one(6)


def test_mul_trunc_mismatch():
    with pytest.raises(SeriesError):
        QSeries.one(3) * QSeries.one(4)


def test_pochhammer_examples():
    assert pochhammer(PochFactorSpec(1, 1, 1, count=2), 5) == S(
        5, [(0, 0, 1), (1, 1, -1), (2, 1, -1), (3, 2, 1)]
    )
    assert pochhammer(PochFactorSpec(-1, 0, 1, count=2), 5) == QSeries(5, [1, 1, 1, 1])
    assert pochhammer(PochFactorSpec(1, 3, 1, count=0), 5) == QSeries.one(5)


def test_div_factor_examples():
    assert qs_div_factor(QSeries.one(5), 1, 0, 1) == QSeries(5, [1] * 6)
    assert qs_div_factor(QSeries.one(4), 1, 1, 1) == S(4, [(n, n, 1) for n in range(5)])
    assert qs_div_factor(S(5, [(0, 0, 1), (2, 0, -1)]), 1, 0, 1) == QSeries(5, [1, 1])
    with pytest.raises(SeriesError):
        qs_div_factor(QSeries.one(3), 1, 0, 0)


def test_div_one_plus_zeta_examples():
    s = QSeries(2, [LaurentPoly({0: 1, 1: 1})])
    assert qs_div_one_plus_zeta(s) == QSeries.one(2)
    s = QSeries(2, [0, LaurentPoly({-1: 1, 0: 1})])
    assert qs_div_one_plus_zeta(s) == S(2, [(1, -1, 1)])
    with pytest.raises(IntegrityError, match="q\\^0"):
        qs_div_one_plus_zeta(QSeries.one(2))


def test_coeff_range():
    s = QSeries(3, [1, 2])
    assert s.coeff(0, 1) == 2 and s.coeff(5, 1) == 0
    with pytest.raises(SeriesError):
        s.coeff(0, 4)


def test_width_grows_for_large_coefficients():
    big = 10**200
    s = QSeries(2, [big, -big])
    assert s.coeff(0, 0) == big and s.coeff(0, 1) == -big
    assert (s * s).coeff(0, 2) == big * big


def test_shifts():
    s = S(4, [(0, 0, 1), (1, 2, 3)])
    assert s.shift_q(2) == S(4, [(2, 0, 1), (3, 2, 3)])
    assert s.shift_zeta(-1) == S(4, [(0, -1, 1), (1, 1, 3)])


# --------------------------------------------------------------------------
# properties

coef = st.integers(-1000, 1000)


@st.composite
def series(draw, trunc):
    terms = draw(st.lists(st.tuples(st.integers(0, trunc), st.integers(-4, 4), coef), max_size=12))
    return S(trunc, terms)


@st.composite
def triple(draw):
    t = draw(st.integers(0, 20))
    return draw(series(t)), draw(series(t)), draw(series(t))


@settings(max_examples=60, deadline=None)
@given(triple())
def test_ring_axioms(abc):
    a, b, c = abc
    assert a * b == b * a
    assert (a * b) * c == a * (b * c)
    assert a * (b + c) == a * b + a * c
    assert a + (-a) == QSeries.zero(a.trunc)


@settings(max_examples=60, deadline=None)
@given(st.integers(1, 20).flatmap(lambda t: st.tuples(series(t), st.sampled_from([1, -1]), st.integers(-3, 3), st.integers(1, t))))
def test_div_factor_inverts_mul_factor(args):
    a, sign, e, j = args
    assert qs_div_factor(qs_mul_factor(a, sign, e, j), sign, e, j) == a
    assert qs_mul_factor(qs_div_factor(a, sign, e, j), sign, e, j) == a


@settings(max_examples=40, deadline=None)
@given(st.integers(0, 6), st.integers(0, 6), st.integers(1, 3), st.integers(1, 3), st.integers(-2, 2))
def test_pochhammer_splits(a, b, c, step, e):
    trunc = 20
    whole = pochhammer(PochFactorSpec(1, e, c, step, a + b), trunc)
    left = pochhammer(PochFactorSpec(1, e, c, step, a), trunc)
    right = pochhammer(PochFactorSpec(1, e, c + a * step, step, b), trunc)
    assert whole == left * right


def test_mul_poch_and_div_poch_inverse():
    spec = PochFactorSpec(1, 1, 1)
    a = S(15, [(0, 0, 3), (2, -1, 5), (4, 2, -7)])
    assert qs_div_poch(qs_mul_poch(a, spec), spec) == a
    assert qs_mul_poch(QSeries.one(15), spec) == pochhammer(spec, 15)
