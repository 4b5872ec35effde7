from fractions import Fraction

import mpmath
import pytest
import sympy

from unimodal_ranks.asymptotics import (
    COROLLARY_ORDER,
    AsymSeries,
    WrightInput,
    alpha,
    beta,
    corollary_series,
    eval_series,
    gamma_const,
    log_value,
    near_pole_input,
    near_pole_series,
    theorem_series,
    wright_eval,
    wright_input_from_series,
    wright_series,
)
from unimodal_ranks.genfun import Family, rank_count
from unimodal_ranks.specfun import PiPoly, QuadNumber, bessel_profile

zs = sympy.Symbol("z")
PI = PiPoly.pi_power


def _as_sympy(c: PiPoly):
    out = 0
    for a, v in c.terms.items():
        out += (sympy.Rational(v.a.numerator, v.a.denominator)
                + sympy.sqrt(2) * sympy.Rational(v.b.numerator, v.b.denominator)) * sympy.pi**a
    return out


def test_alpha_examples():
    for m in range(5):
        assert alpha(m, 1) == PI(1, -2)
    assert alpha(0, 3) == PI(3, Fraction(1, 3))
    assert alpha(1, 3) == PI(3, Fraction(13, 3))
    with pytest.raises(ValueError):
        alpha(0, 2)


@pytest.mark.parametrize("m", [0, 1, 3])
def test_alpha_taylor_oracle(m):
    ser = sympy.series(-2 * sympy.sin(sympy.pi * zs) * sympy.cos(2 * sympy.pi * m * zs), zs, 0, 10).removeO()
    for k in range(5):
        assert sympy.simplify(ser.coeff(zs, 2 * k + 1) - _as_sympy(alpha(m, 2 * k + 1))) == 0


def test_beta_examples():
    for m in range(4):
        assert beta(m, 0) == PiPoly.const(Fraction(1, 2))
    assert beta(0, 2) == PI(2, Fraction(1, 4))
    assert beta(1, 2) == PI(2, Fraction(1, 4) - 1)
    with pytest.raises(ValueError):
        beta(0, 3)


@pytest.mark.parametrize("m", [0, 2])
def test_beta_series_division_oracle(m):
    ser = sympy.series(sympy.cos(2 * sympy.pi * m * zs) / (2 * sympy.cos(sympy.pi * zs)), zs, 0, 10).removeO()
    for k in range(5):
        assert sympy.simplify(ser.coeff(zs, 2 * k) - _as_sympy(beta(m, 2 * k))) == 0


def test_gamma_examples():
    assert gamma_const(0, 0, 4) == PiPoly.const(Fraction(-1, 4))
    assert gamma_const(0, 1, 4) == PI(1, Fraction(1, 8))
    assert gamma_const(0, 0, 3) == PiPoly.const(Fraction(-1, 6))
    with pytest.raises(ValueError):
        gamma_const(0, 0, 5)
    with pytest.raises(ValueError):
        gamma_const(1, 0, 4)


def test_theorem_examples():
    for m in range(11):
        d = theorem_series(Family.U, m, 4).as_dict()
        assert d == {3: PI(2, Fraction(1, 2)), 4: PI(3, Fraction(1, 3)), 5: PI(4, Fraction(59 - 36 * m * m, 72))}
        d = theorem_series(Family.V, m, 4).as_dict()
        assert d == {3: PI(2, Fraction(1, 3)), 4: PI(3, Fraction(4, 27)), 5: PI(4, Fraction(101 - 72 * m * m, 216))}


def test_nu_three_terms_at_order_three():
    # three nonzero terms appear first at N = 3
    assert len(theorem_series(Family.NU, 0, 2).terms) == 2
    s = theorem_series(Family.NU, 2, 3)
    r2 = QuadNumber.SQRT2.inverse()
    assert s.as_dict() == {
        2: PI(1, r2 / 2),
        3: PI(2, r2 * Fraction(5, 8)),
        4: PI(3, r2 * Fraction(77 - 64 * 4, 64)),
    }


def test_corollary_examples():
    assert corollary_series(Family.W, 1).as_dict()[6] == PI(5, Fraction(1733, 324))
    assert corollary_series(Family.U, 0).as_dict()[5] == PI(4, Fraction(59, 72))


@pytest.mark.parametrize("family", list(Family))
def test_stability_and_lowest_term(family):
    N = COROLLARY_ORDER[family]
    for m in (0, 3):
        lo, hi = theorem_series(family, m, N).as_dict(), theorem_series(family, m, N + 1).as_dict()
        assert all(hi[k] == v for k, v in lo.items())
    lowest = {theorem_series(family, m, N).terms[0] for m in range(11)}
    assert len(lowest) == 1


def test_series_invariants():
    for f in Family:
        s = theorem_series(f, 2, 6)
        idx = [k for k, _ in s.terms]
        assert idx == sorted(set(idx)) and all(c for _, c in s.terms)
        assert s.kind == ("Y" if f is Family.NU else "X")


@pytest.mark.parametrize("family", list(Family))
def test_transform_roundtrip(family):
    s = theorem_series(family, 1, 6)
    assert wright_series(wright_input_from_series(s), family, 1).as_dict() == s.as_dict()


@pytest.mark.parametrize("family", list(Family))
def test_near_pole_main_convention_matches_theorem(family):
    N = COROLLARY_ORDER[family] + 1
    for m in (0, 2):
        w = near_pole_input(family, m, N, convention="main")
        assert wright_series(w, family, m).as_dict() == theorem_series(family, m, N).as_dict()


def test_near_pole_display_differs_only_where_expected():
    for f in (Family.U, Family.W, Family.V):
        assert near_pole_series(f, 0).as_dict() != theorem_series(f, 0, COROLLARY_ORDER[f]).as_dict()
    assert near_pole_series(Family.NU, 1).as_dict() == theorem_series(Family.NU, 1, 3).as_dict()


def test_eval_series_basics():
    empty = AsymSeries(Family.U, 0, ())
    v, scale = eval_series(empty, 10)
    assert v == 0 and abs(scale - 2 * mpmath.pi * mpmath.sqrt(mpmath.mpf(10) / 3)) < 1e-40
    single = AsymSeries(Family.U, 0, ((3, PiPoly.const(1)),))
    assert eval_series(single, 77) == bessel_profile("X", 3, 77)
    with pytest.raises(ValueError):
        eval_series(single, 0)


def test_wright_eval_matches_eval_series():
    prec = 192
    for f in Family:
        s = theorem_series(f, 1, COROLLARY_ORDER[f])
        w = wright_input_from_series(s)
        a, sa = wright_eval(w, 321, prec)
        b, sb = eval_series(s, 321, prec)
        assert sa == sb
        assert abs(a.imag) <= mpmath.mpf(2) ** (-prec + 8) * abs(b)
        assert abs(a.real - b) <= mpmath.mpf(2) ** (-prec + 8) * abs(b)


def test_wright_eval_trivial_inputs():
    v, _ = wright_eval(WrightInput(6, {}), 5)
    assert v == 0
    n = 50
    v, scale = wright_eval(WrightInput(6, {1: PiPoly.const(1)}), n)
    with mpmath.workprec(192):
        ref = -2 * mpmath.pi * 1j * (1j / mpmath.sqrt(12 * n)) ** 2 * mpmath.besseli(2, 2 * mpmath.pi * mpmath.sqrt(mpmath.mpf(n) / 3))
        assert abs(v.real) < 1e-40
        assert abs(v * mpmath.exp(scale) / ref - 1) < 1e-40
    with pytest.raises(ValueError):
        WrightInput(0)


def _gaps(series_fn, family, m, ns):
    out = []
    with mpmath.workprec(192):
        for n in ns:
            ln_exact = mpmath.log(rank_count(family, m, n))
            out.append(abs(1 - mpmath.exp(log_value(series_fn(family, m), n) - ln_exact)))
    return out


def test_corollary_gap_shrinks_from_125_to_500():
    g = _gaps(corollary_series, Family.U, 0, (125, 500))
    assert g[1] < g[0]


@pytest.mark.parametrize("family", list(Family))
def test_near_pole_series_converges_at_three_halves(family):
    ns = (100, 400, 900, 1600)
    for m in (0, 1):
        g = _gaps(near_pole_series, family, m, ns)
        assert all(a > b for a, b in zip(g, g[1:]))
        slope = float((mpmath.log(g[-1]) - mpmath.log(g[0])) / (mpmath.log(ns[-1]) - mpmath.log(ns[0])))
        assert -1.8 <= slope <= -1.2, slope
