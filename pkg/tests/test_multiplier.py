from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from monomial_poincare.errors import PreconditionError
from monomial_poincare.filtration import jumping_numbers, poincare_closed_form
from monomial_poincare.monomial import MonomialIdeal, contains_monomial, ideal_leq, ideal_product, minimalize
from monomial_poincare.multiplier import lct, multiplier_filtration, multiplier_ideal, multiplier_left_limit
from monomial_poincare.newton import hull_contains
from monomial_poincare.series import render

from conftest import m_primary


def test_values(I):
    assert multiplier_ideal(I("x, y"), 2) == I("x, y")
    assert multiplier_ideal(I("x, y"), Fraction(1, 10)).is_unit
    assert multiplier_ideal(I("x^2, y^3"), 1) == I("x, y")


def test_left_limits(I):
    assert multiplier_left_limit(I("x, y"), 2).is_unit
    assert multiplier_left_limit(I("x^2, y^3"), Fraction(5, 6)).is_unit
    assert multiplier_left_limit(I("x^2, y^3"), Fraction(1, 2)).is_unit


def test_lct(I):
    assert lct(I("x, y")) == 2
    assert lct(I("x^2, y^3")) == Fraction(5, 6)
    assert lct(I("x^2, x*y, y^2")) == 1


def test_filtration_examples(I):
    assert render(poincare_closed_form(multiplier_filtration(I("x, y")))) == "T^2/(1-T)^2"
    first = jumping_numbers(multiplier_filtration(I("x^2, y^2")), 1).jumps[0]
    assert (first.c, first.ideal) == (1, I("x, y"))


def test_needs_m_primary():
    with pytest.raises(PreconditionError):
        multiplier_ideal(minimalize([(1, 1)]), 1)


def _interior_by_hull(a, c, v):
    # u is interior to c*P iff u - eps*(1,..,1) is in c*P for small eps, since the
    # recession cone is the orthant; scale everything by 1000 to stay integral
    return hull_contains([tuple(1000 * x for x in g) for g in a.gens], tuple(1000 * x + 999 for x in v), c)


@settings(max_examples=30)
@given(m_primary(max_exp=4), st.sampled_from([Fraction(1, 2), Fraction(5, 6), Fraction(1), Fraction(7, 4)]))
def test_membership_by_independent_hull(a, c):
    J = multiplier_ideal(a, c)
    for v in [(i, j) for i in range(6) for j in range(6)]:
        assert contains_monomial(J, v) == _interior_by_hull(a, c, v)


@settings(max_examples=40)
@given(m_primary(), st.fractions(0, 4, max_denominator=6), st.fractions(0, 4, max_denominator=6))
def test_decreasing_in_c(a, s, t):
    lo, hi = sorted((s, t))
    if lo > 0:
        assert ideal_leq(multiplier_ideal(a, hi), multiplier_ideal(a, lo))
        assert ideal_leq(multiplier_ideal(a, lo), multiplier_left_limit(a, lo))


@settings(max_examples=40)
@given(m_primary(), st.fractions(0, 1, max_denominator=12))
def test_skoda_beyond_dimension(a, t):
    c = 2 + t
    if c > 2:
        assert multiplier_ideal(a, c) == ideal_product(a, multiplier_ideal(a, c - 1))


@given(m_primary())
def test_contains_the_ideal_at_one(a):
    assert ideal_leq(a, multiplier_ideal(a, 1))
    assert multiplier_ideal(a, lct(a) / 2).is_unit or lct(a) / 2 <= 0
    assert not multiplier_ideal(a, lct(a)).is_unit
    assert multiplier_left_limit(a, lct(a)) == MonomialIdeal.unit(2)
