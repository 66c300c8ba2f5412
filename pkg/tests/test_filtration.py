from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from monomial_poincare.corpus import fuzz_filtrations
from monomial_poincare.errors import InvariantViolation, PreconditionError, RejectedFiltration, StabilizationError
from monomial_poincare.filtration import (Filtration, HPolynomial, h_polynomial, hilbert_series_check,
                                          jumping_numbers, make_table_filtration, multiplicity,
                                          poincare_bruteforce, poincare_closed_form, tail_series)
from monomial_poincare.monomial import MonomialIdeal, colength, ideal_power
from monomial_poincare.multiplier import multiplier_filtration
from monomial_poincare.series import PoincareForm, UniRational, expand, render

from conftest import m_primary

half = Fraction(1, 2)


def test_jumps_of_maximal_ideal(I):
    F = multiplier_filtration(I("x, y"))
    table = jumping_numbers(F, 4)
    assert [(j.c, j.ideal, j.multiplicity) for j in table.jumps] == [
        (2, I("x, y"), 1), (3, I("x^2, x*y, y^2"), 2), (4, I("x^3, x^2*y, x*y^2, y^3"), 3)]
    assert table.e == 1
    assert jumping_numbers(F, 1).jumps == ()


def test_first_jump(I):
    table = jumping_numbers(multiplier_filtration(I("x^2, y^3")), 1)
    assert [(j.c, j.ideal, j.multiplicity) for j in table.jumps] == [(Fraction(5, 6), I("x, y"), 1)]


def test_multiplicity(I):
    F = multiplier_filtration(I("x, y"))
    assert multiplicity(F, 3) == 2
    assert multiplicity(F, Fraction(5, 2)) == 0
    assert multiplicity(multiplier_filtration(I("x^2, y^3")), Fraction(5, 6)) == 1


def test_h_polynomials(I):
    F = multiplier_filtration(I("x, y"))
    assert h_polynomial(F, 1).coeffs == (0, 1)
    assert h_polynomial(F, 1, left=True).coeffs == (0, 0, 1)


def test_h_polynomial_of_adic_filtration(I):
    # J_c = m^floor(c): lengths lambda(A/m^j) = 0, 1, 3, 6, ... give T/(1-T)^3
    F = make_table_filtration(I("x, y"), [(1, I("x, y"))], 1)
    assert h_polynomial(F, 0).coeffs == (0, 1)
    assert F.eval(Fraction(3, 2)) == I("x, y")


def test_h_polynomial_must_not_vanish_at_one():
    with pytest.raises(InvariantViolation):
        HPolynomial((1, -1))


def test_h_polynomial_cap(I):
    # a filtration that never becomes a-stable: J_c = m^(ceil c)^2 with a = m
    a = I("x, y")
    F = Filtration(a, lambda c: ideal_power(a, int(c) ** 2 + 1), lambda c: ideal_power(a, int(c) ** 2),
                   Fraction(2), lambda c_max: [Fraction(n) for n in range(1, int(c_max) + 1)])
    with pytest.raises(StabilizationError) as info:
        h_polynomial(F, 1, cap=12)
    assert info.value.partial


def test_hilbert_series_identity(I):
    for text in ("x, y", "x^2, y^3", "x^2, x*y, y^2"):
        F = multiplier_filtration(I(text))
        for c in (Fraction(5, 6), Fraction(1), Fraction(3, 2)):
            shifted, derived = hilbert_series_check(F, c)
            assert shifted == derived


def test_tail_series(I):
    F = multiplier_filtration(I("x, y"))
    assert tail_series(F, 1) == UniRational((0, 1), 2)
    assert tail_series(F, half).is_zero
    G = multiplier_filtration(I("x^2, y^3"))
    series = expand(tail_series(G, Fraction(5, 6)), 5).as_dict()
    assert [series.get(j, 0) for j in range(6)] == [multiplicity(G, Fraction(5, 6) + j) for j in range(6)]


def test_closed_forms(I):
    assert poincare_closed_form(multiplier_filtration(I("x, y"))) == PoincareForm.from_dict({1: UniRational((0, 1), 2)})
    G = multiplier_filtration(I("x^2, y^3"))
    closed = poincare_closed_form(G)
    assert render(closed) == "(z^5 + z^7 + z^8 + z^9 + z^10 + z^12)/(1-z^6)^2 where z = T^(1/6)"
    assert expand(closed, 20) == poincare_bruteforce(G, 20)


def test_bruteforce(I):
    assert str(poincare_bruteforce(multiplier_filtration(I("x, y")), 4)) == "T^2 + 2T^3 + 3T^4"
    assert str(poincare_bruteforce(multiplier_filtration(I("x^2, y^3")), 1)) == "T^(5/6)"
    assert str(poincare_bruteforce(multiplier_filtration(I("x, y")), 1)) == "0"


def test_table_filtration(I):
    F = make_table_filtration(I("x^2, y^2"), [(half, I("x, y")), (1, I("x^2, y^2"))], 1)
    assert jumping_numbers(F, 2).numbers() == [half, 1, Fraction(3, 2), 2]
    assert expand(poincare_closed_form(F), 12) == poincare_bruteforce(F, 12)


def test_table_rejections(I):
    m, m2 = I("x, y"), I("x^2, x*y, y^2")
    with pytest.raises(RejectedFiltration):
        make_table_filtration(m, [(half, m2), (1, m)], 1)
    # seam: a * J_0 = (x^2, y^2) is not J_1
    with pytest.raises(RejectedFiltration):
        make_table_filtration(I("x^2, y^2"), [(half, m), (1, m2)], 1)
    with pytest.raises(RejectedFiltration):
        make_table_filtration(m, [(2, m)], 1)
    with pytest.raises(RejectedFiltration):
        make_table_filtration(m, [(1, m)], 0)


def test_jumps_need_positive_bound(I):
    with pytest.raises(PreconditionError):
        jumping_numbers(multiplier_filtration(I("x, y")), 0)


@settings(max_examples=15, deadline=None)
@given(st.integers(0, 10**6))
def test_fuzzed_tables_are_rational(seed):
    (F,), _ = fuzz_filtrations(1, seed=seed)
    N = F.dim + 5
    assert expand(poincare_closed_form(F), N) == poincare_bruteforce(F, N)


@settings(max_examples=20, deadline=None)
@given(m_primary(max_exp=4))
def test_multiplier_closed_form_matches(a):
    F = multiplier_filtration(a)
    assert expand(poincare_closed_form(F), 8) == poincare_bruteforce(F, 8)


@settings(max_examples=20, deadline=None)
@given(m_primary(max_exp=4), st.fractions(Fraction(1, 6), 2, max_denominator=6))
def test_multiplicities_add_up_to_colength(a, c):
    F = multiplier_filtration(a)
    assert F.eval(0) == MonomialIdeal.unit(2)
    assert sum(j.multiplicity for j in jumping_numbers(F, c).jumps) == colength(F.eval(c))
