from fractions import Fraction
from math import ceil

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from monomial_poincare.errors import PreconditionError, StabilizationError
from monomial_poincare.filtration import jumping_numbers, poincare_closed_form
from monomial_poincare.monomial import frobenius_root, ideal_leq, ideal_power, minimalize
from monomial_poincare.multiplier import multiplier_ideal
from monomial_poincare.series import render
from monomial_poincare.testideal import (CharP, chain_ceiling, root_of_power, test_filtration, test_ideal,
                                         test_ideal_chain, test_left_limit)

from conftest import m_primary


def test_values(I):
    assert test_ideal(I("x, y"), 2, 3) == I("x, y")
    for p in (2, 3, 5):
        assert test_ideal(I("x, y"), Fraction(1, 2), p).is_unit
    assert test_ideal(I("x^2, y^3"), Fraction(5, 6), 7) == I("x, y")


def test_left_limits(I):
    assert test_left_limit(I("x^2, y^3"), Fraction(5, 6), 7).is_unit
    assert test_left_limit(I("x, y"), 2, 5).is_unit
    assert test_left_limit(I("x, y"), Fraction(1, 3), 2).is_unit


def test_filtrations(I):
    assert render(poincare_closed_form(test_filtration(I("x, y"), 2))) == "T^2/(1-T)^2"
    assert jumping_numbers(test_filtration(I("x^2, y^3"), 5), 1).numbers() == [Fraction(5, 6)]


def test_characteristic_must_be_prime(I):
    with pytest.raises(PreconditionError):
        CharP(4)
    with pytest.raises(PreconditionError):
        test_ideal(I("x, y"), 1, 1)


def test_chain_can_pause_before_growing(I):
    # three equal members in a row, then one more step up
    a = I("x^5, x*y^2, y^4")
    chain = test_ideal_chain(a, Fraction(3, 4), 2)
    assert [str(t) for t in chain[2:]] == ["x^2, y", "x^2, y", "x^2, y", "x, y"]
    assert chain[-1] == chain_ceiling(a, Fraction(3, 4)) == multiplier_ideal(a, Fraction(3, 4))


def test_chain_cap_reports_partial_chain(I):
    with pytest.raises(StabilizationError) as info:
        test_ideal_chain(I("x^5, x*y^2, y^4"), Fraction(3, 4), 2, e_max=3)
    assert len(info.value.partial) == 4


def test_non_m_primary_rejected():
    with pytest.raises(PreconditionError):
        test_ideal(minimalize([(1, 1)]), 1, 2)


@settings(max_examples=40, deadline=None)
@given(m_primary(max_exp=3, extra=2), st.integers(0, 3), st.sampled_from([2, 3]),
       st.fractions(Fraction(1, 4), 2, max_denominator=4))
def test_root_of_power_matches_literal_computation(a, e, p, c):
    q = p**e
    N = ceil(c * q)
    assert root_of_power(a, N, q) == frobenius_root(ideal_power(a, N), q)


@settings(max_examples=25, deadline=None)
@given(m_primary(max_exp=4), st.sampled_from([2, 3, 5]), st.fractions(Fraction(1, 6), 3, max_denominator=6))
def test_agrees_with_multiplier_ideal(a, p, c):
    tau = test_ideal(a, c, p)
    assert tau == multiplier_ideal(a, c)
    assert ideal_leq(tau, chain_ceiling(a, c))


@settings(max_examples=15, deadline=None)
@given(m_primary(dim=3, max_exp=2, extra=1), st.sampled_from([2, 3]), st.fractions(Fraction(1, 2), 3, max_denominator=2))
def test_agrees_with_multiplier_ideal_3d(a, p, c):
    assert test_ideal(a, c, p) == multiplier_ideal(a, c)
