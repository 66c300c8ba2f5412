from fractions import Fraction

from hypothesis import given
from hypothesis import strategies as st

from monomial_poincare.series import (PoincareForm, TruncatedSeries, UniRational, expand, parse_rendering,
                                      rat_arith, render)


def R(num, k):
    return UniRational(tuple(num), k)


def test_arithmetic():
    assert rat_arith(R([1], 1), R([-1], 1), "add").is_zero
    assert rat_arith(R([0, 1], 3), R([0, 0, 1], 3), "sub") == R([0, 1], 2)
    assert rat_arith(R([1], 1), R([1], 1), "mul") == R([1], 2)


def test_normal_form_cancels():
    r = R([0, 1, -1], 3)
    assert (r.num, r.k) == ((0, 1), 2)


def test_expand_unirational():
    assert str(expand(R([1], 1), 3)) == "1 + T + T^2 + T^3"
    assert str(expand(R([0, 1], 2), 4)) == "T + 2T^2 + 3T^3 + 4T^4"


def test_expand_form():
    form = PoincareForm.from_dict({1: R([0, 1], 2)})
    assert str(expand(form, 4)) == "T^2 + 2T^3 + 3T^4"


def test_render():
    assert render(PoincareForm.from_dict({1: R([0, 1], 2)})) == "T^2/(1-T)^2"
    assert render(PoincareForm()) == "0"
    assert render(PoincareForm.from_dict({Fraction(5, 6): R([1], 1)})) == "z^5/(1-z^6) where z = T^(1/6)"


def test_truncated_series_respects_order():
    s = TruncatedSeries.from_dict(Fraction(3, 2), {Fraction(1, 2): 2, 2: 5, 1: 0})
    assert s.terms == ((Fraction(1, 2), 2),)


unirational = st.builds(R, st.lists(st.integers(-3, 3), max_size=4), st.integers(0, 3))
forms = st.dictionaries(st.sampled_from([Fraction(1, 6), Fraction(1, 3), Fraction(1, 2), Fraction(5, 6),
                                         Fraction(1)]), unirational, max_size=3).map(PoincareForm.from_dict)


@given(unirational, unirational)
def test_expansion_is_additive(a, b):
    assert expand(a + b, 8) == expand(a, 8) + expand(b, 8)


@given(unirational, unirational)
def test_expansion_is_multiplicative(a, b):
    lhs = expand(a * b, 6).as_dict()
    ea, eb = expand(a, 6).as_dict(), expand(b, 6).as_dict()
    rhs = {}
    for i, x in ea.items():
        for j, y in eb.items():
            if i + j <= 6:
                rhs[i + j] = rhs.get(i + j, 0) + x * y
    assert lhs == {k: v for k, v in rhs.items() if v}


@given(forms)
def test_render_round_trip(form):
    assert parse_rendering(render(form)) == form


@given(forms, forms)
def test_form_sum_expands_termwise(f, g):
    assert expand(f + g, 5) == expand(f, 5) + expand(g, 5)
