from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from monomial_poincare.errors import PreconditionError, UndefinedPolyhedronError
from monomial_poincare.monomial import MonomialIdeal, contains_monomial, minimalize
from monomial_poincare.newton import (Facet, candidate_jumps, hull_contains, in_scaled_polyhedron,
                                      integral_closure, is_reduction, newton_polyhedron)

from conftest import m_primary


def test_polyhedra(I):
    P = newton_polyhedron(I("x^2, y^3"))
    assert P.vertices == ((0, 3), (2, 0))
    assert P.facets == (Facet((3, 2), 6, True),)
    assert newton_polyhedron(I("x, y")).facets == (Facet((1, 1), 1, True),)
    P = newton_polyhedron(I("x^2, x*y, y^2"))
    assert P.vertices == ((0, 2), (2, 0))
    assert P.facets == (Facet((1, 1), 2, True),)


def test_zero_ideal_has_no_polyhedron():
    with pytest.raises(UndefinedPolyhedronError):
        newton_polyhedron(MonomialIdeal.zero(2))


def test_scaled_membership(I):
    P = newton_polyhedron(I("x, y"))
    assert not in_scaled_polyhedron(P, (1, 1), 2, strict=True)
    assert in_scaled_polyhedron(P, (1, 1), 2)
    assert in_scaled_polyhedron(P, (10**9, 10**9), 7, strict=True)
    assert in_scaled_polyhedron(newton_polyhedron(I("x^2, y^3")), (1, 1), Fraction(5, 6))
    with pytest.raises(PreconditionError):
        in_scaled_polyhedron(P, (1, 1), 0)


def test_integral_closure(I):
    assert integral_closure(I("x^2, y^2")) == I("x^2, x*y, y^2")
    assert integral_closure(I("x, y")) == I("x, y")
    assert integral_closure(I("x^3, y^3")) == I("x^3, x^2*y, x*y^2, y^3")


def test_reductions(I):
    assert is_reduction(I("x^2, y^2"), I("x^2, x*y, y^2"))
    assert not is_reduction(I("x^3, y^3"), I("x^3, x*y, y^3"))
    assert is_reduction(I("x^3, y^5"), I("x^3, y^5"))


def test_candidates(I):
    # x + y = 1 is the only facet of P(x, y): candidates are v1 + v2 + 2
    assert candidate_jumps(newton_polyhedron(I("x, y")), 3) == [2, 3]
    # 5/6 from v = 0; the next value 7/6 lies beyond 1
    assert candidate_jumps(newton_polyhedron(I("x^2, y^3")), 1) == [Fraction(5, 6)]
    assert candidate_jumps(newton_polyhedron(I("x, y")), 1) == []


def test_candidates_need_bounded_box():
    with pytest.raises(PreconditionError):
        candidate_jumps(newton_polyhedron(minimalize([(1, 1)])), 2)


scales = st.sampled_from([Fraction(1), Fraction(1, 2), Fraction(2, 3), Fraction(5, 2)])


@settings(max_examples=60)
@given(m_primary(), st.tuples(st.integers(0, 12), st.integers(0, 12)), scales)
def test_facets_agree_with_hull(a, u, c):
    assert in_scaled_polyhedron(newton_polyhedron(a), u, c) == hull_contains(a.gens, u, c)


@settings(max_examples=30)
@given(m_primary(dim=3, max_exp=3, extra=2), st.tuples(*[st.integers(0, 6)] * 3), scales)
def test_facets_agree_with_hull_3d(a, u, c):
    assert in_scaled_polyhedron(newton_polyhedron(a), u, c) == hull_contains(a.gens, u, c)


@given(m_primary())
def test_closure_contains_ideal_and_is_idempotent(a):
    closure = integral_closure(a)
    assert all(contains_monomial(closure, g) for g in a.gens)
    assert integral_closure(closure) == closure
    assert is_reduction(a, closure)
