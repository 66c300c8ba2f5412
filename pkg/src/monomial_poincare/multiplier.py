"""Multiplier ideals of m-primary monomial ideals.

For a monomial ideal a in K[x_1..x_d] the multiplier ideal J(a^c) is spanned
by the monomials x^v with v + (1,...,1) in the interior of c*P(a).  A point
leaves the interior exactly when c reaches phi(v+1) = min <a, v+1>/b, so the
right-continuous value at c uses strict membership and the left limit
J(a^(c-eps)) uses closed membership: v+1 in c*P(a) means phi(v+1) >= c,
i.e. v survives for every c' < c.
"""

from fractions import Fraction
from functools import lru_cache
from math import ceil

from .errors import PreconditionError
from .filtration import Filtration
from .monomial import MonomialIdeal, ideal_from_mask, is_m_primary
from .newton import candidate_jumps, newton_polyhedron, scaled_membership_mask


def _require_m_primary(a):
    if not is_m_primary(a):
        raise PreconditionError(f"({a}) is not m-primary")


def _box(a, c):
    # x_i^ceil(c*a_i) is always in J(a^c), so minimal generators fit in this box
    return tuple(ceil(c * e) + 1 for e in a.pure_power_exponents())


@lru_cache(maxsize=4096)
def _multiplier(a, c, strict):
    _require_m_primary(a)
    c = Fraction(c)
    if c <= 0:
        return MonomialIdeal.unit(a.dim, a.char)
    P = newton_polyhedron(a)
    mask = scaled_membership_mask(P, _box(a, c), c, shift=1, strict=strict)
    return ideal_from_mask(mask, a.char)


def multiplier_ideal(a, c):
    """J(a^c)."""
    return _multiplier(a, Fraction(c), True)


def multiplier_left_limit(a, c):
    """J(a^(c - eps)) for eps > 0 small."""
    return _multiplier(a, Fraction(c), False)


def lct(a):
    _require_m_primary(a)
    if a.is_unit:
        raise PreconditionError("the unit ideal has no log canonical threshold")
    P = newton_polyhedron(a)
    return min(Fraction(sum(f.normal), f.offset) for f in P.facets)


def multiplier_filtration(a):
    _require_m_primary(a)
    P = newton_polyhedron(a)
    return Filtration(
        base=a,
        eval=lambda c: multiplier_ideal(a, c),
        eval_left=lambda c: multiplier_left_limit(a, c),
        skoda_bound=Fraction(a.dim),
        candidate_source=lambda c_max: candidate_jumps(P, c_max),
        name="multiplier",
    )
