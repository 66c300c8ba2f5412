"""Real-indexed a-filtrations of m-primary monomial ideals.

A filtration is given by two exact evaluators, the right-continuous value
J_c and the left limit J_(c-eps), together with a bound B beyond which
J_c = a * J_(c-1) and a source of candidate jumping numbers.  From these the
module computes jumps, multiplicities, h-polynomials of the good filtrations
J_c, J_(c+1), ... and the closed form of the Poincare series.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from math import ceil, comb, lcm
from typing import Callable

from .errors import InvariantViolation, PreconditionError, RejectedFiltration, StabilizationError
from .monomial import MonomialIdeal, colength, ideal_leq, ideal_product, is_m_primary, quotient_length
from .series import PoincareForm, TruncatedSeries, UniRational, one_minus_t_power, pmul, ptrim


@dataclass(eq=False)
class Filtration:
    base: MonomialIdeal
    eval: Callable
    eval_left: Callable
    skoda_bound: Fraction
    candidate_source: Callable
    name: str = "filtration"

    def __post_init__(self):
        raw, raw_left = self.eval, self.eval_left
        unit = MonomialIdeal.unit(self.base.dim, self.base.char)

        @lru_cache(maxsize=None)
        def at(c):
            return unit if c <= 0 else raw(c)

        @lru_cache(maxsize=None)
        def left(c):
            return unit if c <= 0 else raw_left(c)

        self.eval = lambda c: at(Fraction(c))
        self.eval_left = lambda c: left(Fraction(c))
        self.skoda_bound = Fraction(self.skoda_bound)

    @property
    def dim(self):
        return self.base.dim

    def candidates(self, c_max):
        c_max = Fraction(c_max)
        return [c for c in self.candidate_source(c_max) if 0 < c <= c_max]


@dataclass(frozen=True)
class Jump:
    c: Fraction
    ideal: MonomialIdeal
    multiplicity: int


@dataclass(frozen=True)
class JumpTable:
    jumps: tuple
    c_max: Fraction

    @property
    def e(self):
        return lcm(1, *(j.c.denominator for j in self.jumps))

    def numbers(self):
        return [j.c for j in self.jumps]


@dataclass(frozen=True)
class HPolynomial:
    coeffs: tuple

    def __post_init__(self):
        object.__setattr__(self, "coeffs", ptrim(self.coeffs))
        if sum(self.coeffs) == 0:
            raise InvariantViolation("h-polynomial vanishes at T = 1")

    @property
    def degree(self):
        return len(self.coeffs) - 1

    def __str__(self):
        from .series import format_poly
        return format_poly(self.coeffs, "T")


# -- jumps and multiplicities --------------------------------------------

def multiplicity(F, c):
    return quotient_length(F.eval_left(c), F.eval(c))


def jumping_numbers(F, c_max, check=True):
    """Jumps of F in (0, c_max] with their ideals and multiplicities.

    With ``check`` the filtration is also evaluated at the midpoint between
    consecutive candidates to confirm it is constant there.
    """
    c_max = Fraction(c_max)
    if c_max <= 0:
        raise PreconditionError("c_max must be positive")
    unit = MonomialIdeal.unit(F.dim, F.base.char)
    prev_c, prev_ideal = Fraction(0), unit
    jumps = []
    for c in F.candidates(c_max):
        left, right = F.eval_left(c), F.eval(c)
        if check:
            mid = F.eval((prev_c + c) / 2)
            if mid != prev_ideal or left != mid:
                raise InvariantViolation(f"{F.name} filtration is not constant on ({prev_c}, {c})")
        if left != right:
            if not ideal_leq(right, left):
                raise InvariantViolation(f"{F.name} filtration increases at {c}")
            jumps.append(Jump(c, right, quotient_length(left, right)))
        prev_c, prev_ideal = c, right
    return JumpTable(tuple(jumps), c_max)


# -- h-polynomials ---------------------------------------------------------

def _finite_diff(lengths, k, order):
    return sum((-1) ** i * comb(order, i) * lengths[k - i] for i in range(order + 1))


def _series_coeff(h, d, j):
    # coefficient of T^j in h / (1-T)^(d+1)
    return sum(c * comb(j - i + d, d) for i, c in enumerate(h) if i <= j)


def h_polynomial(F, c, left=False, cap=None):
    """h-polynomial of the good filtration J_c, J_(c+1), ... (or of the left
    limits J_(c-eps), J_(c+1-eps), ... when ``left``)."""
    c = Fraction(c)
    d = F.dim
    chain = F.eval_left if left else F.eval
    B = F.skoda_bound
    if cap is None:
        cap = 10 * (d + ceil(B))
    top = chain(c)
    if not (top.is_unit or is_m_primary(top)):
        raise PreconditionError(f"{F.name} value at {c} is not m-primary")
    base_len = colength(top)
    lengths = []
    tail_ok = False
    j = 0
    while j <= cap:
        lengths.append(colength(chain(c + j)) - base_len)
        if not tail_ok and c + j > B:
            nxt = chain(c + j + 1)
            tail_ok = nxt == ideal_product(F.base, chain(c + j))
        if tail_ok and j >= 2 * d + 2:
            diffs = [_finite_diff(lengths, k, d + 1) for k in range(j - d - 1, j + 1)]
            if not any(diffs):
                h = ptrim(pmul(lengths, one_minus_t_power(d + 1))[: j + 1])
                extra = [colength(chain(c + j + t)) - base_len for t in (1, 2, 3)]
                if all(_series_coeff(h, d, j + t) == extra[t - 1] for t in (1, 2, 3)):
                    return HPolynomial(h)
        j += 1
    raise StabilizationError(
        f"Hilbert-Samuel lengths of the {F.name} filtration at {c} did not stabilize within {cap} steps",
        partial=lengths,
    )


def hilbert_series_check(F, c):
    """Coefficients of T*HS and (1-T)*HS^1 for the good filtration at c.

    HS counts lambda(M_j/M_(j+1)) and HS^1 counts lambda(M/M_j), so the two
    lists agree exactly when the h-polynomial describes the filtration.
    """
    d = F.dim
    h = h_polynomial(F, c).coeffs
    n = len(h) + d + 4
    lengths = [colength(F.eval(c + j)) for j in range(n + 1)]
    shifted_hs = [0] + [lengths[j + 1] - lengths[j] for j in range(n)]
    hs1 = [_series_coeff(h, d, j) for j in range(n + 1)]
    derived = [hs1[0]] + [hs1[j] - hs1[j - 1] for j in range(1, n + 1)]
    return shifted_hs, derived


def tail_series(F, c):
    """Closed form of sum_j m(c+j) T^j."""
    d = F.dim
    m = multiplicity(F, c)
    h_right = h_polynomial(F, c).coeffs
    h_left = h_polynomial(F, c, left=True).coeffs
    diff = ptrim(tuple((h_right[i] if i < len(h_right) else 0) - (h_left[i] if i < len(h_left) else 0)
                       for i in range(max(len(h_right), len(h_left)))))
    return UniRational((m,), 1) + UniRational(diff, d + 1)


def class_of(c):
    """Representative of c modulo 1 in (0, 1]."""
    c = Fraction(c)
    return c - ceil(c) + 1


def contributing_classes(F):
    # Past B, a jump at c forces a jump at c - 1, so jumps up to B + 1 see every class.
    bound = ceil(F.skoda_bound) + 1
    return sorted({class_of(j.c) for j in jumping_numbers(F, bound).jumps})


def poincare_closed_form(F):
    classes = {}
    for c in contributing_classes(F):
        r = tail_series(F, c)
        if not r.is_zero:
            classes[c] = r
    return PoincareForm.from_dict(classes)


def poincare_bruteforce(F, order):
    table = jumping_numbers(F, order)
    return TruncatedSeries.from_dict(order, {j.c: j.multiplicity for j in table.jumps})


# -- synthetic filtrations ---------------------------------------------------

def make_table_filtration(a, entries, B):
    """Filtration with J_c read from ``entries`` for c <= B and J_c = a*J_(c-1) beyond.

    ``entries`` is an ascending list of (c, ideal); J_c is the ideal of the
    last entry with index <= c (the unit ideal before the first entry).
    """
    B = Fraction(B)
    if B <= 0:
        raise RejectedFiltration("tail bound must be positive")
    if not is_m_primary(a) or a.is_unit:
        raise RejectedFiltration("base ideal must be a proper m-primary ideal")
    entries = [(Fraction(c), I) for c, I in entries]
    unit = MonomialIdeal.unit(a.dim, a.char)
    prev_c, prev_I = Fraction(0), unit
    for c, I in entries:
        if I.dim != a.dim:
            raise RejectedFiltration("entry lives in the wrong dimension")
        if not (prev_c < c <= B):
            raise RejectedFiltration(f"entry index {c} out of order or beyond the tail bound {B}")
        if not is_m_primary(I) or I.is_unit:
            raise RejectedFiltration(f"entry ({I}) is not a proper m-primary ideal")
        if I == prev_I or not ideal_leq(I, prev_I):
            raise RejectedFiltration(f"entries are not strictly decreasing at {c}")
        prev_c, prev_I = c, I
    cs = [c for c, _ in entries]
    ideals = [I for _, I in entries]

    def table(c, strict):
        out = unit
        for ci, I in zip(cs, ideals):
            if ci < c or (ci == c and not strict):
                out = I
        return out

    @lru_cache(maxsize=None)
    def ev(c):
        if c <= 0:
            return unit
        if c <= B:
            return table(c, strict=False)
        return ideal_product(a, ev(c - 1))

    @lru_cache(maxsize=None)
    def ev_left(c):
        if c <= 0:
            return unit
        if c <= B:
            return table(c, strict=True)
        return ideal_product(a, ev_left(c - 1))

    def cands(c_max):
        out = set()
        for base in cs + [Fraction(0)]:
            t = base
            while t <= c_max:
                if t > 0:
                    out.add(t)
                t += 1
        return sorted(out)

    # right-continuity across the seam: lim_{c -> B+} a*J_(c-1) must equal J_B
    if ideal_product(a, ev(B - 1)) != ev(B):
        raise RejectedFiltration("tail a*J_(B-1) does not agree with J_B (not right-continuous at B)")
    points = [t for t in cands(B + 2)]
    grid = sorted(set(points + [(x + y) / 2 for x, y in zip([Fraction(0)] + points, points)]))
    for x, y in zip(grid, grid[1:]):
        if y > B and x <= B + 1 and not ideal_leq(ev(y), ev(x)):
            raise RejectedFiltration(f"filtration is not decreasing between {x} and {y}")
    return Filtration(base=a, eval=ev, eval_left=ev_left, skoda_bound=B, candidate_source=cands, name="table")
