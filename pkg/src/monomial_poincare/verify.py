"""Verification suites: each runs one family of exact identities and reports
every check with the values that went into it."""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from itertools import product

from .corpus import corpus
from .errors import MonomialError, NoParameterReduction
from .filtration import jumping_numbers, poincare_bruteforce, poincare_closed_form
from .monomial import MonomialIdeal, ideal_power, ideal_product, minimalize
from .multiplier import multiplier_filtration, multiplier_ideal
from .newton import candidate_jumps, hull_contains, in_scaled_polyhedron, newton_polyhedron
from .series import expand, render
from .testideal import test_filtration, test_ideal
from .tor import (cm_poincare_form, excess, parameter_reduction, tor_lengths, tor_lengths_swapped,
                  verify_lemma_41, verify_lemma_42)


@dataclass
class Check:
    name: str
    passed: bool
    details: dict = field(default_factory=dict)


@dataclass
class SuiteReport:
    suite: str
    checks: list

    @property
    def passed(self):
        return all(c.passed for c in self.checks)

    def failures(self):
        return [c for c in self.checks if not c.passed]


def fmt(x):
    if isinstance(x, Fraction):
        return str(x.numerator) if x.denominator == 1 else f"{x.numerator}/{x.denominator}"
    if isinstance(x, MonomialIdeal):
        return str(x)
    if isinstance(x, (list, tuple)):
        return [fmt(y) for y in x]
    return x


def _maximal_powers(d, top):
    m = MonomialIdeal.maximal(d)
    return [ideal_power(m, k) for k in range(1, top + 1)]


def _filtration(a, char):
    return test_filtration(a, char) if char else multiplier_filtration(a)


# -- suites -------------------------------------------------------------------

def suite_skoda(ideals=None, chars=(), **_):
    checks = []
    for a in ideals or corpus():
        d = a.dim
        for c in candidate_jumps(newton_polyhedron(a), d + 2):
            if c <= d:
                continue
            left = multiplier_ideal(a, c)
            right = ideal_product(a, multiplier_ideal(a, c - 1))
            checks.append(Check(f"multiplier ({a}) at {fmt(c)}", left == right,
                                {"ideal": fmt(a), "c": fmt(c), "J_c": fmt(left), "a*J_(c-1)": fmt(right)}))
            for p in chars:
                left = test_ideal(a, c, p)
                right = ideal_product(a, test_ideal(a, c - 1, p))
                checks.append(Check(f"test p={p} ({a}) at {fmt(c)}", left == right,
                                    {"ideal": fmt(a), "c": fmt(c), "p": p, "tau_c": fmt(left),
                                     "a*tau_(c-1)": fmt(right)}))
    return SuiteReport("skoda", checks)


def suite_rationality(ideals=None, chars=(), order=None, **_):
    checks = []
    for a in ideals or corpus():
        for p in list(chars) or [0]:
            F = _filtration(a, p)
            closed = poincare_closed_form(F)
            orders = [order] if order else sorted({Fraction(a.dim + 5), Fraction(20 if a.dim == 2 else 8)})
            for N in orders:
                lhs = expand(closed, N)
                rhs = poincare_bruteforce(F, N)
                checks.append(Check(f"({a}) p={p} N={fmt(Fraction(N))}", lhs == rhs,
                                    {"ideal": fmt(a), "char": p, "order": fmt(Fraction(N)),
                                     "closed_form": render(closed), "expansion": str(lhs), "bruteforce": str(rhs)}))
    return SuiteReport("rationality", checks)


def _default_tor_pairs():
    m2 = MonomialIdeal.maximal(2)
    m3 = MonomialIdeal.maximal(3)
    a22 = minimalize([(2, 0), (0, 2)])
    a23 = minimalize([(2, 0), (0, 3)])
    b = minimalize([(2, 0), (1, 1), (0, 2)])
    c3 = minimalize([(3, 0), (2, 1), (0, 4)])
    return [
        (a22, m2), (a22, ideal_power(m2, 2)), (m2, m2), (m2, ideal_power(m2, 3)),
        (a23, multiplier_ideal(a23, 2)), (b, multiplier_ideal(b, 2)), (c3, multiplier_ideal(c3, Fraction(3, 2))),
        (m3, m3), (minimalize([(2, 0, 0), (0, 2, 0), (0, 0, 2)]), ideal_power(m3, 2)),
        (minimalize([(2, 0, 0), (0, 2, 0), (0, 0, 3), (1, 1, 1)]), m3),
    ]


def suite_tor_symmetry(ideals=None, J=None, js=None, i_max=None, **_):
    if ideals:
        targets = [J] if J is not None else None
        pairs = [(a, K) for a in ideals for K in (targets or _maximal_powers(a.dim, 2))]
    else:
        pairs = _default_tor_pairs()
    checks = []
    for a, K in pairs:
        top = a.dim if i_max is None else i_max
        for j in js or range(1, 4):
            first = tor_lengths(a, j, K, top).tor
            second = tor_lengths_swapped(a, j, K, top)
            checks.append(Check(f"({a})^{j} vs ({K})", first == second,
                                {"a": fmt(a), "j": j, "J": fmt(K), "resolve_a": list(first),
                                 "resolve_J": list(second)}))
    return SuiteReport("tor-symmetry", checks)


def suite_excess(ideals=None, max_c=None, span=4, **_):
    checks = []
    for a in ideals or corpus(2):
        if a.dim != 2:
            continue
        try:
            Q = parameter_reduction(a)
        except NoParameterReduction:
            if ideals:
                raise
            continue
        F = multiplier_filtration(a)
        for jump in jumping_numbers(F, max_c or a.dim + 1).jumps:
            try:
                rep = excess(F, jump.c, 1, span, Q)
                checks.append(Check(f"({a}) at {fmt(jump.c)}", True,
                                    {"ideal": fmt(a), "c": fmt(jump.c), "rho": fmt(rep.rho),
                                     "tor2_right": list(rep.tor_right), "tor2_left": list(rep.tor_left),
                                     "m(c+j)-m(c)": list(rep.mult_gaps)}))
            except MonomialError as exc:
                checks.append(Check(f"({a}) at {fmt(jump.c)}", False, {"ideal": fmt(a), "c": fmt(jump.c),
                                                                       "error": str(exc)}))
    return SuiteReport("excess", checks)


def suite_test_vs_mult(ideals=None, chars=(), max_c=None, **_):
    checks = []
    for a in ideals or corpus():
        top = max_c or a.dim + 1
        for p in list(chars) or [2, 3, 5, 7]:
            for c in candidate_jumps(newton_polyhedron(a), top):
                tau, J = test_ideal(a, c, p), multiplier_ideal(a, c)
                checks.append(Check(f"({a}) p={p} c={fmt(c)}", tau == J,
                                    {"ideal": fmt(a), "p": p, "c": fmt(c), "tau": fmt(tau), "J": fmt(J)}))
    return SuiteReport("test-vs-mult", checks)


def _lemma_bases():
    return [minimalize([(2, 0), (0, 2)]), MonomialIdeal.maximal(2), minimalize([(3, 0), (0, 3)])]


def _consecutive_multiplier_pairs(a, top):
    F = multiplier_filtration(a)
    return [(F.eval_left(j.c), F.eval(j.c)) for j in jumping_numbers(F, top).jumps]


def suite_lemma41(ideals=None, J=None, js=None, **_):
    checks = []
    for a in ideals or _lemma_bases():
        targets = [J] if J is not None else (
            _maximal_powers(a.dim, 3) + [K for pair in _consecutive_multiplier_pairs(a, a.dim + 1) for K in pair])
        seen = []
        for K in targets:
            if K in seen:
                continue
            seen.append(K)
            for j in js or range(1, 6):
                rep = verify_lemma_41(a, j, K)
                checks.append(Check(f"({a}) j={j} J=({K})", rep.holds,
                                    {"a": fmt(a), "j": j, "J": fmt(K), "lhs": rep.lhs, "rhs": rep.rhs,
                                     "colength_a^j": rep.colength_aj, "image": rep.image, "beta1": rep.beta1,
                                     "colength_J": rep.colength_J}))
    return SuiteReport("lemma41", checks)


def suite_lemma42(ideals=None, pairs=None, N=5, **_):
    checks = []
    for a in ideals or _lemma_bases():
        m = MonomialIdeal.maximal(a.dim)
        todo = pairs or ([(m, ideal_power(m, 2)), (ideal_power(m, 2), ideal_power(m, 3))]
                         + _consecutive_multiplier_pairs(a, a.dim + 1))
        for K, J in todo:
            rep = verify_lemma_42(a, K, J, N)
            checks.append(Check(f"({a}) K=({K}) J=({J})", rep.holds,
                                {"a": fmt(a), "K": fmt(K), "J": fmt(J), "lhs": list(rep.lhs), "rhs": list(rep.rhs)}))
    return SuiteReport("lemma42", checks)


def suite_cmform(ideals=None, **_):
    checks = []
    for a in ideals or corpus(2):
        try:
            Q = parameter_reduction(a)
        except NoParameterReduction:
            if ideals:
                raise
            continue
        F = multiplier_filtration(a)
        try:
            form = cm_poincare_form(F, Q)
        except MonomialError as exc:
            checks.append(Check(f"({a})", False, {"ideal": fmt(a), "error": str(exc)}))
            continue
        closed = poincare_closed_form(F)
        checks.append(Check(f"({a}) reassembly", form.reassemble() == closed,
                            {"ideal": fmt(a), "reduction": fmt(Q), "closed_form": render(closed),
                             "reassembled": render(form.reassemble())}))
        if a.dim == 2:
            for k in form.classes:
                ok = k.alphas == (0, -k.leading[0]) and not k.p
                checks.append(Check(f"({a}) class {fmt(k.c)}", ok,
                                    {"c": fmt(k.c), "m": list(k.leading), "alphas": list(k.alphas), "p": list(k.p)}))
    return SuiteReport("cmform", checks)


def suite_newton(ideals=None, scales=(Fraction(1), Fraction(1, 2), Fraction(3, 2)), **_):
    checks = []
    for a in ideals or corpus():
        P = newton_polyhedron(a)
        top = [max(g[i] for g in a.gens) + 1 for i in range(a.dim)]
        bad = []
        count = 0
        for c in scales:
            box = [int(t * c) + 2 for t in top]
            for u in product(*(range(b) for b in box)):
                count += 1
                if in_scaled_polyhedron(P, u, c) != hull_contains(a.gens, u, c):
                    bad.append([list(u), fmt(c)])
        checks.append(Check(f"({a})", not bad, {"ideal": fmt(a), "points": count, "discrepancies": bad[:10]}))
    return SuiteReport("newton", checks)


SUITES = {
    "skoda": suite_skoda,
    "rationality": suite_rationality,
    "tor-symmetry": suite_tor_symmetry,
    "excess": suite_excess,
    "test-vs-mult": suite_test_vs_mult,
    "lemma41": suite_lemma41,
    "lemma42": suite_lemma42,
    "cmform": suite_cmform,
    "newton": suite_newton,
}


def run_suite(name, **params):
    try:
        fn = SUITES[name]
    except KeyError:
        raise MonomialError(f"unknown suite {name!r}; choose from {', '.join(SUITES)}") from None
    return fn(**params)
