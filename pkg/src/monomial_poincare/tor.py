"""Multigraded Tor of monomial quotients and the identities built on it.

A free resolution of A/I by monomial labels is tensored with A/J one
multidegree u at a time: a term with label L contributes a basis vector at u
exactly when u - L is a standard monomial of J, and the differential between
two contributing terms is the sign of the face map.  Summing homology
dimensions over u gives the lengths of Tor_i(A/I, A/J).

The same data yields lambda(Im phi_j), the length of the image of
F_2 (x) A/J -> F_1 (x) A/J for the resolution of A/a^j.  This does not depend
on which F_2 is used as long as F_1 is free on the minimal generators, so
the pairs of the Taylor complex are enough for it.
"""

from __future__ import annotations

from collections import defaultdict
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from itertools import combinations
from math import comb, gcd

from .errors import (InvariantViolation, NoParameterReduction, PreconditionError, ResourceError)
from .filtration import contributing_classes, multiplicity, poincare_closed_form
from .monomial import (MonomialIdeal, colength, ideal_leq, ideal_power, ideal_product, is_m_primary,
                       quotient_length, standard_monomials)
from .newton import is_reduction
from .series import PoincareForm, UniRational, ptrim

TAYLOR_GEN_LIMIT = 22
TERM_LIMIT = 400_000
HILBERT_BURCH_CAP = 8


@dataclass(frozen=True)
class LabeledComplex:
    """Monomial free resolution: terms[i] lists (subset, label) in homological degree i.

    The differential of a subset S = (s_0 < s_1 < ...) is
    sum_k (-1)^k x^(label(S) - label(S - s_k)) (S - s_k), restricted to the
    faces present in degree i-1.  ``complete`` is False when higher degrees
    were left out.
    """

    dim: int
    terms: tuple
    complete: bool
    kind: str = "taylor"

    @property
    def length(self):
        return len(self.terms) - 1

    def ranks(self):
        return [len(t) for t in self.terms]

    def faces(self, i):
        """For each term of degree i, its (index in degree i-1, sign) pairs."""
        index = {S: k for k, (S, _) in enumerate(self.terms[i - 1])}
        out = []
        for S, _ in self.terms[i]:
            row = []
            for k in range(len(S)):
                face = S[:k] + S[k + 1:]
                if face in index:
                    row.append((index[face], -1 if k % 2 else 1))
            out.append(row)
        return out

    def check_d_squared(self):
        """Composition of consecutive differentials vanishes (labels and signs)."""
        for i in range(2, len(self.terms)):
            upper, lower = self.faces(i), self.faces(i - 1)
            labels_i, labels_j = self.terms[i], self.terms[i - 2]
            for S_idx, row in enumerate(upper):
                acc = defaultdict(int)
                for f, s in row:
                    for g, t in lower[f]:
                        acc[g] += s * t
                for g, v in acc.items():
                    if v:
                        return False
                    if any(a < b for a, b in zip(labels_i[S_idx][1], labels_j[g][1])):
                        return False
        return True


def _lcm(vectors, d):
    return tuple(max(v[i] for v in vectors) for i in range(d)) if vectors else (0,) * d


def taylor_complex(I, max_degree=None):
    """Taylor resolution of A/I, optionally truncated after ``max_degree``."""
    if I.is_zero:
        raise PreconditionError("the zero ideal has no Taylor resolution")
    g = I.ngens
    top = g if max_degree is None else min(g, max_degree)
    if top == g and g > TAYLOR_GEN_LIMIT:
        raise ResourceError(f"Taylor complex on {g} generators is too large; use a smaller j or d")
    size = sum(comb(g, i) for i in range(top + 1))
    if size > TERM_LIMIT:
        raise ResourceError(f"Taylor complex would have {size} terms; use a smaller j or d")
    d = I.dim
    gens = I.gens
    terms = []
    for i in range(top + 1):
        terms.append(tuple((S, _lcm([gens[k] for k in S], d)) for S in combinations(range(g), i)))
    return LabeledComplex(d, tuple(terms), top == g, "taylor")


def hilbert_burch(I):
    """Minimal resolution of A/I in two variables: syzygies of neighbouring generators."""
    if I.dim != 2:
        raise PreconditionError("the Hilbert-Burch resolution is implemented for d = 2 only")
    if I.is_zero:
        raise PreconditionError("the zero ideal has no resolution")
    g = I.ngens
    gens = I.gens
    terms = [(((), (0, 0)),), tuple(((k,), gens[k]) for k in range(g))]
    if g > 1:
        terms.append(tuple(((k, k + 1), _lcm([gens[k], gens[k + 1]], 2)) for k in range(g - 1)))
    return LabeledComplex(2, tuple(terms), True, "hilbert-burch")


def resolution(I, max_degree=None):
    if I.dim == 2 and I.ngens > HILBERT_BURCH_CAP:
        return hilbert_burch(I)
    return taylor_complex(I, max_degree)


# -- exact ranks ------------------------------------------------------------

def _rank(rows):
    """Rank over Q of a sparse integer matrix given as a list of {col: value} dicts."""
    rows = [dict(r) for r in rows if r]
    rank = 0
    while rows:
        pivot_row = rows.pop()
        if not pivot_row:
            continue
        col, a = next(iter(pivot_row.items()))
        rank += 1
        rest = []
        for r in rows:
            b = r.get(col)
            if b:
                new = {}
                for k in set(r) | set(pivot_row):
                    v = a * r.get(k, 0) - b * pivot_row.get(k, 0)
                    if v:
                        new[k] = v
                g = 0
                for v in new.values():
                    g = gcd(g, v)
                if g > 1:
                    new = {k: v // g for k, v in new.items()}
                r = new
            if r:
                rest.append(r)
        rows = rest
    return rank


@dataclass(frozen=True)
class TensorData:
    tor: tuple          # lambda(Tor_i) for i = 0..i_max
    image2: int         # lambda of the image of degree 2 -> 1
    image3: int         # lambda of the image of degree 3 -> 2 (0 if absent)
    terms: tuple        # total lengths of C_i (x) A/J


def tensor_homology(C, J, i_max):
    """Homology lengths of C (x) A/J up to degree i_max, plus image lengths."""
    if J.is_unit:
        return TensorData((0,) * (i_max + 1), 0, 0, (0,) * len(C.terms))
    if not is_m_primary(J):
        raise PreconditionError(f"({J}) is not m-primary")
    need = max(i_max + 1, 3)
    top = min(need, C.length)
    if not C.complete and C.length < i_max + 1:
        raise PreconditionError(f"complex truncated at degree {C.length} cannot give Tor_{i_max}")
    std = [tuple(int(x) for x in s) for s in standard_monomials(J)]
    basis = defaultdict(lambda: [[] for _ in range(top + 1)])
    for i in range(top + 1):
        for k, (_, label) in enumerate(C.terms[i]):
            for s in std:
                basis[tuple(a + b for a, b in zip(label, s))][i].append(k)
    faces = [None] + [C.faces(i) for i in range(1, top + 1)]
    dims = [0] * (top + 2)
    ranks = [0] * (top + 2)
    homology = [0] * (top + 1)
    for u in sorted(basis):
        parts = basis[u]
        local_rank = [0] * (top + 2)
        for i in range(1, top + 1):
            if not parts[i] or not parts[i - 1]:
                continue
            present = {k: n for n, k in enumerate(parts[i - 1])}
            rows = []
            for k in parts[i]:
                row = {present[f]: s for f, s in faces[i][k] if f in present}
                rows.append(row)
            local_rank[i] = _rank(rows)
        for i in range(top + 1):
            n = len(parts[i])
            dims[i] += n
            ranks[i] += local_rank[i]
            h = n - local_rank[i] - local_rank[i + 1]
            homology[i] += h
    # degrees beyond a complete complex have zero homology
    tor = tuple(homology[i] if i <= top else 0 for i in range(i_max + 1))
    image2 = ranks[2] if top >= 2 else 0
    image3 = ranks[3] if top >= 3 else 0
    return TensorData(tor, image2, image3, tuple(dims[: top + 1]))


# -- Tor tables -------------------------------------------------------------

@dataclass(frozen=True)
class TorRow:
    j: int
    tor: tuple
    image: int
    image3: int
    beta1: int


@dataclass(frozen=True)
class TorTable:
    base: MonomialIdeal
    argument: MonomialIdeal
    rows: tuple

    def entries(self):
        return {(i, r.j): t for r in self.rows for i, t in enumerate(r.tor)}

    def images(self):
        return {r.j: r.image for r in self.rows}


def _check_pair(a, j, J):
    if j < 1:
        raise PreconditionError("j must be a positive integer")
    if not is_m_primary(a) or a.is_unit:
        raise PreconditionError(f"({a}) is not a proper m-primary ideal")
    if not is_m_primary(J):
        raise PreconditionError(f"({J}) is not m-primary")
    if a.dim != J.dim:
        raise PreconditionError("ideals live in different rings")


@lru_cache(maxsize=2048)
def tor_lengths(a, j, J, i_max=None):
    """Row j of the Tor table of (A/a^j, A/J), resolving A/a^j."""
    _check_pair(a, j, J)
    i_max = a.dim if i_max is None else i_max
    aj = ideal_power(a, j)
    C = resolution(aj, max(i_max + 1, 3))
    data = tensor_homology(C, J, i_max)
    if data.tor[0] != colength(aj + J):
        raise InvariantViolation("Tor_0 disagrees with the colength of a^j + J")
    return TorRow(j, data.tor, data.image2, data.image3, aj.ngens)


@lru_cache(maxsize=2048)
def tor_lengths_swapped(a, j, J, i_max=None):
    """The same Tor lengths computed by resolving A/J and tensoring with A/a^j."""
    _check_pair(a, j, J)
    i_max = a.dim if i_max is None else i_max
    aj = ideal_power(a, j)
    if J.is_unit:
        return (0,) * (i_max + 1)
    C = resolution(J, max(i_max + 1, 3))
    return tensor_homology(C, aj, i_max).tor


def tor_table(a, J, js, i_max=None):
    return TorTable(a, J, tuple(tor_lengths(a, j, J, i_max) for j in js))


def image_length(a, j, J):
    """lambda(Im phi_j^J)."""
    if J.is_unit:
        return 0
    return tor_lengths(a, j, J, 1).image


# -- Lemma identities ---------------------------------------------------------

def is_parameter_ideal(a):
    """Generated by pure powers of all d variables."""
    pp = a.pure_power_exponents()
    return a.ngens == a.dim and all(x is not None and x > 0 for x in pp)


def _require_parameter(a):
    if not is_parameter_ideal(a):
        raise PreconditionError(f"({a}) is not a pure-power parameter ideal")


@dataclass(frozen=True)
class Lemma41Report:
    j: int
    lhs: int
    colength_aj: int
    image: int
    beta1: int
    colength_J: int

    @property
    def rhs(self):
        return self.colength_aj - self.image + (self.beta1 - 1) * self.colength_J

    @property
    def holds(self):
        return self.lhs == self.rhs


def verify_lemma_41(a, j, J):
    """lambda(J/a^j J) against lambda(A/a^j) - lambda(Im phi_j) + (beta_1 - 1) lambda(A/J)."""
    _require_parameter(a)
    _check_pair(a, j, J)
    d = a.dim
    beta1 = comb(j + d - 1, d - 1)
    aj = ideal_power(a, j)
    if aj.ngens != beta1:
        raise InvariantViolation(f"a^{j} has {aj.ngens} generators, expected {beta1}")
    lhs = colength(ideal_product(aj, J)) - colength(J)
    return Lemma41Report(j, lhs, colength(aj), image_length(a, j, J), beta1, colength(J))


@dataclass(frozen=True)
class Lemma42Report:
    lhs: tuple
    rhs: tuple

    @property
    def holds(self):
        return self.lhs == self.rhs


def verify_lemma_42(a, K, J, N):
    """Coefficients j = 0..N of sum lambda(a^j K / a^j J) T^j, computed two ways."""
    _require_parameter(a)
    if not ideal_leq(J, K):
        raise PreconditionError(f"({J}) is not contained in ({K})")
    for I in (K, J):
        if not is_m_primary(I):
            raise PreconditionError(f"({I}) is not m-primary")
    d = a.dim
    base = quotient_length(K, J)
    lhs, rhs = [], []
    for j in range(N + 1):
        aj = ideal_power(a, j)
        lhs.append(colength(ideal_product(aj, J)) - colength(ideal_product(aj, K)))
        if j == 0:
            rhs.append(base)
        else:
            rhs.append(comb(j + d - 1, d - 1) * base + image_length(a, j, K) - image_length(a, j, J))
    return Lemma42Report(tuple(lhs), tuple(rhs))


# -- closed form for parameter ideals ---------------------------------------

def parameter_reduction(a):
    """The pure-power ideal with the same integral closure as a, if there is one."""
    pp = a.pure_power_exponents()
    if any(x is None for x in pp):
        raise PreconditionError(f"({a}) is not m-primary")
    Q = MonomialIdeal.pure_powers(pp, a.char)
    if not is_reduction(Q, a):
        raise NoParameterReduction(f"({a}) has no pure-power parameter reduction: ({Q}) is not a reduction")
    return Q


@dataclass(frozen=True)
class CMClass:
    c: Fraction
    leading: tuple      # m(c), ..., m(c+d-1)
    alphas: tuple       # alpha_1, ..., alpha_d
    p: tuple            # correction polynomial coefficients
    differences: tuple  # lambda(Im phi_j^K) - lambda(Im phi_j^J), j = 1, 2, ...

    def series(self, d):
        r = UniRational.poly(self.leading[: d - 1])
        r = r + UniRational((self.leading[d - 1],), d).shift(d - 1)
        tail = UniRational.poly(self.p)
        for i, alpha in enumerate(self.alphas, start=1):
            tail = tail + UniRational((alpha,), i)
        return r + tail.shift(d)


@dataclass(frozen=True)
class CMForm:
    dim: int
    reduction: MonomialIdeal
    classes: tuple

    def reassemble(self):
        return PoincareForm.from_dict({k.c: k.series(self.dim) for k in self.classes})

    def by_class(self):
        return {k.c: k for k in self.classes}


def _binomial_basis(i, j):
    # C((j-1) + i-1, i-1): the coefficient of T^(j-1) in 1/(1-T)^i
    return comb(j - 1 + i - 1, i - 1)


def _solve(M, b):
    n = len(M)
    aug = [[Fraction(x) for x in row] + [Fraction(y)] for row, y in zip(M, b)]
    for col in range(n):
        piv = next(r for r in range(col, n) if aug[r][col])
        aug[col], aug[piv] = aug[piv], aug[col]
        for r in range(n):
            if r != col and aug[r][col]:
                f = aug[r][col] / aug[col][col]
                aug[r] = [x - f * y for x, y in zip(aug[r], aug[col])]
    return [aug[i][n] / aug[i][i] for i in range(n)]


def check_skoda_over(F, Q):
    """J_c = Q J_(c-1) at every candidate c in (d, d+2]."""
    d = F.dim
    for c in F.candidates(d + 2):
        if c > d and F.eval(c) != ideal_product(Q, F.eval(c - 1)):
            return False
    return True


def _fit_differences(diff_at, d, cap):
    """Find the polynomial tail of j -> D_j and return (alphas, p, values)."""
    values = []
    j = 0
    quiet = 0
    while j < cap:
        j += 1
        values.append(diff_at(j))
        if len(values) > d:
            k = len(values) - 1
            dd = sum((-1) ** t * comb(d, t) * values[k - t] for t in range(d + 1))
            quiet = quiet + 1 if dd == 0 else 0
        if quiet >= d:
            start = len(values) - d  # 0-based index of the first point used for the fit
            M = [[_binomial_basis(i, jj + 1) for i in range(1, d + 1)] for jj in range(start, len(values))]
            sol = _solve(M, values[start:])
            if any(x.denominator != 1 for x in sol):
                raise InvariantViolation(f"non-integral tail constants {sol}")
            alphas = tuple(int(x) for x in sol)

            def fit(jj):
                return sum(a * _binomial_basis(i, jj) for i, a in enumerate(alphas, start=1))

            extra = [diff_at(j + t) for t in (1, 2, 3)]
            if all(fit(j + t) == extra[t - 1] for t in (1, 2, 3)):
                p = ptrim(tuple(values[jj - 1] - fit(jj) for jj in range(1, len(values) + 1)))
                return alphas, p, tuple(values)
            values.extend(extra)
            j += 3
            quiet = 0
    raise InvariantViolation(f"image-length differences did not become polynomial within {cap} steps")


def cm_poincare_form(F, Q=None, cap=30):
    """Tail constants alpha_i and correction p(T) per class, over a parameter reduction Q."""
    d = F.dim
    if Q is None:
        Q = parameter_reduction(F.base)
    _require_parameter(Q)
    if not is_reduction(Q, F.base):
        raise NoParameterReduction(f"({Q}) is not a reduction of ({F.base})")
    if not check_skoda_over(F, Q):
        raise PreconditionError(f"the filtration does not satisfy the tail condition over ({Q})")
    classes = []
    for c in contributing_classes(F):
        leading = tuple(multiplicity(F, c + i) for i in range(d))
        K = F.eval_left(c + d - 1)
        J = F.eval(c + d - 1)

        def diff_at(j, K=K, J=J):
            return image_length(Q, j, K) - image_length(Q, j, J)

        alphas, p, values = _fit_differences(diff_at, d, cap)
        classes.append(CMClass(c, leading, alphas, p, values))
    form = CMForm(d, Q, tuple(classes))
    closed = poincare_closed_form(F)
    if form.reassemble() != closed:
        raise InvariantViolation("CM reassembly differs from the closed form of the Poincare series")
    return form


# -- excess in dimension two --------------------------------------------------

@dataclass(frozen=True)
class ExcessReport:
    c: Fraction
    rho: Fraction
    tor_right: tuple   # lambda Tor_2(A/Q^j, A/J_(c+1)) for j = 1..js
    tor_left: tuple    # lambda Tor_2(A/Q^j, A/J_(c+1-eps))
    mult_gaps: tuple   # m(c+j) - m(c)


def excess(F, c, j=1, js=4, Q=None):
    """rho_c = (Tor_2 difference at j)/j, with j-independence checked for j = 1..js."""
    if F.dim != 2:
        raise PreconditionError("the excess formula is only available in dimension 2")
    c = Fraction(c)
    if multiplicity(F, c) == 0:
        raise PreconditionError(f"{c} is not a jumping number")
    if Q is None:
        Q = parameter_reduction(F.base)
    _require_parameter(Q)
    right, left, gaps = [], [], []
    for jj in range(1, max(js, j) + 1):
        right.append(tor_lengths(Q, jj, F.eval(c + 1), 2).tor[2])
        left.append(tor_lengths(Q, jj, F.eval_left(c + 1), 2).tor[2])
        gaps.append(multiplicity(F, c + jj) - multiplicity(F, c))
    rhos = {Fraction(r - l, jj) for jj, (r, l) in enumerate(zip(right, left), start=1)}
    if len(rhos) != 1:
        raise InvariantViolation(f"excess at {c} depends on j: {sorted(rhos)}")
    for jj, (r, l, g) in enumerate(zip(right, left, gaps), start=1):
        if r - l != g:
            raise InvariantViolation(f"m(c+{jj}) - m(c) = {g} but the Tor_2 difference is {r - l}")
    rho = Fraction(right[j - 1] - left[j - 1], j)
    return ExcessReport(c, rho, tuple(right), tuple(left), tuple(gaps))
