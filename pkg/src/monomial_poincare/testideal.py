"""Test ideals of m-primary monomial ideals over a field of characteristic p.

tau(a^c) is the stable member of the ascending chain

    tau_e = (a^N)^[1/q],   q = p^e,  N = ceil(c q).

Expanding a^N is hopeless once q grows, so membership is decided per
monomial: x^w lies in (a^N)^[1/q] iff x^(q(w+1)-1) lies in a^N, iff

    ord(u) = max{ |n| : sum_k n_k g_k <= u }  >=  N   at u = q(w+1) - 1,

where g_1..g_G are the generators of a.  ord is an integer program; it is
bracketed on the whole box at once by certified bounds (dual feasible
weights from above, rounded basic solutions from below) and the few points
left undecided are settled by an exact depth-first search.  None of this
uses the Newton polyhedron code.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from itertools import combinations
from math import ceil

import numpy as np

from .errors import InvariantViolation, PreconditionError, StabilizationError
from .filtration import Filtration
from .monomial import MonomialIdeal, ideal_from_mask, ideal_leq, is_m_primary
from .newton import candidate_jumps, newton_polyhedron

E_MAX = 12


def _is_prime(n):
    if n < 2:
        return False
    k = 2
    while k * k <= n:
        if n % k == 0:
            return False
        k += 1
    return True


@dataclass(frozen=True)
class CharP:
    p: int

    def __post_init__(self):
        if not isinstance(self.p, int) or not _is_prime(self.p):
            raise PreconditionError(f"characteristic {self.p!r} is not a prime")


def _char(p):
    return p if isinstance(p, CharP) else CharP(int(p))


# -- exact linear algebra on tiny integer matrices ---------------------------

def _det(M):
    n = len(M)
    if n == 1:
        return M[0][0]
    if n == 2:
        return M[0][0] * M[1][1] - M[0][1] * M[1][0]
    return sum((-1) ** j * M[0][j] * _det([row[:j] + row[j + 1:] for row in M[1:]]) for j in range(n))


def _adjugate(M):
    n = len(M)
    if n == 1:
        return [[1]]
    adj = [[0] * n for _ in range(n)]
    for i in range(n):
        for j in range(n):
            minor = [row[:j] + row[j + 1:] for k, row in enumerate(M) if k != i]
            adj[j][i] = (-1) ** (i + j) * _det(minor)
    return adj


class _OrderOracle:
    """Bounds and exact values of ord(u) for a fixed generator set."""

    def __init__(self, gens, dim):
        self.gens = [tuple(g) for g in gens]
        self.dim = dim
        units = [tuple(int(i == k) for i in range(dim)) for k in range(dim)]
        self.weights = self._dual_weights(self.gens, units)
        self.bases = self._primal_bases(units)
        # generators that are cheapest under some optimal weight go first
        self.order = sorted(range(len(self.gens)),
                            key=lambda k: min(Fraction(sum(a * x for a, x in zip(w, self.gens[k])), b)
                                              for w, b in self.weights))
        # weights bounding the search once the first `level` generators are fixed
        self.level_weights = [self._dual_weights([self.gens[k] for k in self.order[level:]], units)
                              for level in range(len(self.gens))]

    def _dual_weights(self, gens, units):
        # vertices of {y >= 0 : <y, g> >= 1 for all g}, as (integer vector, denominator)
        rows = [(g, 1) for g in gens] + [(e, 0) for e in units]
        out = set()
        for sub in combinations(rows, self.dim):
            M = [list(r) for r, _ in sub]
            det = _det(M)
            if det == 0:
                continue
            adj = _adjugate(M)
            rhs = [b for _, b in sub]
            num = [sum(adj[i][k] * rhs[k] for k in range(self.dim)) for i in range(self.dim)]
            if det < 0:
                num, det = [-x for x in num], -det
            if any(x < 0 for x in num):
                continue
            if all(sum(a * x for a, x in zip(num, g)) >= det for g in gens):
                out.add((tuple(num), det))
        if not out:
            raise PreconditionError("generators do not bound the order function")
        return sorted(out)

    def _primal_bases(self, units):
        cols = [(g, True) for g in self.gens] + [(e, False) for e in units]
        out = []
        for sub in combinations(range(len(cols)), self.dim):
            if not any(cols[i][1] for i in sub):
                continue
            M = [[cols[i][0][r] for i in sub] for r in range(self.dim)]
            det = _det(M)
            if det == 0:
                continue
            adj = _adjugate(M)
            if det < 0:
                adj = [[-x for x in row] for row in adj]
                det = -det
            gen_rows = [k for k, i in enumerate(sub) if cols[i][1]]
            out.append((adj, det, gen_rows))
        return out

    # vectorised bounds over an array of points (shape (d, ...))
    def upper(self, U):
        best = None
        for w, b in self.weights:
            val = sum(a * U[i] for i, a in enumerate(w)) // b
            best = val if best is None else np.minimum(best, val)
        return best

    def lower(self, U):
        best = np.zeros(U.shape[1:], dtype=U.dtype)
        for adj, det, gen_rows in self.bases:
            lam = [sum(adj[r][i] * U[i] for i in range(self.dim)) for r in range(self.dim)]
            ok = np.ones(U.shape[1:], dtype=bool)
            for x in lam:
                ok &= x >= 0
            total = sum(lam[r] // det for r in gen_rows)
            best = np.where(ok, np.maximum(best, total), best)
        return best

    # scalar versions for the search
    def upper_scalar(self, u, level=0):
        return min(sum(a * x for a, x in zip(w, u)) // b for w, b in self.level_weights[level])

    def greedy_lower(self, u):
        u = list(u)
        count = 0
        for k in self.order:
            g = self.gens[k]
            n = min(u[i] // g[i] for i in range(self.dim) if g[i] > 0)
            if n > 0:
                count += n
                u = [x - n * y for x, y in zip(u, g)]
        return count

    def reaches(self, u, need):
        """Is there n with sum n_k g_k <= u and |n| >= need?"""
        memo = {}
        order = self.order
        gens = self.gens
        d = self.dim

        def search(level, u, need):
            if need <= 0:
                return True
            key = (level, u, need)
            if key in memo:
                return memo[key]
            if self.upper_scalar(u, level) < need:
                memo[key] = False
                return False
            if self.greedy_lower(u) >= need:
                memo[key] = True
                return True
            g = gens[order[level]]
            top = min(u[i] // g[i] for i in range(d) if g[i] > 0)
            if level == len(order) - 1:
                result = top >= need
            else:
                result = False
                for n in range(min(top, need), -1, -1):
                    rest = tuple(x - n * y for x, y in zip(u, g))
                    if search(level + 1, rest, need - n):
                        result = True
                        break
            memo[key] = result
            return result

        return search(0, tuple(int(x) for x in u), need)


@lru_cache(maxsize=256)
def _oracle(a):
    return _OrderOracle(a.gens, a.dim)


def root_of_power(a, N, q):
    """(a^N)^[1/q] without expanding a^N."""
    if N <= 0:
        return MonomialIdeal.unit(a.dim, a.char)
    oracle = _oracle(a)
    tops = [N * e // q for e in a.pure_power_exponents()]
    shape = tuple(t + 1 for t in tops)
    grids = np.indices(shape, dtype=np.int64)
    big = q * (max(shape) + 1) * max(max(g) for g in a.gens) * a.dim
    dtype = object if big > 2**40 else np.int64
    U = (grids.astype(dtype) + 1) * q - 1
    upper = oracle.upper(U)
    lower = oracle.lower(U)
    inside = lower >= N
    open_ = (upper >= N) & ~inside
    for idx in zip(*np.nonzero(open_)):
        u = tuple(int(U[(i,) + tuple(idx)]) for i in range(a.dim))
        if oracle.reaches(u, N):
            inside[idx] = True
    return ideal_from_mask(np.asarray(inside, dtype=bool), a.char)


# -- the test ideal ---------------------------------------------------------

def _require(a):
    if not is_m_primary(a) or a.is_zero:
        raise PreconditionError(f"({a}) is not m-primary")


def chain_ceiling(a, c):
    """The largest ideal any member of the chain can reach.

    ord(q(w+1)-1) < q * min_y <y, w+1> for every dual feasible weight y, so
    x^w can only enter the chain when min_y <y, w+1> > c.  Conversely such
    a w enters once q is large, because the rounded basic solutions lose at
    most a bounded amount.  The chain is therefore stable as soon as it
    meets this ideal.
    """
    c = Fraction(c)
    oracle = _oracle(a)
    shape = tuple(ceil(c * e) + 1 for e in a.pure_power_exponents())
    U = np.indices(shape, dtype=np.int64) + 1
    mask = np.ones(shape, dtype=bool)
    for w, b in oracle.weights:
        val = sum(x * U[i] for i, x in enumerate(w))
        mask &= val * c.denominator > c.numerator * b
    return ideal_from_mask(mask, a.char)


def test_ideal_chain(a, c, p, e_max=E_MAX):
    """Members tau_0, tau_1, ... of the Frobenius-root chain, up to stabilization.

    The chain stops at the first member equal to :func:`chain_ceiling`; a
    run of equal members is not enough (the chain can pause and then grow).
    """
    _require(a)
    p = _char(p).p
    c = Fraction(c)
    ceiling = chain_ceiling(a, c)
    chain = []
    for e in range(e_max + 1):
        q = p**e
        tau = root_of_power(a, ceil(c * q), q)
        if chain and not ideal_leq(chain[-1], tau):
            raise InvariantViolation(f"Frobenius-root chain descends at e = {e} for c = {c}, p = {p}")
        if not ideal_leq(tau, ceiling):
            raise InvariantViolation(f"Frobenius-root chain exceeds its ceiling at e = {e} for c = {c}")
        chain.append(tau)
        if tau == ceiling:
            return chain
    raise StabilizationError(f"test ideal chain for c = {c}, p = {p} did not stabilize by e = {e_max}",
                             partial=chain)


@lru_cache(maxsize=4096)
def _test_ideal(a, c, p):
    if c <= 0:
        return MonomialIdeal.unit(a.dim, a.char)
    return test_ideal_chain(a, c, p)[-1]


def test_ideal(a, c, p):
    """tau(a^c) in characteristic p."""
    _require(a)
    return _test_ideal(a, Fraction(c), _char(p).p)


def test_left_limit(a, c, p):
    """tau(a^(c - eps)): the value at the midpoint of c and the previous candidate."""
    _require(a)
    c = Fraction(c)
    p = _char(p).p
    if c <= 0:
        return MonomialIdeal.unit(a.dim, a.char)
    below = [t for t in candidate_jumps(newton_polyhedron(a), c) if t < c]
    if not below:
        return MonomialIdeal.unit(a.dim, a.char)
    return _test_ideal(a, (below[-1] + c) / 2, p)


def test_filtration(a, p):
    _require(a)
    p = _char(p).p
    P = newton_polyhedron(a)
    return Filtration(
        base=a,
        eval=lambda c: test_ideal(a, c, p),
        eval_left=lambda c: test_left_limit(a, c, p),
        skoda_bound=Fraction(a.dim),
        candidate_source=lambda c_max: candidate_jumps(P, c_max),
        name=f"test ideal (p = {p})",
    )


# pytest would otherwise try to collect these as tests when imported into test modules
test_ideal.__test__ = False
test_left_limit.__test__ = False
test_filtration.__test__ = False
test_ideal_chain.__test__ = False
chain_ceiling.__test__ = False
