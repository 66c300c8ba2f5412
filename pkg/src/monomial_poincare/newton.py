"""Newton polyhedra of monomial ideals with exact integer facet data.

P(I) = conv(exponents of I) + R^d_{>=0}.  Facets are computed by the double
description method on the cone of valid inequalities; the coordinate facets
x_i >= 0 are kept implicit.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from math import ceil, gcd, floor

import numpy as np

from .errors import PreconditionError, UndefinedPolyhedronError
from .monomial import ideal_from_mask, ideal_leq, _same_dim


@dataclass(frozen=True)
class Facet:
    normal: tuple
    offset: int
    bounded: bool

    def value(self, u):
        return sum(a * x for a, x in zip(self.normal, u))


@dataclass(frozen=True)
class NewtonPolyhedron:
    dim: int
    vertices: tuple
    facets: tuple
    intercepts: tuple  # least a_i with x_i^a_i in the source ideal (None if absent)

    @property
    def normals(self):
        return np.array([f.normal for f in self.facets], dtype=np.int64).reshape(len(self.facets), self.dim)

    @property
    def offsets(self):
        return np.array([f.offset for f in self.facets], dtype=np.int64)

    def phi(self, u):
        """min over facets of <a,u>/b: the largest c with u in c*P."""
        return min(Fraction(f.value(u), f.offset) for f in self.facets)


# -- double description ---------------------------------------------------

def _normalize(v):
    g = 0
    for x in v:
        g = gcd(g, x)
    return tuple(x // g for x in v) if g > 1 else tuple(v)


def _independent_rows(rows, n):
    chosen = []
    basis = []  # reduced rows as Fractions
    for idx, r in enumerate(rows):
        vec = [Fraction(x) for x in r]
        for piv, b in basis:
            if vec[piv]:
                f = vec[piv] / b[piv]
                vec = [x - f * y for x, y in zip(vec, b)]
        piv = next((i for i, x in enumerate(vec) if x), None)
        if piv is not None:
            basis.append((piv, vec))
            chosen.append(idx)
            if len(chosen) == n:
                break
    return chosen


def _inverse_columns(M):
    n = len(M)
    aug = [[Fraction(x) for x in row] + [Fraction(int(i == j)) for j in range(n)] for i, row in enumerate(M)]
    for col in range(n):
        piv = next(r for r in range(col, n) if aug[r][col])
        aug[col], aug[piv] = aug[piv], aug[col]
        p = aug[col][col]
        aug[col] = [x / p for x in aug[col]]
        for r in range(n):
            if r != col and aug[r][col]:
                f = aug[r][col]
                aug[r] = [x - f * y for x, y in zip(aug[r], aug[col])]
    cols = []
    for j in range(n):
        col = [aug[i][n + j] for i in range(n)]
        den = 1
        for x in col:
            den = den * x.denominator // gcd(den, x.denominator)
        cols.append(_normalize([int(x * den) for x in col]))
    return cols


def extreme_rays(rows, n):
    """Extreme rays of the pointed cone {y in R^n : <r, y> >= 0 for all rows}."""
    rows = [tuple(r) for r in rows]
    init = _independent_rows(rows, n)
    if len(init) < n:
        raise PreconditionError("cone is not pointed")
    rays = _inverse_columns([rows[i] for i in init])
    processed = list(init)

    def zero_set(ray):
        mask = 0
        for i in processed:
            if sum(a * b for a, b in zip(rows[i], ray)) == 0:
                mask |= 1 << i
        return mask

    zsets = [zero_set(r) for r in rays]
    for idx in range(len(rows)):
        if idx in init:
            continue
        h = rows[idx]
        vals = [sum(a * b for a, b in zip(h, r)) for r in rays]
        pos = [i for i, v in enumerate(vals) if v > 0]
        neg = [i for i, v in enumerate(vals) if v < 0]
        new_rays = [rays[i] for i, v in enumerate(vals) if v >= 0]
        new_z = [zsets[i] | ((1 << idx) if vals[i] == 0 else 0) for i, v in enumerate(vals) if v >= 0]
        for i in pos:
            for j in neg:
                common = zsets[i] & zsets[j]
                if bin(common).count("1") < n - 2:
                    continue
                if any(k != i and k != j and (zsets[k] & common) == common for k in range(len(rays))):
                    continue
                r = _normalize([vals[i] * b - vals[j] * a for a, b in zip(rays[i], rays[j])])
                new_rays.append(r)
                new_z.append(common | (1 << idx))
        rays, zsets = new_rays, new_z
        processed.append(idx)
    return sorted(set(rays))


@lru_cache(maxsize=512)
def newton_polyhedron(I):
    if I.is_zero:
        raise UndefinedPolyhedronError("the zero ideal has no Newton polyhedron")
    d = I.dim
    rows = [tuple(g) + (1,) for g in I.gens] + [tuple(int(i == k) for i in range(d)) + (0,) for k in range(d)]
    facets = []
    for ray in extreme_rays(rows, d + 1):
        a, beta = ray[:d], ray[d]
        if beta >= 0:
            continue  # coordinate facets and the face at infinity
        g = 0
        for x in a:
            g = gcd(g, x)
        a = tuple(x // g for x in a)
        b = -beta // g
        facets.append(Facet(a, b, all(x > 0 for x in a)))
    facets.sort(key=lambda f: (f.normal, f.offset))
    vertices = []
    for u in I.gens:
        tight = [f.normal for f in facets if f.value(u) == f.offset]
        tight += [tuple(int(i == k) for i in range(d)) for k in range(d) if u[k] == 0]
        if _rank(tight) == d:
            vertices.append(tuple(u))
    return NewtonPolyhedron(d, tuple(sorted(vertices)), tuple(facets), I.pure_power_exponents())


def _rank(vectors):
    if not vectors:
        return 0
    return int(np.linalg.matrix_rank(np.array(vectors, dtype=float)))


# -- membership -----------------------------------------------------------

def in_scaled_polyhedron(P, u, c, strict=False):
    """Is u in c*P (or in its interior when ``strict``)?"""
    c = Fraction(c)
    if c <= 0:
        raise PreconditionError("scaling factor must be positive")
    u = [Fraction(x) for x in u]
    if any(x < 0 for x in u):
        raise PreconditionError("query point must be nonnegative")
    if strict:
        if any(x <= 0 for x in u):
            return False
        return all(f.value(u) > c * f.offset for f in P.facets)
    return all(f.value(u) >= c * f.offset for f in P.facets)


def scaled_membership_mask(P, shape, c, shift=0, strict=False):
    """Boolean box: entry v is True iff v + shift lies in c*P (interior if strict).

    Only the facets with positive offset are consulted; callers guarantee that
    coordinate facets are never tight (shift >= 1 for strict queries).
    """
    c = Fraction(c)
    grids = np.indices(shape, dtype=np.int64) + shift
    mask = np.ones(shape, dtype=bool)
    for f in P.facets:
        val = sum(a * grids[i] for i, a in enumerate(f.normal))
        lhs = val * c.denominator
        rhs = c.numerator * f.offset
        mask &= (lhs > rhs) if strict else (lhs >= rhs)
    if strict and shift < 1:
        mask &= np.all(grids > 0, axis=0)
    return mask


def integral_closure(I):
    P = newton_polyhedron(I)
    d = I.dim
    shape = tuple(max(v[i] for v in P.vertices) + 1 for i in range(d))
    mask = scaled_membership_mask(P, shape, 1)
    return ideal_from_mask(mask, I.char)


def is_reduction(Q, I):
    """Q is contained in I and I lies in the integral closure of Q."""
    _same_dim(Q, I)
    if Q.is_zero or I.is_zero:
        raise PreconditionError("reductions are only defined for nonzero ideals")
    if not ideal_leq(Q, I):
        return False
    P = newton_polyhedron(Q)
    return all(in_scaled_polyhedron(P, g, 1) for g in I.gens)


def candidate_jumps(P, c_max):
    """Sorted rationals <a, v+1>/b <= c_max over facets and lattice points v.

    Contains every jumping number in (0, c_max] of the multiplier filtration
    of the source ideal.
    """
    c_max = Fraction(c_max)
    if c_max <= 0:
        raise PreconditionError("c_max must be positive")
    if any(a is None for a in P.intercepts):
        raise PreconditionError("candidate box is unbounded: source ideal is not m-primary")
    out = set()
    for f in P.facets:
        top = floor(c_max * f.offset)
        reach = np.zeros(top + 1, dtype=bool)
        reach[0] = True
        for i, a in enumerate(f.normal):
            # v_i ranges over 0 <= v_i < c_max * intercept_i
            kmax = ceil(c_max * P.intercepts[i])
            nxt = np.zeros_like(reach)
            for k in range(1, kmax + 1):
                step = a * k
                if step > top:
                    break
                nxt[step:] |= reach[: top + 1 - step]
            reach = nxt
        for t in np.flatnonzero(reach):
            out.add(Fraction(int(t), f.offset))
    return sorted(out)


# -- independent membership oracle ----------------------------------------

def hull_contains(points, u, c=1):
    """Decide u in c*(conv(points) + R^d_{>=0}) by Fourier-Motzkin elimination.

    Shares no code with the facet computation above.
    """
    c = Fraction(c)
    pts = [[Fraction(x) * c for x in p] for p in points]
    u = [Fraction(x) for x in u]
    g = len(pts)
    d = len(u)
    if g == 1:
        return all(pts[0][i] <= u[i] for i in range(d))
    last = pts[-1]
    nv = g - 1
    # rows (coeffs, rhs) meaning coeffs . lam <= rhs, lam_g = 1 - sum(lam)
    cons = []
    for k in range(nv):
        cons.append(([Fraction(-1 if j == k else 0) for j in range(nv)], Fraction(0)))
    cons.append(([Fraction(1)] * nv, Fraction(1)))
    for i in range(d):
        cons.append(([pts[k][i] - last[i] for k in range(nv)], u[i] - last[i]))
    for var in range(nv):
        pos = [r for r in cons if r[0][var] > 0]
        neg = [r for r in cons if r[0][var] < 0]
        rest = [r for r in cons if r[0][var] == 0]
        for pc, pr in pos:
            for nc, nr in neg:
                sp, sn = pc[var], -nc[var]
                coeffs = [sn * a + sp * b for a, b in zip(pc, nc)]
                coeffs[var] = Fraction(0)
                rest.append((coeffs, sn * pr + sp * nr))
        cons = _dedupe(rest)
    return all(rhs >= 0 for coeffs, rhs in cons if not any(coeffs))


def _dedupe(cons):
    seen = {}
    for coeffs, rhs in cons:
        scale = next((abs(x) for x in coeffs if x), None)
        if scale is None:
            if rhs < 0:
                return [(coeffs, rhs)]
            continue
        key = tuple(x / scale for x in coeffs)
        r = rhs / scale
        if key not in seen or r < seen[key]:
            seen[key] = r
    return [(list(k), r) for k, r in seen.items()]
