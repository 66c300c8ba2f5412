"""Monomial ideals in K[x_1, ..., x_d] and the exact operations on them.

Ideals are stored by their minimal generators, sorted lexicographically, so
that equality of ideals is equality of the stored tuples.  All generator
arithmetic is characteristic free; the characteristic is carried along only
as a tag.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from itertools import product as _cartesian
from math import prod

import numpy as np

from .errors import DimensionMismatch, InfiniteLengthError, PreconditionError

# Largest box (number of lattice points) we are willing to materialize.
GRID_LIMIT = 8_000_000

_LETTERS = "xyzw"


def _check_dims(vectors, dim=None):
    for v in vectors:
        if dim is None:
            dim = len(v)
        elif len(v) != dim:
            raise DimensionMismatch(f"expected exponent vectors of length {dim}, got {tuple(v)}")
    return dim


@dataclass(frozen=True)
class MonomialIdeal:
    dim: int
    gens: tuple
    char: int = field(default=0, compare=False)

    def __post_init__(self):
        if self.dim < 1:
            raise PreconditionError("ambient dimension must be at least 1")

    # -- constructors -------------------------------------------------
    @classmethod
    def unit(cls, dim, char=0):
        return cls(dim, ((0,) * dim,), char)

    @classmethod
    def zero(cls, dim, char=0):
        return cls(dim, (), char)

    @classmethod
    def maximal(cls, dim, char=0):
        return minimalize([tuple(int(i == k) for i in range(dim)) for k in range(dim)], dim, char)

    @classmethod
    def pure_powers(cls, exponents, char=0):
        d = len(exponents)
        return minimalize([tuple(a if i == k else 0 for i in range(d)) for k, a in enumerate(exponents)], d, char)

    # -- basic predicates ---------------------------------------------
    @property
    def is_zero(self):
        return not self.gens

    @property
    def is_unit(self):
        return self.gens == ((0,) * self.dim,)

    @property
    def ngens(self):
        return len(self.gens)

    def pure_power_exponents(self):
        """Smallest a_i with x_i^a_i in the ideal, or None where there is none."""
        out = []
        for i in range(self.dim):
            best = None
            for g in self.gens:
                if all(g[k] == 0 for k in range(self.dim) if k != i):
                    best = g[i] if best is None else min(best, g[i])
            out.append(best)
        return tuple(out)

    def array(self):
        return np.array(self.gens, dtype=np.int64).reshape(len(self.gens), self.dim)

    def __contains__(self, v):
        return contains_monomial(self, v)

    def __mul__(self, other):
        return ideal_product(self, other)

    def __add__(self, other):
        return ideal_sum(self, other)

    def __and__(self, other):
        return ideal_intersection(self, other)

    def __le__(self, other):
        return ideal_leq(self, other)

    def __str__(self):
        return format_ideal(self)


def format_monomial(v):
    if not any(v):
        return "1"
    names = _LETTERS if len(v) <= len(_LETTERS) else None
    parts = []
    for i, e in enumerate(v):
        if e == 0:
            continue
        name = names[i] if names else f"x{i + 1}"
        parts.append(name if e == 1 else f"{name}^{e}")
    return "*".join(parts)


def format_ideal(ideal):
    if ideal.is_zero:
        return "(0)"
    if ideal.is_unit:
        return "(1)"
    return ", ".join(format_monomial(g) for g in reversed(ideal.gens))


# -- canonical form -----------------------------------------------------

def _minimal_d2(vecs):
    # Staircase sweep: sort by x, keep strictly decreasing y.
    vecs = sorted(set(vecs))
    out = []
    best_y = None
    for v in vecs:
        if best_y is None or v[1] < best_y:
            out.append(v)
            best_y = v[1]
    return out


def _minimal_pairwise(vecs):
    vecs = sorted(set(vecs), key=lambda v: (sum(v), v))
    kept = []
    arr = None
    for v in vecs:
        if kept:
            if np.any(np.all(arr <= np.asarray(v, dtype=object if _huge(v) else np.int64), axis=1)):
                continue
        kept.append(v)
        arr = np.array(kept, dtype=object if any(_huge(k) for k in kept) else np.int64)
    return sorted(kept)


def _huge(v):
    return any(abs(x) > 2**62 for x in v)


def _minimal_grid(vecs, dim):
    arr = np.array(vecs, dtype=np.int64)
    shape = tuple(int(m) + 1 for m in arr.max(axis=0))
    mask = np.zeros(shape, dtype=bool)
    mask[tuple(arr.T)] = True
    return minimal_points(upward_closure(mask))


def upward_closure(mask):
    """Close a boolean box under adding exponent vectors (within the box)."""
    out = mask.copy()
    for axis in range(out.ndim):
        np.logical_or.accumulate(out, axis=axis, out=out)
    return out


def minimal_points(mask):
    """Minimal elements of an upward-closed boolean box, lexicographically sorted."""
    keep = mask.copy()
    for axis in range(mask.ndim):
        shifted = np.zeros_like(mask)
        src = [slice(None)] * mask.ndim
        dst = [slice(None)] * mask.ndim
        src[axis] = slice(0, -1)
        dst[axis] = slice(1, None)
        shifted[tuple(dst)] = mask[tuple(src)]
        keep &= ~shifted
    return [tuple(int(x) for x in p) for p in np.argwhere(keep)]


def minimalize(gens, dim=None, char=0):
    """Canonical form of the ideal generated by ``gens``."""
    vecs = [tuple(int(x) for x in v) for v in gens]
    dim = _check_dims(vecs, dim)
    if dim is None:
        raise PreconditionError("cannot infer the dimension of an empty generator set")
    if any(x < 0 for v in vecs for x in v):
        raise PreconditionError("exponents must be natural numbers")
    if not vecs:
        return MonomialIdeal(dim, (), char)
    if dim == 1:
        return MonomialIdeal(1, (min(vecs),), char)
    if dim == 2:
        return MonomialIdeal(2, tuple(_minimal_d2(vecs)), char)
    if not any(_huge(v) for v in vecs):
        box = prod(max(v[i] for v in vecs) + 1 for i in range(dim))
        if box <= GRID_LIMIT and len(vecs) > 8:
            return MonomialIdeal(dim, tuple(_minimal_grid(vecs, dim)), char)
    return MonomialIdeal(dim, tuple(_minimal_pairwise(vecs)), char)


def ideal_from_mask(mask, char=0):
    """Ideal generated by the True points of a boolean box."""
    if not mask.any():
        return MonomialIdeal.zero(mask.ndim, char)
    return MonomialIdeal(mask.ndim, tuple(minimal_points(upward_closure(mask))), char)


# -- ideal operations ---------------------------------------------------

def _same_dim(I, J):
    if I.dim != J.dim:
        raise DimensionMismatch(f"ideals live in different rings (d={I.dim} vs d={J.dim})")


def ideal_sum(I, J):
    _same_dim(I, J)
    return minimalize(I.gens + J.gens, I.dim, I.char)


def ideal_product(I, J):
    _same_dim(I, J)
    if I.is_zero or J.is_zero:
        return MonomialIdeal.zero(I.dim, I.char)
    if I.is_unit:
        return J
    if J.is_unit:
        return I
    a, b = I.array(), J.array()
    if I.ngens * J.ngens <= 4_000_000 and not (_huge(a.max(axis=0)) or _huge(b.max(axis=0))):
        sums = (a[:, None, :] + b[None, :, :]).reshape(-1, I.dim)
        return minimalize(map(tuple, sums.tolist()), I.dim, I.char)
    return minimalize([tuple(x + y for x, y in zip(u, v)) for u in I.gens for v in J.gens], I.dim, I.char)


def ideal_intersection(I, J):
    _same_dim(I, J)
    return minimalize([tuple(max(x, y) for x, y in zip(u, v)) for u in I.gens for v in J.gens],
                      I.dim, I.char)


def ideal_ops(I, J, kind):
    ops = {"sum": ideal_sum, "product": ideal_product, "intersection": ideal_intersection}
    try:
        return ops[kind](I, J)
    except KeyError:
        raise PreconditionError(f"unknown ideal operation {kind!r}") from None


def ideal_power(I, n):
    if n < 0:
        raise PreconditionError("ideal powers need a natural exponent")
    result = MonomialIdeal.unit(I.dim, I.char)
    base = I
    while n:
        if n & 1:
            result = ideal_product(result, base)
        n >>= 1
        if n:
            base = ideal_product(base, base)
    return result


def contains_monomial(I, v):
    v = tuple(v)
    if len(v) != I.dim:
        raise DimensionMismatch(f"monomial {v} does not live in dimension {I.dim}")
    return any(all(g[i] <= v[i] for i in range(I.dim)) for g in I.gens)


def ideal_leq(J, I):
    """True iff J is contained in I."""
    _same_dim(I, J)
    return all(contains_monomial(I, g) for g in J.gens)


def is_m_primary(I):
    return all(a is not None for a in I.pure_power_exponents())


# -- lengths ------------------------------------------------------------

def _last_coordinate_heights(I):
    """For each point p of the box over the first d-1 coordinates, the least
    t with x^(p, t) in I.  Requires I to be m-primary."""
    b = I.pure_power_exponents()
    if any(a is None for a in b):
        raise InfiniteLengthError(f"{format_ideal(I)} is not m-primary; its colength is infinite")
    shape = tuple(b[:-1])
    if prod(shape) > GRID_LIMIT:
        raise PreconditionError(f"box {shape} is too large to enumerate")
    big = b[-1]
    heights = np.full(shape, big, dtype=np.int64)
    for g in I.gens:
        idx = g[:-1]
        if all(idx[i] < shape[i] for i in range(len(shape))):
            if g[-1] < heights[idx]:
                heights[idx] = g[-1]
    for axis in range(heights.ndim):
        np.minimum.accumulate(heights, axis=axis, out=heights)
    return heights


def colength(I):
    """Number of standard monomials of I, i.e. the length of A/I."""
    if I.is_unit:
        return 0
    if I.dim == 1:
        b = I.pure_power_exponents()[0]
        if b is None:
            raise InfiniteLengthError("zero ideal has infinite colength")
        return b
    return int(_last_coordinate_heights(I).sum())


def standard_monomials(I):
    """All exponent vectors outside I, as an (n, d) integer array in lex order."""
    if I.is_unit:
        return np.zeros((0, I.dim), dtype=np.int64)
    if I.dim == 1:
        b = I.pure_power_exponents()[0]
        if b is None:
            raise InfiniteLengthError("zero ideal has infinite colength")
        return np.arange(b, dtype=np.int64).reshape(-1, 1)
    heights = _last_coordinate_heights(I)
    rows = []
    for p in np.ndindex(heights.shape):
        for t in range(int(heights[p])):
            rows.append(p + (t,))
    return np.array(rows, dtype=np.int64).reshape(len(rows), I.dim)


def quotient_length(I, J):
    """Length of I/J for J contained in I."""
    _same_dim(I, J)
    if not ideal_leq(J, I):
        raise PreconditionError(f"({format_ideal(J)}) is not contained in ({format_ideal(I)})")
    return colength(J) - colength(I)


def membership_grid(I, shape):
    """Boolean box of the given shape marking the monomials that lie in I."""
    mask = np.zeros(shape, dtype=bool)
    for g in I.gens:
        if all(g[i] < shape[i] for i in range(I.dim)):
            mask[tuple(g)] = True
    return upward_closure(mask)


# -- Frobenius ----------------------------------------------------------

def frobenius_power(I, q):
    if q < 1:
        raise PreconditionError("Frobenius exponent q must be positive")
    return MonomialIdeal(I.dim, tuple(sorted(tuple(q * x for x in g) for g in I.gens)), I.char)


def frobenius_root(I, q):
    """Smallest monomial ideal J with I contained in J^[q]."""
    if q < 1:
        raise PreconditionError("Frobenius exponent q must be positive")
    if I.is_zero:
        return I
    return minimalize([tuple(x // q for x in g) for g in I.gens], I.dim, I.char)


def box_points(shape):
    return _cartesian(*(range(s) for s in shape))
