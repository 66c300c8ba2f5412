"""Built-in example ideals and a random generator of table filtrations."""

from __future__ import annotations

import random
from fractions import Fraction

from .errors import RejectedFiltration
from .filtration import make_table_filtration
from .monomial import MonomialIdeal, contains_monomial, ideal_product, minimalize

CORPUS_2D = [
    [(1, 0), (0, 1)],
    [(2, 0), (0, 3)],
    [(2, 0), (0, 2)],
    [(2, 0), (1, 1), (0, 2)],
    [(3, 0), (1, 1), (0, 3)],
    [(3, 0), (0, 5)],
    [(4, 0), (2, 1), (0, 3)],
    [(5, 0), (1, 2), (0, 4)],
    [(6, 0), (3, 2), (0, 5)],
    [(3, 0), (2, 1), (0, 4)],
    [(4, 0), (1, 1), (0, 6)],
    [(2, 0), (0, 5)],
]

CORPUS_3D = [
    [(1, 0, 0), (0, 1, 0), (0, 0, 1)],
    [(2, 0, 0), (0, 2, 0), (0, 0, 2)],
    [(2, 0, 0), (0, 2, 0), (0, 0, 3), (1, 1, 1)],
    [(3, 0, 0), (0, 2, 0), (0, 0, 2), (1, 1, 0)],
    [(2, 0, 0), (0, 3, 0), (0, 0, 2)],
]


def corpus(dim=None, char=0):
    """Corpus ideals, optionally restricted to one dimension."""
    out = []
    if dim in (None, 2):
        out += [minimalize(g, 2, char) for g in CORPUS_2D]
    if dim in (None, 3):
        out += [minimalize(g, 3, char) for g in CORPUS_3D]
    return out


def remove_monomial(I, g):
    """The ideal I with the single monomial g (a minimal generator) taken out."""
    d = I.dim
    gens = [h for h in I.gens if h != g]
    gens += [tuple(g[k] + (k == i) for k in range(d)) for i in range(d)]
    return minimalize(gens, d, I.char)


def _walk(rng, I, steps, keep=None):
    # remove random minimal generators, never leaving the ideal `keep`
    for _ in range(steps):
        choices = [g for g in I.gens if keep is None or not contains_monomial(keep, g)]
        if not choices:
            break
        I = remove_monomial(I, rng.choice(choices))
    return I


def random_base(rng, dim, max_exp=3):
    pp = [rng.randint(1, max_exp) for _ in range(dim)]
    gens = [tuple(p if i == k else 0 for i in range(dim)) for k, p in enumerate(pp)]
    for _ in range(rng.randint(0, 2)):
        gens.append(tuple(rng.randint(0, max(0, p - 1)) for p in pp))
    I = minimalize(gens, dim)
    return I if not I.is_unit else MonomialIdeal.maximal(dim)


def random_table(rng, dim=2, force_seam=True):
    """One candidate (a, entries, B); the seam condition is only arranged when asked."""
    a = random_base(rng, dim)
    B = rng.choice([Fraction(1), Fraction(3, 2), Fraction(2)])
    grid = sorted({Fraction(rng.randint(1, 4 * B.numerator), 4 * B.denominator) for _ in range(rng.randint(1, 4))})
    grid = [c for c in grid if 0 < c < B]
    unit = MonomialIdeal.unit(dim)
    entries = []
    current = unit
    early = [c for c in grid if c <= B - 1]
    late = [c for c in grid if c > B - 1]
    for c in early:
        current = _walk(rng, current, rng.randint(1, 2))
        entries.append((c, current))
    target = ideal_product(a, current)
    for c in late:
        nxt = _walk(rng, current, rng.randint(1, 2), keep=target if force_seam else None)
        if nxt != current:
            current = nxt
            entries.append((c, current))
    final = target if force_seam else _walk(rng, current, 1)
    if final != current:
        entries.append((B, final))
    return a, entries, B


def fuzz_filtrations(count, seed=0, dims=(2, 3)):
    """Rejection-sample ``count`` valid table filtrations; returns (filtrations, rejected)."""
    rng = random.Random(seed)
    out = []
    rejected = 0
    while len(out) < count:
        dim = rng.choice(dims)
        a, entries, B = random_table(rng, dim, force_seam=rng.random() < 0.8)
        try:
            out.append(make_table_filtration(a, entries, B))
        except RejectedFiltration:
            rejected += 1
    return out, rejected
