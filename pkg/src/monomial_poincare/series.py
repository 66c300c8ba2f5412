"""Exact rational functions with denominators (1-T)^k and fractional series.

Every closed form produced by the library has the shape num(T)/(1-T)^k with
an integer numerator, so that is the only kind of rational function modelled
here.  Poincare series are finite sums of such functions times T^c with
c in (0, 1].
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field
from fractions import Fraction
from math import comb, lcm

from .errors import PreconditionError


# -- integer polynomials as coefficient tuples (index = exponent) --------

def ptrim(p):
    p = list(p)
    while p and p[-1] == 0:
        p.pop()
    return tuple(p)


def padd(p, q):
    n = max(len(p), len(q))
    return ptrim((p[i] if i < len(p) else 0) + (q[i] if i < len(q) else 0) for i in range(n))


def pneg(p):
    return tuple(-x for x in p)


def pmul(p, q):
    if not p or not q:
        return ()
    out = [0] * (len(p) + len(q) - 1)
    for i, a in enumerate(p):
        if a:
            for j, b in enumerate(q):
                out[i + j] += a * b
    return ptrim(out)


def pshift(p, n):
    p = ptrim(p)
    return (0,) * n + p if p else ()


def one_minus_t_power(k, step=1):
    """Coefficients of (1 - T^step)^k."""
    out = [0] * (k * step + 1)
    for i in range(k + 1):
        out[i * step] = (-1) ** i * comb(k, i)
    return tuple(out)


def pdiv_one_minus(p, step=1):
    """Divide p by (1 - T^step); returns None if the division is not exact."""
    p = list(ptrim(p))
    if not p:
        return ()
    q = [0] * len(p)
    for i in range(len(p)):
        q[i] = p[i] + (q[i - step] if i >= step else 0)
    # p = (1 - T^step) q requires the last `step` coefficients of q to vanish
    if any(q[len(q) - step:]) if len(q) >= step else any(q):
        return None
    return ptrim(q[: len(q) - step])


def peval(p, x):
    return sum(c * x**i for i, c in enumerate(p))


def binomial_expansion_coeff(k, j):
    """Coefficient of T^j in 1/(1-T)^k."""
    if k == 0:
        return 1 if j == 0 else 0
    return comb(j + k - 1, k - 1) if j >= 0 else 0


@dataclass(frozen=True)
class UniRational:
    """num(T) / (1-T)^k in normal form: (1-T) does not divide num unless k = 0."""

    num: tuple
    k: int = 0

    def __post_init__(self):
        num = ptrim(self.num)
        k = self.k
        if k < 0:
            raise PreconditionError("denominator exponent must be natural")
        if not num:
            k = 0
        while k > 0 and peval(num, 1) == 0:
            num = pdiv_one_minus(num)
            k -= 1
        object.__setattr__(self, "num", num)
        object.__setattr__(self, "k", k)

    @classmethod
    def poly(cls, coeffs):
        return cls(tuple(coeffs), 0)

    @classmethod
    def zero(cls):
        return cls((), 0)

    @property
    def is_zero(self):
        return not self.num

    def _lift(self, k):
        return pmul(self.num, one_minus_t_power(k - self.k))

    def __add__(self, other):
        k = max(self.k, other.k)
        return UniRational(padd(self._lift(k), other._lift(k)), k)

    def __neg__(self):
        return UniRational(pneg(self.num), self.k)

    def __sub__(self, other):
        return self + (-other)

    def __mul__(self, other):
        if isinstance(other, int):
            return UniRational(tuple(other * c for c in self.num), self.k)
        return UniRational(pmul(self.num, other.num), self.k + other.k)

    __rmul__ = __mul__

    def shift(self, n):
        """Multiply by T^n."""
        return UniRational(pshift(self.num, n), self.k)

    def coefficients(self, n):
        """First n+1 coefficients of the power series expansion."""
        out = []
        for j in range(n + 1):
            out.append(sum(c * binomial_expansion_coeff(self.k, j - i) for i, c in enumerate(self.num) if i <= j))
        return out

    def __str__(self):
        return format_fraction(self.num, self.k, "T", 1)


def rat_arith(a, b, kind):
    if kind == "add":
        return a + b
    if kind == "sub":
        return a - b
    if kind == "mul":
        return a * b
    raise PreconditionError(f"unknown operation {kind!r}")


def _frac_str(x):
    x = Fraction(x)
    return str(x.numerator) if x.denominator == 1 else f"{x.numerator}/{x.denominator}"


@dataclass(frozen=True)
class TruncatedSeries:
    order: Fraction
    terms: tuple  # ascending ((exponent, coefficient), ...), no zero coefficients

    @classmethod
    def from_dict(cls, order, terms):
        order = Fraction(order)
        items = sorted((Fraction(e), int(c)) for e, c in terms.items() if c != 0 and Fraction(e) <= order)
        return cls(order, tuple(items))

    def as_dict(self):
        return dict(self.terms)

    @property
    def denominator(self):
        return lcm(1, *(e.denominator for e, _ in self.terms))

    def __add__(self, other):
        order = min(self.order, other.order)
        acc = dict(self.terms)
        for e, c in other.terms:
            acc[e] = acc.get(e, 0) + c
        return TruncatedSeries.from_dict(order, acc)

    def __str__(self):
        if not self.terms:
            return "0"
        return _join_terms([(c, _monomial_str("T", e)) for e, c in self.terms])


def _monomial_str(var, e):
    e = Fraction(e)
    if e == 0:
        return ""
    if e == 1:
        return var
    if e.denominator == 1:
        return f"{var}^{e.numerator}"
    return f"{var}^({_frac_str(e)})"


def _join_terms(terms):
    out = []
    for i, (c, mono) in enumerate(terms):
        sign = "-" if c < 0 else "+"
        mag = abs(c)
        body = mono if (mag == 1 and mono) else f"{mag}{mono}"
        if i == 0:
            out.append(body if sign == "+" else f"-{body}")
        else:
            out.append(f" {sign} {body}")
    return "".join(out)


def format_poly(p, var):
    terms = [(c, _monomial_str(var, i)) for i, c in enumerate(p) if c]
    return _join_terms(terms) if terms else "0"


def format_fraction(num, k, var, step):
    if not ptrim(num):
        return "0"
    top = format_poly(num, var)
    if k == 0:
        return top
    nterms = sum(1 for c in num if c)
    if nterms > 1:
        top = f"({top})"
    base = f"(1-{var})" if step == 1 else f"(1-{var}^{step})"
    return f"{top}/{base}" if k == 1 else f"{top}/{base}^{k}"


@dataclass(frozen=True)
class PoincareForm:
    """A finite sum of R_c(T) * T^c over classes c in (0, 1]."""

    classes: tuple = field(default=())  # ((c, UniRational), ...) sorted, nonzero

    @classmethod
    def from_dict(cls, classes):
        items = []
        for c, r in classes.items():
            c = Fraction(c)
            if not (0 < c <= 1):
                raise PreconditionError(f"class representative {c} is not in (0, 1]")
            if not r.is_zero:
                items.append((c, r))
        return cls(tuple(sorted(items)))

    def as_dict(self):
        return dict(self.classes)

    @property
    def e(self):
        return lcm(1, *(c.denominator for c, _ in self.classes))

    @property
    def is_zero(self):
        return not self.classes

    def __add__(self, other):
        acc = dict(self.classes)
        for c, r in other.classes:
            acc[c] = acc[c] + r if c in acc else r
        return PoincareForm.from_dict(acc)

    def __str__(self):
        return render(self)


def expand(f, N):
    """Truncated expansion of a UniRational or a PoincareForm up to exponent N."""
    N = Fraction(N)
    if N < 0:
        raise PreconditionError("expansion order must be nonnegative")
    terms = {}
    if isinstance(f, UniRational):
        n = int(N)  # floor for N >= 0
        for j, c in enumerate(f.coefficients(n)):
            if c:
                terms[Fraction(j)] = c
        return TruncatedSeries.from_dict(N, terms)
    for c, r in f.classes:
        if c > N:
            continue
        n = int(N - c)
        for j, coeff in enumerate(r.coefficients(n)):
            if coeff:
                terms[c + j] = terms.get(c + j, 0) + coeff
    return TruncatedSeries.from_dict(N, terms)


# -- single-fraction rendering over Q(T^(1/e)) --------------------------

def combined_fraction(form):
    """(numerator in z, k, e) with sum_c T^c R_c(T) = num(z)/(1-z^e)^k, z^e = T."""
    e = form.e
    if form.is_zero:
        return (), 0, e
    kmax = max(r.k for _, r in form.classes)
    num = ()
    for c, r in form.classes:
        lifted = pmul(r.num, one_minus_t_power(kmax - r.k))
        spread = [0] * (e * (len(lifted) - 1) + 1) if lifted else []
        for i, a in enumerate(lifted):
            spread[i * e] = a
        num = padd(num, pshift(tuple(spread), int(c * e)))
    k = kmax
    while k > 0:
        q = pdiv_one_minus(num, e)
        if q is None:
            break
        num, k = q, k - 1
    return num, k, e


def render(form):
    num, k, e = combined_fraction(form)
    if not num:
        return "0"
    if e == 1:
        return format_fraction(num, k, "T", 1)
    return f"{format_fraction(num, k, 'z', e)} where z = T^(1/{e})"


_TERM = re.compile(r"\s*([+-])?\s*(\d+)?\s*(?:([A-Za-z])(?:\^(\d+))?)?\s*")


def parse_poly(text, var):
    text = text.strip()
    if text.startswith("(") and text.endswith(")"):
        text = text[1:-1]
    coeffs = {}
    pos = 0
    first = True
    while pos < len(text):
        m = _TERM.match(text, pos)
        if not m or m.end() == pos:
            raise PreconditionError(f"cannot parse polynomial at position {pos}: {text!r}")
        sign, digits, name, power = m.groups()
        if not first and sign is None:
            raise PreconditionError(f"missing operator at position {pos}: {text!r}")
        if digits is None and name is None:
            raise PreconditionError(f"empty term at position {pos}: {text!r}")
        if name is not None and name != var:
            raise PreconditionError(f"unexpected variable {name!r} (expected {var!r})")
        c = int(digits) if digits else 1
        if sign == "-":
            c = -c
        exp = 0 if name is None else int(power) if power else 1
        coeffs[exp] = coeffs.get(exp, 0) + c
        pos = m.end()
        first = False
    if not coeffs:
        return ()
    return ptrim(coeffs.get(i, 0) for i in range(max(coeffs) + 1))


_DENOM = re.compile(r"^\(1-([A-Za-z])(?:\^(\d+))?\)(?:\^(\d+))?$")


def parse_rendering(text):
    """Inverse of :func:`render`."""
    text = text.strip()
    if text == "0":
        return PoincareForm()
    e = 1
    var = "T"
    m = re.search(r"\s+where\s+z\s*=\s*T\^\(1/(\d+)\)\s*$", text)
    if m:
        e = int(m.group(1))
        var = "z"
        text = text[: m.start()]
    depth = 0
    split = None
    for i, ch in enumerate(text):
        if ch == "(":
            depth += 1
        elif ch == ")":
            depth -= 1
        elif ch == "/" and depth == 0:
            split = i
    if split is None:
        num, k = parse_poly(text, var), 0
    else:
        num = parse_poly(text[:split], var)
        dm = _DENOM.match(text[split + 1:].strip())
        if not dm or dm.group(1) != var or int(dm.group(2) or 1) != e:
            raise PreconditionError(f"cannot parse denominator {text[split + 1:]!r}")
        k = int(dm.group(3) or 1)
    classes = {}
    for r in range(e):
        # class r/e (r = 0 means class 1): terms z^(r + e*m) = T^(r/e) T^m
        part = {}
        for i, a in enumerate(num):
            if a and i % e == r:
                m_ = i // e if r else i // e - 1
                if m_ < 0:
                    raise PreconditionError("rendering has a term outside the classes (0, 1]")
                part[m_] = a
        if part:
            poly = tuple(part.get(i, 0) for i in range(max(part) + 1))
            c = Fraction(r, e) if r else Fraction(1)
            classes[c] = UniRational(poly, k)
    return PoincareForm.from_dict(classes)
