"""Command-line interface.

Ideals are written as comma separated monomials in x, y, z, w (or x1..x4),
e.g. "x^2, x*y, y^3".  Rationals are "a/b" or integers.  Set
MONOMIAL_POINCARE_CACHE to a directory to keep jump tables between runs.
"""

from __future__ import annotations

import argparse
import hashlib
import json
import os
import sys
from fractions import Fraction
from pathlib import Path

from .errors import InvariantViolation, MonomialError
from .filtration import h_polynomial, jumping_numbers, poincare_closed_form
from .monomial import minimalize
from .multiplier import lct, multiplier_filtration, multiplier_ideal
from .series import expand, render
from .testideal import test_filtration, test_ideal
from .tor import tor_lengths
from .verify import SUITES, fmt, run_suite

MAX_DIM = 4
CACHE_ENV = "MONOMIAL_POINCARE_CACHE"
_LETTERS = "xyzw"


class UsageError(MonomialError):
    pass


class ParseError(UsageError):
    def __init__(self, text, pos, message):
        pointer = " " * pos + "^"
        super().__init__(f"parse error at position {pos}: {message}\n  {text}\n  {pointer}")
        self.pos = pos


# -- parsing ------------------------------------------------------------------

class _IdealParser:
    """ideal := term ("," term)*; term := factor ("*" factor)*; factor := var ("^" posint)? | "1"."""

    def __init__(self, text):
        self.text = text
        self.pos = 0

    def _skip(self):
        while self.pos < len(self.text) and self.text[self.pos].isspace():
            self.pos += 1

    def _peek(self):
        self._skip()
        return self.text[self.pos] if self.pos < len(self.text) else ""

    def _fail(self, message, pos=None):
        raise ParseError(self.text, self.pos if pos is None else pos, message)

    def _digits(self):
        start = self.pos
        while self.pos < len(self.text) and self.text[self.pos].isdigit():
            self.pos += 1
        return self.text[start:self.pos]

    def parse(self):
        terms = [self._term()]
        while self._peek() == ",":
            self.pos += 1
            terms.append(self._term())
        if self._peek():
            self._fail(f"unexpected {self._peek()!r}")
        return terms

    def _term(self):
        exps = {}
        while True:
            index, power = self._factor()
            if index:
                exps[index] = exps.get(index, 0) + power
            if self._peek() != "*":
                return exps
            self.pos += 1

    def _factor(self):
        ch = self._peek()
        start = self.pos
        if ch == "1":
            self.pos += 1
            return 0, 0
        if not ch or ch not in _LETTERS:
            self._fail("expected a variable" if ch else "unexpected end of input")
        self.pos += 1
        index = _LETTERS.index(ch) + 1
        if ch == "x" and self.pos < len(self.text) and self.text[self.pos].isdigit():
            index = int(self._digits())
            if index == 0:
                self._fail("variables are numbered from x1", start)
        if index > MAX_DIM:
            self._fail(f"variable index {index} exceeds the supported maximum d = {MAX_DIM}", start)
        power = 1
        if self._peek() == "^":
            self.pos += 1
            self._skip()
            at = self.pos
            digits = self._digits()
            if not digits or int(digits) == 0:
                self._fail("expected a positive integer exponent", at)
            power = int(digits)
        return index, power


def parse_terms(text):
    return _IdealParser(text).parse()


def build_ideals(texts):
    """Parse several ideals into one common polynomial ring."""
    parsed = [parse_terms(t) for t in texts]
    dim = max((i for terms in parsed for t in terms for i in t), default=0)
    if dim == 0:
        raise UsageError("cannot infer the number of variables from constant ideals")
    out = []
    for terms in parsed:
        gens = [tuple(t.get(i + 1, 0) for i in range(dim)) for t in terms]
        out.append(minimalize(gens, dim))
    return out


def parse_ideal(text):
    return build_ideals([text])[0]


def parse_rational(text):
    text = text.strip()
    body = text[1:] if text[:1] == "-" else text
    parts = body.split("/")
    if len(parts) > 2 or not all(p.isdigit() for p in parts):
        raise UsageError(f"not a rational number {text!r}; write a/b or an integer")
    if len(parts) == 2 and int(parts[1]) == 0:
        raise UsageError(f"zero denominator in {text!r}")
    value = Fraction(int(parts[0]), int(parts[1])) if len(parts) == 2 else Fraction(int(parts[0]))
    return -value if text[:1] == "-" else value


# -- output helpers -----------------------------------------------------------

def ideal_json(I):
    return [list(g) for g in I.gens]


def _series_json(s):
    return [{"exponent": fmt(e), "coefficient": c} for e, c in s.terms]


def _filtration(a, char):
    return test_filtration(a, char) if char else multiplier_filtration(a)


def _jumps_doc(a, c_max, char):
    cache = os.environ.get(CACHE_ENV)
    path = None
    if cache:
        key = json.dumps([ideal_json(a), fmt(c_max), char or 0]).encode()
        path = Path(cache) / f"jumps-{hashlib.sha256(key).hexdigest()[:24]}.json"
        if path.exists():
            return json.loads(path.read_text())
    table = jumping_numbers(_filtration(a, char), c_max)
    doc = [{"c": fmt(j.c), "multiplicity": j.multiplicity, "ideal": ideal_json(j.ideal), "text": str(j.ideal)}
           for j in table.jumps]
    if path is not None:
        path.parent.mkdir(parents=True, exist_ok=True)
        path.write_text(json.dumps(doc))
    return doc


# -- subcommands --------------------------------------------------------------

def cmd_lct(args):
    a = parse_ideal(args.ideal)
    value = lct(a)
    return {"ideal": ideal_json(a), "lct": fmt(value)}, [fmt(value)]


def cmd_jumps(args):
    a = parse_ideal(args.ideal)
    doc = _jumps_doc(a, parse_rational(args.max), args.char)
    lines = [f"{j['c']}  mult {j['multiplicity']}  ideal {j['text']}" for j in doc]
    jumps = [{k: j[k] for k in ("c", "multiplicity", "ideal")} for j in doc]
    return {"ideal": ideal_json(a), "char": args.char or 0, "jumps": jumps}, lines


def cmd_mult(args):
    a = parse_ideal(args.ideal)
    c = parse_rational(args.c)
    J = multiplier_ideal(a, c)
    return {"ideal": ideal_json(a), "c": fmt(c), "result": ideal_json(J)}, [str(J)]


def cmd_test(args):
    a = parse_ideal(args.ideal)
    c = parse_rational(args.c)
    tau = test_ideal(a, c, args.char)
    return {"ideal": ideal_json(a), "c": fmt(c), "char": args.char, "result": ideal_json(tau)}, [str(tau)]


def cmd_poincare(args):
    a = parse_ideal(args.ideal)
    form = poincare_closed_form(_filtration(a, args.char))
    classes = [{"c": fmt(c), "numerator": list(r.num), "k": r.k} for c, r in form.classes]
    poincare = {"e": form.e, "classes": classes, "rendering": render(form)}
    lines = [render(form)]
    if args.expand is not None:
        s = expand(form, parse_rational(args.expand))
        poincare["expansion"] = _series_json(s)
        lines.append(str(s))
    return {"ideal": ideal_json(a), "char": args.char or 0, "poincare": poincare}, lines


def cmd_hpoly(args):
    a = parse_ideal(args.ideal)
    c = parse_rational(args.c)
    h = h_polynomial(_filtration(a, args.char), c, left=args.left)
    return {"ideal": ideal_json(a), "c": fmt(c), "left": args.left, "h": list(h.coeffs)}, [str(h)]


def cmd_tor(args):
    a, J = build_ideals([args.ideal, args.J])
    if args.j < 1:
        raise UsageError("-j must be a positive integer")
    row = tor_lengths(a, args.j, J, args.imax)
    lines = [f"Tor_{i}  {t}" for i, t in enumerate(row.tor)]
    return {"ideal": ideal_json(a), "j": args.j, "J": ideal_json(J), "tor": list(row.tor)}, lines


def cmd_verify(args):
    params = {}
    if args.ideal:
        params["ideals"] = build_ideals(args.ideal + ([args.J] if args.J else []))
        if args.J:
            params["J"] = params["ideals"].pop()
    elif args.J:
        raise UsageError("-J needs at least one -a")
    if args.char:
        params["chars"] = tuple(args.char)
    if args.order:
        params["order"] = parse_rational(args.order)
    if args.max:
        params["max_c"] = parse_rational(args.max)
    if args.j:
        params["js"] = tuple(args.j)
    if args.imax is not None:
        params["i_max"] = args.imax
    if args.N is not None:
        params["N"] = args.N
    report = run_suite(args.suite, **params)
    checks = [{"name": c.name, "passed": c.passed, "details": c.details} for c in report.checks]
    lines = []
    for c in report.checks:
        line = f"{'PASS' if c.passed else 'FAIL'}  {c.name}"
        if not c.passed:
            line += "  " + json.dumps(c.details, sort_keys=True)
        lines.append(line)
    verdict = "PASS" if report.passed else "FAIL"
    lines.append(f"{report.suite}: {verdict} ({len(report.checks)} checks, {len(report.failures())} failed)")
    doc = {"suite": report.suite, "passed": report.passed, "checks": checks}
    return doc, lines, (0 if report.passed else 2)


# -- argument parsing ---------------------------------------------------------

class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(f"{self.prog}: {message}")


def _prime(text):
    try:
        return int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"not an integer: {text!r}") from None


def build_parser():
    parser = _Parser(prog="monomial-poincare", description="Jumping numbers and Poincare series of monomial ideals.")
    parser.add_argument("--json", action="store_true", help="emit one JSON document instead of text")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    p = sub.add_parser("lct", help="log canonical threshold")
    p.add_argument("-a", dest="ideal", required=True)
    p.set_defaults(fn=cmd_lct)

    p = sub.add_parser("jumps", help="jumping numbers up to --max")
    p.add_argument("-a", dest="ideal", required=True)
    p.add_argument("--max", required=True)
    p.add_argument("--char", type=_prime, default=0, help="use test ideals in characteristic p")
    p.set_defaults(fn=cmd_jumps)

    p = sub.add_parser("mult", help="multiplier ideal J(a^c)")
    p.add_argument("-a", dest="ideal", required=True)
    p.add_argument("-c", required=True)
    p.set_defaults(fn=cmd_mult)

    p = sub.add_parser("test", help="test ideal tau(a^c)")
    p.add_argument("-a", dest="ideal", required=True)
    p.add_argument("-c", required=True)
    p.add_argument("--char", type=_prime, required=True)
    p.set_defaults(fn=cmd_test)

    p = sub.add_parser("poincare", help="closed form of the Poincare series")
    p.add_argument("-a", dest="ideal", required=True)
    p.add_argument("--char", type=_prime, default=0)
    p.add_argument("--expand", help="also print the expansion up to this exponent")
    p.set_defaults(fn=cmd_poincare)

    p = sub.add_parser("hpoly", help="h-polynomial of the filtration J_c, J_(c+1), ...")
    p.add_argument("-a", dest="ideal", required=True)
    p.add_argument("-c", required=True)
    p.add_argument("--char", type=_prime, default=0)
    p.add_argument("--left", action="store_true", help="use the left limits J_(c-eps)")
    p.set_defaults(fn=cmd_hpoly)

    p = sub.add_parser("tor", help="lengths of Tor_i(A/a^j, A/J)")
    p.add_argument("-a", dest="ideal", required=True)
    p.add_argument("-j", type=int, required=True)
    p.add_argument("-J", required=True)
    p.add_argument("--imax", type=int)
    p.set_defaults(fn=cmd_tor)

    p = sub.add_parser("verify", help="run a verification suite")
    p.add_argument("suite", choices=sorted(SUITES))
    p.add_argument("-a", dest="ideal", action="append", help="ideal to check (repeatable; default: built-in corpus)")
    p.add_argument("-J", help="second ideal for tor-symmetry and lemma41")
    p.add_argument("--char", type=_prime, action="append", help="characteristic (repeatable)")
    p.add_argument("--order", help="expansion order for rationality")
    p.add_argument("--max", help="largest exponent c to check")
    p.add_argument("-j", type=int, action="append", help="power of a (repeatable)")
    p.add_argument("--imax", type=int, help="highest Tor index")
    p.add_argument("-N", type=int, help="number of powers in lemma42")
    p.set_defaults(fn=cmd_verify)
    return parser


def main(argv=None, out=None, err=None):
    out = out or sys.stdout
    err = err or sys.stderr
    try:
        args = build_parser().parse_args(argv)
        result = args.fn(args)
    except InvariantViolation as exc:
        print(f"verification failure: {exc}", file=err)
        return 2
    except MonomialError as exc:
        print(f"error: {exc}", file=err)
        return 1
    doc, lines = result[0], result[1]
    code = result[2] if len(result) > 2 else 0
    if args.json:
        doc = {"command": args.command, **doc}
        print(json.dumps(doc, sort_keys=True), file=out)
    else:
        for line in lines:
            print(line, file=out)
    return code


if __name__ == "__main__":
    sys.exit(main())
