"""Expression language for polynomials, 1-forms and Darboux functions.

Grammar (all multiplication explicit):

    form    := sum of products over rationals, variables and differentials
    affine  := polynomials in x, y with dx, dy      e.g. x^2*dx+(x+y^2)*(x*dy-y*dx)
    homog   := polynomials in X, Y, Z with dX, dY, dZ
    darboux := prod[(f1)^l1, ...]*exp(g/h)    (either part may be omitted)

Errors carry the 0-based column of the offending token.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Dict, List, Optional, Tuple

from .foliation import AVARS, Foliation, HVARS
from .poly import Polynomial


class ParseError(ValueError):
    def __init__(self, message: str, pos: int):
        self.pos = pos
        super().__init__("column %d: %s" % (pos, message))


_AFFINE_DIFFS = ("dx", "dy")
_HOMOG_DIFFS = ("dX", "dY", "dZ")


class _Token:
    __slots__ = ("kind", "value", "pos")

    def __init__(self, kind, value, pos):
        self.kind = kind
        self.value = value
        self.pos = pos


def _tokenize(s: str) -> List[_Token]:
    out = []
    i = 0
    n = len(s)
    while i < n:
        ch = s[i]
        if ch.isspace():
            i += 1
            continue
        if ch.isdigit():
            j = i
            while j < n and s[j].isdigit():
                j += 1
            out.append(_Token("int", int(s[i:j]), i))
            i = j
            continue
        if ch.isalpha():
            j = i
            while j < n and s[j].isalpha():
                j += 1
            out.append(_Token("name", s[i:j], i))
            i = j
            continue
        if ch in "+-*/^(),[]":
            out.append(_Token(ch, ch, i))
            i += 1
            continue
        raise ParseError("unexpected character %r" % ch, i)
    out.append(_Token("end", None, n))
    return out


class _FormValue:
    """Element of the algebra Q[vars] + Q[vars].d1 + ... (differentials are
    square-zero generators: products of two differentials are rejected)."""

    __slots__ = ("scalar", "diffs")

    def __init__(self, scalar: Polynomial, diffs: Dict[str, Polynomial]):
        self.scalar = scalar
        self.diffs = {k: v for k, v in diffs.items() if not v.is_zero()}

    @classmethod
    def of_poly(cls, p: Polynomial):
        return cls(p, {})

    def add(self, other):
        d = dict(self.diffs)
        for k, v in other.diffs.items():
            d[k] = d.get(k, Polynomial.zero(v.vars)) + v
        return _FormValue(self.scalar + other.scalar, d)

    def neg(self):
        return _FormValue(-self.scalar, {k: -v for k, v in self.diffs.items()})

    def mul(self, other, pos):
        if self.diffs and other.diffs:
            raise ParseError("product of two differential forms", pos)
        if other.diffs:
            self, other = other, self
        return _FormValue(self.scalar * other.scalar,
                          {k: v * other.scalar for k, v in self.diffs.items()})

    def power(self, k, pos):
        if self.diffs:
            raise ParseError("power of a differential form", pos)
        return _FormValue(self.scalar ** k, {})

    def divide(self, other, pos):
        if other.diffs or self.diffs:
            raise ParseError("division involving differentials", pos)
        if not other.scalar.is_constant() or other.scalar.is_zero():
            raise ParseError("division only by nonzero constants", pos)
        from .field import cinv
        return _FormValue(self.scalar * cinv(other.scalar.constant_value()),
                          {})


class _Parser:
    def __init__(self, text: str, vars: Tuple[str, ...], diffs: Tuple[str, ...]):
        self.tokens = _tokenize(text)
        self.k = 0
        self.vars = vars
        self.diffs = diffs

    def peek(self) -> _Token:
        return self.tokens[self.k]

    def next(self) -> _Token:
        t = self.tokens[self.k]
        self.k += 1
        return t

    def expect(self, kind) -> _Token:
        t = self.next()
        if t.kind != kind:
            raise ParseError("expected %r, found %r" % (kind, t.value), t.pos)
        return t

    def parse_sum(self) -> _FormValue:
        t = self.peek()
        if t.kind == "-":
            self.next()
            v = self.parse_term().neg()
        else:
            if t.kind == "+":
                self.next()
            v = self.parse_term()
        while self.peek().kind in ("+", "-"):
            op = self.next()
            w = self.parse_term()
            v = v.add(w if op.kind == "+" else w.neg())
        return v

    def parse_term(self) -> _FormValue:
        v = self.parse_power()
        while self.peek().kind in ("*", "/"):
            op = self.next()
            w = self.parse_power()
            v = v.mul(w, op.pos) if op.kind == "*" else v.divide(w, op.pos)
        return v

    def parse_power(self) -> _FormValue:
        v = self.parse_atom()
        if self.peek().kind == "^":
            op = self.next()
            sign = 1
            if self.peek().kind == "-":
                self.next()
                sign = -1
            e = self.expect("int")
            if sign < 0:
                raise ParseError("negative exponents are not polynomial",
                                 e.pos)
            v = v.power(e.value, op.pos)
        return v

    def parse_atom(self) -> _FormValue:
        t = self.next()
        if t.kind == "int":
            return _FormValue.of_poly(
                Polynomial.constant(self.vars, Fraction(t.value)))
        if t.kind == "(":
            v = self.parse_sum()
            self.expect(")")
            return v
        if t.kind == "name":
            if t.value in self.diffs:
                return _FormValue(Polynomial.zero(self.vars),
                                  {t.value: Polynomial.constant(self.vars, 1)})
            if t.value in self.vars:
                return _FormValue.of_poly(
                    Polynomial.variable(t.value, self.vars))
            raise ParseError("unknown name %r (variables: %s)"
                             % (t.value, ", ".join(self.vars + self.diffs)),
                             t.pos)
        raise ParseError("unexpected token %r" % (t.value,), t.pos)

    def finish(self, v):
        t = self.peek()
        if t.kind != "end":
            raise ParseError("trailing input %r" % (t.value,), t.pos)
        return v


def _detect_flavor(text: str) -> Tuple[Tuple[str, ...], Tuple[str, ...]]:
    has_h = any(d in text for d in _HOMOG_DIFFS) or \
        any(v in text for v in HVARS)
    has_a = any(d in text for d in _AFFINE_DIFFS)
    if has_h and has_a:
        raise ParseError("mixed affine (x, y, dx, dy) and homogeneous "
                         "(X, Y, Z, dX, dY, dZ) symbols", 0)
    if has_h:
        return HVARS, _HOMOG_DIFFS
    return AVARS, _AFFINE_DIFFS


def parse_polynomial(text: str, vars: Optional[Tuple[str, ...]] = None
                     ) -> Polynomial:
    """Parse a polynomial in the chart variables (or the given ones)."""
    if vars is None:
        vars, diffs = _detect_flavor(text)
    else:
        vars = tuple(vars)
        diffs = ()
    p = _Parser(text, vars, diffs)
    v = p.finish(p.parse_sum())
    if v.diffs:
        raise ParseError("differentials in a polynomial", 0)
    return v.scalar


def parse_form(text: str) -> Foliation:
    """Parse an affine or homogeneous 1-form into a foliation."""
    vars, diffs = _detect_flavor(text)
    p = _Parser(text, vars, diffs)
    v = p.finish(p.parse_sum())
    if not v.scalar.is_zero():
        raise ParseError("the expression has a non-differential part", 0)
    if not v.diffs:
        raise ParseError("the expression has no differential part", 0)
    if vars == AVARS:
        P = v.diffs.get("dx", Polynomial.zero(vars))
        Q = v.diffs.get("dy", Polynomial.zero(vars))
        return Foliation.from_affine(P, Q)
    a = v.diffs.get("dX", Polynomial.zero(vars))
    b = v.diffs.get("dY", Polynomial.zero(vars))
    c = v.diffs.get("dZ", Polynomial.zero(vars))
    return Foliation.from_homogeneous(a, b, c)


def parse_darboux(text: str):
    """Parse ``prod[(f1)^l1,...]*exp(g/h)``; either factor may be absent."""
    from .invariants import DarbouxFunction
    toks = _tokenize(text)
    k = 0
    powers = []
    exp_num = exp_den = None

    def expect(kind):
        nonlocal k
        t = toks[k]
        if t.kind != kind:
            raise ParseError("expected %r, found %r" % (kind, t.value),
                             t.pos)
        k += 1
        return t

    def collect_until(closers, openers="([", closing={"(": ")", "[": "]"}):
        """Raw source slice up to the matching closer at depth 0."""
        nonlocal k
        depth = 0
        start = toks[k].pos
        while True:
            t = toks[k]
            if t.kind == "end":
                raise ParseError("unterminated group", t.pos)
            if t.kind in openers:
                depth += 1
            elif t.kind in (")", "]"):
                if depth == 0 and t.kind in closers:
                    return text[start:t.pos]
                depth -= 1
            elif depth == 0 and t.kind in closers:
                return text[start:t.pos]
            k += 1

    t = toks[k]
    if t.kind == "name" and t.value == "prod":
        k += 1
        expect("[")
        while True:
            expect("(")
            body = collect_until((")",))
            expect(")")
            f = parse_polynomial(body, AVARS)
            lam = Fraction(1)
            if toks[k].kind == "^":
                k += 1
                sign = 1
                if toks[k].kind == "-":
                    k += 1
                    sign = -1
                num = expect("int").value
                den = 1
                if toks[k].kind == "/":
                    k += 1
                    den = expect("int").value
                lam = Fraction(sign * num, den)
            powers.append((f, lam))
            if toks[k].kind == ",":
                k += 1
                continue
            expect("]")
            break
        if toks[k].kind == "*":
            k += 1
    t = toks[k]
    if t.kind == "name" and t.value == "exp":
        k += 1
        expect("(")
        body = collect_until((")",))
        expect(")")
        if "/" in body:
            # split at the top-level slash
            depth = 0
            for i, ch in enumerate(body):
                if ch in "([":
                    depth += 1
                elif ch in ")]":
                    depth -= 1
                elif ch == "/" and depth == 0:
                    exp_num = parse_polynomial(body[:i], AVARS)
                    exp_den = parse_polynomial(body[i + 1:], AVARS)
                    break
            else:
                exp_num = parse_polynomial(body, AVARS)
                exp_den = Polynomial.constant(AVARS, 1)
        else:
            exp_num = parse_polynomial(body, AVARS)
            exp_den = Polynomial.constant(AVARS, 1)
    if toks[k].kind != "end":
        raise ParseError("trailing input %r" % (toks[k].value,), toks[k].pos)
    if not powers and exp_num is None:
        raise ParseError("empty Darboux function", 0)
    return DarbouxFunction(powers, exp_num, exp_den)
