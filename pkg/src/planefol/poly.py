"""Sparse exact multivariate polynomials and elimination primitives.

Polynomials are maps from exponent vectors to nonzero coefficients, where a
coefficient is a Fraction or a FieldElement of a simple extension of Q.  The
monomial order used for leading terms and printing is graded lexicographic.

Elimination is built on the subresultant pseudo-remainder sequence (Brown's
algorithm); coefficient arithmetic stays in the ring via exact division.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Dict, Iterable, List, Optional, Sequence, Tuple

from .field import Coefficient, FieldElement, NumberField, cinv


def _is_coeff(c) -> bool:
    return isinstance(c, (int, Fraction, FieldElement))


def _norm_coeff(c) -> Coefficient:
    return Fraction(c) if isinstance(c, int) else c


def _grlex_key(exps: Tuple[int, ...]):
    return (sum(exps), exps)


class Polynomial:
    """Immutable sparse polynomial over Q or a simple extension of Q."""

    __slots__ = ("vars", "terms")

    def __init__(self, vars: Sequence[str], terms: Dict[Tuple[int, ...], Coefficient]):
        self.vars = tuple(vars)
        clean = {}
        for exps, c in terms.items():
            c = _norm_coeff(c)
            if len(exps) != len(self.vars):
                raise ValueError("exponent arity mismatch")
            if c != 0:
                clean[tuple(exps)] = c
        self.terms = clean

    # -- constructors ------------------------------------------------------

    @classmethod
    def zero(cls, vars: Sequence[str]) -> "Polynomial":
        return cls(vars, {})

    @classmethod
    def constant(cls, vars: Sequence[str], c) -> "Polynomial":
        return cls(vars, {(0,) * len(vars): _norm_coeff(c)})

    @classmethod
    def variable(cls, name: str, vars: Sequence[str]) -> "Polynomial":
        vars = tuple(vars)
        exps = [0] * len(vars)
        exps[vars.index(name)] = 1
        return cls(vars, {tuple(exps): Fraction(1)})

    @classmethod
    def generators(cls, vars: Sequence[str]) -> List["Polynomial"]:
        return [cls.variable(v, vars) for v in vars]

    # -- predicates and basic queries --------------------------------------

    def is_zero(self) -> bool:
        return not self.terms

    def __bool__(self):
        return bool(self.terms)

    def is_constant(self) -> bool:
        return all(sum(e) == 0 for e in self.terms)

    def constant_value(self) -> Coefficient:
        if self.is_zero():
            return Fraction(0)
        if not self.is_constant():
            raise ValueError("polynomial %s is not constant" % self)
        return next(iter(self.terms.values()))

    def total_degree(self) -> int:
        """Total degree; -1 for the zero polynomial."""
        return max((sum(e) for e in self.terms), default=-1)

    def min_degree(self) -> int:
        return min((sum(e) for e in self.terms), default=-1)

    def degree_in(self, var: str) -> int:
        i = self.vars.index(var)
        return max((e[i] for e in self.terms), default=-1)

    def is_homogeneous(self) -> bool:
        degs = {sum(e) for e in self.terms}
        return len(degs) <= 1

    def homogeneous_part(self, d: int) -> "Polynomial":
        return Polynomial(self.vars, {e: c for e, c in self.terms.items()
                                      if sum(e) == d})

    def coefficient(self, exps: Tuple[int, ...]) -> Coefficient:
        return self.terms.get(tuple(exps), Fraction(0))

    def leading(self) -> Tuple[Tuple[int, ...], Coefficient]:
        """Leading (monomial, coefficient) in graded lex order."""
        if not self.terms:
            raise ValueError("zero polynomial has no leading term")
        m = max(self.terms, key=_grlex_key)
        return m, self.terms[m]

    def leading_coefficient(self) -> Coefficient:
        return self.leading()[1]

    # -- ring structure ----------------------------------------------------

    def _check(self, other: "Polynomial"):
        if self.vars != other.vars:
            raise ValueError("polynomials live in different rings: %s vs %s"
                             % (self.vars, other.vars))

    def __add__(self, other):
        if _is_coeff(other):
            other = Polynomial.constant(self.vars, other)
        self._check(other)
        out = dict(self.terms)
        for e, c in other.terms.items():
            s = out.get(e, 0) + c
            if s == 0:
                out.pop(e, None)
            else:
                out[e] = s
        return Polynomial(self.vars, out)

    __radd__ = __add__

    def __neg__(self):
        return Polynomial(self.vars, {e: -c for e, c in self.terms.items()})

    def __sub__(self, other):
        if _is_coeff(other):
            other = Polynomial.constant(self.vars, other)
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if _is_coeff(other):
            c = _norm_coeff(other)
            if c == 0:
                return Polynomial.zero(self.vars)
            return Polynomial(self.vars, {e: v * c for e, v in self.terms.items()})
        self._check(other)
        out: Dict[Tuple[int, ...], Coefficient] = {}
        for e1, c1 in self.terms.items():
            for e2, c2 in other.terms.items():
                e = tuple(a + b for a, b in zip(e1, e2))
                s = out.get(e, 0) + c1 * c2
                if s == 0:
                    out.pop(e, None)
                else:
                    out[e] = s
        return Polynomial(self.vars, out)

    __rmul__ = __mul__

    def __pow__(self, n: int):
        if n < 0:
            raise ValueError("negative polynomial power")
        out = Polynomial.constant(self.vars, 1)
        base = self
        while n:
            if n & 1:
                out = out * base
            base = base * base
            n >>= 1
        return out

    def __eq__(self, other):
        if _is_coeff(other):
            other = Polynomial.constant(self.vars, other)
        if not isinstance(other, Polynomial):
            return NotImplemented
        return self.vars == other.vars and self.terms == other.terms

    def __hash__(self):
        return hash((self.vars, frozenset(self.terms.items())))

    # -- calculus ----------------------------------------------------------

    def partial(self, var: str) -> "Polynomial":
        i = self.vars.index(var)
        out = {}
        for e, c in self.terms.items():
            if e[i] > 0:
                ne = list(e)
                ne[i] -= 1
                out[tuple(ne)] = c * e[i]
        return Polynomial(self.vars, out)

    # -- evaluation and substitution ----------------------------------------

    def evaluate(self, point: Dict[str, Coefficient]) -> Coefficient:
        """Full evaluation at a point given as {var: scalar}."""
        vals = [_norm_coeff(point[v]) for v in self.vars]
        total = Fraction(0)
        for e, c in self.terms.items():
            term = c
            for val, k in zip(vals, e):
                if k:
                    term = term * val ** k
            total = term + total
        return total

    def substitute(self, images: Dict[str, "Polynomial"]) -> "Polynomial":
        """Substitute a polynomial for every variable (exact composition)."""
        target = None
        for v in self.vars:
            img = images.get(v)
            if isinstance(img, Polynomial):
                target = img.vars
                break
        if target is None:
            raise ValueError("substitute needs at least one polynomial image")
        imgs = []
        for v in self.vars:
            img = images[v]
            if _is_coeff(img):
                img = Polynomial.constant(target, img)
            imgs.append(img)
        # cache powers of each image
        powers: List[List[Polynomial]] = []
        for i, img in enumerate(imgs):
            d = self.degree_in(self.vars[i])
            p = [Polynomial.constant(target, 1)]
            for _ in range(max(d, 0)):
                p.append(p[-1] * img)
            powers.append(p)
        out = Polynomial.zero(target)
        for e, c in self.terms.items():
            term = Polynomial.constant(target, c)
            for i, k in enumerate(e):
                if k:
                    term = term * powers[i][k]
            out = out + term
        return out

    def rename(self, new_vars: Sequence[str]) -> "Polynomial":
        if len(new_vars) != len(self.vars):
            raise ValueError("arity mismatch")
        return Polynomial(new_vars, dict(self.terms))

    def embed(self, new_vars: Sequence[str]) -> "Polynomial":
        """View inside a larger ring; existing variables map by name."""
        new_vars = tuple(new_vars)
        pos = [new_vars.index(v) for v in self.vars]
        out = {}
        for e, c in self.terms.items():
            ne = [0] * len(new_vars)
            for i, k in enumerate(e):
                ne[pos[i]] = k
            out[tuple(ne)] = c
        return Polynomial(new_vars, out)

    def map_coefficients(self, func) -> "Polynomial":
        return Polynomial(self.vars, {e: func(c) for e, c in self.terms.items()})

    def promote(self, field: NumberField) -> "Polynomial":
        from .field import promote
        return self.map_coefficients(lambda c: promote(c, field))

    # -- univariate views ----------------------------------------------------

    def as_univariate(self, var: str) -> List["Polynomial"]:
        """Dense coefficient list in ``var``; entries are polynomials of
        degree 0 in ``var`` (same ring)."""
        i = self.vars.index(var)
        d = self.degree_in(var)
        coeffs = [dict() for _ in range(d + 1)]
        for e, c in self.terms.items():
            ne = list(e)
            k = ne[i]
            ne[i] = 0
            coeffs[k][tuple(ne)] = c
        return [Polynomial(self.vars, t) for t in coeffs]

    @staticmethod
    def from_univariate(coeffs: Sequence["Polynomial"], var: str) -> "Polynomial":
        if not coeffs:
            raise ValueError("empty coefficient list")
        vars = coeffs[0].vars
        i = vars.index(var)
        out = {}
        for k, p in enumerate(coeffs):
            for e, c in p.terms.items():
                ne = list(e)
                ne[i] += k
                out[tuple(ne)] = out.get(tuple(ne), 0) + c
        return Polynomial(vars, out)

    # -- printing -----------------------------------------------------------

    def __repr__(self):
        return self.text()

    def text(self) -> str:
        """Canonical text: graded-lex descending, explicit * and ^."""
        if not self.terms:
            return "0"
        items = sorted(self.terms.items(), key=lambda t: _grlex_key(t[0]),
                       reverse=True)
        chunks = []
        for e, c in items:
            mono = "*".join(
                v if k == 1 else "%s^%d" % (v, k)
                for v, k in zip(self.vars, e) if k)
            if isinstance(c, FieldElement) and not c.is_rational():
                cs = "(%s)" % c
                body = "%s*%s" % (cs, mono) if mono else cs
                sign = "+"
            else:
                q = c.rational_value() if isinstance(c, FieldElement) else c
                sign = "-" if q < 0 else "+"
                q = abs(q)
                if mono and q == 1:
                    body = mono
                elif mono:
                    body = "%s*%s" % (q, mono)
                else:
                    body = str(q)
            chunks.append((sign, body))
        first_sign, first = chunks[0]
        s = ("-" if first_sign == "-" else "") + first
        for sign, body in chunks[1:]:
            s += " %s %s" % (sign, body)
        return s


# -- exact division ----------------------------------------------------------


def try_divexact(a: Polynomial, b: Polynomial) -> Optional[Polynomial]:
    """a / b when the division is exact, else None."""
    if b.is_zero():
        raise ZeroDivisionError("polynomial division by zero")
    if a.is_zero():
        return a
    a._check(b)
    lb, cb = b.leading()
    inv_cb = cinv(cb)
    quo: Dict[Tuple[int, ...], Coefficient] = {}
    r = a
    while not r.is_zero():
        lr, cr = r.leading()
        e = tuple(x - y for x, y in zip(lr, lb))
        if any(k < 0 for k in e):
            return None
        c = cr * inv_cb
        quo[e] = c
        r = r - Polynomial(a.vars, {e: c}) * b
    return Polynomial(a.vars, quo)


def divexact(a: Polynomial, b: Polynomial) -> Polynomial:
    q = try_divexact(a, b)
    if q is None:
        raise ValueError("inexact polynomial division: (%s) / (%s)" % (a, b))
    return q


def divides(b: Polynomial, a: Polynomial) -> bool:
    return try_divexact(a, b) is not None


# -- pseudo-division and subresultants ---------------------------------------


def prem(f: Polynomial, g: Polynomial, var: str) -> Polynomial:
    """Pseudo-remainder of f by g with respect to ``var``."""
    n, m = f.degree_in(var), g.degree_in(var)
    if g.is_zero():
        raise ZeroDivisionError("pseudo-division by zero")
    if n < m:
        return f
    fc, gc = f.as_univariate(var), g.as_univariate(var)
    x = Polynomial.variable(var, f.vars)
    lc_g = gc[-1]
    r = f
    d = n - m + 1
    while not r.is_zero() and r.degree_in(var) >= m:
        rc = r.as_univariate(var)
        k = len(rc) - 1
        r = lc_g * r - rc[-1] * x ** (k - m) * g
        d -= 1
    if d > 0:
        r = lc_g ** d * r
    return r


def subresultant_prs(f: Polynomial, g: Polynomial, var: str):
    """Brown's subresultant PRS; returns (prs, scalar_subresultants).

    The last scalar subresultant is the resultant when the PRS ends in
    degree 0 (in ``var``).  Scalars are polynomials of degree 0 in ``var``.
    """
    one = Polynomial.constant(f.vars, 1)
    n, m = f.degree_in(var), g.degree_in(var)
    if n < m:
        f, g = g, f
        n, m = m, n
    if f.is_zero():
        return [], []
    if g.is_zero():
        return [f], [one]
    prs = [f, g]
    d = n - m
    sign = one if (d + 1) % 2 == 0 else -one
    h = prem(f, g, var) * sign
    lc = g.as_univariate(var)[-1]
    c = lc ** d
    sres = [one, c]
    c = -c
    while not h.is_zero():
        k = h.degree_in(var)
        prs.append(h)
        f, g, m, d = g, h, k, m - k
        b = -lc * c ** d
        h = prem(f, g, var)
        h = divexact(h, b)
        lc = g.as_univariate(var)[-1]
        if d > 1:
            c = divexact((-lc) ** d, c ** (d - 1))
        else:
            c = -lc
        sres.append(-c)
    return prs, sres


def resultant(p: Polynomial, q: Polynomial, var: str) -> Polynomial:
    """Res_var(p, q); zero iff p and q share a factor of positive degree
    in ``var`` (given neither vanishes)."""
    if p.vars != q.vars:
        raise ValueError("arity mismatch in resultant")
    if p.is_zero() or q.is_zero():
        return Polynomial.zero(p.vars)
    if p.degree_in(var) == 0 and q.degree_in(var) == 0:
        return Polynomial.constant(p.vars, 1)
    if p.degree_in(var) == 0:
        return p ** q.degree_in(var)
    if q.degree_in(var) == 0:
        return q ** p.degree_in(var)
    n, m = p.degree_in(var), q.degree_in(var)
    prs, sres = subresultant_prs(p, q, var)
    if prs[-1].degree_in(var) > 0:
        return Polynomial.zero(p.vars)
    r = sres[-1]
    # subresultant_prs swaps its arguments when deg p < deg q
    if n < m and (n * m) % 2 == 1:
        r = -r
    return r


def sylvester_resultant(p: Polynomial, q: Polynomial, var: str) -> Polynomial:
    """Resultant as a Bareiss determinant of the Sylvester matrix.

    Independent of the PRS path; used as a cross-check oracle.
    """
    n, m = p.degree_in(var), q.degree_in(var)
    if n <= 0 and m <= 0:
        return Polynomial.constant(p.vars, 1)
    if p.is_zero() or q.is_zero():
        return Polynomial.zero(p.vars)
    pc = p.as_univariate(var)
    qc = q.as_univariate(var)
    size = n + m
    zero = Polynomial.zero(p.vars)
    rows = []
    for i in range(m):
        row = [zero] * size
        for j, c in enumerate(reversed(pc)):
            row[i + j] = c
        rows.append(row)
    for i in range(n):
        row = [zero] * size
        for j, c in enumerate(reversed(qc)):
            row[i + j] = c
        rows.append(row)
    return _bareiss_det(rows)


def _bareiss_det(rows: List[List[Polynomial]]) -> Polynomial:
    n = len(rows)
    if n == 0:
        return None
    vars = rows[0][0].vars
    one = Polynomial.constant(vars, 1)
    m = [row[:] for row in rows]
    prev = one
    sign = 1
    for k in range(n - 1):
        if m[k][k].is_zero():
            for i in range(k + 1, n):
                if not m[i][k].is_zero():
                    m[k], m[i] = m[i], m[k]
                    sign = -sign
                    break
            else:
                return Polynomial.zero(vars)
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                num = m[i][j] * m[k][k] - m[i][k] * m[k][j]
                m[i][j] = divexact(num, prev)
            m[i][k] = Polynomial.zero(vars)
        prev = m[k][k]
    det = m[n - 1][n - 1]
    return -det if sign < 0 else det


# -- gcd ---------------------------------------------------------------------


def _gcd_univariate(a: Polynomial, b: Polynomial, var: str) -> Polynomial:
    """Monic gcd of polynomials univariate in ``var`` with scalar coeffs."""
    while not b.is_zero():
        bc = b.as_univariate(var)
        binv = cinv(bc[-1].constant_value())
        bmon = b * binv
        # remainder of a by monic b
        r = a
        m = b.degree_in(var)
        x = Polynomial.variable(var, a.vars)
        while not r.is_zero() and r.degree_in(var) >= m:
            rc = r.as_univariate(var)
            r = r - rc[-1] * x ** (len(rc) - 1 - m) * bmon
        a, b = b, r
    if a.is_zero():
        return a
    return a * cinv(a.as_univariate(var)[-1].constant_value())


def gcd(a: Polynomial, b: Polynomial) -> Polynomial:
    """Gcd over the coefficient field, normalized with leading coefficient 1.

    May raise ZeroDivisorSplit when coefficients live in a reducible
    extension.
    """
    if a.vars != b.vars:
        raise ValueError("arity mismatch in gcd")
    if a.is_zero() and b.is_zero():
        return a
    if a.is_zero():
        return b * cinv(b.leading_coefficient())
    if b.is_zero():
        return a * cinv(a.leading_coefficient())
    if a.is_constant() or b.is_constant():
        return Polynomial.constant(a.vars, 1)
    active = [v for v in a.vars if a.degree_in(v) > 0 or b.degree_in(v) > 0]
    var = active[-1]
    if len(active) == 1:
        return _gcd_univariate(a, b, var)
    ca, pa = content_and_primitive(a, var)
    cb, pb = content_and_primitive(b, var)
    cont = gcd(ca, cb)
    if pa.degree_in(var) == 0 or pb.degree_in(var) == 0:
        g = cont
    else:
        prs, _ = subresultant_prs(pa, pb, var)
        last = prs[-1]
        if last.degree_in(var) == 0:
            g = cont
        else:
            g = cont * content_and_primitive(last, var)[1]
            if not divides(g, a) or not divides(g, b):
                # defensive: fall back to content only (should not happen)
                raise ArithmeticError("gcd reconstruction failed")
    return g * cinv(g.leading_coefficient())


def content_and_primitive(p: Polynomial, var: str):
    """(content, primitive part) of p viewed in (R[other vars])[var]."""
    coeffs = [c for c in p.as_univariate(var) if not c.is_zero()]
    cont = coeffs[0]
    for c in coeffs[1:]:
        if cont.is_constant():
            break
        cont = gcd(cont, c)
    if cont.is_constant():
        cont = Polynomial.constant(p.vars, 1)
        return cont, p
    return cont, divexact(p, cont)


def squarefree_part(p: Polynomial) -> Polynomial:
    """p divided by all repeated factors (works in any number of vars)."""
    if p.is_zero() or p.is_constant():
        return p
    g = p
    for v in p.vars:
        if p.degree_in(v) > 0:
            g = gcd(g, p.partial(v))
    if g.is_constant():
        return p * cinv(p.leading_coefficient())
    q = divexact(p, g)
    return q * cinv(q.leading_coefficient())


def squarefree_decomposition(p: Polynomial):
    """Yun's algorithm for a univariate polynomial; returns [(factor, mult)]
    with monic pairwise-coprime squarefree factors whose weighted product
    is p up to a constant."""
    active = [v for v in p.vars if p.degree_in(v) > 0]
    if p.is_zero():
        raise ValueError("squarefree decomposition of zero")
    if not active:
        return []
    if len(active) > 1:
        raise ValueError("squarefree decomposition needs a univariate input")
    var = active[0]
    dp = p.partial(var)
    g = gcd(p, dp)
    out = []
    if g.is_constant():
        return [(p * cinv(p.leading_coefficient()), 1)]
    w = divexact(p, g)
    y = divexact(dp, g)
    z = y - w.partial(var)
    i = 1
    while not w.is_constant():
        h = gcd(w, z)
        if not h.is_constant():
            out.append((h, i))
        w = divexact(w, h)
        z = divexact(z, h) - w.partial(var)
        i += 1
    return out


def rational_roots(p: Polynomial, var: str):
    """All rational roots (with multiplicity 1 each listed once) of a
    univariate rational-coefficient polynomial, plus the root-free cofactor."""
    if p.is_zero():
        raise ValueError("zero polynomial")
    coeffs = p.as_univariate(var)
    scal = []
    for c in coeffs:
        cv = c.constant_value()
        if isinstance(cv, FieldElement):
            raise ValueError("rational_roots needs rational coefficients")
        scal.append(cv)
    # clear denominators to integers
    from math import gcd as igcd
    den = 1
    for c in scal:
        den = den * c.denominator // igcd(den, c.denominator)
    ints = [int(c * den) for c in scal]
    while ints and ints[0] == 0:
        ints = ints[1:]
    roots = set()
    x = Polynomial.variable(var, p.vars)
    if p.evaluate({v: 0 for v in p.vars}) == 0:
        roots.add(Fraction(0))
    if ints:
        a0, an = abs(ints[0]), abs(ints[-1])
        for pn in _divisors(a0):
            for qn in _divisors(an):
                for cand in (Fraction(pn, qn), Fraction(-pn, qn)):
                    if p.evaluate({v: (cand if v == var else 0)
                                   for v in p.vars}) == 0:
                        roots.add(cand)
    cof = p
    for r in roots:
        lin = x - Polynomial.constant(p.vars, r)
        while True:
            q = try_divexact(cof, lin)
            if q is None:
                break
            cof = q
    return sorted(roots), cof


def _divisors(n: int):
    n = abs(n)
    if n == 0:
        return []
    out = []
    i = 1
    while i * i <= n:
        if n % i == 0:
            out.append(i)
            if i != n // i:
                out.append(n // i)
        i += 1
    return sorted(out)


# -- truncated power series --------------------------------------------------


class PowerSeries1D:
    """Truncated series in one variable; coefficients known for exponents
    0..order inclusive, unknown (never assumed zero) beyond."""

    __slots__ = ("var", "coeffs", "order")

    def __init__(self, var: str, coeffs: Sequence[Coefficient], order: int):
        if len(coeffs) < order + 1:
            coeffs = list(coeffs) + [Fraction(0)] * (order + 1 - len(coeffs))
        self.var = var
        self.coeffs = tuple(_norm_coeff(c) for c in coeffs[:order + 1])
        self.order = order

    @classmethod
    def zero(cls, var: str, order: int) -> "PowerSeries1D":
        return cls(var, [], order)

    @classmethod
    def identity(cls, var: str, order: int) -> "PowerSeries1D":
        return cls(var, [Fraction(0), Fraction(1)], order)

    def truncate(self, order: int) -> "PowerSeries1D":
        if order > self.order:
            raise ValueError("cannot extend a truncated series")
        return PowerSeries1D(self.var, self.coeffs[:order + 1], order)

    def _align(self, other: "PowerSeries1D"):
        if self.var != other.var:
            raise ValueError("series variable mismatch")
        n = min(self.order, other.order)
        return self.truncate(n), other.truncate(n), n

    def __add__(self, other):
        if _is_coeff(other):
            other = PowerSeries1D(self.var, [other], self.order)
        a, b, n = self._align(other)
        return PowerSeries1D(self.var,
                             [x + y for x, y in zip(a.coeffs, b.coeffs)], n)

    __radd__ = __add__

    def __neg__(self):
        return PowerSeries1D(self.var, [-c for c in self.coeffs], self.order)

    def __sub__(self, other):
        if _is_coeff(other):
            other = PowerSeries1D(self.var, [other], self.order)
        return self + (-other)

    def __mul__(self, other):
        if _is_coeff(other):
            return PowerSeries1D(self.var, [c * other for c in self.coeffs],
                                 self.order)
        a, b, n = self._align(other)
        out = [Fraction(0)] * (n + 1)
        for i, x in enumerate(a.coeffs):
            if x == 0:
                continue
            for j, y in enumerate(b.coeffs):
                if i + j > n:
                    break
                out[i + j] = out[i + j] + x * y
        return PowerSeries1D(self.var, out, n)

    __rmul__ = __mul__

    def __pow__(self, k: int):
        out = PowerSeries1D(self.var, [Fraction(1)], self.order)
        base = self
        while k:
            if k & 1:
                out = out * base
            base = base * base
            k >>= 1
        return out

    def inverse(self) -> "PowerSeries1D":
        if self.coeffs[0] == 0:
            raise ZeroDivisionError("series has no constant term")
        inv0 = cinv(self.coeffs[0])
        out = [inv0] + [Fraction(0)] * self.order
        for k in range(1, self.order + 1):
            s = Fraction(0)
            for j in range(1, k + 1):
                if j < len(self.coeffs):
                    s = s + self.coeffs[j] * out[k - j]
            out[k] = -inv0 * s
        return PowerSeries1D(self.var, out, self.order)

    def __truediv__(self, other):
        if _is_coeff(other):
            return self * cinv(_norm_coeff(other))
        return self * other.inverse()

    def __eq__(self, other):
        if not isinstance(other, PowerSeries1D):
            return NotImplemented
        return (self.var == other.var and self.order == other.order
                and self.coeffs == other.coeffs)

    def derivative(self) -> "PowerSeries1D":
        if self.order == 0:
            return PowerSeries1D.zero(self.var, 0)
        return PowerSeries1D(self.var,
                             [(k + 1) * self.coeffs[k + 1]
                              for k in range(self.order)], self.order - 1)

    def order_of_vanishing(self) -> Optional[int]:
        """Smallest exponent with nonzero coefficient; None means all known
        coefficients vanish (caller must raise the truncation order)."""
        for k, c in enumerate(self.coeffs):
            if c != 0:
                return k
        return None

    def __repr__(self):
        terms = []
        for k, c in enumerate(self.coeffs):
            if c == 0:
                continue
            if k == 0:
                terms.append(str(c))
            elif k == 1:
                terms.append("%s*%s" % (c, self.var))
            else:
                terms.append("%s*%s^%d" % (c, self.var, k))
        body = " + ".join(terms) if terms else "0"
        return "%s + O(%s^%d)" % (body, self.var, self.order + 1)


def order_of_vanishing(obj) -> Optional[int]:
    """Order of vanishing of a series or univariate polynomial; None is the
    infinity flag (series: all known coefficients zero; polynomial: zero)."""
    if isinstance(obj, PowerSeries1D):
        return obj.order_of_vanishing()
    if isinstance(obj, Polynomial):
        if obj.is_zero():
            return None
        return obj.min_degree()
    raise TypeError("expected a series or polynomial")


def eval_series(p: Polynomial, images: Dict[str, PowerSeries1D]) -> PowerSeries1D:
    """Evaluate a polynomial with series arguments; truncation is the
    minimum order among the images."""
    series_imgs = [s for s in images.values() if isinstance(s, PowerSeries1D)]
    if not series_imgs:
        raise ValueError("no series image supplied")
    var = series_imgs[0].var
    order = min(s.order for s in series_imgs)
    imgs = []
    for v in p.vars:
        img = images[v]
        if _is_coeff(img):
            img = PowerSeries1D(var, [img], order)
        imgs.append(img.truncate(order))
    powers: List[List[PowerSeries1D]] = []
    one = PowerSeries1D(var, [Fraction(1)], order)
    for i, img in enumerate(imgs):
        d = p.degree_in(p.vars[i])
        ps = [one]
        for _ in range(max(d, 0)):
            ps.append(ps[-1] * img)
        powers.append(ps)
    out = PowerSeries1D.zero(var, order)
    for e, c in p.terms.items():
        term = one * c
        for i, k in enumerate(e):
            if k:
                term = term * powers[i][k]
        out = out + term
    return out


def implicit_series_solve(q: Polynomial, xvar: str, yvar: str,
                          order: int) -> PowerSeries1D:
    """Solve q(x(y), y) = 0 with x(0) = 0 by Newton iteration on truncated
    series; requires q(0,0) = 0 and dq/dx(0,0) != 0."""
    zero_pt = {v: Fraction(0) for v in q.vars}
    if q.evaluate(zero_pt) != 0:
        raise ValueError("implicit function hypothesis fails: q(0,0) != 0")
    qx = q.partial(xvar)
    if qx.evaluate(zero_pt) == 0:
        raise ValueError("implicit function hypothesis fails: dq/dx(0,0) = 0")
    y = PowerSeries1D.identity(yvar, order)
    s = PowerSeries1D.zero(yvar, order)
    # Newton doubles correct digits; a fixed iteration count suffices.
    steps = max(order.bit_length() + 1, 3)
    for _ in range(steps):
        val = eval_series(q, {xvar: s, yvar: y})
        der = eval_series(qx, {xvar: s, yvar: y})
        s = s - val / der
    check = eval_series(q, {xvar: s, yvar: y})
    if any(c != 0 for c in check.coeffs):
        raise ArithmeticError("Newton iteration failed to converge")
    return s
