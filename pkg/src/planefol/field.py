"""Exact coefficient arithmetic: rationals and simple extensions Q[t]/(m(t)).

Every scalar in the package is either a ``fractions.Fraction`` or a
``FieldElement`` of some ``NumberField``.  The extension arithmetic does not
assume the modulus is irreducible: inverting a zero divisor raises
``ZeroDivisorSplit`` carrying a nontrivial monic factor of the modulus, so
callers can split the field and retry on each factor (dynamic evaluation).
"""

from __future__ import annotations

import math
from fractions import Fraction
from typing import Union


class ZeroDivisorSplit(ArithmeticError):
    """Inversion hit a zero divisor of Q[t]/(m); ``factor`` splits m."""

    def __init__(self, field: "NumberField", factor: tuple):
        self.field = field
        self.factor = factor  # monic, 0 < deg factor < deg m
        super().__init__(
            "zero divisor in %s; modulus splits off factor %s"
            % (field, _poly_str(factor, field.var)))


def _trim(coeffs):
    c = list(coeffs)
    while c and c[-1] == 0:
        c.pop()
    return c


def _poly_add(a, b):
    n = max(len(a), len(b))
    return _trim([(a[i] if i < len(a) else 0) + (b[i] if i < len(b) else 0)
                  for i in range(n)])


def _poly_scale(a, s):
    return _trim([x * s for x in a])


def _poly_mul(a, b):
    if not a or not b:
        return []
    out = [Fraction(0)] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                out[i + j] += x * y
    return _trim(out)


def _poly_divmod(a, b):
    """Division with remainder in Q[t]; b nonzero."""
    a, b = _trim(a), _trim(b)
    if not b:
        raise ZeroDivisionError("polynomial division by zero")
    q = [Fraction(0)] * max(len(a) - len(b) + 1, 0)
    inv_lead = Fraction(1) / b[-1]
    while len(a) >= len(b):
        k = len(a) - len(b)
        c = a[-1] * inv_lead
        q[k] = c
        for i, y in enumerate(b):
            a[i + k] -= c * y
        a = _trim(a)
    return _trim(q), a


def _poly_gcd(a, b):
    a, b = _trim(a), _trim(b)
    while b:
        a, b = b, _poly_divmod(a, b)[1]
    if a:
        a = _poly_scale(a, 1 / Fraction(a[-1]))
    return a


def _poly_str(coeffs, var):
    if not coeffs:
        return "0"
    parts = []
    for i in range(len(coeffs) - 1, -1, -1):
        c = coeffs[i]
        if c == 0:
            continue
        if i == 0:
            parts.append(str(c))
        elif i == 1:
            parts.append("%s*%s" % (c, var) if c != 1 else var)
        else:
            parts.append("%s*%s^%d" % (c, var, i) if c != 1 else "%s^%d" % (var, i))
    return " + ".join(parts).replace("+ -", "- ")


class NumberField:
    """Q[t]/(m(t)) for a monic m with rational coefficients, deg m >= 2."""

    def __init__(self, modulus, var: str = "t"):
        m = [Fraction(c) for c in modulus]
        m = _trim(m)
        if len(m) < 3:
            raise ValueError("modulus must have degree >= 2")
        if m[-1] != 1:
            m = _poly_scale(m, 1 / m[-1])
        self.modulus = tuple(m)
        self.degree = len(m) - 1
        self.var = var

    def __repr__(self):
        return "NumberField(%s)" % _poly_str(self.modulus, self.var)

    def __eq__(self, other):
        return isinstance(other, NumberField) and self.modulus == other.modulus

    def __hash__(self):
        return hash(self.modulus)

    def element(self, coeffs) -> "FieldElement":
        c = [Fraction(x) for x in coeffs]
        if len(c) > self.degree:
            _, c = _poly_divmod(c, list(self.modulus))
        return FieldElement(self, tuple(_trim(c)))

    def gen(self) -> "FieldElement":
        return self.element([0, 1])

    def one(self) -> "FieldElement":
        return self.element([1])

    def zero(self) -> "FieldElement":
        return FieldElement(self, ())

    def split(self, factor) -> tuple:
        """Return the two fields-or-rationals Q[t]/(f), Q[t]/(m/f)."""
        f = [Fraction(c) for c in factor]
        q, r = _poly_divmod(list(self.modulus), f)
        if r:
            raise ValueError("factor does not divide modulus")
        return (self._quotient_by(f), self._quotient_by(q))

    def _quotient_by(self, f):
        if len(f) == 2:  # linear: residue field is Q, t -> root
            return -f[0] / f[1]
        return NumberField(f, self.var)


class FieldElement:
    """Residue of a rational polynomial modulo the field's modulus."""

    __slots__ = ("field", "coeffs")

    def __init__(self, field: NumberField, coeffs: tuple):
        self.field = field
        self.coeffs = coeffs

    def __bool__(self):
        return bool(self.coeffs)

    def is_rational(self):
        return len(self.coeffs) <= 1

    def rational_value(self) -> Fraction:
        if not self.coeffs:
            return Fraction(0)
        if len(self.coeffs) == 1:
            return self.coeffs[0]
        raise ValueError("%s is not rational" % (self,))

    def _coerce(self, other):
        if isinstance(other, FieldElement):
            if other.field != self.field:
                raise ValueError("mixed extension fields")
            return other
        if isinstance(other, (int, Fraction)):
            return self.field.element([other])
        return None

    def __add__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return FieldElement(self.field, tuple(_poly_add(list(self.coeffs),
                                                        list(o.coeffs))))

    __radd__ = __add__

    def __neg__(self):
        return FieldElement(self.field, tuple(-c for c in self.coeffs))

    def __sub__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return self + (-o)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        prod = _poly_mul(list(self.coeffs), list(o.coeffs))
        _, r = _poly_divmod(prod, list(self.field.modulus))
        return FieldElement(self.field, tuple(r))

    __rmul__ = __mul__

    def inverse(self) -> "FieldElement":
        """Extended Euclid; raises ZeroDivisorSplit if gcd(self, m) != 1."""
        if not self.coeffs:
            raise ZeroDivisionError("inverse of zero")
        # extended euclid on (m, a)
        r0, r1 = list(self.field.modulus), list(self.coeffs)
        s0, s1 = [], [Fraction(1)]
        while r1:
            q, r = _poly_divmod(r0, r1)
            r0, r1 = r1, r
            s0, s1 = s1, _poly_add(s0, _poly_scale(_poly_mul(q, s1), -1))
        # r0 = gcd, s0 = coeff of a
        if len(r0) > 1:
            g = _poly_scale(r0, 1 / r0[-1])
            raise ZeroDivisorSplit(self.field, tuple(g))
        inv = _poly_scale(s0, 1 / r0[0])
        _, inv = _poly_divmod(inv, list(self.field.modulus))
        return FieldElement(self.field, tuple(_trim(inv)))

    def __truediv__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return self * o.inverse()

    def __rtruediv__(self, other):
        return self.inverse() * other

    def __pow__(self, n: int):
        if n < 0:
            return self.inverse() ** (-n)
        out = self.field.one()
        base = self
        while n:
            if n & 1:
                out = out * base
            base = base * base
            n >>= 1
        return out

    def __eq__(self, other):
        if isinstance(other, (int, Fraction)):
            if other == 0:
                return not self.coeffs
            return len(self.coeffs) == 1 and self.coeffs[0] == other
        if isinstance(other, FieldElement):
            return self.field == other.field and self.coeffs == other.coeffs
        return NotImplemented

    def __hash__(self):
        if len(self.coeffs) <= 1:
            return hash(self.coeffs[0] if self.coeffs else Fraction(0))
        return hash((self.field, self.coeffs))

    def __repr__(self):
        return _poly_str(self.coeffs, self.field.var) if self.coeffs else "0"


Coefficient = Union[Fraction, FieldElement]


def czero(like: Coefficient):
    """Zero of the same field as ``like``."""
    if isinstance(like, FieldElement):
        return like.field.zero()
    return Fraction(0)


def cinv(c: Coefficient):
    if isinstance(c, FieldElement):
        return c.inverse()
    return 1 / Fraction(c)


def promote(c, field: NumberField) -> FieldElement:
    """View a rational (or element of the same field) inside ``field``."""
    if isinstance(c, FieldElement):
        if c.field != field:
            raise ValueError("cannot promote element of a different field")
        return c
    return field.element([c])


def common_field(*cs):
    """The unique NumberField among the arguments, or None if all rational."""
    field = None
    for c in cs:
        if isinstance(c, FieldElement):
            if field is None:
                field = c.field
            elif field != c.field:
                raise ValueError("mixed extension fields")
    return field


def rational_sqrt(q: Fraction):
    """Exact square root of q if it is a square of a rational, else None."""
    if q < 0:
        return None
    num, den = q.numerator, q.denominator
    rn, rd = _isqrt_exact(num), _isqrt_exact(den)
    if rn is None or rd is None:
        return None
    return Fraction(rn, rd)


def rational_cbrt(q: Fraction):
    """Exact cube root of q if it is a cube of a rational, else None."""
    sign = -1 if q < 0 else 1
    num, den = abs(q.numerator), q.denominator
    rn, rd = _icbrt_exact(num), _icbrt_exact(den)
    if rn is None or rd is None:
        return None
    return Fraction(sign * rn, rd)


def _isqrt_exact(n: int):
    r = math.isqrt(n)
    return r if r * r == n else None


def _icbrt_exact(n: int):
    if n == 0:
        return 0
    r = round(n ** (1 / 3.0))
    while r ** 3 > n:
        r -= 1
    while (r + 1) ** 3 <= n:
        r += 1
    return r if r ** 3 == n else None
