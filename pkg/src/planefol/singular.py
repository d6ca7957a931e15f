"""Singular locus, Milnor numbers, jet types, tangent cones, Baum-Bott.

Two independent Milnor-number routes are provided: Fulton's recursive
intersection-multiplicity reduction at a point, and the multiplicity of the
squarefree factors of the y-eliminant after a recorded generic shear.
Points with irrational coordinates are handled at orbit granularity, the
orbit being a squarefree factor of the eliminant over Q; per-orbit analysis
runs over Q[t]/(factor) with dynamic splitting on zero-divisor events.
"""

from __future__ import annotations

from dataclasses import dataclass, field as dc_field
from fractions import Fraction
from typing import List, Optional, Tuple

from .field import (Coefficient, FieldElement, NumberField, ZeroDivisorSplit,
                    cinv)
from .foliation import AVARS, AffineForm, Foliation, FoliationError
from .poly import (Polynomial, divexact, gcd, rational_roots, resultant,
                   squarefree_decomposition, squarefree_part, try_divexact)


class CommonComponentError(ArithmeticError):
    """The two curves share a component through the point (mu infinite)."""


class ShearExhaustedError(RuntimeError):
    pass


SHEAR_CANDIDATES = tuple(
    c for k in range(0, 9) for c in ((k,) if k == 0 else (k, -k)))

_FULTON_CAP_FACTOR = 10


@dataclass
class JetType:
    """Classification of the 1-jet of the form at a singular point."""

    kind: str  # "nondegenerate" | "saddle_node" | "nilpotent" | "null"
    cone_lines: Optional[int] = None  # only for kind == "null"

    def __str__(self):
        if self.kind == "null":
            return "null/%d-line%s" % (self.cone_lines,
                                       "s" if self.cone_lines != 1 else "")
        return self.kind


@dataclass
class SingularOrbit:
    """A Galois orbit of singular points sharing one squarefree factor.

    Coordinates refer to the named chart after the recorded shear
    x -> x + shear*y; ``point`` carries exact (pre-shear) chart coordinates
    when the orbit is a single point over the base field or an extension.
    """

    chart: str
    minpoly: Polynomial          # squarefree, univariate in x over Q
    y_expr: Coefficient          # y-coordinate in Q or Q[t]/(minpoly)
    size: int
    mu: int
    shear: int
    point: Optional[Tuple] = None        # chart coords before the shear
    jet: Optional[JetType] = None
    baum_bott: Optional[Coefficient] = None

    def x_value(self) -> Coefficient:
        """The x-coordinate (sheared chart): rational root or generator."""
        if self.size == 1:
            roots, _ = rational_roots(self.minpoly, "x")
            if len(roots) == 1:
                return roots[0]
        return NumberField(_univ_coeffs(self.minpoly, "x")).gen()

    def to_json(self) -> dict:
        d = {
            "chart": self.chart,
            "x_minimal_polynomial": self.minpoly.text(),
            "y_coordinate": str(self.y_expr),
            "size": self.size,
            "mu": self.mu,
            "shear": self.shear,
        }
        if self.point is not None:
            d["point"] = [str(c) for c in self.point]
        if self.jet is not None:
            d["jet_type"] = str(self.jet)
        if self.baum_bott is not None:
            d["baum_bott"] = str(self.baum_bott)
        return d


def _univ_coeffs(p: Polynomial, var: str):
    return [c.constant_value() for c in p.as_univariate(var)]


def _subst_scalar(p: Polynomial, var: str, value: Coefficient) -> Polynomial:
    imgs = {}
    for v in p.vars:
        imgs[v] = (Polynomial.constant(p.vars, value) if v == var
                   else Polynomial.variable(v, p.vars))
    return p.substitute(imgs)


# -- Fulton's recursive intersection multiplicity ------------------------------


def milnor_fulton(P: Polynomial, Q: Polynomial,
                  point: Tuple[Coefficient, Coefficient]) -> int:
    """Intersection multiplicity of P and Q at the point, by Fulton's
    axiomatic reduction.  Raises CommonComponentError when infinite."""
    x0, y0 = point
    x, y = Polynomial.generators(P.vars)
    shift = {P.vars[0]: x + Polynomial.constant(P.vars, x0),
             P.vars[1]: y + Polynomial.constant(P.vars, y0)}
    p = P.substitute(shift)
    q = Q.substitute(shift)
    cap = _FULTON_CAP_FACTOR * (max(p.total_degree(), q.total_degree(), 1) + 1) ** 2
    return _fulton_origin(p, q, cap)


def _fulton_origin(p: Polynomial, q: Polynomial, cap: int) -> int:
    xv, yv = p.vars
    x = Polynomial.variable(xv, p.vars)
    y = Polynomial.variable(yv, p.vars)
    zero_pt = {xv: Fraction(0), yv: Fraction(0)}
    total = 0
    for _ in range(cap):
        if p.is_zero() or q.is_zero():
            raise CommonComponentError("common component through the point")
        if p.evaluate(zero_pt) != 0 or q.evaluate(zero_pt) != 0:
            return total
        f = _subst_scalar(p, yv, Fraction(0))  # p(x, 0)
        g = _subst_scalar(q, yv, Fraction(0))
        if not f.is_zero() and (g.is_zero() or
                                f.degree_in(xv) > g.degree_in(xv)):
            p, q, f, g = q, p, g, f
        if f.is_zero():
            # y divides p: I(p,q) = I(y,q) + I(p/y, q); I(y,q) = ord_x q(x,0)
            if g.is_zero():
                raise CommonComponentError("y divides both components")
            total += g.min_degree()
            p = divexact(p, y)
            continue
        # both restrictions nonzero, deg f <= deg g: kill g's leading term
        df, dg = f.degree_in(xv), g.degree_in(xv)
        lf = f.coefficient(tuple(df if v == xv else 0 for v in p.vars))
        lg = g.coefficient(tuple(dg if v == xv else 0 for v in p.vars))
        q = lf * q - lg * x ** (dg - df) * p
    raise CommonComponentError(
        "reduction did not terminate within %d steps; "
        "suspected common component" % cap)


# -- eliminant route ------------------------------------------------------------


def _shear(P: Polynomial, Q: Polynomial, c: int):
    """Coordinates x' = x + c y; forms pull back via x = x' - c y'."""
    x, y = Polynomial.generators(P.vars)
    sub = {P.vars[0]: x - c * y, P.vars[1]: y}
    Ps = P.substitute(sub)
    Qs = Q.substitute(sub) - c * Ps
    return Ps, Qs


def _lc_y_constant(p: Polynomial) -> bool:
    d = p.total_degree()
    return p.coefficient(tuple(0 if v != p.vars[1] else d
                               for v in p.vars)) != 0


def milnor_resultant(P: Polynomial, Q: Polynomial):
    """Per-orbit Milnor numbers of the affine singular points of
    P dx + Q dy, as (orbit list, shear) after a recorded generic shear.

    Each orbit is a SingularOrbit without chart/jet data filled in.
    """
    if P.vars != Q.vars:
        raise ValueError("component rings differ")
    g = gcd(P, Q)
    if not g.is_constant():
        raise CommonComponentError("components share the factor %s" % g)
    if P.is_zero() or Q.is_zero() or (P.is_constant() or Q.is_constant()):
        # a nonzero constant component means no common zeros
        if (not P.is_zero() and P.is_constant()) or \
           (not Q.is_zero() and Q.is_constant()):
            return [], 0
    last_error = None
    for c in SHEAR_CANDIDATES:
        Ps, Qs = _shear(P, Q, c)
        # Res_y(P, Q) = lc_y(P)^deg Q * prod Q(x, phi_i(x)) over P's branches;
        # only P needs a constant y-leading coefficient.
        if not _lc_y_constant(Ps):
            continue
        try:
            return _orbits_from_eliminant(Ps, Qs, c), c
        except _BadShear as e:
            last_error = e
            continue
    raise ShearExhaustedError(
        "no shear in %s separated the singular points (%s)"
        % (list(SHEAR_CANDIDATES), last_error))


class _BadShear(Exception):
    pass


def _orbits_from_eliminant(Ps, Qs, shear_c) -> List[SingularOrbit]:
    xv, yv = Ps.vars
    R = resultant(Ps, Qs, yv)
    if R.is_zero():
        raise CommonComponentError("vanishing eliminant")
    if R.is_constant():
        return []
    orbits = []
    for f, mult in squarefree_decomposition(R):
        roots, cof = rational_roots(f, xv)
        for r in roots:
            y0 = _unique_y_above(Ps, Qs, r)
            x_orig = r - shear_c * y0
            xpoly = Polynomial.variable(xv, Ps.vars) - r
            orbits.append(SingularOrbit(
                chart="", minpoly=xpoly, y_expr=y0, size=1, mu=mult,
                shear=shear_c, point=(x_orig, y0)))
        if cof.degree_in(xv) > 0:
            orbits.extend(_extension_orbits(Ps, Qs, cof, mult, shear_c))
    return orbits


def _unique_y_above(Ps, Qs, x0) -> Coefficient:
    """The single y with Ps(x0,y) = Qs(x0,y) = 0; _BadShear if not unique."""
    xv, yv = Ps.vars
    p = _subst_scalar(Ps, xv, x0)
    q = _subst_scalar(Qs, xv, x0)
    g = gcd(p, q)
    if g.is_constant():
        raise _BadShear("no point above eliminant root %s" % (x0,))
    s = squarefree_part(g)
    if s.degree_in(yv) != 1:
        raise _BadShear("two singular points share the x-coordinate %s"
                        % (x0,))
    c1 = s.coefficient(tuple(1 if v == yv else 0 for v in s.vars))
    c0 = s.coefficient((0,) * len(s.vars))
    return -c0 * cinv(c1)


def _extension_orbits(Ps, Qs, factor, mult, shear_c) -> List[SingularOrbit]:
    """Orbits above the roots of an irrational squarefree factor, splitting
    the modulus on zero-divisor events (dynamic evaluation)."""
    xv = Ps.vars[0]
    out = []
    stack = [factor]
    while stack:
        f = stack.pop()
        coeffs = _univ_coeffs(f, xv)
        lead = coeffs[-1]
        coeffs = [c / lead for c in coeffs]
        if len(coeffs) == 2:  # degenerated to a rational root after a split
            r = -coeffs[0]
            y0 = _unique_y_above(Ps, Qs, r)
            out.append(SingularOrbit(
                chart="", minpoly=Polynomial.variable(xv, Ps.vars) - r,
                y_expr=y0, size=1, mu=mult, shear=shear_c,
                point=(r - shear_c * y0, y0)))
            continue
        K = NumberField(coeffs)
        t = K.gen()
        try:
            PsK = Ps.promote(K)
            y0 = _unique_y_above(PsK, Qs.promote(K), t)
        except ZeroDivisorSplit as e:
            f1 = Polynomial(
                Ps.vars,
                {tuple(i if v == xv else 0 for v in Ps.vars): c
                 for i, c in enumerate(e.factor)})
            stack.append(f1)
            stack.append(divexact(f.map_coefficients(
                lambda q: q / lead), f1))
            continue
        fmonic = f * cinv(lead)
        out.append(SingularOrbit(
            chart="", minpoly=fmonic, y_expr=y0, size=len(coeffs) - 1,
            mu=mult, shear=shear_c, point=(t - shear_c * y0, y0)))
    return out


# -- full singular locus --------------------------------------------------------


def singular_points(F: Foliation) -> List[SingularOrbit]:
    """Complete, deduplicated singular locus over the three strata
    {Z != 0}, {Z = 0, Y != 0}, {(1:0:0)}."""
    orbits = []
    aff = F.affine("Z")
    affine_orbits, _ = milnor_resultant(aff.P, aff.Q)
    for o in affine_orbits:
        o.chart = "Z"
        orbits.append(o)
    orbits.extend(_infinity_orbits(F))
    orbits.sort(key=lambda o: (o.chart, o.minpoly.text()))
    return orbits


def _infinity_orbits(F: Foliation) -> List[SingularOrbit]:
    out = []
    xv, yv = AVARS
    # stratum Z = 0, Y != 0: chart Y with coordinates (x, y) = (X/Y, Z/Y)
    affY = F.affine("Y")
    p0 = _subst_scalar(affY.P, yv, Fraction(0))
    q0 = _subst_scalar(affY.Q, yv, Fraction(0))
    g = gcd(p0, q0) if not (p0.is_zero() and q0.is_zero()) else None
    if g is None:
        raise FoliationError("the line at infinity is singular")
    if not g.is_constant():
        out.extend(_line_orbits(affY, g, chart="Y"))
    # stratum (1:0:0): origin of chart X
    affX = F.affine("X")
    zero = {xv: Fraction(0), yv: Fraction(0)}
    if affX.P.evaluate(zero) == 0 and affX.Q.evaluate(zero) == 0:
        mu = milnor_fulton(affX.P, affX.Q, (Fraction(0), Fraction(0)))
        out.append(SingularOrbit(
            chart="X", minpoly=Polynomial.variable(xv, (xv, yv)),
            y_expr=Fraction(0), size=1, mu=mu, shear=0,
            point=(Fraction(0), Fraction(0))))
    return out


def _line_orbits(aff: AffineForm, g: Polynomial, chart: str):
    """Singular orbits on the line y = 0 of a chart (points at infinity)."""
    xv = aff.P.vars[0]
    out = []
    gsf = squarefree_part(g)
    roots, cof = rational_roots(gsf, xv)
    for r in roots:
        mu = milnor_fulton(aff.P, aff.Q, (r, Fraction(0)))
        out.append(SingularOrbit(
            chart=chart, minpoly=Polynomial.variable(xv, aff.P.vars) - r,
            y_expr=Fraction(0), size=1, mu=mu, shear=0,
            point=(r, Fraction(0))))
    if cof.degree_in(xv) > 0:
        stack = [cof]
        while stack:
            f = stack.pop()
            coeffs = _univ_coeffs(f, xv)
            lead = coeffs[-1]
            coeffs = [c / lead for c in coeffs]
            if len(coeffs) == 2:
                r = -coeffs[0]
                mu = milnor_fulton(aff.P, aff.Q, (r, Fraction(0)))
                out.append(SingularOrbit(
                    chart=chart,
                    minpoly=Polynomial.variable(xv, aff.P.vars) - r,
                    y_expr=Fraction(0), size=1, mu=mu, shear=0,
                    point=(r, Fraction(0))))
                continue
            K = NumberField(coeffs)
            try:
                mu = milnor_fulton(aff.P.promote(K), aff.Q.promote(K),
                                   (K.gen(), K.zero()))
            except ZeroDivisorSplit as e:
                f1 = Polynomial(
                    aff.P.vars,
                    {tuple(i if v == xv else 0 for v in aff.P.vars): c
                     for i, c in enumerate(e.factor)})
                stack.append(f1)
                stack.append(divexact(f.map_coefficients(
                    lambda q2: q2 / lead), f1))
                continue
            out.append(SingularOrbit(
                chart=chart, minpoly=f * cinv(lead), y_expr=Fraction(0),
                size=len(coeffs) - 1, mu=mu, shear=0,
                point=(K.gen(), K.zero())))
    return out


def bezout_check(F: Foliation):
    """(passes, total, expected, orbits): Sum of size*mu over the singular
    orbits against N^2 + N + 1."""
    orbits = singular_points(F)
    total = sum(o.size * o.mu for o in orbits)
    n = F.degree
    expected = n * n + n + 1
    return total == expected, total, expected, orbits


# -- local analysis at a point ---------------------------------------------------


def _chart_of_point(point3) -> Tuple[str, Tuple[Coefficient, Coefficient]]:
    p = tuple(point3)
    if p[2] != 0:
        inv = cinv(p[2])
        return "Z", (p[0] * inv, p[1] * inv)
    if p[1] != 0:
        inv = cinv(p[1])
        return "Y", (p[0] * inv, p[2] * inv)
    inv = cinv(p[0])
    return "X", (p[1] * inv, p[2] * inv)


def _translated_pair(F: Foliation, point3):
    chart, (x0, y0) = _chart_of_point(point3)
    from .field import common_field
    fld = common_field(x0, y0)
    aff = F.affine(chart)
    P, Q = aff.P, aff.Q
    if fld is not None:
        P, Q = P.promote(fld), Q.promote(fld)
    x, y = Polynomial.generators(AVARS)
    shift = {AVARS[0]: x + Polynomial.constant(AVARS, x0),
             AVARS[1]: y + Polynomial.constant(AVARS, y0)}
    return P.substitute(shift), Q.substitute(shift), chart


def _linear_part_matrix(P: Polynomial, Q: Polynomial):
    """Linear part of the dual field (Q, -P) at the origin, as a 2x2."""
    def lin(p, i):
        return p.coefficient(tuple(1 if k == i else 0
                                   for k in range(len(p.vars))))
    return [[lin(Q, 0), lin(Q, 1)], [-lin(P, 0), -lin(P, 1)]]


def jet_type(F: Foliation, point3) -> JetType:
    """Classify the 1-jet of the form at a singular point."""
    P, Q, _ = _translated_pair(F, point3)
    zero = {v: Fraction(0) for v in AVARS}
    if P.evaluate(zero) != 0 or Q.evaluate(zero) != 0:
        raise ValueError("point is not singular")
    M = _linear_part_matrix(P, Q)
    det = M[0][0] * M[1][1] - M[0][1] * M[1][0]
    tr = M[0][0] + M[1][1]
    if det != 0:
        return JetType("nondegenerate")
    if tr != 0:
        return JetType("saddle_node")
    if any(M[i][j] != 0 for i in range(2) for j in range(2)):
        return JetType("nilpotent")
    cone = tangent_cone_at_origin(P, Q)
    return JetType("null", cone_lines=binary_form_distinct_roots(cone))


def tangent_cone_at_origin(P: Polynomial, Q: Polynomial) -> Polynomial:
    """x*A + y*B for the lowest (quadratic) parts of a null-1-jet point."""
    m = min(P.min_degree(), Q.min_degree())
    x, y = Polynomial.generators(P.vars)
    cone = x * P.homogeneous_part(m) + y * Q.homogeneous_part(m)
    if cone.is_zero():
        raise FoliationError("tangent cone vanishes identically")
    return cone


def tangent_cone(F: Foliation, point3):
    """(cone, distinct line count) at a null-1-jet singular point."""
    P, Q, _ = _translated_pair(F, point3)
    jt = jet_type(F, point3)
    if jt.kind != "null":
        raise ValueError("tangent cone is defined at null-1-jet points only")
    cone = tangent_cone_at_origin(P, Q)
    return cone, binary_form_distinct_roots(cone)


def binary_form_distinct_roots(form: Polynomial) -> int:
    """Distinct projective roots of a nonzero binary form."""
    d = form.total_degree()
    xv, yv = form.vars[0], form.vars[1]
    f = _subst_scalar(form, yv, Fraction(1))
    df = f.degree_in(xv)
    count = 1 if df < d else 0  # root at y = 0
    if df > 0:
        g = gcd(f, f.partial(xv))
        count += df - g.degree_in(xv)
    elif df == 0:
        pass
    return count


def baum_bott(F: Foliation, point3) -> Coefficient:
    """tr(L)^2 / det(L) for the linear part L of the dual field at a
    nondegenerate singular point."""
    P, Q, _ = _translated_pair(F, point3)
    zero = {v: Fraction(0) for v in AVARS}
    if P.evaluate(zero) != 0 or Q.evaluate(zero) != 0:
        raise ValueError("point is not singular")
    M = _linear_part_matrix(P, Q)
    det = M[0][0] * M[1][1] - M[0][1] * M[1][0]
    tr = M[0][0] + M[1][1]
    if det == 0:
        raise ValueError("degenerate linear part; Baum-Bott undefined")
    return tr * tr * cinv(det)


def annotate_orbits(F: Foliation, orbits: List[SingularOrbit]):
    """Fill jet types and Baum-Bott indices on the orbit records in place.

    Size-1 orbits use their exact coordinates; larger orbits run over
    Q[t]/(minpoly) and keep a single shared answer when the computation
    stays uniform (a zero-divisor event leaves the fields None).
    """
    for o in orbits:
        pt3 = _orbit_point3(o)
        if pt3 is None:
            continue
        try:
            o.jet = jet_type(F, pt3)
            if o.jet.kind == "nondegenerate":
                o.baum_bott = baum_bott(F, pt3)
        except ZeroDivisorSplit:
            o.jet = None
    return orbits


def _orbit_point3(o: SingularOrbit):
    if o.point is None:
        return None
    x0, y0 = o.point
    if o.chart == "Z":
        return (x0, y0, _one_like(x0, y0))
    if o.chart == "Y":
        return (x0, _one_like(x0, y0), y0)
    return (_one_like(x0, y0), x0, y0)


def _one_like(*cs):
    for c in cs:
        if isinstance(c, FieldElement):
            return c.field.one()
    return Fraction(1)


def report_json(F: Foliation) -> dict:
    ok, total, expected, orbits = bezout_check(F)
    annotate_orbits(F, orbits)
    return {
        "degree": F.degree,
        "orbits": [o.to_json() for o in orbits],
        "milnor_total": total,
        "bezout_expected": expected,
        "bezout_ok": ok,
    }
