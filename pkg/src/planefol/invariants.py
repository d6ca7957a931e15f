"""Flex curve, invariant algebraic curves, integrating factors, Darboux
first integrals.

The degree-3N covariant H(F) is the determinant built from the dual vector
field; its zero locus is the closure of the inflection points of the leaves
together with every invariant line.  Removing the invariant-line factors
from H leaves the reduced flex locus, the certificate used to decide
membership in the degenerate set of the orbit-closure theorem.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import List, Optional, Sequence, Tuple

from .field import (Coefficient, FieldElement, NumberField, ZeroDivisorSplit,
                    cinv)
from .foliation import AVARS, AffineForm, Foliation, HVARS
from .linalg import kernel_basis
from .poly import (Polynomial, divexact, gcd, prem, rational_roots,
                   resultant, squarefree_part, try_divexact)
from .singular import SingularOrbit, singular_points

X3, Y3, Z3 = Polynomial.generators(HVARS)
XA, YA = Polynomial.generators(AVARS)


class SearchIncomplete(RuntimeError):
    """The invariant-curve elimination exceeded its configured bounds or
    found a positive-dimensional family; the answer may be incomplete."""


# -- Darboux functions ---------------------------------------------------------


@dataclass
class DarbouxFunction:
    """prod f_i^{l_i} * exp(g/h) with rational exponents, in chart (x, y)."""

    powers: List[Tuple[Polynomial, Fraction]]
    exp_num: Optional[Polynomial] = None
    exp_den: Optional[Polynomial] = None

    def __post_init__(self):
        for f, _ in self.powers:
            if f.is_zero():
                raise ValueError("zero factor in a Darboux function")
        if (self.exp_num is None) != (self.exp_den is None):
            raise ValueError("exponential part needs both g and h")
        if self.exp_den is not None and self.exp_den.is_zero():
            raise ValueError("zero denominator in the exponential part")

    def text(self) -> str:
        parts = ",".join("(%s)^%s" % (f.text(), l) for f, l in self.powers)
        s = "prod[%s]" % parts
        if self.exp_num is not None:
            s += "*exp((%s)/(%s))" % (self.exp_num.text(), self.exp_den.text())
        return s

    def log_differential_cleared(self) -> Tuple[Polynomial, Polynomial]:
        """(U, V) with dF/F = (U dx + V dy) / (prod f_i * h^2); only the
        numerator pair is returned, denominators cleared."""
        vars = self.powers[0][0].vars if self.powers else self.exp_num.vars
        one = Polynomial.constant(vars, 1)
        prod_all = one
        for f, _ in self.powers:
            prod_all = prod_all * f
        h = self.exp_den if self.exp_den is not None else one
        g = self.exp_num if self.exp_num is not None else Polynomial.zero(vars)
        h2 = h * h
        U = Polynomial.zero(vars)
        V = Polynomial.zero(vars)
        # rational multiples: clear lambda denominators globally
        den = 1
        for _, l in self.powers:
            den = den * l.denominator // _igcd(den, l.denominator)
        for f, l in self.powers:
            rest = divexact(prod_all, f)
            scale = Fraction(l * den)
            U = U + scale * rest * h2 * f.partial(vars[0])
            V = V + scale * rest * h2 * f.partial(vars[1])
        # + prod_all * (h dg - g dh) * den
        U = U + den * prod_all * (h * g.partial(vars[0]) - g * h.partial(vars[0]))
        V = V + den * prod_all * (h * g.partial(vars[1]) - g * h.partial(vars[1]))
        return U, V


def _igcd(a, b):
    from math import gcd as f
    return f(a, b)


def verify_first_integral(F: Foliation, func: DarbouxFunction,
                          chart: str = "Z") -> bool:
    """omega wedge (cleared logarithmic differential of func) == 0."""
    aff = F.affine(chart)
    U, V = func.log_differential_cleared()
    return (aff.P * V - aff.Q * U).is_zero()


def verify_integrating_factor(F: Foliation, g: Polynomial,
                              chart: str = "Z") -> bool:
    """d(omega/g) = 0, as the exact identity g d(omega) - dg wedge omega = 0."""
    if g.is_zero():
        raise ValueError("zero integrating factor")
    aff = F.affine(chart)
    P, Q = aff.P, aff.Q
    xv, yv = P.vars
    lhs = g * (Q.partial(xv) - P.partial(yv)) \
        - (g.partial(xv) * Q - g.partial(yv) * P)
    return lhs.is_zero()


def verify_invariant_curve(F: Foliation, c: Polynomial, chart: str = "Z"):
    """(invariant?, cofactor): c divides P dc/dy - Q dc/dx exactly."""
    if c.is_zero():
        raise ValueError("zero curve")
    aff = F.affine(chart)
    D = aff.P * c.partial(c.vars[1]) - aff.Q * c.partial(c.vars[0])
    if D.is_zero():
        return True, Polynomial.zero(c.vars)
    q = try_divexact(D, c)
    if q is None:
        return False, None
    return True, q


# -- the flex determinant -------------------------------------------------------


@dataclass
class LineFactor:
    """A linear factor of H, possibly a Galois orbit of conjugate lines."""

    form: Polynomial              # linear in X,Y,Z over Q or Q[t]/(m)
    rational_factor: Polynomial   # the Q-irreducible product of conjugates
    multiplicity: int
    invariant: bool
    minpoly: Optional[Polynomial] = None  # None for rational lines

    def to_json(self) -> dict:
        d = {"line": self.form.text(),
             "multiplicity": self.multiplicity,
             "invariant": self.invariant}
        if self.minpoly is not None:
            d["conjugacy_minpoly"] = self.minpoly.text()
            d["rational_factor"] = self.rational_factor.text()
        return d


@dataclass
class FlexReport:
    H: Polynomial
    lines: List[LineFactor]
    reduced: Polynomial

    def reduced_is_constant(self) -> bool:
        return self.reduced.is_constant()

    def invariant_lines(self) -> List[LineFactor]:
        return [l for l in self.lines if l.invariant]

    def to_json(self) -> dict:
        return {
            "H": self.H.text(),
            "line_factors": [l.to_json() for l in self.lines],
            "reduced_flex": self.reduced.text(),
            "reduced_is_constant": self.reduced_is_constant(),
        }


def flex_determinant(F: Foliation) -> FlexReport:
    """H and its linear-factor analysis; the reduced flex locus is H with
    the invariant-line factors removed."""
    H = flex_polynomial(F)
    if H.is_zero():
        raise ValueError("flex determinant vanishes identically; "
                         "no reduced locus is defined")
    lines = _line_factors(H, F)
    reduced = H
    for lf in lines:
        if lf.invariant:
            for _ in range(lf.multiplicity):
                reduced = divexact(reduced, lf.rational_factor)
    return FlexReport(H=H, lines=lines, reduced=reduced)


def flex_polynomial(F: Foliation) -> Polynomial:
    E, Fc, G = F.dual_vector_field()

    def der(p):
        return (E * p.partial("X") + Fc * p.partial("Y")
                + G * p.partial("Z"))

    rows = [[X3, E, der(E)], [Y3, Fc, der(Fc)], [Z3, G, der(G)]]
    return _det3(rows)


def _det3(m):
    return (m[0][0] * (m[1][1] * m[2][2] - m[1][2] * m[2][1])
            - m[0][1] * (m[1][0] * m[2][2] - m[1][2] * m[2][0])
            + m[0][2] * (m[1][0] * m[2][1] - m[1][1] * m[2][0]))


def _line_factors(H: Polynomial, F: Foliation) -> List[LineFactor]:
    out = []
    # the line Z = 0
    out.extend(_try_line(H, F, Z3, None, None))
    # vertical lines X = c Z: substitute X -> c Z
    cv = ("c",) + HVARS
    c_var = Polynomial.variable("c", cv)
    Hc = H.embed(cv).substitute({
        "c": c_var,
        "X": c_var * Polynomial.variable("Z", cv),
        "Y": Polynomial.variable("Y", cv),
        "Z": Polynomial.variable("Z", cv)})
    conds = [p for p in _coeffs_wrt(Hc, ("Y", "Z")) if not p.is_zero()]
    for c0, minpoly in _solve_univariate_system(conds, "c"):
        if minpoly is None:
            line = X3 - c0 * Z3
            out.extend(_try_line(H, F, line, None, None))
        else:
            out.extend(_try_conjugate_lines(H, F, minpoly, c0, "vertical"))
    # lines Y = a X + b Z
    av = ("a", "b") + HVARS
    Ha = H.embed(av).substitute({
        "a": Polynomial.variable("a", av),
        "b": Polynomial.variable("b", av),
        "X": Polynomial.variable("X", av),
        "Y": (Polynomial.variable("a", av) * Polynomial.variable("X", av)
              + Polynomial.variable("b", av) * Polynomial.variable("Z", av)),
        "Z": Polynomial.variable("Z", av)})
    conds = [p for p in _coeffs_wrt(Ha, ("X", "Z")) if not p.is_zero()]
    for (a0, b0), minpoly in _solve_ab_system(conds):
        if minpoly is None:
            line = Y3 - a0 * X3 - b0 * Z3
            out.extend(_try_line(H, F, line, None, None))
        else:
            out.extend(_try_conjugate_lines(H, F, minpoly, (a0, b0), "slope"))
    return out


def _coeffs_wrt(p: Polynomial, keep_vars) -> List[Polynomial]:
    """Coefficients of p as a polynomial in keep_vars (each a polynomial in
    the remaining variables)."""
    idx = [p.vars.index(v) for v in keep_vars]
    buckets = {}
    for e, c in p.terms.items():
        key = tuple(e[i] for i in idx)
        ne = list(e)
        for i in idx:
            ne[i] = 0
        buckets.setdefault(key, {})[tuple(ne)] = c
    return [Polynomial(p.vars, t) for t in buckets.values()]


def _solve_univariate_system(conds: List[Polynomial], var: str):
    """Common roots of a set of univariate polynomials; yields
    (rational root, None) and (extension generator, minpoly)."""
    if not conds:
        return []
    g = conds[0]
    for p in conds[1:]:
        g = gcd(g, p)
        if g.is_constant():
            return []
    if g.is_constant():
        return []
    g = squarefree_part(g)
    roots, cof = rational_roots(g, var)
    out = [(r, None) for r in roots]
    if cof.degree_in(var) > 0:
        coeffs = [c.constant_value() for c in cof.as_univariate(var)]
        lead = coeffs[-1]
        K = NumberField([c / lead for c in coeffs])
        mono = Polynomial(cof.vars, {e: c / lead for e, c in cof.terms.items()})
        out.append((K.gen(), mono))
    return out


def _solve_ab_system(conds: List[Polynomial]):
    """Finite common zero set of polynomials in (a, b); yields
    ((a0, b0), None) for rational points and ((a(t), b(t)), minpoly in a)."""
    if not conds:
        return []
    # eliminate b by resultants against a lowest-degree pivot
    with_b = [p for p in conds if p.degree_in("b") > 0]
    without_b = [p for p in conds if p.degree_in("b") == 0]
    if not with_b:
        # conditions constrain a alone; b is free -- impossible for a
        # nonzero H (would give infinitely many lines)
        raise ValueError("unexpected positive-dimensional line family")
    pivot = min(with_b, key=lambda p: (p.degree_in("b"), len(p.terms)))
    elim = list(without_b)
    for p in with_b:
        if p is pivot:
            continue
        r = resultant(pivot, p, "b")
        if not r.is_zero():
            elim.append(r)
    if not elim:
        elim = [Polynomial.zero(conds[0].vars)]
    acands = _solve_univariate_system([e for e in elim if not e.is_zero()]
                                      or with_b[:1], "a")
    # when elim is empty or all zero the pivot alone decides; fall back to
    # scanning pivot's leading-coefficient roots is not needed at our scale
    out = []
    for a0, minpoly in acands:
        fld = a0.field if isinstance(a0, FieldElement) else None
        try:
            bs = _roots_after_substitution(conds, a0, fld)
        except ZeroDivisorSplit:
            continue  # reducible orbit; rational parts found separately
        for b0 in bs:
            out.append(((a0, b0), minpoly))
    return out


def _roots_after_substitution(conds, a0, fld):
    """Common roots in b of the conditions at a = a0."""
    polys = []
    for p in conds:
        q = p if fld is None else p.promote(fld)
        aval = Polynomial.constant(q.vars, a0)
        q = q.substitute({
            "a": aval,
            "b": Polynomial.variable("b", q.vars),
            "X": Polynomial.variable("X", q.vars),
            "Y": Polynomial.variable("Y", q.vars),
            "Z": Polynomial.variable("Z", q.vars)})
        if not q.is_zero():
            polys.append(q)
    if not polys:
        return []
    g = polys[0]
    for p in polys[1:]:
        g = gcd(g, p)
        if g.is_constant():
            return []
    if g.is_constant():
        return []
    g = squarefree_part(g)
    if fld is None:
        roots, cof = rational_roots(g, "b")
        out = list(roots)
        if cof.degree_in("b") > 0:
            coeffs = [c.constant_value() for c in cof.as_univariate("b")]
            lead = coeffs[-1]
            K = NumberField([c / lead for c in coeffs], var="s")
            out.append(K.gen())
        return out
    # over an extension: collect roots of the squarefree gcd that lie in fld
    out = []
    gb = g.as_univariate("b")
    if len(gb) == 2:  # linear: single root in the field
        out.append(-gb[0].constant_value() / gb[1].constant_value())
    # a higher-degree fibre over an irrational slope would need a tower;
    # its rational members are still caught by the other families
    return out


def _try_line(H, F, line, minpoly, _tag) -> List[LineFactor]:
    mult = 0
    rest = H
    while True:
        q = try_divexact(rest, line)
        if q is None:
            break
        rest = q
        mult += 1
    if mult == 0:
        return []
    inv = _line_invariant(F, line, None)
    return [LineFactor(form=line, rational_factor=line, multiplicity=mult,
                       invariant=inv)]


def _try_conjugate_lines(H, F, minpoly, data, family) -> List[LineFactor]:
    """A Galois orbit of lines; the rational factor is the t-resultant of
    the minimal polynomial with the parametrized line."""
    tvars = ("t",) + HVARS
    t = Polynomial.variable("t", tvars)
    Xp = Polynomial.variable("X", tvars)
    Yp = Polynomial.variable("Y", tvars)
    Zp = Polynomial.variable("Z", tvars)
    if family == "vertical":
        a0 = data
        K = a0.field
        line_t = Xp - t * Zp
        line_K = X3.promote(K) - Polynomial.constant(HVARS, a0) * Z3.promote(K)
    else:
        a0, b0 = data
        K = a0.field
        bpoly = _field_elem_as_tpoly(b0, tvars)
        line_t = Yp - t * Xp - bpoly * Zp
        line_K = (Y3.promote(K)
                  - Polynomial.constant(HVARS, a0) * X3.promote(K)
                  - Polynomial.constant(HVARS, _in_field(b0, K)) * Z3.promote(K))
    mp = Polynomial(tvars, {(i, 0, 0, 0): c
                            for i, c in enumerate(K.modulus)})
    norm = resultant(mp, line_t, "t").rename(HVARS)
    norm = norm * cinv(norm.leading_coefficient())
    mult = 0
    rest = H
    while True:
        q = try_divexact(rest, norm)
        if q is None:
            break
        rest = q
        mult += 1
    if mult == 0:
        return []
    inv = _line_invariant(F, line_K, K)
    mpoly = Polynomial(("x",), {(i,): c for i, c in enumerate(K.modulus)})
    return [LineFactor(form=line_K, rational_factor=norm, multiplicity=mult,
                       invariant=inv, minpoly=mpoly)]


def _field_elem_as_tpoly(b0, tvars) -> Polynomial:
    if isinstance(b0, FieldElement):
        return Polynomial(tvars, {(i, 0, 0, 0): c
                                  for i, c in enumerate(b0.coeffs)})
    return Polynomial.constant(tvars, b0)


def _in_field(c, K):
    from .field import promote
    return promote(c, K)


def _line_invariant(F: Foliation, line: Polynomial, fld) -> bool:
    """Invariance of a projective line, tested in a chart that contains it."""
    G = F if fld is None else F.promote(fld)
    for chart in "ZYX":
        # the line must not be the chart's line at infinity
        idx = HVARS.index(chart)
        others = [i for i in range(3) if i != idx]
        if all(line.coefficient(tuple(1 if k == i else 0 for k in range(3)))
               == 0 for i in others):
            continue
        from .foliation import CHART_COORDS
        u, v = CHART_COORDS[chart]
        one = Polynomial.constant(AVARS, 1)
        if fld is not None:
            one = one.promote(fld)
        imgs = {u: XA if fld is None else XA.promote(fld),
                v: YA if fld is None else YA.promote(fld),
                chart: one}
        caff = line.substitute(imgs)
        if caff.is_constant():
            continue
        ok, _ = verify_invariant_curve(G, caff, chart)
        return ok
    raise ValueError("line analysis failed: %s" % line)


def invariant_lines(F: Foliation) -> List[LineFactor]:
    """Every invariant line of a foliation of degree >= 2 is a linear
    factor of H; enumerate the factors and keep the invariant ones."""
    if F.degree < 2:
        raise ValueError("finitely many invariant lines needs degree >= 2")
    return flex_determinant(F).invariant_lines()


# -- invariant curve search ------------------------------------------------------


SEARCH_DEGREE_CAP = 60
SEARCH_TERM_CAP = 6000


def search_invariant_curves(F: Foliation, max_degree: int,
                            chart: str = "Z") -> List[Tuple[Polynomial, Polynomial]]:
    """Complete search for invariant algebraic curves of degree <= 3 that
    pass through every singular orbit (every invariant curve passes through
    at least one singular point; the through-all-orbits space is the
    documented search scope).  Each output is re-verified and returned with
    its cofactor."""
    if max_degree > 3:
        raise ValueError("the search is supported for degree <= 3")
    aff = F.affine(chart)
    orbits = [o for o in singular_points(F)]
    found = {}
    for d in range(1, max_degree + 1):
        for c in _search_exact_degree(F, aff, orbits, d, chart):
            c = squarefree_part(c)  # a power of an invariant curve adds nothing
            ok, cof = verify_invariant_curve(F, c, chart)
            if ok:
                key = _canonical_curve(c)
                found.setdefault(key.text(), (key, cof))
    return [found[k] for k in sorted(found)]


def _canonical_curve(c: Polynomial) -> Polynomial:
    return c * cinv(c.leading_coefficient())


def _search_exact_degree(F, aff, orbits, d, chart):
    monos = [(i, j) for j in range(d, -1, -1) for i in range(d - j, -1, -1)]
    # y-lex descending: guarantees a stable leading coefficient for the
    # pseudo-division conditions
    monos.sort(key=lambda m: (m[1], m[0]), reverse=True)
    rows = _orbit_vanishing_rows(orbits, monos, d, chart)
    branches = _eigen_branches(aff, orbits, monos, d, chart)
    candidates = []
    for extra in branches:
        for p_idx in range(len(monos)):
            cand = _pivot_search(aff, monos, rows + extra, p_idx, d)
            candidates.extend(cand)
    return candidates


def _eigen_branches(aff, orbits, monos, d, chart):
    """Branch the search on the lowest-part structure at a rational
    singular point: the lowest homogeneous part of an invariant curve at a
    singular point is an eigenvector of the linearized dual field acting
    on binary forms, with eigenvalue the cofactor's value there.  Returns
    a list of extra linear row-sets; [[]] when not applicable."""
    target = None
    for o in orbits:
        if o.chart != chart or o.size != 1 or o.point is None:
            continue
        if isinstance(o.point[0], FieldElement) or \
                isinstance(o.point[1], FieldElement):
            continue
        target = o.point
        break
    if target is None:
        return [[]]
    x0, y0 = target
    xv, yv = AVARS
    shift = {xv: XA + Polynomial.constant(AVARS, x0),
             yv: YA + Polynomial.constant(AVARS, y0)}
    P = aff.P.substitute(shift)
    Q = aff.Q.substitute(shift)

    def lin(p, i):
        return p.coefficient(tuple(1 if k == i else 0 for k in range(2)))

    M = [[lin(Q, 0), lin(Q, 1)], [-lin(P, 0), -lin(P, 1)]]
    if all(M[i][j] == 0 for i in range(2) for j in range(2)):
        return [[]]
    tr = M[0][0] + M[1][1]
    det = M[0][0] * M[1][1] - M[0][1] * M[1][0]
    disc = tr * tr - 4 * det
    from .field import rational_sqrt
    sq = rational_sqrt(Fraction(disc))
    if sq is None or sq == 0:
        return [[]]  # irrational or repeated eigenvalues: no refinement
    l1, l2 = (tr + sq) / 2, (tr - sq) / 2
    v1 = _eigvec2(M, l1)
    v2 = _eigvec2(M, l2)
    # expansion of each ansatz monomial in eigen coordinates at the point
    wvars = ("w1", "w2")
    w1, w2 = Polynomial.generators(wvars)
    u = Polynomial.constant(wvars, x0) + v1[0] * w1 + v2[0] * w2
    v = Polynomial.constant(wvars, y0) + v1[1] * w1 + v2[1] * w2
    expansions = [u ** i * v ** j for (i, j) in monos]
    if det == 0:
        # saddle-node: every branch of an invariant curve through the
        # point is one of the two formal separatrices, so the curve
        # vanishes on at least one of them to all orders
        rows = _separatrix_rows(aff, (x0, y0), (v1, v2), expansions, d)
        if rows is not None:
            return rows
    branches = []
    for m in range(1, d + 1):
        eigvals = sorted({i * l1 + (m - i) * l2 for i in range(m + 1)})
        for mu in eigvals:
            rowset = []
            for a in range(m + 1):
                for b in range(m + 1 - a):
                    if a + b < m or (a + b == m and a * l1 + b * l2 != mu):
                        rowset.append([e.coefficient((a, b))
                                       for e in expansions])
            branches.append(rowset)
    return branches


def _separatrix_rows(aff, point, eig_basis, expansions, d):
    """Linear row sets expressing 'c vanishes to high order on one of the
    two separatrix branches' of a saddle-node point."""
    from .poly import PowerSeries1D, eval_series
    B = 4 * d + 8
    x0, y0 = point
    v1, v2 = eig_basis
    wvars = ("w1", "w2")
    # the form in eigen coordinates (x, y) = point + V (w1, w2)
    w1p, w2p = Polynomial.generators(wvars)
    sx = Polynomial.constant(wvars, x0) + v1[0] * w1p + v2[0] * w2p
    sy = Polynomial.constant(wvars, y0) + v1[1] * w1p + v2[1] * w2p
    Pw = aff.P.rename(wvars).substitute({"w1": sx, "w2": sy})
    Qw = aff.Q.rename(wvars).substitute({"w1": sx, "w2": sy})
    Pp = Pw * v1[0] + Qw * v1[1]
    Qp = Pw * v2[0] + Qw * v2[1]
    out = []
    for tangent in ("w1", "w2"):
        f = _branch_series(Pp, Qp, tangent, B)
        if f is None:
            return None
        ident = PowerSeries1D.identity(tangent, B)
        args = {tangent: ident,
                ("w2" if tangent == "w1" else "w1"): f}
        rows = []
        series = [eval_series(e, args) for e in expansions]
        for r in range(B):
            rows.append([s.coeffs[r] for s in series])
        out.append(rows)
    return out


def _branch_series(Pp, Qp, tangent, B):
    """The unique formal invariant graph branch tangent to the given eigen
    axis, as a series of order B; None if an order fails to solve."""
    from .poly import PowerSeries1D, eval_series
    big = B + 3  # working order: keeps every read coefficient valid
    coeffs = [Fraction(0), Fraction(0)]

    def residual(cs):
        f = PowerSeries1D(tangent, cs, big)
        ident = PowerSeries1D.identity(tangent, big)
        if tangent == "w1":
            args = {"w1": ident, "w2": f}
            # leaf graph w2 = f(w1): Q' f' + P' = 0 along the branch
            return eval_series(Qp, args) * f.derivative() \
                + eval_series(Pp, args).truncate(big - 1)
        args = {"w1": f, "w2": ident}
        return eval_series(Pp, args) * f.derivative() \
            + eval_series(Qp, args).truncate(big - 1)

    for k in range(2, B + 1):
        r0 = residual(list(coeffs))
        probe = list(coeffs) + [Fraction(0)] * (k - len(coeffs)) + [Fraction(1)]
        r1 = residual(probe)
        c0, c1 = r0.coeffs[k], r1.coeffs[k]
        if c1 == c0:
            if c0 == 0:
                coeffs.append(Fraction(0))
                continue
            return None
        coeffs.append(-c0 / (c1 - c0))
    return PowerSeries1D(tangent, coeffs, B)


def _eigvec2(M, lam):
    # rows of M - lam are proportional (det = 0); any row gives the kernel
    a, b = M[0][0] - lam, M[0][1]
    c, d = M[1][0], M[1][1] - lam
    if (a, b) != (0, 0):
        return (b, -a)
    if (c, d) != (0, 0):
        return (d, -c)
    return (Fraction(1), Fraction(0))


def _orbit_vanishing_rows(orbits: List[SingularOrbit], monos, d, chart):
    rows = []
    for o in orbits:
        if o.point is None:
            continue
        x0, y0 = o.point
        fld = x0.field if isinstance(x0, FieldElement) else (
            y0.field if isinstance(y0, FieldElement) else None)
        if o.chart == chart:
            vals = [_mono_value(m, x0, y0) for m in monos]
        else:
            # point at infinity of the search chart (search chart Z only)
            if chart != "Z":
                continue
            if o.chart == "Y":  # (x0 : 1 : y0) with y0 = 0
                pt = (x0, _one_of(fld), y0)
            else:               # chart X: (1 : x0 : y0)
                pt = (_one_of(fld), x0, y0)
            vals = [_homog_mono_value(m, d, pt) for m in monos]
        if fld is None:
            rows.append([Fraction(v) if isinstance(v, int) else v
                         for v in vals])
        else:
            deg = fld.degree
            for k in range(deg):
                row = []
                for v in vals:
                    if isinstance(v, FieldElement):
                        cc = v.coeffs
                        row.append(cc[k] if k < len(cc) else Fraction(0))
                    else:
                        row.append(Fraction(v) if k == 0 else Fraction(0))
                rows.append(row)
    return rows


def _one_of(fld):
    return Fraction(1) if fld is None else fld.one()


def _mono_value(m, x0, y0):
    i, j = m
    return x0 ** i * y0 ** j if (i or j) else _one_like_point(x0)


def _one_like_point(c):
    return c.field.one() if isinstance(c, FieldElement) else Fraction(1)


def _homog_mono_value(m, d, pt):
    i, j = m
    k = d - i - j
    return pt[0] ** i * pt[1] ** j * pt[2] ** k


def _pivot_search(aff, monos, rows, p_idx, d):
    """Solve for curves whose leading monomial (y-lex) is monos[p_idx]."""
    n = len(monos)
    sys_rows = [list(r) for r in rows]
    for k in range(p_idx):
        row = [Fraction(0)] * n
        row[k] = Fraction(1)
        sys_rows.append(row)
    pivot_row = [Fraction(0)] * n
    pivot_row[p_idx] = Fraction(1)
    from .linalg import solve as lin_solve, kernel_basis as lin_kernel
    base = lin_solve(sys_rows + [pivot_row],
                     [Fraction(0)] * len(sys_rows) + [Fraction(1)])
    if base is None:
        return []
    kern = lin_kernel(sys_rows + [pivot_row])
    if not kern:
        c = _coeffs_to_poly(base, monos)
        return [c] if not c.is_zero() else []
    return _eliminate_family(aff, monos, base, kern, d)


def _coeffs_to_poly(coeffs, monos, svals=None):
    terms = {}
    for (i, j), c in zip(monos, coeffs):
        if c != 0:
            terms[(i, j)] = terms.get((i, j), 0) + c
    return Polynomial(AVARS, terms)


def _eliminate_family(aff, monos, base, kern, d):
    """Impose the divisibility condition on the affine family
    c = base + sum s_i kern_i; one parameter is specialized per level and
    the conditions are recomputed fresh after every specialization."""
    return _solve_family(aff, monos, list(base), [list(v) for v in kern], 0)


def _family_conditions(aff, monos, base, kern, direction):
    """Divisibility conditions (polynomials in the s-parameters) for the
    family, from the pseudo-remainder in the given chart variable."""
    svars = tuple("s%d" % i for i in range(len(kern)))
    allvars = AVARS + svars
    x = Polynomial.variable("x", allvars)
    y = Polynomial.variable("y", allvars)
    fld = None
    for v in base:
        if isinstance(v, FieldElement):
            fld = v.field
            break
    svals = [Polynomial.variable(s, allvars) for s in svars]
    c = Polynomial.zero(allvars)
    for k, (i, j) in enumerate(monos):
        coef = Polynomial.constant(allvars, base[k])
        for t, kv in enumerate(kern):
            if kv[k] != 0:
                coef = coef + kv[k] * svals[t]
        if not coef.is_zero():
            c = c + coef * x ** i * y ** j
    if c.is_zero():
        return []
    P = aff.P.embed(allvars)
    Q = aff.Q.embed(allvars)
    if fld is not None:
        P, Q, c = P.promote(fld), Q.promote(fld), c.promote(fld)
    D = P * c.partial("y") - Q * c.partial("x")
    if c.degree_in(direction) == 0:
        r = D if c.is_constant() else Polynomial.zero(c.vars)
        if not c.is_constant():
            return []  # this direction says nothing; the other one decides
    else:
        r = prem(D, c, direction)
    return [p for p in _coeffs_wrt(r, AVARS) if not p.is_zero()]


def _solve_family(aff, monos, base, kern, depth):
    if depth > 16:
        raise SearchIncomplete("specialization depth exceeded")
    # both pseudo-division directions; a vacuous direction is rescued by
    # the other one
    conds = _family_conditions(aff, monos, base, kern, "y") \
        + _family_conditions(aff, monos, base, kern, "x")
    conds = _normalize_system(conds)
    if not kern:
        if any(not p.is_zero() for p in conds):
            return []
        c = _coeffs_to_poly(base, monos)
        return [c] if not c.is_zero() else []
    if not conds:
        raise SearchIncomplete(
            "positive-dimensional family of invariant curves")
    if any(p.is_constant() for p in conds):
        return []
    svars = ["s%d" % i for i in range(len(kern))]
    # prefer a parameter pinned by a univariate condition
    target = None
    for i in reversed(range(len(svars))):
        uni = [p for p in conds
               if p.degree_in(svars[i]) > 0
               and all(p.degree_in(s) == 0 for s in svars if s != svars[i])]
        if uni:
            target, vals = i, _univ_solutions(uni, svars[i])
            break
    if target is None:
        target = len(svars) - 1
        others = svars[:-1]
        try:
            vals = _candidate_values(conds, svars[-1], others)
        except ZeroDivisorSplit:
            raise SearchIncomplete("zero divisor during elimination")
    out = []
    for v in vals:
        nbase, nkern = _specialize(base, kern, target, v)
        try:
            out.extend(_solve_family(aff, monos, nbase, nkern, depth + 1))
        except ZeroDivisorSplit:
            raise SearchIncomplete("zero divisor during specialization")
    return out


def _specialize(base, kern, idx, v):
    """Substitute the value v for the idx-th family parameter."""
    chosen = kern[idx]
    nbase = [b + k * v for b, k in zip(base, chosen)]
    nkern = [list(k) for i, k in enumerate(kern) if i != idx]
    return nbase, nkern


def _normalize_system(conds):
    out = []
    seen = set()
    for p in conds:
        if p.is_zero():
            continue
        q = squarefree_part(p)
        key = q.text()
        if key not in seen:
            seen.add(key)
            out.append(q)
    return out


def _candidate_values(conds, var, others):
    """A finite superset of the possible values of ``var`` on the solution
    set, by iterated resultants with branch splitting on shared factors;
    spurious values die on re-verification."""
    results = []
    seen_keys = set()
    work = [list(conds)]
    guard = 0
    while work:
        guard += 1
        if guard > 300:
            raise SearchIncomplete("elimination branch explosion")
        system = _normalize_system(work.pop())
        if any(p.is_constant() for p in system):
            continue
        if not system:
            raise SearchIncomplete(
                "projection lost all constraints (likely a positive-"
                "dimensional family)")
        uni = [p for p in system
               if p.degree_in(var) > 0
               and all(p.degree_in(u) == 0 for u in others)]
        if uni:
            for v in _univ_solutions(uni, var):
                key = str(v)
                if key not in seen_keys:
                    seen_keys.add(key)
                    results.append(v)
            continue
        u = None
        for cand in reversed(others):
            if any(p.degree_in(cand) > 0 for p in system):
                u = cand
                break
        if u is None:
            # no parameter left to eliminate yet nothing univariate in var
            raise SearchIncomplete("unconstrained parameter in elimination")
        with_u = [p for p in system if p.degree_in(u) > 0]
        without_u = [p for p in system if p.degree_in(u) == 0]
        pivot = min(with_u, key=lambda p: (p.degree_in(u), len(p.terms)))
        rest = [p for p in with_u if p is not pivot]
        # split the branch whenever the pivot shares a factor
        split = False
        for p in rest:
            g = gcd(pivot, p)
            if not g.is_constant():
                sys_a = without_u + rest + [g]            # pivot -> g
                sys_b = without_u + rest + [divexact(pivot, g)]
                work.append(sys_a)
                work.append(sys_b)
                split = True
                break
        if split:
            continue
        new = list(without_u)
        for p in rest:
            r = resultant(pivot, p, u)
            if r.total_degree() > SEARCH_DEGREE_CAP or \
                    len(r.terms) > SEARCH_TERM_CAP:
                raise SearchIncomplete("elimination degree blow-up")
            if not r.is_zero():
                new.append(r)
        if not rest and not without_u:
            # a single constraint in (u, var, ...): positive-dimensional
            raise SearchIncomplete(
                "projection lost all constraints (likely a positive-"
                "dimensional family)")
        work.append(new)
    return results


def _univ_solutions(polys: List[Polynomial], var: str):
    """Common roots of univariate conditions: rational ones, plus the
    generator of one extension per residual squarefree factor."""
    fld = None
    for p in polys:
        for c in p.terms.values():
            if isinstance(c, FieldElement):
                fld = c.field
                break
        if fld is not None:
            break
    g = polys[0]
    for p in polys[1:]:
        g = gcd(g, p)
        if g.is_constant():
            return []
    if g.is_constant():
        return []
    g = squarefree_part(g)
    gu = g.as_univariate(var)
    if fld is not None:
        if len(gu) == 2:
            return [-gu[0].constant_value() / gu[1].constant_value()]
        raise SearchIncomplete(
            "irrational fibre over an extension point in the curve search")
    roots, cof = rational_roots(g, var)
    out = [Fraction(r) for r in roots]
    if cof.degree_in(var) > 0:
        coeffs = [c.constant_value() for c in cof.as_univariate(var)]
        lead = coeffs[-1]
        out.append(NumberField([c / lead for c in coeffs]).gen())
    return out
