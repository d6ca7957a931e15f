"""Decision procedure for quadratic foliations with a single singular point.

Given such a foliation the classifier returns its class among the four
normal forms together with an explicit conjugating projective map, built as
a composition of verified normalization steps: move the singularity to the
origin, normalize the 1-jet, then follow the saddle-node or
tangent-cone analysis.  Scalings can force a quadratic extension (square
roots of the cone coefficients) or a cubic one (the saddle-node class has
an order-3 isotropy group, so its normalization involves a cube root).
"""

from __future__ import annotations

from dataclasses import dataclass, field as dc_field
from fractions import Fraction
from typing import List, Optional, Tuple

from .field import (FieldElement, NumberField, cinv, rational_cbrt,
                    rational_sqrt)
from .foliation import AVARS, Foliation, ProjectiveMap
from .poly import Polynomial, divexact, gcd, squarefree_part, try_divexact
from .singular import (binary_form_distinct_roots, jet_type, singular_points,
                       tangent_cone_at_origin)


class ClassificationError(RuntimeError):
    pass


@dataclass
class ClassificationCertificate:
    class_id: str
    conjugation: ProjectiveMap
    verified: bool
    trace: List[str]

    def to_json(self) -> dict:
        return {
            "class": self.class_id,
            "conjugation": self.conjugation.to_json(),
            "verified": self.verified,
            "steps": list(self.trace),
        }


class _Pipeline:
    """Accumulates normalization maps; recomputes the working form after
    every composition so each step's postcondition is checked on exact
    data."""

    def __init__(self, F: Foliation):
        self.original = F
        self.current = F
        self.T = ProjectiveMap.identity()
        self.trace: List[str] = []

    def apply(self, step: str, T: ProjectiveMap):
        fld = None
        for row in T.rows:
            for c in row:
                if isinstance(c, FieldElement):
                    fld = c.field
        if fld is not None:
            self.T = self.T.promote(fld) if not self._has_field() else self.T
            self.current = self.current.promote(fld) \
                if not self._cur_has_field() else self.current
        self.T = self.T.compose(T)
        self.current = self.current.pullback(T)
        self.trace.append(step)

    def _has_field(self):
        return any(isinstance(c, FieldElement)
                   for row in self.T.rows for c in row)

    def _cur_has_field(self):
        return any(isinstance(c, FieldElement)
                   for p in self.current.components()
                   for c in p.terms.values())

    def pair(self) -> Tuple[Polynomial, Polynomial]:
        aff = self.current.affine("Z")
        return aff.P, aff.Q


def _lin_coeff(p: Polynomial, i: int):
    return p.coefficient(tuple(1 if k == i else 0 for k in range(2)))


def _quad_coeff(p: Polynomial, i: int, j: int):
    return p.coefficient((i, j))


def classify_single_singularity(F: Foliation) -> ClassificationCertificate:
    """Classify a quadratic foliation whose singular locus is one rational
    (or simple-extension) point of Milnor number 7."""
    if F.degree != 2:
        raise ClassificationError("classification applies to degree 2")
    orbits = singular_points(F)
    if len(orbits) != 1 or orbits[0].size != 1:
        raise ClassificationError(
            "the foliation has %d singular orbits; need exactly one point"
            % sum(o.size for o in orbits))
    if orbits[0].mu != 7:
        raise ClassificationError("single singular point must have mu = 7, "
                                  "got %d" % orbits[0].mu)
    from .singular import _orbit_point3
    p3 = _orbit_point3(orbits[0])
    pipe = _Pipeline(F)
    pipe.apply("move-singularity-to-origin", _map_point_to_origin(p3))
    jt = jet_type(pipe.current, (Fraction(0), Fraction(0), Fraction(1)))
    if jt.kind == "nilpotent":
        raise ClassificationError(
            "nilpotent 1-jet at the unique singular point: impossible for a "
            "quadratic foliation with a single singularity, so the input or "
            "an upstream computation is inconsistent")
    if jt.kind == "nondegenerate":
        raise ClassificationError("nondegenerate point contradicts mu = 7")
    if jt.kind == "saddle_node":
        cls = _saddle_node_branch(pipe)
    else:
        if jt.cone_lines == 3:
            raise ClassificationError(
                "tangent cone with three distinct lines at the unique "
                "singular point: impossible for a quadratic foliation with "
                "a single singularity, so the input or an upstream "
                "computation is inconsistent")
        if jt.cone_lines == 2:
            cls = _two_line_branch(pipe)
        else:
            cls = _one_line_branch(pipe)
    from . import catalog
    target = catalog.get(cls)
    verified = _verify_conjugation(F, pipe.T, target)
    if not verified:
        raise ClassificationError("certificate verification failed")
    return ClassificationCertificate(class_id=cls, conjugation=pipe.T,
                                     verified=True, trace=pipe.trace)


def _map_point_to_origin(p3) -> ProjectiveMap:
    """A projective map whose pullback moves the singularity at p3 to
    (0:0:1): its matrix's third column is p3."""
    k = next(i for i, c in enumerate(p3) if c != 0)
    cols = []
    for i in range(3):
        if i != k:
            e = [Fraction(0)] * 3
            e[i] = Fraction(1)
            cols.append(e)
    cols.append(list(p3))
    rows = [[cols[j][i] for j in range(3)] for i in range(3)]
    return ProjectiveMap(rows)


def _verify_conjugation(F: Foliation, T: ProjectiveMap,
                        target: Foliation) -> bool:
    fld = None
    for row in T.rows:
        for c in row:
            if isinstance(c, FieldElement):
                fld = c.field
    G = F if fld is None else F.promote(fld)
    Tt = T if fld is None else T.promote(fld)
    pulled = G.pullback(Tt)
    tgt = target if fld is None else target.promote(fld)
    comps_a = pulled.components()
    comps_b = tgt.components()
    for i in range(3):
        for j in range(i + 1, 3):
            if not (comps_a[i] * comps_b[j] - comps_a[j] * comps_b[i]).is_zero():
                return False
    return True


# -- saddle-node normalization ---------------------------------------------------


def _field_matrix(P, Q):
    return [[_lin_coeff(Q, 0), _lin_coeff(Q, 1)],
            [-_lin_coeff(P, 0), -_lin_coeff(P, 1)]]


def _sn_params(P, Q):
    """Split parameters of the saddle-node presentation, normalized so the
    dy-linear coefficient is exactly x."""
    sigma = _lin_coeff(Q, 0)
    if sigma == 0 or _lin_coeff(Q, 1) != 0 or _lin_coeff(P, 0) != 0 \
            or _lin_coeff(P, 1) != 0:
        raise ClassificationError("saddle-node jet is not aligned")
    inv = cinv(sigma)
    Pn, Qn = P * inv, Q * inv
    # P = a20 x^2 + a11 xy + a02 y^2 - y phi ; Q = x + ... + x phi
    phi20 = _quad_coeff(Qn, 3, 0)
    phi11 = _quad_coeff(Qn, 2, 1)
    phi02 = _quad_coeff(Qn, 1, 2)
    return {
        "a20": _quad_coeff(Pn, 2, 0),
        "a11": _quad_coeff(Pn, 1, 1),
        "a02": _quad_coeff(Pn, 0, 2),
        "b20": _quad_coeff(Qn, 2, 0),
        "b11": _quad_coeff(Qn, 1, 1),
        "b02": _quad_coeff(Qn, 0, 2),
        "phi20": phi20,
        "phi11": phi11,
        "phi02": phi02,
    }


def _saddle_node_branch(pipe: _Pipeline) -> str:
    P, Q = pipe.pair()
    M = _field_matrix(P, Q)
    tr = M[0][0] + M[1][1]
    # eigen directions for eigenvalues tr and 0; both lie in the base field
    vt = _eigvec(M, tr)
    v0 = _eigvec(M, 0)
    pipe.apply("align-jet-to-x-dy", ProjectiveMap(
        [[vt[0], v0[0], 0], [vt[1], v0[1], 0], [0, 0, 1]]))
    P, Q = pipe.pair()
    pr = _sn_params(P, Q)
    if pr["b02"] == 0:
        raise ClassificationError(
            "the vertical axis is invariant at a saddle-node with a single "
            "singularity; inconsistent input")
    # send a generic point of the axis and its leaf tangent to infinity so
    # the dy-quadratic-in-y coefficient of the tangency form vanishes
    done = pr["phi02"] == 0
    for k in range(1, 8) if not done else ():
        for y0 in (Fraction(k), Fraction(-k)):
            pr = _sn_params(*pipe.pair())
            P, Q = pipe.pair()
            sigma = cinv(_lin_coeff(Q, 0))
            d1 = (Q * sigma).evaluate({"x": Fraction(0), "y": y0})
            d2 = -(P * sigma).evaluate({"x": Fraction(0), "y": y0})
            if d1 == 0:
                continue
            # points move by the inverse of the pullback substitution:
            # the substitution (X,Y,Z) -> (X, Y, uX+vY+Z) carries the line
            # {z = ux+vy} to infinity and (0:1:v) to (0:y0:1)
            u = -d2 * cinv(y0 * d1)
            v = cinv(y0)
            trial = ProjectiveMap.chart_division(u, v)
            saved = (pipe.current, pipe.T, list(pipe.trace))
            pipe.apply("tangency-point-to-infinity", trial)
            try:
                pr = _sn_params(*pipe.pair())
            except ClassificationError:
                pipe.current, pipe.T, pipe.trace = saved
                continue
            if pr["phi02"] == 0:
                done = True
                break
            pipe.current, pipe.T, pipe.trace = saved
        if done:
            break
    if not done:
        raise ClassificationError("no admissible axis point killed the "
                                  "infinity tangency coefficient")
    pr = _sn_params(*pipe.pair())
    if pr["b02"] == 0:
        raise ClassificationError("dy y^2-coefficient vanished unexpectedly")
    pipe.apply("scale-y2-coefficient",
               ProjectiveMap.diagonal(pr["b02"], 1, 1))
    pr = _sn_params(*pipe.pair())
    if pr["b02"] != 1:
        raise ClassificationError("b02 normalization failed")
    # order-7 conditions forced by mu = 7
    checks = (pr["a02"] == 0 and pr["a11"] == 0
              and pr["phi11"] == -pr["a20"]
              and pr["phi20"] == -pr["a20"] * pr["b11"]
              and pr["b20"] == 0 and pr["a20"] != 0)
    if not checks:
        raise ClassificationError("order-7 coefficient identities failed; "
                                  "the point does not have mu = 7")
    if pr["b11"] != 0:
        pipe.apply("kill-xy-coefficient",
                   ProjectiveMap.chart_division(0, -pr["b11"]))
        pr = _sn_params(*pipe.pair())
        if pr["b11"] != 0:
            raise ClassificationError("b11 normalization failed")
    a20 = pr["a20"]
    if a20 != 1:
        t = _cube_root(a20)
        pipe.apply("cube-scale-to-unit",
                   ProjectiveMap.diagonal(t * t, t, _one_like(t)))
        pr = _sn_params(*pipe.pair())
        if pr["a20"] != 1:
            raise ClassificationError("cube-root scaling failed")
    return "F4"


def _one_like(c):
    return c.field.one() if isinstance(c, FieldElement) else Fraction(1)


def _cube_root(a20):
    """t with t^3 = 1/a20, rational when possible, else in Q[t]."""
    if isinstance(a20, FieldElement):
        if a20.is_rational():
            a20 = a20.rational_value()
        else:
            raise ClassificationError(
                "cube root needed over an extension field (tower not "
                "supported)")
    r = rational_cbrt(1 / Fraction(a20))
    if r is not None:
        return r
    K = NumberField([-1 / Fraction(a20), 0, 0, 1], var="c3")
    return K.gen()


def _eigvec(M, lam):
    a, b = M[0][0] - lam, M[0][1]
    c, d = M[1][0], M[1][1] - lam
    if a != 0 or b != 0:
        return (b, -a)
    if c != 0 or d != 0:
        return (d, -c)
    return (Fraction(1), Fraction(0))


# -- null 1-jet normalizations ----------------------------------------------------


def _null_params(P, Q, shape: str):
    """Parameters of the pre-normal forms with tangent cone x^3 (shape
    'one') or x^2 y (shape 'two'), read off the quadratic and cubic parts."""
    A = P.homogeneous_part(2)
    B = Q.homogeneous_part(2)
    phi1 = try_divexact(-P.homogeneous_part(3),
                        Polynomial.variable("y", P.vars))
    phi2 = try_divexact(Q.homogeneous_part(3),
                        Polynomial.variable("x", P.vars))
    if phi1 is None or phi2 is None or phi1 != phi2:
        raise ClassificationError("cubic parts are not a radial multiple")
    phi = phi1
    out = {
        "A20": _quad_coeff(A, 2, 0), "A11": _quad_coeff(A, 1, 1),
        "A02": _quad_coeff(A, 0, 2),
        "B20": _quad_coeff(B, 2, 0), "B11": _quad_coeff(B, 1, 1),
        "B02": _quad_coeff(B, 0, 2),
        "phi20": _quad_coeff(phi, 2, 0), "phi11": _quad_coeff(phi, 1, 1),
        "phi02": _quad_coeff(phi, 0, 2),
    }
    if out["B02"] != 0:
        raise ClassificationError("cone normalization failed: y^3 term")
    if shape == "one":
        # A = l x^2 - a xy - 2b y^2, B = a x^2 + 2b xy, cone = l x^3
        out["l"] = out["A20"]
        out["alpha"] = out["B20"]
        out["beta"] = out["B11"] * Fraction(1, 2)
        if out["A11"] != -out["alpha"] or out["A02"] != -2 * out["beta"]:
            raise ClassificationError("cone-x^3 matching failed")
    else:
        # A = l xy - e y^2, B = d x^2 + e xy, cone = (l + d) x^2 y
        if out["A20"] != 0:
            raise ClassificationError("cone-x^2y matching failed: x^2 in A")
        out["l"] = out["A11"]
        out["eps"] = -out["A02"]
        out["delta"] = out["B20"]
        if out["B11"] != out["eps"]:
            raise ClassificationError("cone-x^2y matching failed")
    return out


def _cone_to_axes(pipe: _Pipeline, lines):
    """Linear map sending the given cone lines (linear forms in x, y) to
    the coordinate axes: first line to x = 0, second to y = 0."""
    l1, l2 = lines
    p, q = _lin_coeff(l1, 0), _lin_coeff(l1, 1)
    if l2 is None:
        col2 = (q, -p)
        col1 = (Fraction(1), Fraction(0)) if p != 0 else (Fraction(0),
                                                          Fraction(1))
    else:
        p2, q2 = _lin_coeff(l2, 0), _lin_coeff(l2, 1)
        col2 = (q, -p)       # ker l1: second basis vector -> line l1 = x-axis?
        col1 = (q2, -p2)
    T = ProjectiveMap([[col1[0], col2[0], 0], [col1[1], col2[1], 0],
                       [0, 0, 1]])
    pipe.apply("cone-lines-to-axes", T)


def _one_line_branch(pipe: _Pipeline) -> str:
    P, Q = pipe.pair()
    cone = tangent_cone_at_origin(P, Q)
    line = squarefree_part(cone)
    if line.total_degree() != 1:
        raise ClassificationError("cone is not a single line")
    _cone_to_axes(pipe, (line, None))
    pr = _null_params(*pipe.pair(), shape="one")
    if pr["l"] == 0:
        raise ClassificationError("cone coefficient vanished")
    # single singularity forces beta = 0 and a nonzero y^2 tangency
    lam_inv = cinv(pr["l"])
    beta = pr["beta"] * lam_inv
    phi02 = pr["phi02"] * lam_inv
    if beta != 0:
        raise ClassificationError("y^2 differential coefficient nonzero: "
                                  "not a single-singularity foliation")
    if phi02 == 0:
        raise ClassificationError("infinity tangency coefficient vanished: "
                                  "not a single-singularity foliation")
    s = _square_root(phi02)
    pipe.apply("scale-tangency-to-unit",
               ProjectiveMap.diagonal(s, _one_like(s), _one_like(s)))
    pr = _rescaled_one(pipe)
    if pr["phi11"] != 0:
        half = pr["phi11"] * Fraction(1, 2)
        pipe.apply("shear-kill-xy-tangency", ProjectiveMap(
            [[1, 0, 0], [-half, 1, 0], [0, 0, 1]]))
        pr = _rescaled_one(pipe)
        if pr["phi11"] != 0:
            raise ClassificationError("phi11 normalization failed")
    alpha = pr["alpha"]
    if pr["phi20"] != 0:
        if alpha == 0:
            pipe.apply("projective-kill-x2-tangency",
                       ProjectiveMap.chart_division(0, pr["phi20"]))
        else:
            pipe.apply("projective-kill-x2-tangency",
                       ProjectiveMap.chart_division(
                           -pr["phi20"] * cinv(alpha), 0))
        pr = _rescaled_one(pipe)
        if pr["phi20"] != 0:
            raise ClassificationError("phi20 normalization failed")
    alpha = pr["alpha"]
    if alpha == 0:
        return "F1"
    pipe.apply("scale-linear-term-to-unit",
               ProjectiveMap.diagonal(alpha ** 3, alpha ** 2, _one_like(alpha)))
    pr = _rescaled_one(pipe)
    if pr["alpha"] != 1:
        raise ClassificationError("alpha normalization failed")
    return "F2"


def _rescaled_one(pipe):
    pr = _null_params(*pipe.pair(), shape="one")
    if pr["l"] == 0:
        raise ClassificationError("cone coefficient vanished")
    inv = cinv(pr["l"])
    return {k: (v * inv if k != "l" else v) for k, v in pr.items()}


def _two_line_branch(pipe: _Pipeline) -> str:
    P, Q = pipe.pair()
    cone = tangent_cone_at_origin(P, Q)
    # double line: gcd of the cone with its partial derivatives
    g = gcd(gcd(cone, cone.partial("x")), cone.partial("y"))
    if g.total_degree() != 1:
        raise ClassificationError("cone is not a double line plus a line")
    double = g
    simple = divexact(cone, g * g)
    if simple.total_degree() != 1:
        raise ClassificationError("cone residual is not a line")
    _cone_to_axes(pipe, (double, simple))
    pr = _null_params(*pipe.pair(), shape="two")
    lam_inv = cinv(pr["l"]) if pr["l"] != 0 else None
    if lam_inv is None:
        raise ClassificationError("xy coefficient vanished")
    eps = pr["eps"] * lam_inv
    delta = pr["delta"] * lam_inv
    phi20 = pr["phi20"] * lam_inv
    phi02 = pr["phi02"] * lam_inv
    if phi20 == 0 or phi02 == 0 or eps != 0 or delta != 0:
        raise ClassificationError("single-singularity constraints failed in "
                                  "the two-line branch")
    s1 = cinv(phi20)
    t = _square_root(phi20 * phi02)
    s2 = cinv(t)
    one = _one_like(t)
    pipe.apply("scale-tangencies-to-unit",
               ProjectiveMap.diagonal(s1 * one, s2, one))
    pr = _rescaled_two(pipe)
    if pr["phi20"] != 1 or pr["phi02"] != 1:
        raise ClassificationError("tangency scaling failed")
    if pr["phi11"] != 0:
        pipe.apply("projective-kill-xy-tangency",
                   ProjectiveMap.chart_division(0, pr["phi11"]))
        pr = _rescaled_two(pipe)
        if pr["phi11"] != 0:
            raise ClassificationError("phi11 normalization failed")
    return "F3"


def _rescaled_two(pipe):
    pr = _null_params(*pipe.pair(), shape="two")
    if pr["l"] == 0:
        raise ClassificationError("xy coefficient vanished")
    inv = cinv(pr["l"])
    return {k: (v * inv if k != "l" else v) for k, v in pr.items()}


def _square_root(c):
    if isinstance(c, FieldElement):
        if c.is_rational():
            c = c.rational_value()
        else:
            raise ClassificationError("square root needed over an extension "
                                      "field (tower not supported)")
    r = rational_sqrt(Fraction(c))
    if r is not None and r != 0:
        return r
    K = NumberField([-Fraction(c), 0, 1], var="r2")
    return K.gen()


# -- direct recognition ------------------------------------------------------------


def recognize_normal_form(F: Foliation) -> Optional[str]:
    """Name of the catalog normal form equal to F up to scalar, F0(lam)
    included; None if no catalog form matches."""
    from . import catalog
    for name in ("F1", "F2", "F3", "F4", "F5", "F6", "F7", "FJ", "Fprime",
                 "F4perp", "radial"):
        if F == catalog.get(name):
            return name
    if F.degree == 2:
        aff = F.affine("Z")
        P, Q = aff.P, aff.Q
        if set(P.terms) == {(0, 1)}:
            c = P.coefficient((0, 1))
            lam = Q.coefficient((1, 0)) * cinv(c)
            target = c * (lam * Polynomial.variable("x", P.vars)
                          + Polynomial.variable("y", P.vars) ** 2)
            if Q == target and isinstance(lam, Fraction):
                return "F0(%s)" % lam
    return None
