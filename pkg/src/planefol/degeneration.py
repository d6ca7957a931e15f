"""One-parameter-subgroup limits, the inflection criterion, and the
constructive orbit degenerations.

phi_eps = (eps^{w1} x, eps^{w2} y) turns a form into a finite sum of
eps-graded pieces; the trace records the minimal exponent k, the limit
coefficient form, and the maps identifying the limit with a catalog
class.  Membership in the exceptional set is decided by the reduced flex
locus: a foliation lies outside it iff the locus is nonconstant.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Dict, List, Optional, Tuple

from .field import Coefficient, FieldElement, NumberField, cinv, rational_sqrt
from .foliation import AVARS, Foliation, FoliationError, ProjectiveMap
from .invariants import FlexReport, flex_determinant, verify_invariant_curve
from .poly import Polynomial, divexact, gcd, rational_roots, squarefree_part
from .singular import baum_bott, jet_type, singular_points


class DegenerationError(RuntimeError):
    pass


class InconclusiveSearch(RuntimeError):
    """No rational witness point found within the search bounds; this does
    not decide membership in the exceptional set."""


@dataclass
class DegenerationTrace:
    pre: ProjectiveMap
    weights: Tuple[int, int]
    valuation: int
    limit: Foliation
    expansion: Dict[int, Tuple[Polynomial, Polynomial]]
    degree_preserving: bool
    recognized: Optional[str] = None
    identification: Optional[ProjectiveMap] = None
    lam: Optional[Coefficient] = None

    def to_json(self) -> dict:
        d = {
            "pre": self.pre.to_json(),
            "weights": list(self.weights),
            "valuation": self.valuation,
            "limit": self.limit.to_json(),
            "degree_preserving": self.degree_preserving,
        }
        if self.recognized is not None:
            d["recognized"] = self.recognized
        if self.identification is not None:
            d["identification"] = self.identification.to_json()
        if self.lam is not None:
            d["lambda"] = str(self.lam)
        return d


def monomial_limit(F: Foliation, pre: ProjectiveMap,
                   weights: Tuple[int, int]) -> DegenerationTrace:
    """Expand phi_eps^*(pre^* omega) by eps-degree and keep the lowest
    piece, with common factors removed."""
    w1, w2 = weights
    if w1 == 0 and w2 == 0:
        raise DegenerationError("weights must not both vanish")
    G = F.pullback(pre)
    aff = G.affine("Z")
    buckets: Dict[int, list] = {}
    for src, slot, extra in ((aff.P, 0, w1), (aff.Q, 1, w2)):
        for (i, j), c in src.terms.items():
            k = w1 * i + w2 * j + extra
            b = buckets.setdefault(k, [{}, {}])
            b[slot][(i, j)] = c
    expansion = {k: (Polynomial(AVARS, b[0]), Polynomial(AVARS, b[1]))
                 for k, b in sorted(buckets.items())}
    kmin = min(expansion)
    P, Q = expansion[kmin]
    if not P.is_zero() and not Q.is_zero():
        g = gcd(P, Q)
        if not g.is_constant():
            P, Q = divexact(P, g), divexact(Q, g)
    try:
        limit = Foliation.from_affine(P, Q)
    except FoliationError as e:
        raise DegenerationError("limit form is degenerate: %s" % e)
    return DegenerationTrace(
        pre=pre, weights=(w1, w2), valuation=kmin, limit=limit,
        expansion=expansion,
        degree_preserving=(limit.degree == F.degree))


def evaluate_family(trace: DegenerationTrace, eps: Fraction) -> Foliation:
    """The family member at a concrete eps, from the stored expansion;
    eps^{-k} phi_eps^* omega at eps equals this foliation exactly."""
    P = Polynomial.zero(AVARS)
    Q = Polynomial.zero(AVARS)
    for k, (Pk, Qk) in trace.expansion.items():
        s = eps ** (k - trace.valuation)
        P = P + s * Pk
        Q = Q + s * Qk
    return Foliation.from_affine(P, Q)


def property_P_check(F: Foliation, chart: str = "Z"):
    """(holds, alpha, beta): nonzero constant on dx; dy has zero constant
    and zero y-coefficient and nonzero y^2-coefficient."""
    aff = F.affine(chart)
    alpha = aff.P.coefficient((0, 0))
    beta = aff.Q.coefficient((0, 2))
    ok = (alpha != 0 and aff.Q.coefficient((0, 0)) == 0
          and aff.Q.coefficient((0, 1)) == 0 and beta != 0)
    return ok, alpha, beta


def in_sigma(F: Foliation) -> bool:
    """True iff the reduced flex locus is constant (no inflection points
    outside invariant lines)."""
    return flex_determinant(F).reduced_is_constant()


FLEX_GRID = [Fraction(n, d) for d in (1, 2, 3)
             for n in range(-6 * d, 6 * d + 1)]


def degenerate_to_F1(F: Foliation) -> DegenerationTrace:
    """Move an ordinary inflection point to the origin with vertical leaf
    tangent and run the (3,1)-subgroup; the limit classifies as the
    cuspidal-pencil class."""
    report = flex_determinant(F)
    if report.reduced_is_constant():
        raise DegenerationError(
            "the reduced flex locus is empty; the foliation lies in the "
            "exceptional set and does not degenerate this way")
    hred = report.reduced
    one = Polynomial.constant(AVARS, 1)
    x, y = Polynomial.generators(AVARS)
    h = hred.substitute({"X": x, "Y": y, "Z": one})
    aff = F.affine("Z")
    seen = set()
    for m in _rational_points_on_curve(h):
        if m in seen:
            continue
        seen.add(m)
        P0 = aff.P.evaluate({"x": m[0], "y": m[1]})
        Q0 = aff.Q.evaluate({"x": m[0], "y": m[1]})
        if P0 == 0 and Q0 == 0:
            continue  # singular point
        pre = _flex_normalization(m, P0, Q0)
        G = F.pullback(pre)
        ok, alpha, beta = property_P_check(G)
        if not ok:
            continue  # not an ordinary inflection point
        trace = monomial_limit(F, pre, (3, 1))
        if trace.valuation != 3:
            continue
        from .classify import ClassificationError, classify_single_singularity
        try:
            cert = classify_single_singularity(trace.limit)
        except ClassificationError:
            continue
        if cert.class_id != "F1":
            continue
        trace.recognized = "F1"
        trace.identification = cert.conjugation
        return trace
    raise InconclusiveSearch(
        "no rational ordinary inflection point found within the search "
        "grid; this is not a proof of membership in the exceptional set")


def _rational_points_on_curve(h: Polynomial):
    """Rational points on h = 0 from intersections with a grid of vertical
    and horizontal lines."""
    x, y = Polynomial.generators(AVARS)
    for c in FLEX_GRID:
        for fixed, var in (("x", "y"), ("y", "x")):
            sub = {fixed: Polynomial.constant(AVARS, c), var:
                   Polynomial.variable(var, AVARS)}
            hv = h.substitute(sub)
            if hv.is_zero():
                continue
            if hv.degree_in(var) == 0:
                continue
            roots, _ = rational_roots(hv, var)
            for r in roots:
                yield (c, r) if fixed == "x" else (r, c)


def _flex_normalization(m, P0, Q0) -> ProjectiveMap:
    """Translate m to the origin and make the leaf tangent vertical."""
    translate = ProjectiveMap.translation(m[0], m[1])
    # substitution x -> a x + b y, y -> c x + d y with (b, d) killing the
    # new dy-coefficient at the origin and (a, c) keeping it regular
    a, c = P0, Q0
    b, d = Q0, -P0
    linear = ProjectiveMap([[a, b, 0], [c, d, 0], [0, 0, 1]])
    return translate.compose(linear)


def degenerate_to_F0(F: Foliation, point3) -> DegenerationTrace:
    """Blow down along the (2,1)-subgroup at a simple singular point; the
    limit is the one-parameter family member with lambda the eigenvalue
    ratio, tied to the Baum-Bott index by BB = 2 - lambda - 1/lambda."""
    jt = jet_type(F, point3)
    if jt.kind != "nondegenerate":
        raise DegenerationError("the point must be a simple singularity")
    bb = baum_bott(F, point3)
    fld = None
    for c in point3:
        if isinstance(c, FieldElement):
            fld = c.field
    G = F if fld is None else F.promote(fld)
    chart, (x0, y0) = _chart_coords(point3)
    if chart != "Z":
        move = _chart_swap(chart)
        G = G.pullback(move)
        pre = move
        aff = G.affine("Z")
        # recompute affine coordinates of the moved point
        x0, y0 = _moved_coords(point3, chart)
    else:
        pre = ProjectiveMap.identity()
    pre = pre.compose(ProjectiveMap.translation(x0, y0))
    G = (F if fld is None else F.promote(fld)).pullback(pre)
    aff = G.affine("Z")
    M = _linear_matrix(aff.P, aff.Q)
    tr = M[0][0] + M[1][1]
    det = M[0][0] * M[1][1] - M[0][1] * M[1][0]
    lams = _eigenvalues(tr, det)
    if lams is None:
        raise DegenerationError(
            "irrational eigenvalues over an extension point need a tower; "
            "pass rational coordinates or a quadratic-orbit point")
    e1, e2 = lams
    if e1 == e2:
        # equal eigenvalues (exactly the BB = 4 case): the jet aligns only
        # when the linear part is scalar, and then any basis aligns it
        if M[0][1] != 0 or M[1][0] != 0 or M[0][0] != M[1][1]:
            raise DegenerationError(
                "equal eigenvalues with a nondiagonalizable linear part; "
                "the jet cannot be aligned")
        one, zero = Fraction(1), Fraction(0)
        alignments = [((one, zero), (zero, one)),
                      ((zero, one), (one, zero)),
                      ((one, one), (zero, one)),
                      ((one, zero), (one, one)),
                      ((one, -one), (one, one))]
    else:
        v1, v2 = _eigvec2(M, e1), _eigvec2(M, e2)
        if v1 is None or v2 is None or _collinear(v1, v2):
            raise DegenerationError("non-semisimple linear part")
        alignments = [(v1, v2), (v2, v1)]
    base = F if fld is None else F.promote(fld)
    chosen = None
    for v1, v2 in alignments:
        align = ProjectiveMap([[v1[0], v2[0], 0], [v1[1], v2[1], 0],
                               [0, 0, 1]])
        cand = pre.compose(align)
        G = base.pullback(cand)
        aff = G.affine("Z")
        alpha = aff.P.coefficient((0, 1))
        beta = aff.Q.coefficient((1, 0))
        gamma = aff.Q.coefficient((0, 2))
        if aff.P.coefficient((1, 0)) != 0 or aff.Q.coefficient((0, 1)) != 0:
            raise DegenerationError("jet alignment failed")
        if alpha == 0 or beta == 0:
            raise DegenerationError("point is not simple after alignment")
        # gamma = 0 exactly when the aligned vertical axis is invariant
        xline = Polynomial.variable("x", AVARS)
        axis_invariant, _ = verify_invariant_curve(G, xline)
        if (gamma == 0) != axis_invariant:
            raise ArithmeticError("tangency coefficient and invariant-line "
                                  "test disagree")
        if gamma != 0:
            chosen = (cand, alpha, beta, gamma)
            break
    if chosen is None:
        raise DegenerationError(
            "an invariant line passes through the point along every "
            "admissible alignment; the blow-down degenerates")
    pre, alpha, beta, gamma = chosen
    scale = ProjectiveMap.diagonal(gamma * cinv(alpha), _one(gamma), _one(gamma))
    pre = pre.compose(scale)
    trace = monomial_limit(base, pre, (2, 1))
    lam = beta * cinv(alpha)
    if trace.valuation != 3:
        raise DegenerationError("unexpected valuation in the blow-down")
    expect = _f0_of(lam)
    if trace.limit != expect:
        raise DegenerationError("limit does not match the one-parameter "
                                "family member")
    # Baum-Bott consistency: BB = 2 - lam - 1/lam exactly
    if bb != 2 - lam - cinv(lam):
        raise ArithmeticError("Baum-Bott identity failed")
    trace.lam = lam
    trace.recognized = "F0(%s)" % lam
    if lam == -1:
        trace.identification = F5_FROM_F0M1
    return trace


def _one(c):
    return c.field.one() if isinstance(c, FieldElement) else Fraction(1)


def _f0_of(lam) -> Foliation:
    x, y = Polynomial.generators(AVARS)
    P = Polynomial.variable("y", AVARS)
    Q = lam * x + y * y
    if isinstance(lam, FieldElement):
        P = P.promote(lam.field)
    return Foliation.from_affine(P, Q)


#: pullback(F5, this) equals F0(-1) exactly
F5_FROM_F0M1 = ProjectiveMap([[0, 0, 1], [0, 1, 0], [-1, 0, 0]])


def _chart_coords(point3):
    p = tuple(point3)
    if p[2] != 0:
        inv = cinv(p[2])
        return "Z", (p[0] * inv, p[1] * inv)
    if p[1] != 0:
        inv = cinv(p[1])
        return "Y", (p[0] * inv, p[2] * inv)
    inv = cinv(p[0])
    return "X", (p[1] * inv, p[2] * inv)


def _chart_swap(chart: str) -> ProjectiveMap:
    """A coordinate permutation carrying the named chart to Z."""
    if chart == "Y":
        return ProjectiveMap([[1, 0, 0], [0, 0, 1], [0, 1, 0]])
    return ProjectiveMap([[0, 0, 1], [0, 1, 0], [1, 0, 0]])


def _moved_coords(point3, chart):
    _, (x0, y0) = _chart_coords(point3)
    return x0, y0


def _linear_matrix(P, Q):
    def lin(p, i):
        return p.coefficient(tuple(1 if k == i else 0 for k in range(2)))
    return [[lin(Q, 0), lin(Q, 1)], [-lin(P, 0), -lin(P, 1)]]


def _eigenvalues(tr, det):
    disc = tr * tr - 4 * det
    if isinstance(disc, FieldElement):
        if not disc.is_rational():
            return None
        disc = disc.rational_value()
        s = rational_sqrt(Fraction(disc))
        if s is None:
            return None
        half = Fraction(1, 2)
        return ((tr + s) * half, (tr - s) * half)
    s = rational_sqrt(Fraction(disc))
    if s is None:
        K = NumberField([-Fraction(disc), 0, 1], var="d2")
        s = K.gen()
        tr = K.element([tr])
    half = Fraction(1, 2)
    return ((tr + s) * half, (tr - s) * half)


def _eigvec2(M, lam):
    a, b = M[0][0] - lam, M[0][1]
    c, d = M[1][0], M[1][1] - lam
    if b != 0 or a != 0:
        return (b, -a)
    if c != 0 or d != 0:
        return (d, -c)
    return None


def _collinear(v1, v2):
    return v1[0] * v2[1] - v1[1] * v2[0] == 0


# -- catalog closure witnesses -----------------------------------------------------


@dataclass
class MonomialWitness:
    pre: ProjectiveMap
    weights: Tuple[int, int]
    target: str
    identification: ProjectiveMap  # pullback(catalog[target], map) == limit

    def verify(self, F: Foliation) -> DegenerationTrace:
        from . import catalog
        trace = monomial_limit(F, self.pre, self.weights)
        tgt = catalog.get(self.target)
        if tgt.pullback(self.identification) != trace.limit:
            raise DegenerationError(
                "stored identification map failed for target %s" % self.target)
        trace.recognized = self.target
        trace.identification = self.identification
        return trace


@dataclass
class FamilyWitness:
    """An explicit algebraic family whose boundary member is the target and
    whose generic members are conjugate to the source."""

    family: "callable"          # eps -> Foliation
    target: str
    source_class: str
    samples: Tuple[Fraction, ...]

    def verify(self, F: Foliation) -> List[str]:
        from . import catalog
        from .classify import classify_single_singularity
        if self.family(Fraction(0)) != catalog.get(self.target):
            raise DegenerationError("family boundary is not the target")
        if self.family(Fraction(1)) != F:
            raise DegenerationError("family does not pass through the source")
        for s in self.samples:
            cert = classify_single_singularity(self.family(s))
            if cert.class_id != self.source_class:
                raise DegenerationError(
                    "family member at %s is not in the source class" % s)
        return [self.target]


@dataclass
class AutoF1Witness:
    def verify(self, F: Foliation) -> DegenerationTrace:
        return degenerate_to_F1(F)


def closure_report(name: str) -> dict:
    """Replay and verify the stored degeneration witnesses of a catalog
    entry; returns the verified reachable orbit classes."""
    from . import catalog
    F = catalog.get(name)
    witnesses = catalog.degeneration_witnesses(name)
    reached = []
    details = []
    for w in witnesses:
        out = w.verify(F)
        if isinstance(out, DegenerationTrace):
            reached.append(out.recognized)
            details.append(out.to_json())
        else:
            reached.extend(out)
            details.append({"family_target": out})
    return {"entry": name, "reaches": reached, "witnesses": details}
