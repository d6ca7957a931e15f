"""Foliation data model: homogeneous/affine presentations, pullbacks, duals.

A degree-N foliation of the projective plane is stored as a homogeneous
1-form a dX + b dY + c dZ with components of degree N+1, no common factor,
satisfying the Euler identity aX + bY + cZ = 0.  Forms are kept in a
canonical scaling so that equality of foliations is plain equality.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Dict, List, Optional, Sequence, Tuple

from .field import Coefficient, NumberField, cinv
from .linalg import mat_adjugate3, mat_det3, mat_mul, solve
from .poly import Polynomial, divexact, gcd, try_divexact

HVARS = ("X", "Y", "Z")
AVARS = ("x", "y")

# chart name -> (first affine var, second affine var) as homogeneous vars
CHART_COORDS = {"Z": ("X", "Y"), "Y": ("X", "Z"), "X": ("Y", "Z")}


class FoliationError(ValueError):
    pass


def _hpoly(terms) -> Polynomial:
    return Polynomial(HVARS, terms)


def _homogenize_pair(P: Polynomial, Q: Polynomial, chart: str):
    """Homogeneous triple of the affine form P dx + Q dy in the chart."""
    u, v = CHART_COORDS[chart]
    w = chart
    d = max(P.total_degree(), Q.total_degree())
    if d < 0:
        raise FoliationError("zero form")

    def homog(p):
        out = {}
        iu, iv, iw = (HVARS.index(u), HVARS.index(v), HVARS.index(w))
        for (i, j), c in p.terms.items():
            e = [0, 0, 0]
            e[iu], e[iv], e[iw] = i, j, d - i - j
            out[tuple(e)] = c
        return _hpoly(out)

    Ph, Qh = homog(P), homog(Q)
    W = Polynomial.variable(w, HVARS)
    U = Polynomial.variable(u, HVARS)
    V = Polynomial.variable(v, HVARS)
    comps = {u: W * Ph, v: W * Qh, w: -(U * Ph + V * Qh)}
    return [comps[name] for name in HVARS]


class ProjectiveMap:
    """Invertible 3x3 matrix acting on forms by coordinate substitution."""

    __slots__ = ("rows",)

    def __init__(self, rows):
        m = tuple(tuple(Fraction(c) if isinstance(c, int) else c for c in r)
                  for r in rows)
        if len(m) != 3 or any(len(r) != 3 for r in m):
            raise ValueError("need a 3x3 matrix")
        self.rows = m
        if mat_det3([list(r) for r in m]) == 0:
            raise ValueError("projective map must be invertible")

    @classmethod
    def identity(cls) -> "ProjectiveMap":
        return cls([[1, 0, 0], [0, 1, 0], [0, 0, 1]])

    @classmethod
    def diagonal(cls, d1, d2, d3) -> "ProjectiveMap":
        return cls([[d1, 0, 0], [0, d2, 0], [0, 0, d3]])

    @classmethod
    def affine_linear(cls, a, b, c, d) -> "ProjectiveMap":
        """Substitution x -> a x + b y, y -> c x + d y in the chart Z=1."""
        return cls([[a, b, 0], [c, d, 0], [0, 0, 1]])

    @classmethod
    def translation(cls, x0, y0) -> "ProjectiveMap":
        """Substitution x -> x + x0, y -> y + y0 (moves (x0, y0) to 0 on
        points, since points transform by the inverse)."""
        return cls([[1, 0, x0], [0, 1, y0], [0, 0, 1]])

    @classmethod
    def chart_division(cls, u, v) -> "ProjectiveMap":
        """Substitution x -> x/(1+ux+vy), y -> y/(1+ux+vy)."""
        return cls([[1, 0, 0], [0, 1, 0], [u, v, 1]])

    def compose(self, other: "ProjectiveMap") -> "ProjectiveMap":
        """Matrix product; pullback(f, S.compose(T)) equals
        pullback(pullback(f, S), T)."""
        return ProjectiveMap(mat_mul([list(r) for r in self.rows],
                                     [list(r) for r in other.rows]))

    def inverse(self) -> "ProjectiveMap":
        return ProjectiveMap(mat_adjugate3([list(r) for r in self.rows]))

    def det(self):
        return mat_det3([list(r) for r in self.rows])

    def apply_point(self, p: Sequence) -> Tuple:
        """Image M.p of a point in homogeneous coordinates."""
        return tuple(sum((r[i] * p[i] for i in range(3)), Fraction(0))
                     for r in self.rows)

    def normalized(self) -> "ProjectiveMap":
        for r in self.rows:
            for c in r:
                if c != 0:
                    inv = cinv(c)
                    return ProjectiveMap([[x * inv for x in row]
                                          for row in self.rows])
        raise ValueError("zero matrix")

    def promote(self, field: NumberField) -> "ProjectiveMap":
        from .field import promote
        return ProjectiveMap([[promote(c, field) for c in r]
                              for r in self.rows])

    def __eq__(self, other):
        if not isinstance(other, ProjectiveMap):
            return NotImplemented
        return self.normalized().rows == other.normalized().rows

    def __repr__(self):
        return "ProjectiveMap(%s)" % (self.rows,)

    def to_json(self) -> list:
        return [[str(c) for c in r] for r in self.rows]

    def linear_forms(self) -> List[Polynomial]:
        gens = Polynomial.generators(HVARS)
        return [sum((r[i] * gens[i] for i in range(3)),
                    Polynomial.zero(HVARS)) for r in self.rows]


class AffineForm:
    """P dx + Q dy in one affine chart, with the A/B/phi split."""

    def __init__(self, P: Polynomial, Q: Polynomial, chart: str, degree: int):
        self.P = P
        self.Q = Q
        self.chart = chart
        self.degree = degree
        self._split = None

    def split(self):
        """(A, B, phi) with form = A dx + B dy + phi (x dy - y dx)."""
        if self._split is not None:
            return self._split
        n = self.degree
        x, y = Polynomial.generators(AVARS)
        Ptop = self.P.homogeneous_part(n + 1)
        Qtop = self.Q.homogeneous_part(n + 1)
        if Ptop.is_zero() and Qtop.is_zero():
            phi = Polynomial.zero(AVARS)
        else:
            phi1 = try_divexact(-Ptop, y)
            phi2 = try_divexact(Qtop, x)
            if phi1 is None or phi2 is None or phi1 != phi2:
                raise FoliationError("degree-%d part is not a multiple of "
                                     "x dy - y dx" % (n + 1))
            phi = phi1
        A = self.P + y * phi
        B = self.Q - x * phi
        if A.total_degree() > n or B.total_degree() > n:
            raise FoliationError("affine split failed")
        self._split = (A, B, phi)
        return self._split

    def line_at_infinity_invariant(self) -> bool:
        return self.split()[2].is_zero()

    def vector_field(self) -> Tuple[Polynomial, Polynomial]:
        """The tangent field (Q, -P)."""
        return (self.Q, -self.P)

    def text(self) -> str:
        return "(%s)*dx + (%s)*dy" % (self.P.text(), self.Q.text())

    def __repr__(self):
        return "AffineForm[%s=1](%s)" % (self.chart, self.text())


class Foliation:
    """Canonically-scaled reduced homogeneous 1-form on the plane."""

    __slots__ = ("a", "b", "c", "degree")

    def __init__(self, a: Polynomial, b: Polynomial, c: Polynomial,
                 degree: int):
        self.a, self.b, self.c = a, b, c
        self.degree = degree

    # -- constructors ------------------------------------------------------

    @classmethod
    def from_homogeneous(cls, a: Polynomial, b: Polynomial,
                         c: Polynomial) -> "Foliation":
        comps = [a, b, c]
        if all(p.is_zero() for p in comps):
            raise FoliationError("zero form")
        degs = {p.total_degree() for p in comps if not p.is_zero()}
        if len(degs) != 1 or any(not p.is_homogeneous() for p in comps):
            raise FoliationError("components must be homogeneous of a "
                                 "common degree")
        gens = Polynomial.generators(HVARS)
        euler = sum((p * g for p, g in zip(comps, gens)),
                    Polynomial.zero(HVARS))
        if not euler.is_zero():
            raise FoliationError("Euler identity aX + bY + cZ = 0 fails")
        g = None
        for p in comps:
            if not p.is_zero():
                g = p if g is None else gcd(g, p)
        if not g.is_constant():
            comps = [divexact(p, g) for p in comps]
        d = max(p.total_degree() for p in comps if not p.is_zero())
        n = d - 1
        if n < 0:
            raise FoliationError("degenerate form")
        # canonical scaling: first nonzero component, graded-lex leading 1
        for p in comps:
            if not p.is_zero():
                inv = cinv(p.leading_coefficient())
                comps = [q * inv for q in comps]
                break
        return cls(comps[0], comps[1], comps[2], n)

    @classmethod
    def from_affine(cls, P: Polynomial, Q: Polynomial,
                    chart: str = "Z") -> "Foliation":
        if P.is_zero() and Q.is_zero():
            raise FoliationError("zero form")
        g = gcd(P, Q)
        if not g.is_constant():
            raise FoliationError("dx and dy components share the factor %s"
                                 % g)
        a, b, c = _homogenize_pair(P, Q, chart)
        return cls.from_homogeneous(a, b, c)

    # -- views -------------------------------------------------------------

    def components(self) -> Tuple[Polynomial, Polynomial, Polynomial]:
        return (self.a, self.b, self.c)

    def affine(self, chart: str = "Z") -> AffineForm:
        u, v = CHART_COORDS[chart]
        comp = dict(zip(HVARS, self.components()))
        one = Polynomial.constant(AVARS, 1)
        x, y = Polynomial.generators(AVARS)
        images = {u: x, v: y, chart: one}

        def restrict(p):
            return p.substitute(images)

        P, Q = restrict(comp[u]), restrict(comp[v])
        if P.is_zero() and Q.is_zero():
            raise FoliationError("form vanishes on chart %s=1" % chart)
        g = gcd(P, Q)
        if not g.is_constant():
            P, Q = divexact(P, g), divexact(Q, g)
        return AffineForm(P, Q, chart, self.degree)

    # -- group action ------------------------------------------------------

    def pullback(self, T: ProjectiveMap) -> "Foliation":
        """T*omega with common factors removed; degree can only drop
        through a common factor, which from_homogeneous detects."""
        lf = T.linear_forms()
        imgs = {v: lf[i] for i, v in enumerate(HVARS)}
        comps = [p.substitute(imgs) for p in self.components()]
        # d(T_i) contributes the transpose combination
        new = []
        for j in range(3):
            s = Polynomial.zero(HVARS)
            for i in range(3):
                s = s + T.rows[i][j] * comps[i]
            new.append(s)
        return Foliation.from_homogeneous(*new)

    def is_invariant_under(self, T: ProjectiveMap) -> bool:
        """True iff the pullback equals the same foliation (up to scalar),
        checked by cross products so no gcd over extensions is needed."""
        lf = T.linear_forms()
        imgs = {v: lf[i] for i, v in enumerate(HVARS)}
        comps = [p.substitute(imgs) for p in self.components()]
        new = []
        for j in range(3):
            s = Polynomial.zero(HVARS)
            for i in range(3):
                s = s + T.rows[i][j] * comps[i]
            new.append(s)
        old = self.components()
        for i in range(3):
            for j in range(i + 1, 3):
                if not (new[i] * old[j] - new[j] * old[i]).is_zero():
                    return False
        return True

    def promote(self, field: NumberField) -> "Foliation":
        return Foliation(self.a.promote(field), self.b.promote(field),
                         self.c.promote(field), self.degree)

    # -- dual vector field ---------------------------------------------------

    def dual_vector_field(self):
        """Homogeneous field Z = (E, F, G) of degree N with
        i_R i_Z (dX^dY^dZ) = omega up to scalar and gcd(E,F,G) = 1."""
        n = self.degree
        monos = _degree_monomials(n)
        nm = len(monos)
        # unknowns: E, F, G coefficients over the degree-n monomial basis
        eq_monos = _degree_monomials(n + 1)
        index = {m: k for k, m in enumerate(eq_monos)}
        rows = []
        rhs = []
        targets = self.components()
        # FZ - GY = a ; GX - EZ = b ; EY - FX = c
        plans = [((1, 2), (2, 1), 0),   # (F*Z, -G*Y) = a
                 ((2, 0), (0, 2), 1),   # (G*X, -E*Z) = b
                 ((0, 1), (1, 0), 2)]   # (E*Y, -F*X) = c
        for (ppos, npos), _, tpos in [(pl[:2], None, pl[2]) for pl in plans]:
            pf, pv = ppos  # component pf multiplied by variable pv
            nf, nv = npos
            for em in eq_monos:
                row = [Fraction(0)] * (3 * nm)
                for k, m in enumerate(monos):
                    e = list(m)
                    e[pv] += 1
                    if tuple(e) == em:
                        row[pf * nm + k] += 1
                    e = list(m)
                    e[nv] += 1
                    if tuple(e) == em:
                        row[nf * nm + k] -= 1
                rows.append(row)
                rhs.append(targets[tpos].coefficient(em))
        sol = solve(rows, rhs)
        if sol is None:
            raise FoliationError("no dual vector field (degenerate form)")
        comps = []
        for f in range(3):
            comps.append(Polynomial(
                HVARS, {m: sol[f * nm + k] for k, m in enumerate(monos)}))
        E, F, G = comps
        # not collinear with the radial field
        X, Y, Zv = Polynomial.generators(HVARS)
        if (E * Y - F * X).is_zero() and (E * Zv - G * X).is_zero() \
                and (F * Zv - G * Y).is_zero():
            raise FoliationError("dual field collinear with the radial field")
        return (E, F, G)

    # -- equality, printing ---------------------------------------------------

    def __eq__(self, other):
        if not isinstance(other, Foliation):
            return NotImplemented
        return (self.a, self.b, self.c) == (other.a, other.b, other.c)

    def __hash__(self):
        return hash((self.a, self.b, self.c))

    def text(self) -> str:
        return "(%s)*dX + (%s)*dY + (%s)*dZ" % (
            self.a.text(), self.b.text(), self.c.text())

    def __repr__(self):
        return "Foliation(degree=%d, %s)" % (self.degree, self.text())

    def to_json(self) -> dict:
        aff = self.affine("Z")
        return {
            "degree": self.degree,
            "homogeneous": self.text(),
            "affine_chart_Z": aff.text(),
        }


def _degree_monomials(n: int):
    out = []
    for i in range(n, -1, -1):
        for j in range(n - i, -1, -1):
            out.append((i, j, n - i - j))
    return out


def radial_contraction(field3, vars=HVARS) -> Tuple[Polynomial, Polynomial,
                                                    Polynomial]:
    """i_R i_Z (dX^dY^dZ) for a homogeneous field Z = (E, F, G)."""
    E, F, G = field3
    X, Y, Z = Polynomial.generators(vars)
    return (F * Z - G * Y, G * X - E * Z, E * Y - F * X)
