"""Isotropy Lie algebras, orbit dimensions, symmetry-derived integrals.

The Lie algebra of the automorphism group of the plane is 8-dimensional; in
a fixed affine chart it is spanned by d/dx, d/dy, x d/dx, y d/dx, x d/dy,
y d/dy, xR, yR with R the radial field.  A field X is an infinitesimal
symmetry of the foliation iff L_X(omega) wedge omega = 0, a linear condition
on the 8 coordinates, so the isotropy algebra is an exact kernel
computation.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import List, Optional, Sequence, Tuple

from .field import cinv
from .foliation import AVARS, Foliation, ProjectiveMap
from .linalg import kernel_basis
from .poly import Polynomial, divexact, gcd

X, Y = Polynomial.generators(AVARS)

#: basis of the chart presentation of the automorphism algebra
BASIS_FIELDS: Tuple[Tuple[Polynomial, Polynomial], ...] = (
    (Polynomial.constant(AVARS, 1), Polynomial.zero(AVARS)),   # d/dx
    (Polynomial.zero(AVARS), Polynomial.constant(AVARS, 1)),   # d/dy
    (X, Polynomial.zero(AVARS)),                               # x d/dx
    (Y, Polynomial.zero(AVARS)),                               # y d/dx
    (Polynomial.zero(AVARS), X),                               # x d/dy
    (Polynomial.zero(AVARS), Y),                               # y d/dy
    (X * X, X * Y),                                            # x R
    (X * Y, Y * Y),                                            # y R
)

BASIS_NAMES = ("d/dx", "d/dy", "x d/dx", "y d/dx", "x d/dy", "y d/dy",
               "x R", "y R")


@dataclass
class VectorField:
    """Polynomial plane vector field u d/dx + v d/dy."""

    u: Polynomial
    v: Polynomial

    @classmethod
    def from_coordinates(cls, coords: Sequence) -> "VectorField":
        u = Polynomial.zero(AVARS)
        v = Polynomial.zero(AVARS)
        for c, (bu, bv) in zip(coords, BASIS_FIELDS):
            if c != 0:
                u = u + c * bu
                v = v + c * bv
        return cls(u, v)

    def apply(self, p: Polynomial) -> Polynomial:
        return self.u * p.partial(p.vars[0]) + self.v * p.partial(p.vars[1])

    def is_zero(self) -> bool:
        return self.u.is_zero() and self.v.is_zero()

    def __repr__(self):
        return "VectorField(%s, %s)" % (self.u, self.v)


def lie_bracket(A: VectorField, B: VectorField) -> VectorField:
    """[A, B] = A(B) - B(A), componentwise on the coefficients."""
    if A.u.vars != B.u.vars:
        raise ValueError("fields live in different charts")
    return VectorField(A.apply(B.u) - B.apply(A.u),
                       A.apply(B.v) - B.apply(A.v))


def symmetry_defect(F: Foliation, field: VectorField,
                    chart: str = "Z") -> Polynomial:
    """The polynomial whose vanishing says L_X omega wedge omega = 0."""
    aff = F.affine(chart)
    P, Q = aff.P, aff.Q
    xv, yv = P.vars
    u, v = field.u, field.v
    LP = field.apply(P) + P * u.partial(xv) + Q * v.partial(xv)
    LQ = field.apply(Q) + P * u.partial(yv) + Q * v.partial(yv)
    return LP * Q - LQ * P


@dataclass
class IsotropyAlgebra:
    basis: List[VectorField]
    coordinates: List[List[Fraction]]  # 8-vectors over the chart basis

    @property
    def dimension(self) -> int:
        return len(self.basis)

    @property
    def orbit_dimension(self) -> int:
        return 8 - len(self.basis)

    def to_json(self) -> dict:
        return {
            "dimension": self.dimension,
            "orbit_dimension": self.orbit_dimension,
            "basis": [[str(c) for c in v] for v in self.coordinates],
            "basis_fields": [str(b) for b in self.basis],
        }


def isotropy_algebra(F: Foliation, chart: str = "Z") -> IsotropyAlgebra:
    """Kernel of the linear map X -> L_X omega wedge omega on the
    8-dimensional automorphism algebra."""
    defects = [symmetry_defect(F, VectorField.from_coordinates(
        [1 if i == k else 0 for i in range(8)]), chart) for k in range(8)]
    monomials = sorted({e for d in defects for e in d.terms},
                       key=lambda e: (sum(e), e))
    rows = [[d.coefficient(m) for d in defects] for m in monomials]
    kern = kernel_basis(rows)
    basis = [VectorField.from_coordinates(v) for v in kern]
    # exactness check: every basis element is a symmetry
    for b in basis:
        if not symmetry_defect(F, b, chart).is_zero():
            raise ArithmeticError("kernel element fails the symmetry test")
    return IsotropyAlgebra(basis=basis, coordinates=kern)


def isotropy_contains(F: Foliation, T: ProjectiveMap) -> bool:
    """True iff the pullback of the foliation by T equals it up to scalar."""
    return F.is_invariant_under(T)


def contraction(F: Foliation, field: VectorField, chart: str = "Z") -> Polynomial:
    """omega(X) = P u + Q v in the chart."""
    aff = F.affine(chart)
    return aff.P * field.u + aff.Q * field.v


def symmetry_integral(F: Foliation, Xf: VectorField, Yf: VectorField,
                      chart: str = "Z") -> Tuple[Polynomial, Polynomial]:
    """The rational first integral omega(X)/omega(Y) in lowest terms.

    X and Y must be independent symmetries with nonzero contractions; the
    result is verified nonconstant and verified as a first integral.
    """
    if Xf.is_zero() or Yf.is_zero():
        raise ValueError("symmetries must be nonzero")
    if _proportional(Xf, Yf):
        raise ValueError("symmetries are not independent")
    for f in (Xf, Yf):
        if not symmetry_defect(F, f, chart).is_zero():
            raise ValueError("input field is not a symmetry")
    num = contraction(F, Xf, chart)
    den = contraction(F, Yf, chart)
    if num.is_zero() or den.is_zero():
        raise ValueError("a symmetry is tangent to the foliation "
                         "(zero contraction)")
    g = gcd(num, den)
    if not g.is_constant():
        num, den = divexact(num, g), divexact(den, g)
    if (num * den.leading_coefficient()
            - den * num.leading_coefficient()).is_zero():
        raise ValueError("the contraction ratio is constant")
    from .invariants import DarbouxFunction, verify_first_integral
    dar = DarbouxFunction([(num, Fraction(1)), (den, Fraction(-1))])
    if not verify_first_integral(F, dar, chart):
        raise ArithmeticError("contraction ratio failed the first-integral "
                              "verification")
    return num, den


def _proportional(A: VectorField, B: VectorField) -> bool:
    """Linear dependence over the constants, via the 8-coordinate vectors."""
    a = _field_coordinates(A)
    b = _field_coordinates(B)
    return all(a[i] * b[j] - a[j] * b[i] == 0
               for i in range(8) for j in range(i + 1, 8))


def affine_pair_certificate(alg: IsotropyAlgebra) -> Optional[Tuple[VectorField, VectorField]]:
    """For a 2-dimensional algebra, a basis (X, Y) with [X, Y] = Y;
    None if the algebra is abelian (which the structure theory excludes)."""
    if alg.dimension != 2:
        return None
    A, B = alg.basis
    C = lie_bracket(A, B)
    if C.is_zero():
        return None
    # write C = a A + b B by exact linear algebra on the 8-coordinates
    coords = _field_coordinates(C)
    rows = [[Fraction(alg.coordinates[0][i]), Fraction(alg.coordinates[1][i])]
            for i in range(8)]
    from .linalg import solve
    sol = solve(rows, coords)
    if sol is None:
        raise ArithmeticError("bracket left the isotropy algebra")
    a, b = sol
    if a == 0 and b == 0:
        return None
    # look for E = pA + qB, F = rA + sB with [E, F] = F; since
    # [E, F] = (ps - qr)(aA + bB), take r = a, s = b and ps - qr = 1,
    # which reads p b - q a = 1
    r, s = a, b
    if b != 0:
        p, q = 1 / Fraction(b), Fraction(0)
    else:
        p, q = Fraction(0), -1 / Fraction(a)
    E = VectorField(p * A.u + q * B.u, p * A.v + q * B.v)
    Ff = VectorField(r * A.u + s * B.u, r * A.v + s * B.v)
    chk = lie_bracket(E, Ff)
    if not (chk.u - Ff.u).is_zero() or not (chk.v - Ff.v).is_zero():
        raise ArithmeticError("affine normalization failed")
    return E, Ff


def _field_coordinates(V: VectorField) -> List[Fraction]:
    """Coordinates of a field in the 8-element chart basis."""
    cs = [Fraction(0)] * 8
    u, v = V.u, V.v
    # quadratic parts must be x*(px+qy), y*(px+qy)
    p = u.coefficient((2, 0))
    q = u.coefficient((1, 1))
    cs[6], cs[7] = p, q
    u2 = u - p * X * X - q * X * Y
    v2 = v - p * X * Y - q * Y * Y
    if u2.total_degree() > 1 or v2.total_degree() > 1:
        raise ValueError("field is not in the automorphism algebra")
    cs[0] = u2.coefficient((0, 0))
    cs[2] = u2.coefficient((1, 0))
    cs[3] = u2.coefficient((0, 1))
    cs[1] = v2.coefficient((0, 0))
    cs[4] = v2.coefficient((1, 0))
    cs[5] = v2.coefficient((0, 1))
    return [Fraction(c) for c in cs]


def orbit_dimension_scan(names: Sequence[str]) -> List[dict]:
    """Isotropy/orbit dimensions for catalog entries; the minimum orbit
    dimension 6 must be attained exactly by the entries conjugate to the
    two known closed-orbit models."""
    from . import catalog
    rows = []
    for name in names:
        F = catalog.get(name)
        alg = isotropy_algebra(F)
        rows.append({
            "name": name,
            "iso_dimension": alg.dimension,
            "orbit_dimension": alg.orbit_dimension,
        })
    dims = [r["orbit_dimension"] for r in rows]
    if dims and min(dims) == 6:
        attain = {r["name"] for r in rows if r["orbit_dimension"] == 6}
        allowed = {"F1", "F5", "Fprime", "F0(-1)"}
        if not attain <= allowed:
            raise ArithmeticError(
                "an unexpected catalog entry attained orbit dimension 6: %s"
                % sorted(attain - allowed))
    return rows
