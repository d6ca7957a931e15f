"""Isotropy algebras, brackets, symmetry integrals, orbit dimensions."""

import random
from fractions import Fraction

import pytest

from planefol import catalog
from planefol.field import NumberField
from planefol.foliation import Foliation, ProjectiveMap
from planefol.group import (
    BASIS_FIELDS, VectorField, affine_pair_certificate, contraction,
    isotropy_algebra, isotropy_contains, lie_bracket, orbit_dimension_scan,
    symmetry_integral,
)
from planefol.poly import Polynomial, divexact, gcd

X, Y = Polynomial.generators(("x", "y"))


def test_bracket_basics():
    xdx = VectorField(X, Polynomial.zero(("x", "y")))
    ddx = VectorField(Polynomial.constant(("x", "y"), 1),
                      Polynomial.zero(("x", "y")))
    br = lie_bracket(xdx, ddx)
    assert br.u == -1 * Polynomial.constant(("x", "y"), 1) and br.v.is_zero()


def test_bracket_radial_homogeneity():
    R = VectorField(X, Y)
    Z = VectorField(X * X + X * Y, Y * Y)  # homogeneous quadratic
    br = lie_bracket(R, Z)
    assert br.u == Z.u and br.v == Z.v


def test_isotropy_dimensions_catalog():
    expected = {"F1": 2, "F2": 1, "F3": 1, "F4": 0, "F5": 2, "F6": 0,
                "F7": 1, "F0(-2)": 1, "FJ": 0}
    for name, dim in expected.items():
        alg = isotropy_algebra(catalog.get(name))
        assert alg.dimension == dim, name
        assert alg.orbit_dimension == 8 - dim


def test_isotropy_dimension_bound_on_random_quadratics():
    # degree-2 foliations sampled in the A/B/phi presentation
    rng = random.Random(50)
    count = 0
    while count < 12:
        A = _rand_deg2(rng)
        B = _rand_deg2(rng)
        phi = Polynomial(("x", "y"), {(i, 2 - i): Fraction(rng.randint(-3, 3))
                                      for i in range(3)})
        P = A - Y * phi
        Q = B + X * phi
        if P.is_zero() or Q.is_zero() or not gcd(P, Q).is_constant():
            continue
        try:
            F = Foliation.from_affine(P, Q)
        except Exception:
            continue
        if F.degree != 2:
            continue
        assert isotropy_algebra(F).dimension <= 2
        count += 1


def _rand_deg2(rng):
    return Polynomial(("x", "y"), {(i, j): Fraction(rng.randint(-3, 3))
                                   for i in range(3) for j in range(3 - i)})


def test_affine_structure_of_dim2_algebras():
    for name in ("F1", "F5"):
        alg = isotropy_algebra(catalog.get(name))
        pair = affine_pair_certificate(alg)
        assert pair is not None
        E, Ff = pair
        br = lie_bracket(E, Ff)
        assert (br.u - Ff.u).is_zero() and (br.v - Ff.v).is_zero()


def test_isotropy_contains_printed_generators():
    for entry, _desc, maps in catalog.isotropy_generators():
        F = catalog.get(entry)
        for T in maps:
            assert isotropy_contains(F, T), entry
    K, maps3 = catalog.isotropy_generators_order3()
    F4K = catalog.omega4().promote(K)
    for T in maps3:
        assert isotropy_contains(F4K, T)


def test_isotropy_contains_generic_map_fails():
    T = ProjectiveMap([[1, 2, 0], [0, 1, 1], [1, 0, 1]])
    assert not isotropy_contains(catalog.omega1(), T)


def test_symmetry_integral_for_F1():
    alg = isotropy_algebra(catalog.omega1())
    Xf, Yf = alg.basis
    num, den = symmetry_integral(catalog.omega1(), Xf, Yf)
    # the ratio is a nonconstant rational first integral; check it is a
    # function of (y^3 - 3x^2)/x^3 via the Jacobian criterion
    known_n = Y ** 3 - 3 * X ** 2
    known_d = X ** 3
    j1 = num.partial("x") * den - num * den.partial("x")
    j2 = num.partial("y") * den - num * den.partial("y")
    k1 = known_n.partial("x") * known_d - known_n * known_d.partial("x")
    k2 = known_n.partial("y") * known_d - known_n * known_d.partial("y")
    assert (j1 * k2 - j2 * k1).is_zero()


def test_symmetry_integral_f5_dependence():
    alg = isotropy_algebra(catalog.omega5())
    num, den = symmetry_integral(catalog.omega5(), alg.basis[0], alg.basis[1])
    known_n = Y ** 2 - X
    known_d = X * Y
    j1 = num.partial("x") * den - num * den.partial("x")
    j2 = num.partial("y") * den - num * den.partial("y")
    k1 = known_n.partial("x") * known_d - known_n * known_d.partial("x")
    k2 = known_n.partial("y") * known_d - known_n * known_d.partial("y")
    assert (j1 * k2 - j2 * k1).is_zero()


def test_symmetry_integral_rejects_dependent_fields():
    alg = isotropy_algebra(catalog.omega1())
    with pytest.raises(ValueError):
        symmetry_integral(catalog.omega1(), alg.basis[0], alg.basis[0])


def test_exp_flows_of_basis_elements():
    # rational flows of the isotropy basis elements stay in the group
    F = catalog.omega1()
    # x R generates (x/(1-t x), y/(1-t x))
    for t in (Fraction(1), Fraction(-2), Fraction(1, 3)):
        T = ProjectiveMap.chart_division(-t, 0)
        assert isotropy_contains(F, T)
    # 3x d/dx + 2y d/dy generates (b^3 x, b^2 y) at b = e^t
    for b in (Fraction(2), Fraction(1, 5)):
        assert isotropy_contains(F, ProjectiveMap.diagonal(b ** 3, b ** 2, 1))


def test_orbit_dimension_scan():
    rows = orbit_dimension_scan(["F1", "F2", "F3", "F4", "F5", "F6", "F7",
                                 "F0(-2)", "FJ", "Fprime", "F0(-1)"])
    dims = {r["name"]: r["orbit_dimension"] for r in rows}
    assert dims["F1"] == 6 and dims["F5"] == 6
    assert min(dims.values()) == 6
