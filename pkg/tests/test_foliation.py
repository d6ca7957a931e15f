"""Foliation model: Euler identity, charts, pullbacks, dual fields."""

import random
from fractions import Fraction

import pytest

from planefol import catalog
from planefol.foliation import (
    AVARS, Foliation, FoliationError, HVARS, ProjectiveMap,
    radial_contraction,
)
from planefol.poly import Polynomial

X, Y = Polynomial.generators(AVARS)


def _euler(F):
    gens = Polynomial.generators(HVARS)
    return sum((p * g for p, g in zip(F.components(), gens)),
               Polynomial.zero(HVARS))


def test_from_affine_degrees():
    assert catalog.radial().degree == 0
    assert catalog.omega1().degree == 2
    assert catalog.jouanolou().degree == 2
    assert catalog.omega5().degree == 2
    assert catalog.omega4_perp().degree == 3


def test_euler_identity_everywhere():
    rng = random.Random(5)
    for name in ["F1", "F2", "F3", "F4", "F5", "FJ", "F4perp"]:
        F = catalog.get(name)
        assert _euler(F).is_zero()
        T = _rand_map(rng)
        assert _euler(F.pullback(T)).is_zero()


def test_shared_factor_rejected():
    with pytest.raises(FoliationError):
        Foliation.from_affine(X * Y, X * (X + Y))


def test_chart_roundtrip_all_charts():
    for name in ["F1", "F4", "F5", "FJ"]:
        F = catalog.get(name)
        for chart in "ZYX":
            try:
                aff = F.affine(chart)
            except FoliationError:
                continue
            G = Foliation.from_affine(aff.P, aff.Q, chart)
            assert G == F, (name, chart)


def test_pullback_right_action_random():
    rng = random.Random(17)
    F = catalog.omega2()
    for _ in range(8):
        T, S = _rand_map(rng), _rand_map(rng)
        assert F.pullback(T.compose(S)) == F.pullback(T).pullback(S)
    T = _rand_map(rng)
    assert F.pullback(T).pullback(T.inverse()) == F
    assert F.pullback(ProjectiveMap.identity()) == F


def test_pullback_epsilon_family_of_omega2():
    # the one-parameter subgroup (x/e^3, y/e^2) at e = 1/2 lands on the
    # family member x^2 dx + (e x + y^2)(x dy - y dx)
    e = Fraction(1, 2)
    T = ProjectiveMap.diagonal(1 / e ** 3, 1 / e ** 2, 1)
    lhs = catalog.omega2().pullback(T)
    member = Foliation.from_affine(
        X ** 2 - Y * (e * X + Y ** 2), X * (e * X + Y ** 2))
    assert lhs == member


def test_line_at_infinity_flag():
    assert not catalog.omega1().affine("Z").line_at_infinity_invariant()
    assert not catalog.jouanolou().affine("Z").line_at_infinity_invariant()
    # P dx + Q dy with deg <= N and phi = 0
    F = catalog.omega6()
    assert F.affine("Z").line_at_infinity_invariant()


def test_dual_field_radial_pencil():
    E, F_, G = catalog.radial().dual_vector_field()
    # vertical field (0, 0, *) up to scalar
    assert E.is_zero() and F_.is_zero() and not G.is_zero()


def test_dual_field_contraction_identity():
    for name in ["F1", "F2", "F3", "F4", "F5", "F6", "F7", "FJ", "radial"]:
        F = catalog.get(name)
        Zf = F.dual_vector_field()
        # omega(Z) = aE + bF + cG = 0
        a, b, c = F.components()
        contraction = a * Zf[0] + b * Zf[1] + c * Zf[2]
        assert contraction.is_zero(), name
        # i_R i_Z vol reproduces omega up to scalar
        back = Foliation.from_homogeneous(*radial_contraction(Zf))
        assert back == F, name


def test_dual_field_chart_components():
    # chart projection of omega5's dual field is (Q, -P) up to scalar
    F = catalog.omega5()
    E, F_, G = F.dual_vector_field()
    one = Polynomial.constant(AVARS, 1)
    sub = {"X": X, "Y": Y, "Z": one}
    u = E.substitute(sub) - X * G.substitute(sub)
    v = F_.substitute(sub) - Y * G.substitute(sub)
    aff = F.affine("Z")
    assert (u * (-aff.P) - v * aff.Q).is_zero()


def test_canonical_scalar_equality():
    F = catalog.omega1()
    G = Foliation.from_affine(5 * (X ** 2 - Y ** 3), 5 * X * Y ** 2)
    assert F == G


def _rand_map(rng):
    while True:
        rows = [[rng.randint(-3, 3) for _ in range(3)] for _ in range(3)]
        try:
            return ProjectiveMap(rows)
        except ValueError:
            continue
