"""Monomial limits, property of the inflection normal form, closures."""

from fractions import Fraction

import pytest

from planefol import catalog
from planefol.degeneration import (
    DegenerationError, InconclusiveSearch, closure_report, degenerate_to_F0,
    degenerate_to_F1, evaluate_family, in_sigma, monomial_limit,
    property_P_check,
)
from planefol.field import cinv
from planefol.foliation import Foliation, ProjectiveMap
from planefol.poly import Polynomial
from planefol.singular import baum_bott, singular_points

X, Y = Polynomial.generators(("x", "y"))
O3 = (Fraction(0), Fraction(0), Fraction(1))


def test_monomial_limit_omega2_to_omega1():
    tr = monomial_limit(catalog.omega2(), ProjectiveMap.identity(), (-3, -2))
    assert tr.valuation == -9
    assert tr.limit == catalog.omega1()
    assert tr.degree_preserving


def test_monomial_limit_rejects_zero_weights():
    with pytest.raises(DegenerationError):
        monomial_limit(catalog.omega1(), ProjectiveMap.identity(), (0, 0))


def test_valuation_consistency_concrete_eps():
    tr = monomial_limit(catalog.omega2(), ProjectiveMap.identity(), (-3, -2))
    e = Fraction(1, 7)
    member = evaluate_family(tr, e)
    D = ProjectiveMap.diagonal(e ** -3, e ** -2, 1)
    assert member == catalog.omega2().pullback(D)


def test_property_P():
    ok, _, _ = property_P_check(catalog.jouanolou())
    assert ok
    ok, _, _ = property_P_check(catalog.omega1())
    assert not ok  # the origin is singular, alpha = 0


def test_in_sigma():
    assert in_sigma(catalog.omega5())
    assert in_sigma(catalog.omega6())
    assert not in_sigma(catalog.omega1())
    assert not in_sigma(catalog.jouanolou())


def test_degenerate_to_F1():
    for name in ("FJ", "F4"):
        tr = degenerate_to_F1(catalog.get(name))
        assert tr.recognized == "F1"
        assert tr.valuation == 3 and tr.weights == (3, 1)
        assert tr.degree_preserving
        ok, alpha, beta = property_P_check(
            catalog.get(name).pullback(tr.pre))
        assert ok and alpha != 0 and beta != 0


def test_degenerate_to_F1_refuses_sigma_members():
    with pytest.raises(DegenerationError):
        degenerate_to_F1(catalog.omega5())


def test_degenerate_to_F0_fixed_point():
    tr = degenerate_to_F0(catalog.f0(Fraction(5)), O3)
    assert tr.lam == 5
    assert tr.limit == catalog.f0(Fraction(5))


def test_degenerate_to_F0_bb4_sample_reaches_F5():
    T = ProjectiveMap([[1, 1, 0], [1, 0, 1], [0, 1, 1]])
    G = catalog.f0(Fraction(-1)).pullback(T)
    pt = T.inverse().apply_point(O3)
    assert baum_bott(G, pt) == 4
    tr = degenerate_to_F0(G, pt)
    assert tr.lam == -1
    assert tr.limit == catalog.f0(Fraction(-1))
    # the stored identification carries F5 onto the limit
    assert catalog.omega5().pullback(tr.identification) == tr.limit


def test_degenerate_to_F0_extension_point():
    p3 = (Fraction(1), Fraction(1), Fraction(1))
    F = catalog.jouanolou()
    tr = degenerate_to_F0(F, p3)
    bb = baum_bott(F, p3)
    assert 2 - tr.lam - cinv(tr.lam) == bb
    assert tr.degree_preserving


def test_lambda_bb_identity_along_all_traces():
    for lam in (Fraction(3), Fraction(-1, 2), Fraction(7)):
        tr = degenerate_to_F0(catalog.f0(lam), O3)
        bb = baum_bott(catalog.f0(lam), O3)
        assert 2 - tr.lam - cinv(tr.lam) == bb


def test_semicontinuity_of_singular_point_count():
    for name in ("F2", "F4", "FJ"):
        F = catalog.get(name)
        before = sum(o.size for o in singular_points(F))
        if name == "F2":
            tr = monomial_limit(F, ProjectiveMap.identity(), (-3, -2))
        else:
            tr = degenerate_to_F1(F)
        after = sum(o.size for o in singular_points(tr.limit))
        assert after <= before


def test_closure_reports():
    assert closure_report("F2")["reaches"] == ["F1"]
    assert closure_report("F3")["reaches"] == ["F1"]
    assert sorted(closure_report("F6")["reaches"]) == ["F5", "F7"]
    assert closure_report("F7")["reaches"] == ["F5"]
    assert closure_report("Fprime")["reaches"] == ["F5"]
    assert closure_report("F4")["reaches"] == ["F1"]
    assert closure_report("FJ")["reaches"] == ["F1"]
