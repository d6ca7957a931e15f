"""Flex determinant, invariant curves, integrating factors, integrals."""

import random
from fractions import Fraction

import pytest

from planefol import catalog
from planefol.foliation import Foliation, ProjectiveMap
from planefol.invariants import (
    DarbouxFunction, SearchIncomplete, flex_determinant, flex_polynomial,
    invariant_lines, search_invariant_curves, verify_first_integral,
    verify_integrating_factor, verify_invariant_curve,
)
from planefol.poly import Polynomial, divexact

X, Y = Polynomial.generators(("x", "y"))


def test_integrating_factors_exact():
    assert verify_integrating_factor(catalog.omega1(), X ** 4)
    assert verify_integrating_factor(catalog.omega3(), X ** 3 * Y)
    assert verify_integrating_factor(catalog.f0(-1), Y ** 2)
    assert verify_integrating_factor(catalog.f0(-2), Y ** 3)
    for lam in (Fraction(1), Fraction(3), Fraction(-1, 2)):
        g = Y * ((2 + lam) * X + Y ** 2)
        assert verify_integrating_factor(catalog.f0(lam), g)
    assert not verify_integrating_factor(catalog.omega1(), X ** 3)


def test_invariant_curve_verdicts():
    ok, cof = verify_invariant_curve(catalog.omega5(), Y)
    assert ok and cof == Y ** 2
    for lam in (Fraction(1), Fraction(3), Fraction(-1, 2)):
        c = (2 + lam) * X + Y ** 2
        ok, _ = verify_invariant_curve(catalog.f0(lam), c)
        assert ok
    # lines through two singular points of the Jouanolou example are not
    # invariant: it has no algebraic invariant curve at all
    ok, _ = verify_invariant_curve(catalog.jouanolou(), X - Y)
    assert not ok


def test_first_integrals_catalog():
    for entry, chart, dar in catalog.first_integrals():
        assert verify_first_integral(catalog.get(entry), dar, chart), \
            (entry, chart)


def test_first_integral_negative():
    bad = DarbouxFunction([(X + Y, Fraction(1))])
    assert not verify_first_integral(catalog.omega1(), bad)


def test_flex_reports():
    rep = flex_determinant(catalog.omega1())
    assert rep.H.total_degree() == 6
    from planefol.poly import squarefree_part
    red = squarefree_part(rep.reduced)
    assert red.total_degree() == 1  # a single line
    assert not rep.reduced_is_constant()
    for name in ("F5", "F6", "F7", "Fprime", "F0(-1)"):
        assert flex_determinant(catalog.get(name)).reduced_is_constant(), name
    for name in ("F2", "F3", "F4", "FJ"):
        assert not flex_determinant(catalog.get(name)).reduced_is_constant(), \
            name


def test_flex_covariance_under_pullback():
    rng = random.Random(31)
    F = catalog.omega3()
    H = flex_polynomial(F)
    for _ in range(3):
        rows = [[rng.randint(-2, 2) for _ in range(3)] for _ in range(3)]
        try:
            T = ProjectiveMap(rows)
        except ValueError:
            continue
        G = F.pullback(T)
        HG = flex_polynomial(G)
        lf = T.linear_forms()
        Hpulled = H.substitute({v: lf[i] for i, v in enumerate(("X", "Y", "Z"))})
        # equality up to a nonzero scalar
        assert (HG * Hpulled.leading_coefficient()
                - Hpulled * HG.leading_coefficient()).is_zero()


def test_invariant_lines_catalog():
    lines = invariant_lines(catalog.omega5())
    forms = sorted(l.form.text() for l in lines)
    assert forms == ["X", "Y"]
    assert invariant_lines(catalog.omega4()) == []
    assert invariant_lines(catalog.jouanolou()) == []
    f6 = {l.form.text() for l in invariant_lines(catalog.omega6())}
    assert len(f6) == 6


def test_search_invariant_curves_acceptance_cases():
    out = search_invariant_curves(catalog.omega1(), 1)
    assert [c.text() for c, _ in out] == ["x"]
    out = search_invariant_curves(catalog.omega4(), 3)
    assert out == []
    out = search_invariant_curves(catalog.jouanolou(), 3)
    assert out == []
    out = search_invariant_curves(catalog.f0(1), 2)
    assert "y^2 + 3*x" in [c.text() for c, _ in out]


def test_search_reports_families():
    # a rational first integral gives a pencil of invariant conics, so the
    # degree-2 search must report the positive-dimensional family
    with pytest.raises(SearchIncomplete):
        search_invariant_curves(catalog.omega5(), 2)


def test_search_outputs_verified_with_cofactor_bound():
    for c, cof in search_invariant_curves(catalog.f0(1), 2):
        ok, cof2 = verify_invariant_curve(catalog.f0(1), c)
        assert ok and cof == cof2
        assert cof.total_degree() <= 2


def test_symmetry_contraction_is_integrating_factor():
    # omega(X) for a symmetry X is an integrating factor
    from planefol.group import contraction, isotropy_algebra
    for name in ("F1", "F5", "F7", "F0(-2)"):
        F = catalog.get(name)
        alg = isotropy_algebra(F)
        for b in alg.basis:
            w = contraction(F, b)
            if not w.is_zero():
                assert verify_integrating_factor(F, w), name
