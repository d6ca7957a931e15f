"""The 1-form expression language and its error reporting."""

from fractions import Fraction

import pytest

from planefol import catalog
from planefol.parsing import ParseError, parse_darboux, parse_form, \
    parse_polynomial
from planefol.poly import Polynomial

X, Y = Polynomial.generators(("x", "y"))


def test_parse_polynomial_roundtrip():
    p = 3 * X ** 2 * Y - Y ** 3 + Fraction(1, 2) * X
    assert parse_polynomial(p.text(), ("x", "y")) == p


def test_parse_form_catalog_entries():
    cases = {
        "x^2*dx+y^2*(x*dy-y*dx)": "F1",
        "x^2*dx+(x+y^2)*(x*dy-y*dx)": "F2",
        "x*y*dx+(x^2+y^2)*(x*dy-y*dx)": "F3",
        "(x+y^2-x^2*y)*dy+x*(x+y^2)*dx": "F4",
        "x^2*dy+y^2*(x*dy-y*dx)": "F5",
        "(x^2*y-1)*dx+(y^2-x^3)*dy": "FJ",
    }
    for text, name in cases.items():
        assert parse_form(text) == catalog.get(name), text


def test_parse_homogeneous_form():
    F = parse_form("(X^2*Z-Y^3)*dX + X*Y^2*dY - X^3*dZ")
    assert F == catalog.omega1()


def test_rational_coefficients():
    F = parse_form("1/2*y*dx + (1/2*x + 1/2*y^2)*dy")
    assert F == catalog.f0(Fraction(1))


def test_parse_errors_have_positions():
    with pytest.raises(ParseError) as e:
        parse_form("x^2*dx + $")
    assert e.value.pos == 9
    with pytest.raises(ParseError) as e:
        parse_form("x*dx*dy")
    assert "product of two differential" in str(e.value)
    with pytest.raises(ParseError):
        parse_form("x^2 + y")  # no differential part
    with pytest.raises(ParseError):
        parse_form("x*dx + X*dY")  # mixed flavors
    with pytest.raises(ParseError) as e:
        parse_polynomial("x + w", ("x", "y"))
    assert "unknown name" in str(e.value)


def test_implicit_multiplication_is_rejected():
    with pytest.raises(ParseError):
        parse_form("x^2dx")  # must be x^2*dx


def test_parse_darboux():
    d = parse_darboux("prod[(y)^1,(x)^-1]*exp((y^2-2*x)/(2*x^2))")
    from planefol.invariants import verify_first_integral
    assert verify_first_integral(catalog.omega3(), d)
    d2 = parse_darboux("prod[(y^3-3*x^2)^1,(x)^-3]")
    assert verify_first_integral(catalog.omega1(), d2)
    d3 = parse_darboux("exp((3*y-x^3)/3)")
    assert verify_first_integral(catalog.omega1(), d3, chart="X")
    with pytest.raises(ParseError):
        parse_darboux("prod[]")


def test_text_of_forms_roundtrips():
    for name in ("F1", "F4", "FJ", "F4perp"):
        F = catalog.get(name)
        aff = F.affine("Z")
        assert parse_form(aff.text()) == F
        assert parse_form(F.text()) == F
