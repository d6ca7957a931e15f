"""Streamline integration and SVG rendering (the only float module)."""

import math
import xml.dom.minidom

import pytest

from planefol import catalog
from planefol.portrait import (
    PortraitConfig, integrate_streamlines, orthogonal_foliation,
    polylines_json, render_pair, render_portrait, render_svg,
)

CFG_F1 = PortraitConfig(xmin=0.3, xmax=2.3, ymin=-1.0, ymax=1.0,
                        seed_density=4, tolerance=1e-9, max_arc_length=5.0)
CFG_F5 = PortraitConfig(xmin=0.4, xmax=2.4, ymin=0.3, ymax=2.3,
                        seed_density=4, tolerance=1e-9, max_arc_length=5.0)


def test_orthogonal_foliation_matches_printed_form():
    assert orthogonal_foliation(catalog.omega4()) == catalog.omega4_perp()


def test_orthogonal_involution():
    F = catalog.omega4()
    assert orthogonal_foliation(orthogonal_foliation(F)) == F


def test_orthogonality_is_an_algebraic_identity():
    # direction fields (Q,-P) of a form and its orthogonal have exactly
    # zero dot product, as a symbolic identity (charts are canonically
    # rescaled, so the identity is checked up to that scalar)
    for name in ("F4", "F1", "FJ"):
        F = catalog.get(name)
        G = orthogonal_foliation(F)
        a1 = F.affine("Z")
        a2 = G.affine("Z")
        dot = a1.Q * a2.Q + a1.P * a2.P
        assert dot.is_zero(), name


def test_radial_streamlines_are_straight():
    cfg = PortraitConfig(seed_density=3, tolerance=1e-9, max_arc_length=3.0)
    pls = integrate_streamlines(catalog.radial(), cfg)
    assert pls
    for pl in pls:
        (x0, y0) = pl.points[0]
        for (x, y) in pl.points[1:]:
            assert abs(x * y0 - y * x0) < 1e-6  # collinear with the origin


def test_first_integral_drift_F1():
    pls = integrate_streamlines(catalog.omega1(), CFG_F1)
    assert pls

    def integral(x, y):
        return (y ** 3 - 3 * x * x) / (3 * x ** 3)

    for pl in pls:
        vals = [integral(x, y) for x, y in pl.points]
        assert max(vals) - min(vals) < 10 * CFG_F1.tolerance


def test_first_integral_drift_F5():
    pls = integrate_streamlines(catalog.omega5(), CFG_F5)
    assert pls

    def integral(x, y):
        return y / x - 1 / y

    for pl in pls:
        vals = [integral(x, y) for x, y in pl.points]
        assert max(vals) - min(vals) < 10 * CFG_F5.tolerance


def test_svg_byte_determinism_and_validity():
    doc1 = render_portrait(catalog.omega1(), CFG_F1)
    doc2 = render_portrait(catalog.omega1(), CFG_F1)
    assert doc1 == doc2
    xml.dom.minidom.parseString(doc1)


def test_empty_svg_is_valid():
    doc = render_svg([], CFG_F1)
    xml.dom.minidom.parseString(doc)
    assert "<svg" in doc


def test_two_panel_document():
    cfg = PortraitConfig(seed_density=2, tolerance=1e-8, max_arc_length=2.0)
    doc = render_pair(catalog.omega4(), catalog.omega4_perp(), cfg,
                      ("F4", "F4-orthogonal"))
    xml.dom.minidom.parseString(doc)
    assert doc.count("<g") == 2


def test_config_validation_and_json_dump():
    with pytest.raises(ValueError):
        PortraitConfig(xmin=1.0, xmax=-1.0)
    with pytest.raises(ValueError):
        PortraitConfig(tolerance=0.0)
    with pytest.raises(ValueError):
        PortraitConfig.from_dict({"bogus": 1})
    cfg = PortraitConfig(seed_density=2, max_arc_length=1.0)
    pls = integrate_streamlines(catalog.radial(), cfg)
    out = polylines_json(pls)
    assert all("points" in rec for rec in out)
