"""The single-singularity classifier and its certificates."""

import random
from fractions import Fraction

import pytest

from planefol import catalog
from planefol.classify import (ClassificationCertificate, ClassificationError,
                               classify_single_singularity,
                               recognize_normal_form)
from planefol.foliation import Foliation, ProjectiveMap
from planefol.poly import Polynomial

X, Y = Polynomial.generators(("x", "y"))


def _rand_map(rng):
    while True:
        rows = [[rng.randint(-4, 4) for _ in range(3)] for _ in range(3)]
        try:
            return ProjectiveMap(rows)
        except ValueError:
            continue


def test_normal_forms_classify_to_themselves():
    for name in ("F1", "F2", "F3", "F4"):
        cert = classify_single_singularity(catalog.get(name))
        assert cert.class_id == name and cert.verified


def test_omega4_certificate_is_scalar():
    # the order-3 isotropy of the saddle-node class has no nontrivial
    # rational points, so a rational self-conjugation must be a scalar
    cert = classify_single_singularity(catalog.omega4())
    assert cert.class_id == "F4"
    T = cert.conjugation.normalized()
    assert T == ProjectiveMap.identity()


def test_prenormal_form_goes_to_F2():
    # x^2 dx + (x + 2x^2 + y^2)(x dy - y dx): the one-line branch with a
    # nonzero linear term and x^2 tangency coefficient 2
    blob = X + 2 * X ** 2 + Y ** 2
    F = Foliation.from_affine(X ** 2 - Y * blob, X * blob)
    cert = classify_single_singularity(F)
    assert cert.class_id == "F2" and cert.verified


def test_round_trip_random_conjugates():
    rng = random.Random(99)
    for name in ("F1", "F2", "F3", "F4"):
        for _ in range(5):
            T = _rand_map(rng)
            cert = classify_single_singularity(catalog.get(name).pullback(T))
            assert cert.class_id == name and cert.verified


def test_rejects_multi_singular_input():
    with pytest.raises(ClassificationError):
        classify_single_singularity(catalog.omega5())
    with pytest.raises(ClassificationError):
        classify_single_singularity(catalog.jouanolou())


def test_recognize_normal_form():
    assert recognize_normal_form(catalog.omega1()) == "F1"
    scaled = Foliation.from_affine(5 * (X ** 2 - Y ** 3), 5 * X * Y ** 2)
    assert recognize_normal_form(scaled) == "F1"
    # y dx + (-2x + y^2) dy
    F = Foliation.from_affine(Y, -2 * X + Y ** 2)
    assert recognize_normal_form(F) == "F0(-2)"
    T = ProjectiveMap([[1, 1, 0], [0, 1, 0], [0, 0, 1]])
    assert recognize_normal_form(catalog.omega1().pullback(T)) is None


def test_certificate_json():
    cert = classify_single_singularity(catalog.omega3())
    d = cert.to_json()
    assert d["class"] == "F3" and d["verified"]
    assert isinstance(d["conjugation"], list) and len(d["conjugation"]) == 3
