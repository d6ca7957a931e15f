"""Exact polynomial arithmetic, elimination primitives, series."""

import random
from fractions import Fraction

import pytest

from planefol.field import NumberField, ZeroDivisorSplit
from planefol.poly import (
    Polynomial, PowerSeries1D, divexact, eval_series, gcd,
    implicit_series_solve, order_of_vanishing, rational_roots, resultant,
    squarefree_decomposition, squarefree_part, sylvester_resultant,
    try_divexact,
)

X, Y = Polynomial.generators(("x", "y"))


def rand_poly(rng, deg, vars=("x", "y"), density=0.7):
    terms = {}
    for i in range(deg + 1):
        for j in range(deg + 1 - i):
            if rng.random() < density:
                terms[(i, j)] = Fraction(rng.randint(-5, 5))
    return Polynomial(vars, terms)


def test_ring_axioms_random():
    rng = random.Random(7)
    for _ in range(50):
        p, q = rand_poly(rng, 3), rand_poly(rng, 3)
        assert (p + q) - q == p
        assert p * q == q * p
        r = rand_poly(rng, 2)
        assert p * (q + r) == p * q + p * r


def test_resultant_linear_case():
    # Res_y(y, q) -> q(x, 0) up to sign
    q = rand_poly(random.Random(3), 3)
    r = resultant(Y, q, "y")
    q0 = q.substitute({"x": X, "y": Polynomial.zero(("x", "y"))})
    assert r == q0 or r == -q0


def test_resultant_derived_example():
    # evaluate p's root y=x in q: q(x,x) = 2x^2
    r = resultant(X - Y, X ** 2 + Y ** 2, "y")
    assert r == 2 * X ** 2 or r == -2 * X ** 2


def test_resultant_common_factor():
    p = X ** 2 + Y
    assert resultant(p, p, "y").is_zero()
    assert resultant(p * (X + Y), (X + Y) * (p + 1), "y").is_zero()


def test_resultant_matches_sylvester_oracle():
    rng = random.Random(11)
    for _ in range(30):
        p, q = rand_poly(rng, 3), rand_poly(rng, 3)
        if p.degree_in("y") < 1 or q.degree_in("y") < 1:
            continue
        assert resultant(p, q, "y") == sylvester_resultant(p, q, "y")


def test_resultant_zero_iff_gcd_nonconstant():
    rng = random.Random(13)
    x = Polynomial.variable("x", ("x",))
    for _ in range(100):
        cp = [Fraction(rng.randint(-4, 4)) for _ in range(rng.randint(2, 7))]
        cq = [Fraction(rng.randint(-4, 4)) for _ in range(rng.randint(2, 7))]
        p = sum((c * x ** i for i, c in enumerate(cp)), Polynomial.zero(("x",)))
        q = sum((c * x ** i for i, c in enumerate(cq)), Polynomial.zero(("x",)))
        if p.is_zero() or q.is_zero():
            continue
        if p.degree_in("x") == 0 and q.degree_in("x") == 0:
            continue
        r = resultant(p, q, "x")
        g = gcd(p, q)
        assert r.is_zero() == (g.total_degree() > 0)


def test_squarefree_trivial_cases():
    out = squarefree_decomposition(X ** 3 * (X - 1))
    assert sorted((str(f), m) for f, m in out) == [("x", 3), ("x - 1", 1)]
    out = squarefree_decomposition(X ** 2 + 1)
    assert [(str(f), m) for f, m in out] == [("x^2 + 1", 1)]


def test_squarefree_derived_example():
    out = squarefree_decomposition((X ** 2 - 2) ** 2 * (X + 1))
    assert sorted((str(f), m) for f, m in out) == [("x + 1", 1), ("x^2 - 2", 2)]


def test_squarefree_reconstruction_random():
    rng = random.Random(5)
    x = X
    for _ in range(40):
        p = Polynomial.constant(("x", "y"), 1)
        for _ in range(rng.randint(1, 3)):
            f = x - rng.randint(-3, 3) if rng.random() < 0.7 else x ** 2 + rng.randint(1, 4)
            p = p * f ** rng.randint(1, 3)
        dec = squarefree_decomposition(p)
        prod = Polynomial.constant(("x", "y"), 1)
        for f, m in dec:
            prod = prod * f ** m
        # equality up to a nonzero constant
        c = divexact(p, prod)
        assert c.is_constant() and not c.is_zero()
        # pairwise coprime and squarefree
        for i, (f, _) in enumerate(dec):
            assert gcd(f, f.partial("x")).is_constant()
            for g, _ in dec[i + 1:]:
                assert gcd(f, g).is_constant()


def test_divexact_roundtrip():
    rng = random.Random(23)
    for _ in range(30):
        a, b = rand_poly(rng, 2), rand_poly(rng, 2)
        if b.is_zero():
            continue
        assert divexact(a * b, b) == a
    assert try_divexact(X ** 2 + 1, X + 1) is None


def test_gcd_multivariate():
    g = gcd((X + Y) ** 2 * (X - Y), (X + Y) * (X ** 2 + 1))
    assert g == X + Y


def test_implicit_series_paper_values():
    # q = x + y^2: x(y) = -y^2 exactly
    s = implicit_series_solve(X + Y ** 2, "x", "y", 7)
    assert s == PowerSeries1D("y", [0, 0, Fraction(-1)], 7)
    # q = x + y^2 + xy: x(y) = -y^2/(1+y)
    s = implicit_series_solve(X + Y ** 2 + X * Y, "x", "y", 7)
    expect = [0, 0, -1, 1, -1, 1, -1, 1]
    assert list(s.coeffs) == [Fraction(c) for c in expect]
    # q = x: zero series
    s = implicit_series_solve(X, "x", "y", 5)
    assert all(c == 0 for c in s.coeffs)


def test_implicit_series_random_check_by_substitution():
    rng = random.Random(2)
    for _ in range(20):
        q = X + rand_poly(rng, 3) * Y  # guarantees q(0,0)=0, qx(0,0)=1
        s = implicit_series_solve(q, "x", "y", 9)
        back = eval_series(q, {"x": s, "y": PowerSeries1D.identity("y", 9)})
        assert all(c == 0 for c in back.coeffs)


def test_order_of_vanishing():
    assert order_of_vanishing(PowerSeries1D("y", [0, 0, 0, 1, 0, -1], 5)) == 3
    assert order_of_vanishing(PowerSeries1D.zero("y", 7)) is None
    y = Polynomial.variable("y", ("y",))
    assert order_of_vanishing(y ** 3 - y ** 5) == 3


def test_substitution_examples():
    # (x^2+y) with x->0 -> y
    p = X ** 2 + Y
    assert p.substitute({"x": Polynomial.zero(("x", "y")), "y": Y}) == Y
    # x+y with x->x+1, y->y-1 -> x+y
    assert (X + Y).substitute({"x": X + 1, "y": Y - 1}) == X + Y


def test_extension_field_arithmetic_in_polys():
    K = NumberField([-2, 0, 1])  # t^2 = 2
    t = K.gen()
    p = Polynomial(("x",), {(1,): t, (0,): 1})  # t*x + 1
    q = p * p
    assert q.coefficient((2,)) == 2  # (t x)^2 = 2 x^2
    red = NumberField([2, -3, 1])  # (t-1)(t-2)
    with pytest.raises(ZeroDivisorSplit):
        (red.gen() - 1).inverse()


def test_rational_roots():
    p = (X - 2) * (3 * X + 1) * (X ** 2 + 1)
    roots, cof = rational_roots(p, "x")
    assert roots == [Fraction(-1, 3), Fraction(2)]
    assert squarefree_part(cof) == X ** 2 + 1


def test_text_roundtrip_is_deterministic():
    p = 3 * X ** 2 * Y - Y ** 3 + Fraction(1, 2) * X
    assert p.text() == "3*x^2*y - y^3 + 1/2*x"
