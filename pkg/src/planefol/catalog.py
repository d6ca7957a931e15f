"""The named foliations of the classification and their verified facts.

Forms are given in the affine chart Z=1.  Annotations (first integrals,
integrating factors, isotropy generators, orbit dimensions, flex status,
degeneration witnesses) are machine-verified by ``verify_catalog``.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Callable, Dict, List, Optional

from .foliation import AVARS, Foliation, ProjectiveMap
from .poly import Polynomial

X_, Y_ = Polynomial.generators(AVARS)


def _f(P, Q):
    return Foliation.from_affine(P, Q)


def omega1() -> Foliation:
    """x^2 dx + y^2 (x dy - y dx)."""
    return _f(X_ ** 2 - Y_ ** 3, X_ * Y_ ** 2)


def omega2() -> Foliation:
    """x^2 dx + (x + y^2)(x dy - y dx)."""
    return _f(X_ ** 2 - Y_ * (X_ + Y_ ** 2), X_ * (X_ + Y_ ** 2))


def omega3() -> Foliation:
    """xy dx + (x^2 + y^2)(x dy - y dx)."""
    return _f(X_ * Y_ - Y_ * (X_ ** 2 + Y_ ** 2),
              X_ * (X_ ** 2 + Y_ ** 2))


def omega4() -> Foliation:
    """(x + y^2 - x^2 y) dy + x (x + y^2) dx."""
    return _f(X_ * (X_ + Y_ ** 2), X_ + Y_ ** 2 - X_ ** 2 * Y_)


def omega5() -> Foliation:
    """x^2 dy + y^2 (x dy - y dx)."""
    return _f(-Y_ ** 3, X_ ** 2 + X_ * Y_ ** 2)


def omega6() -> Foliation:
    """Generic conic pencil x(y+z) + t y(x+z): y(y+1) dx - x(x+1) dy."""
    return _f(Y_ * (Y_ + 1), -X_ * (X_ + 1))


def omega7() -> Foliation:
    """Conic pencil xz + t y(y-x): y^2 dx + x(x - 2y) dy."""
    return _f(Y_ ** 2, X_ * (X_ - 2 * Y_))


def jouanolou() -> Foliation:
    """(x^2 y - 1) dx + (y^2 - x^3) dy."""
    return _f(X_ ** 2 * Y_ - 1, Y_ ** 2 - X_ ** 3)


def f0(lam) -> Foliation:
    """y dx + (lam x + y^2) dy."""
    lam = Fraction(lam) if isinstance(lam, int) else lam
    return _f(Y_, lam * X_ + Y_ ** 2)


def fprime() -> Foliation:
    """Levels of y/x + x/y + 1/y."""
    return _f(X_ ** 2 * Y_ - Y_ ** 3, X_ * Y_ ** 2 - X_ ** 3 - X_ ** 2)


def omega4_perp() -> Foliation:
    """-(x + y^2 - x^2 y) dx + x (x + y^2) dy (degree 3)."""
    return _f(-(X_ + Y_ ** 2 - X_ ** 2 * Y_), X_ * (X_ + Y_ ** 2))


def ftilde() -> Foliation:
    """y^7 dx - x dy (local model for the saddle-node picture)."""
    return _f(Y_ ** 7, -X_)


def radial() -> Foliation:
    """The pencil of lines through the origin."""
    return _f(-Y_, X_)


BUILDERS: Dict[str, Callable[[], Foliation]] = {
    "F1": omega1,
    "F2": omega2,
    "F3": omega3,
    "F4": omega4,
    "F5": omega5,
    "F6": omega6,
    "F7": omega7,
    "FJ": jouanolou,
    "Fprime": fprime,
    "F4perp": omega4_perp,
    "Ftilde": ftilde,
    "radial": radial,
}


def get(name: str) -> Foliation:
    """Catalog lookup; F0(lam) is parsed with an exact rational lambda."""
    if name in BUILDERS:
        return BUILDERS[name]()
    if name.startswith("F0(") and name.endswith(")"):
        lam = Fraction(name[3:-1])
        return f0(lam)
    raise KeyError("unknown catalog name %r (try: %s, F0(<rational>))"
                   % (name, ", ".join(sorted(BUILDERS))))


def names() -> List[str]:
    return sorted(BUILDERS) + ["F0(-1)", "F0(-2)"]


# -- annotations -----------------------------------------------------------------


def _darboux(powers, exp_num=None, exp_den=None):
    from .invariants import DarbouxFunction
    return DarbouxFunction([(f, Fraction(l)) for f, l in powers],
                           exp_num, exp_den)


def first_integrals() -> List[tuple]:
    """(entry, chart, DarbouxFunction) for every closed-form first
    integral in the catalog.  Chart X uses this package's coordinates
    (x, y) = (Y/X, Z/X)."""
    x, y = X_, Y_
    out = [
        # F1: (1/3)(y/x)^3 - 1/x = (y^3 - 3x^2)/(3x^3)
        ("F1", "Z", _darboux([(y ** 3 - 3 * x ** 2, 1), (x, -3)])),
        # F1 in chart X=1: levels of y - x^3/3
        ("F1", "X", _darboux([], 3 * y - x ** 3,
                             Polynomial.constant(("x", "y"), 3))),
        # F2: (2 + 1/x + 2 y/x + (y/x)^2) exp(-y/x)
        ("F2", "Z", _darboux([(2 * x ** 2 + x + 2 * x * y + y ** 2, 1),
                              (x, -2)], -y, x)),
        # F2 in chart X=1: (2 + y + 2x + x^2) exp(-x)
        ("F2", "X", _darboux([(2 + y + 2 * x + x ** 2, 1)], -x,
                             Polynomial.constant(("x", "y"), 1))),
        # F3: (y/x) exp((y/x)^2/2 - 1/x)
        ("F3", "Z", _darboux([(y, 1), (x, -1)], y ** 2 - 2 * x,
                             2 * x ** 2)),
        # F3 in chart X=1: x exp(x^2/2 - y)
        ("F3", "X", _darboux([(x, 1)], x ** 2 - 2 * y,
                             Polynomial.constant(("x", "y"), 2))),
        # F5: y/x - 1/y
        ("F5", "Z", _darboux([(y ** 2 - x, 1), (x, -1), (y, -1)])),
        # F6: x(y+z)/(y(x+z))
        ("F6", "Z", _darboux([(x, 1), (y + 1, 1), (y, -1), (x + 1, -1)])),
        # F7: xz/(y(y-x))
        ("F7", "Z", _darboux([(x, 1), (y, -1), (y - x, -1)])),
        # F0(-1): x/y + y
        ("F0(-1)", "Z", _darboux([(x + y ** 2, 1), (y, -1)])),
        # F0(-2): x/y^2 + ln y, i.e. levels of y exp(x/y^2)
        ("F0(-2)", "Z", _darboux([(y, 1)], x, y ** 2)),
        # Fprime: y/x + x/y + 1/y
        ("Fprime", "Z", _darboux([(x ** 2 + y ** 2 + x, 1), (x, -1),
                                  (y, -1)])),
    ]
    return out


def integrating_factors() -> List[tuple]:
    x, y = X_, Y_
    out = [
        ("F1", x ** 4),
        ("F3", x ** 3 * y),
        ("F0(-1)", y ** 2),
        ("F0(-2)", y ** 3),
    ]
    for lam in (Fraction(1), Fraction(3), Fraction(-1, 2)):
        out.append(("F0(%s)" % lam, y * ((2 + lam) * x + y ** 2)))
    return out


def isotropy_generators() -> List[tuple]:
    """(entry, description, list of ProjectiveMaps) for the printed
    isotropy groups, sampled at small rational parameter values."""
    F = Fraction
    out = []
    fam = []
    for a, b in ((F(2), F(3)), (F(-1), F(1, 2)), (F(0), F(5))):
        fam.append(ProjectiveMap([[b ** 3, 0, 0], [0, b ** 2, 0], [a, 0, 1]]))
    out.append(("F1", "(b^3 x : b^2 y : z + a x)", fam))
    out.append(("F1", "(a^3 x, a^2 y) and (x/(1+bx), y/(1+bx))",
                [ProjectiveMap.diagonal(8, 4, 1),
                 ProjectiveMap.chart_division(F(3), 0)]))
    fam = []
    for a in (F(1), F(-3), F(1, 2)):
        fam.append(ProjectiveMap([[1, 0, 0], [a, 1, 0],
                                  [-a * (a + 2), -2 * a, 1]]))
    out.append(("F2", "(x : a x + y : -a(a+2)x - 2a y + z)", fam))
    fam = [ProjectiveMap([[1, 0, 0], [0, s, 0], [a, 0, 1]])
           for a, s in ((F(2), 1), (F(-1), -1), (F(0), -1))]
    out.append(("F3", "(x : +-y : z + a x)", fam))
    fam = [ProjectiveMap.diagonal(a * a, a, 1) for a in (F(2), F(-3))]
    fam += [ProjectiveMap.chart_division(0, b) for b in (F(1), F(-2))]
    out.append(("F5", "(a^2 x, a y) and (x/(1+by), y/(1+by))", fam))
    fam = [ProjectiveMap.diagonal(a, a, 1) for a in (F(2), F(5))]
    out.append(("F7", "(a x, a y)", fam))
    fam = [ProjectiveMap.diagonal(a * a, a, 1) for a in (F(2), F(-1, 3))]
    out.append(("F0(-2)", "(a^2 x, a y)", fam))
    fam = [ProjectiveMap.chart_division(0, b) for b in (F(1), F(-2))]
    out.append(("Fprime", "(x/(1+ay), y/(1+ay))", fam))
    return out


def isotropy_generators_order3():
    """The order-3 isotropy of the saddle-node class over Q[j]/(j^2+j+1)."""
    from .field import NumberField
    K = NumberField([1, 1, 1], var="j")
    j = K.gen()
    return K, [ProjectiveMap([[j, 0, 0], [0, j * j, 0], [0, 0, K.one()]]),
               ProjectiveMap([[j * j, 0, 0], [0, j, 0], [0, 0, K.one()]])]


ORBIT_DIMENSIONS = {
    "F1": 6, "F2": 7, "F3": 7, "F4": 8, "F5": 6, "F6": 8, "F7": 7,
    "FJ": 8, "F0(-2)": 7,
    # the conic-pencil substitution z -> -z - x carries F5 onto Fprime,
    # so both F0(-1) and Fprime lie on the second 6-dimensional orbit
    "F0(-1)": 6, "Fprime": 6,
}

FLEX_STATUS = {
    "F1": "line", "F2": "nonempty", "F3": "nonempty", "F4": "nonempty",
    "FJ": "nonempty", "F0(-2)": "nonempty",
    "F5": "empty", "F6": "empty", "F7": "empty", "F0(-1)": "empty",
    "Fprime": "empty",
}

SINGULAR_DATA = {
    # entry: sorted multiset of (size, mu)
    "F1": [(1, 7)], "F2": [(1, 7)], "F3": [(1, 7)], "F4": [(1, 7)],
    "F5": [(1, 1), (1, 6)], "F6": [(1, 1)] * 7,
    "F7": [(1, 1), (1, 1), (1, 1), (1, 4)],
    "FJ": [(1, 1), (6, 1)],
    "F0(-1)": [(1, 1), (1, 6)], "F0(-2)": [(1, 1), (1, 6)],
    "Fprime": [(1, 1), (1, 6)],
    "radial": [(1, 1)],
    "F4perp": [(1, 2), (1, 2), (1, 7), (2, 1)],
}

#: pullback(F5, map) equals the entry exactly: conjugacy certificates
F5_CONJUGACIES = {
    "F0(-1)": ProjectiveMap([[0, 0, 1], [0, 1, 0], [-1, 0, 0]]),
    "Fprime": ProjectiveMap([[1, 0, 0], [0, 1, 0], [-1, 0, -1]]),
}


def degeneration_witnesses(name: str) -> list:
    from .degeneration import (AutoF1Witness, FamilyWitness, MonomialWitness)
    F = Fraction
    x, y = X_, Y_
    if name == "F2":
        return [MonomialWitness(ProjectiveMap.identity(), (-3, -2), "F1",
                                ProjectiveMap.identity())]
    if name == "F3":
        def family(e):
            P = x * (e * y + (1 - e) * x) - y * (e * x ** 2 + y ** 2)
            Q = x * (e * x ** 2 + y ** 2)
            return Foliation.from_affine(P, Q)
        return [FamilyWitness(family, "F1", "F3",
                              (F(1, 2), F(2), F(-1)))]
    if name == "F4":
        return [AutoF1Witness()]
    if name == "FJ":
        return [AutoF1Witness()]
    if name == "F6":
        return [
            MonomialWitness(ProjectiveMap.identity(), (-1, -1), "F7",
                            ProjectiveMap([[1, -1, 0], [1, 0, 0],
                                           [0, 0, 1]])),
            MonomialWitness(ProjectiveMap([[1, 1, 0], [1, 0, 0],
                                           [-1, 1, 1]]), (-2, -1), "F5",
                            ProjectiveMap.diagonal(1, 1, F(-1, 2))),
        ]
    if name == "F7":
        return [MonomialWitness(ProjectiveMap([[1, 0, 0], [1, 1, 0],
                                               [0, 1, 1]]), (-2, -1), "F5",
                                ProjectiveMap.identity())]
    if name == "Fprime":
        return [MonomialWitness(ProjectiveMap.identity(), (2, 1), "F5",
                                ProjectiveMap.diagonal(1, 1, -1))]
    return []


# -- catalog-wide verification ------------------------------------------------------


def verify_catalog(progress=None) -> List[dict]:
    """Machine-verify every catalog annotation; returns one record per
    check with ok/detail fields."""
    from . import degeneration, group, invariants, singular
    from .classify import classify_single_singularity

    results = []

    def check(entry, what, fn):
        if progress:
            progress("%s: %s" % (entry, what))
        try:
            ok, detail = fn()
        except Exception as e:  # noqa: BLE001 - reported, not swallowed
            ok, detail = False, "exception: %s" % e
        results.append({"entry": entry, "check": what, "ok": bool(ok),
                        "detail": detail})

    for entry, chart, dar in first_integrals():
        check(entry, "first integral (chart %s)" % chart,
              lambda e=entry, c=chart, d=dar:
              (invariants.verify_first_integral(get(e), d, c), d.text()))
    for entry, g in integrating_factors():
        check(entry, "integrating factor %s" % g.text(),
              lambda e=entry, gg=g:
              (invariants.verify_integrating_factor(get(e), gg), g.text()))
    for entry, desc, maps in isotropy_generators():
        check(entry, "isotropy generators %s" % desc,
              lambda e=entry, ms=maps:
              (all(group.isotropy_contains(get(e), T) for T in ms),
               "%d maps" % len(ms)))
    K, maps3 = isotropy_generators_order3()
    check("F4", "order-3 isotropy over Q[j]",
          lambda: (all(group.isotropy_contains(get("F4").promote(K), T)
                       for T in maps3), "j^2 + j + 1 = 0"))
    for entry, dim in ORBIT_DIMENSIONS.items():
        check(entry, "orbit dimension %d" % dim,
              lambda e=entry, d=dim:
              (group.isotropy_algebra(get(e)).orbit_dimension == d, d))
    for entry, status in FLEX_STATUS.items():
        def flex_fn(e=entry, st=status):
            rep = invariants.flex_determinant(get(e))
            if st == "empty":
                return rep.reduced_is_constant(), "reduced flex constant"
            if st == "line":
                red = rep.reduced
                sf = squarefree_part(red)
                return (not rep.reduced_is_constant()
                        and sf.total_degree() == 1), sf.text()
            return not rep.reduced_is_constant(), "reduced flex nonconstant"
        check(entry, "flex status %s" % status, flex_fn)
    for entry, data in SINGULAR_DATA.items():
        def sing_fn(e=entry, want=data):
            F = get(e)
            ok, total, expected, orbits = singular.bezout_check(F)
            got = sorted((o.size, o.mu) for o in orbits)
            return (ok and got == sorted(want)), "%s (total %d)" % (got, total)
        check(entry, "singular orbits", sing_fn)
    for entry, T in F5_CONJUGACIES.items():
        check(entry, "conjugate to F5",
              lambda e=entry, TT=T: (get("F5").pullback(TT) == get(e),
                                     "explicit map"))
    for entry in ("F2", "F3", "F4", "FJ", "F6", "F7", "Fprime"):
        def degen_fn(e=entry):
            rep = degeneration.closure_report(e)
            return bool(rep["reaches"]), ", ".join(str(r) for r in
                                                   rep["reaches"])
        check(entry, "degeneration witnesses", degen_fn)
    for entry in ("F1", "F2", "F3", "F4"):
        check(entry, "classifies to itself",
              lambda e=entry:
              (classify_single_singularity(get(e)).class_id == e, e))
    # BB identity for the one-parameter family
    def bb_fn():
        from .singular import baum_bott
        pt = (Fraction(0), Fraction(0), Fraction(1))
        for lam in (Fraction(-1), Fraction(3), Fraction(-1, 2)):
            if baum_bott(f0(lam), pt) != -((1 - lam) ** 2) / lam:
                return False, str(lam)
        return True, "BB = -(1-lam)^2/lam"
    check("F0", "Baum-Bott values", bb_fn)
    return results


from .poly import squarefree_part  # noqa: E402  (used by verify_catalog)
