"""Exact computation with quadratic foliations of the projective plane.

The package computes singular loci, Milnor numbers, jet types, inflection
(flex) curves, invariant algebraic curves, isotropy algebras, orbit
dimensions and explicit orbit degenerations for polynomial foliations of
P^2, entirely in exact rational (or simple extension field) arithmetic, and
renders real phase portraits to SVG.
"""

__version__ = "0.1.0"
