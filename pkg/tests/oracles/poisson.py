"""The sphere Lie algebra rebuilt from a Poisson bracket on polynomials.

``e_{i,j}`` is ``x^i y^j / (i! j!)`` and ``f_{i,j}`` is the same monomial
times an odd marker.  Brackets are ``-{p, q}`` with
``{p, q} = p_x q_y - p_y q_x``, computed by sympy differentiation; the
constant monomial is discarded because it is not a basis element.
"""

from __future__ import annotations

from fractions import Fraction
from math import factorial

import sympy

x, y = sympy.symbols("x y")


def monomial(i, j):
    return x**i * y**j / (factorial(i) * factorial(j))


def poisson(p, q):
    return sympy.expand(sympy.diff(p, x) * sympy.diff(q, y) - sympy.diff(p, y) * sympy.diff(q, x))


def decompose(poly):
    """``{(i, j): coefficient}`` in the divided-power basis."""
    out = {}
    for (i, j), c in sympy.Poly(poly, x, y).terms():
        c = sympy.Rational(c) * factorial(i) * factorial(j)
        out[(i, j)] = Fraction(int(c.p), int(c.q))
    return out


def bracket(fam1, ij, fam2, kl):
    """``{(family, i, j): coefficient}`` for the bracket of two basis elements."""
    if fam1 == "f" and fam2 == "f":
        return {}
    if fam1 == "e" and fam2 == "f":
        return {k: -v for k, v in bracket(fam2, kl, fam1, ij).items()}
    poly = -poisson(monomial(*ij), monomial(*kl))
    if poly == 0:
        return {}
    out = {}
    for (i, j), c in decompose(poly).items():
        if fam1 == "e" and (i, j) == (0, 0):
            continue
        out[(fam1, i, j)] = c
    return out
