"""The string Lie algebra of an odd sphere modulo an involution group.

Basis: ``e_{i,j}`` for ``(i, j) != (0, 0)`` in even degree ``2n(i+j)`` and
``f_{i,j}`` in odd degree ``2n(i+j+2)+1``.  Brackets lower degree by ``4n``.
Scalars are rational; the group-ring linearity and the ``k[u]``-comodule
structure carried by the geometric answer play no role in the bracket and
are not modelled.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from itertools import product as cartesian
from math import comb
from typing import Iterator, Literal, Mapping

from ._sparse import acc, linear_sum
from .report import CheckReport

__all__ = [
    "SphereBasisElement",
    "e",
    "f",
    "sphere_bracket",
    "bracket",
    "basis",
    "verify_sphere_jacobi",
    "verify_grading",
    "ad_power",
]

Family = Literal["e", "f"]


@dataclass(frozen=True, order=True)
class SphereBasisElement:
    family: Family
    i: int
    j: int
    n: int = 1

    def __post_init__(self):
        if self.family not in ("e", "f"):
            raise ValueError(f"family must be 'e' or 'f', got {self.family!r}")
        if self.i < 0 or self.j < 0:
            raise ValueError(f"indices must be non-negative, got ({self.i}, {self.j})")
        if self.family == "e" and (self.i, self.j) == (0, 0):
            raise ValueError("e_{0,0} is not a basis element")
        if self.n < 1:
            raise ValueError(f"sphere parameter n must be >= 1, got {self.n}")

    @property
    def degree(self) -> int:
        if self.family == "e":
            return 2 * self.n * (self.i + self.j)
        return 2 * self.n * (self.i + self.j + 2) + 1

    @property
    def parity(self) -> int:
        return self.degree % 2

    def __str__(self) -> str:
        return f"{self.family}_{{{self.i},{self.j}}}"


def e(i: int, j: int, n: int = 1) -> SphereBasisElement:
    return SphereBasisElement("e", i, j, n)


def f(i: int, j: int, n: int = 1) -> SphereBasisElement:
    return SphereBasisElement("f", i, j, n)


Vector = dict[SphereBasisElement, Fraction]


def _coefficient(i: int, j: int, k: int, l: int) -> Fraction:
    """``C(i+k,i) C(j+l,j) (il - jk) / ((i+k)(j+l))``, zero when ``il = jk``."""
    det = i * l - j * k
    if det == 0:
        return Fraction(0)
    return Fraction(comb(i + k, i) * comb(j + l, j) * det, (i + k) * (j + l))


def sphere_bracket(x: SphereBasisElement, y: SphereBasisElement) -> Vector:
    """Bracket of two basis elements as a sparse vector (empty for zero).

    Both ``[e_{i,j}, e_{k,l}]`` and ``[f_{i,j}, e_{k,l}]`` are
    ``C(i+k,i) C(j+l,j) (jk-il) / ((i+k)(j+l))`` times the element of the
    same family indexed ``(i+k-1, j+l-1)``; this common sign is what makes
    graded Jacobi hold.  A would-be ``e_{0,0}`` term is dropped: it is not in
    the basis (and is central, so Jacobi is unaffected).

    >>> sphere_bracket(f(1, 0), e(0, 1))
    {SphereBasisElement(family='f', i=0, j=0, n=1): Fraction(-1, 1)}
    """
    if x.n != y.n:
        raise ValueError(f"elements over different spheres: n={x.n} and n={y.n}")
    n = x.n
    if x.family == "f" and y.family == "f":
        return {}
    if x.family == "e" and y.family == "f":
        return {k: -c for k, c in sphere_bracket(y, x).items()}
    i, j, k, l = x.i, x.j, y.i, y.j
    # both families carry the factor (jk - il): e acts on f the way it acts on e
    c = -_coefficient(i, j, k, l)
    if not c:
        return {}
    if x.family == "f":
        return {f(i + k - 1, j + l - 1, n): c}
    if (i + k - 1, j + l - 1) == (0, 0):
        return {}
    return {e(i + k - 1, j + l - 1, n): c}


def bracket(x: Mapping[SphereBasisElement, Fraction], y: Mapping[SphereBasisElement, Fraction]) -> Vector:
    """Bilinear extension of :func:`sphere_bracket`."""
    out: Vector = {}
    for a, ca in x.items():
        for b, cb in y.items():
            for t, v in sphere_bracket(a, b).items():
                acc(out, t, ca * cb * v)
    return out


def basis(index_bound: int, n: int) -> Iterator[SphereBasisElement]:
    """All basis elements with both indices at most ``index_bound``."""
    for i, j in cartesian(range(index_bound + 1), repeat=2):
        if (i, j) != (0, 0):
            yield e(i, j, n)
        yield f(i, j, n)


def verify_sphere_jacobi(index_bound: int, n: int = 1) -> CheckReport:
    """Graded Jacobi on every basis triple with indices at most ``index_bound``."""
    if index_bound < 1:
        raise ValueError("index_bound must be >= 1")
    elems = list(basis(index_bound, n))
    rep = CheckReport(f"sphere Jacobi (n={n}, bound={index_bound})", True)
    cache: dict[tuple, Vector] = {}

    def br(a, b):
        key = (a, b)
        if key not in cache:
            cache[key] = sphere_bracket(a, b)
        return cache[key]

    def br_vec(a, v):
        return linear_sum((c, br(a, t)) for t, c in v.items())

    def vec_br(v, b):
        return linear_sum((c, br(t, b)) for t, c in v.items())

    for x, y, z in cartesian(elems, repeat=3):
        rep.checked += 1
        sign = -1 if x.parity and y.parity else 1
        res = linear_sum([
            (1, br_vec(x, br(y, z))),
            (-1, vec_br(br(x, y), z)),
            (-sign, br_vec(y, br(x, z))),
        ])
        if res:
            rep.passed, rep.witness, rep.residual = False, (str(x), str(y), str(z)), res
            break
    return rep


def verify_grading(index_bound: int, n: int = 1) -> CheckReport:
    """``|[x, y]| = |x| + |y| - 4n`` for every nonzero basis bracket."""
    elems = list(basis(index_bound, n))
    rep = CheckReport(f"sphere grading (n={n}, bound={index_bound})", True)
    for x, y in cartesian(elems, repeat=2):
        rep.checked += 1
        for t in sphere_bracket(x, y):
            if t.degree != x.degree + y.degree - 4 * n:
                rep.passed, rep.witness = False, (str(x), str(y), str(t))
                return rep
    return rep


def ad_power(x: SphereBasisElement, y: SphereBasisElement, N: int) -> Vector:
    """``[x, [x, ..., [x, y]]]`` with ``N`` brackets."""
    v: Vector = {y: Fraction(1)}
    for _ in range(N):
        v = bracket({x: Fraction(1)}, v)
    return v
