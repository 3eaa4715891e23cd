"""Exact linear algebra over Q on dense ``list[list[Fraction]]`` matrices.

Thin wrappers around sympy's ``DomainMatrix``; a matrix with ``m`` rows and
``n`` columns is the map ``Q^n -> Q^m``.  Empty dimensions are handled here
so callers never special-case them.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Sequence

from sympy import QQ
from sympy.polys.matrices import DomainMatrix

Matrix = list[list[Fraction]]
Vector = list[Fraction]


def _to_qq(x) -> object:
    x = Fraction(x)
    return QQ(x.numerator, x.denominator)


def _from_qq(x) -> Fraction:
    return Fraction(int(x.numerator), int(x.denominator))


def _dm(rows: Sequence[Sequence], ncols: int) -> DomainMatrix:
    return DomainMatrix([[_to_qq(x) for x in row] for row in rows], (len(rows), ncols), QQ)


def zeros(m: int, n: int) -> Matrix:
    return [[Fraction(0)] * n for _ in range(m)]


def rank(rows: Sequence[Sequence], ncols: int) -> int:
    if not rows or ncols == 0:
        return 0
    return _dm(rows, ncols).rank()


def nullspace(rows: Sequence[Sequence], ncols: int) -> list[Vector]:
    """Basis of ``{v : M v = 0}``."""
    if ncols == 0:
        return []
    if not rows:
        return [[Fraction(int(i == j)) for j in range(ncols)] for i in range(ncols)]
    ns = _dm(rows, ncols).nullspace()
    return [[_from_qq(x) for x in row] for row in ns.to_list()]


def span_basis(vectors: Sequence[Sequence], dim: int) -> list[Vector]:
    """Independent vectors spanning the same space (row echelon form)."""
    if not vectors or dim == 0:
        return []
    rref, pivots = _dm(vectors, dim).rref()
    rows = rref.to_list()
    return [[_from_qq(x) for x in rows[k]] for k in range(len(pivots))]


def complement(vectors: Sequence[Sequence], dim: int) -> list[int]:
    """Standard basis indices completing ``span(vectors)`` to ``Q^dim``."""
    basis = span_basis(vectors, dim)
    chosen: list[Vector] = list(basis)
    picked = []
    for i in range(dim):
        e = [Fraction(int(i == j)) for j in range(dim)]
        if rank(chosen + [e], dim) > len(chosen):
            chosen.append(e)
            picked.append(i)
    return picked


def solve(rows: Sequence[Sequence], ncols: int, rhs: Sequence) -> Vector | None:
    """One solution of ``M x = rhs`` or ``None`` when inconsistent."""
    m = len(rows)
    if ncols == 0:
        return [] if all(Fraction(b) == 0 for b in rhs) else None
    if m == 0:
        return [Fraction(0)] * ncols
    aug = _dm([list(r) + [b] for r, b in zip(rows, rhs)], ncols + 1)
    rref, pivots = aug.rref()
    if ncols in pivots:
        return None
    rows_ = rref.to_list()
    x = [Fraction(0)] * ncols
    for k, p in enumerate(pivots):
        x[p] = _from_qq(rows_[k][ncols])
    return x


def matmul(a: Matrix, b: Matrix, inner: int) -> Matrix:
    n = len(b[0]) if b else 0
    return [[sum((row[k] * b[k][j] for k in range(inner)), Fraction(0)) for j in range(n)] for row in a]


def matvec(a: Sequence[Sequence], v: Sequence) -> Vector:
    return [sum((x * y for x, y in zip(row, v)), Fraction(0)) for row in a]
