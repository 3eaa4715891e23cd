"""Sparse vectors as ``{index: Fraction}`` dicts with zero entries pruned."""

from __future__ import annotations

from fractions import Fraction
from typing import Hashable, Iterable, Mapping, TypeVar

K = TypeVar("K", bound=Hashable)
Vec = dict


def vec(items: Iterable[tuple[K, object]] = ()) -> dict[K, Fraction]:
    out: dict[K, Fraction] = {}
    for k, c in items:
        acc(out, k, c)
    return out


def acc(target: dict, key, coeff) -> None:
    """``target[key] += coeff`` in place, dropping the key if it cancels."""
    if not coeff:
        return
    total = target.get(key, 0) + Fraction(coeff)
    if total:
        target[key] = total
    else:
        target.pop(key, None)


def add(x: Mapping, y: Mapping, c=1) -> dict:
    out = dict(x)
    for k, v in y.items():
        acc(out, k, c * v)
    return out


def scale(c, x: Mapping) -> dict:
    if not c:
        return {}
    return {k: Fraction(c) * v for k, v in x.items()}


def linear_sum(terms: Iterable[tuple[object, Mapping]]) -> dict:
    out: dict = {}
    for c, x in terms:
        if c:
            for k, v in x.items():
                acc(out, k, c * v)
    return out
