"""Formal linear combinations of free loops, i.e. the module k[C]."""

from __future__ import annotations

import re
from fractions import Fraction
from numbers import Rational
from typing import Iterable, Iterator, Mapping

from .words import (
    CyclicWord,
    OrbifoldSignature,
    SignatureMismatch,
    format_word,
    normalize,
    parse_word,
)

__all__ = ["LoopCombination", "add", "scale", "tidy_scalar"]

Scalar = int | Fraction


def tidy_scalar(c: Rational) -> Scalar:
    """Integers stay ``int``; other rationals become ``Fraction``."""
    c = Fraction(c)
    return c.numerator if c.denominator == 1 else c


class LoopCombination:
    """Finite sum of canonical cyclic words with nonzero exact coefficients.

    Instances are immutable.  Keys are always canonical over one signature:
    the only way in is through :class:`CyclicWord` (which refuses
    non-canonical letters) or :meth:`from_raw` (which normalizes).
    """

    __slots__ = ("_terms", "_signature")

    def __init__(self, terms: Mapping[CyclicWord, Rational] | Iterable[tuple[CyclicWord, Rational]] = (),
                 signature: OrbifoldSignature | None = None):
        items = terms.items() if isinstance(terms, Mapping) else terms
        acc: dict[CyclicWord, Fraction] = {}
        sig = signature
        for word, coeff in items:
            if not isinstance(word, CyclicWord):
                raise TypeError(f"keys must be CyclicWord, got {type(word).__name__}")
            if sig is None:
                sig = word.signature
            elif word.signature != sig:
                raise SignatureMismatch(f"word {word} is over {word.signature}, expected {sig}")
            acc[word] = acc.get(word, Fraction(0)) + Fraction(coeff)
        if sig is None:
            raise ValueError("an empty combination needs an explicit signature")
        self._signature = sig
        self._terms = {w: tidy_scalar(c) for w, c in sorted(acc.items()) if c != 0}

    @classmethod
    def zero(cls, signature: OrbifoldSignature) -> "LoopCombination":
        return cls((), signature)

    @classmethod
    def from_word(cls, word: CyclicWord, coeff: Rational = 1) -> "LoopCombination":
        return cls([(word, coeff)], word.signature)

    @classmethod
    def from_raw(cls, terms: Iterable[tuple[Rational, Iterable[tuple[int, int]]]],
                 signature: OrbifoldSignature) -> "LoopCombination":
        return cls([(normalize(raw, signature), c) for c, raw in terms], signature)

    @property
    def signature(self) -> OrbifoldSignature:
        return self._signature

    @property
    def terms(self) -> dict[CyclicWord, Scalar]:
        return dict(self._terms)

    def __iter__(self) -> Iterator[tuple[CyclicWord, Scalar]]:
        return iter(self._terms.items())

    def __len__(self) -> int:
        return len(self._terms)

    def __bool__(self) -> bool:
        return bool(self._terms)

    def coefficient(self, word: CyclicWord) -> Scalar:
        return self._terms.get(word, 0)

    def _check(self, other: "LoopCombination") -> None:
        if not isinstance(other, LoopCombination):
            raise TypeError(f"cannot combine LoopCombination with {type(other).__name__}")
        if other._signature != self._signature:
            raise SignatureMismatch(f"signatures differ: {self._signature} vs {other._signature}")

    def __add__(self, other: "LoopCombination") -> "LoopCombination":
        self._check(other)
        return LoopCombination(list(self) + list(other), self._signature)

    def __neg__(self) -> "LoopCombination":
        return self.scale(-1)

    def __sub__(self, other: "LoopCombination") -> "LoopCombination":
        self._check(other)
        return self + (-other)

    def scale(self, c: Rational) -> "LoopCombination":
        return LoopCombination([(w, c * v) for w, v in self], self._signature)

    def __mul__(self, c: Rational) -> "LoopCombination":
        if not isinstance(c, Rational):
            return NotImplemented
        return self.scale(c)

    __rmul__ = __mul__

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, LoopCombination):
            return NotImplemented
        return self._signature == other._signature and self._terms == other._terms

    def __hash__(self) -> int:
        return hash((self._signature, tuple(self._terms.items())))

    def __repr__(self) -> str:
        return f"LoopCombination({self.format()!r}, signature={self._signature})"

    def __str__(self) -> str:
        return self.format()

    def format(self) -> str:
        """``+1·abbaab -1·abaabb``-style text; ``0`` for the empty sum."""
        if not self._terms:
            return "0"
        parts = []
        for w, c in self._terms.items():
            sign = "-" if c < 0 else "+"
            parts.append(f"{sign}{abs(c)}·{format_word(w)}")
        return " ".join(parts)

    _TERM_RE = re.compile(r"([+\-−])\s*(\d+(?:/\d+)?)\s*[·*]\s*(\S+)")

    @classmethod
    def parse(cls, text: str, signature: OrbifoldSignature) -> "LoopCombination":
        """Inverse of :meth:`format`."""
        text = text.strip()
        if text == "0":
            return cls.zero(signature)
        terms = []
        pos = 0
        while pos < len(text):
            if text[pos].isspace():
                pos += 1
                continue
            m = cls._TERM_RE.match(text, pos)
            if not m:
                raise ValueError(f"cannot parse loop combination at position {pos}: {text!r}")
            sign = -1 if m.group(1) in "-−" else 1
            terms.append((sign * Fraction(m.group(2)), parse_word(m.group(3), signature)))
            pos = m.end()
        return cls.from_raw(terms, signature)

    def to_json(self) -> dict:
        return {
            "schema": 1,
            "signature": list(self._signature.orders),
            "terms": [
                {"coefficient": c if isinstance(c, int) else str(c), "word": format_word(w)}
                for w, c in self._terms.items()
            ],
        }

    @classmethod
    def from_json(cls, data: Mapping) -> "LoopCombination":
        if data.get("schema") != 1:
            raise ValueError(f"unsupported schema {data.get('schema')!r}")
        sig = OrbifoldSignature(tuple(data["signature"]))
        return cls.from_raw(
            [(Fraction(str(t["coefficient"])), parse_word(t["word"], sig)) for t in data["terms"]],
            sig,
        )


def add(x: LoopCombination, y: LoopCombination) -> LoopCombination:
    return x + y


def scale(c: Rational, x: LoopCombination) -> LoopCombination:
    return x.scale(c)
