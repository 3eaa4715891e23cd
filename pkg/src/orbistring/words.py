"""Free homotopy classes of loops on a disk with cone points.

A loop on a disk with cone points of orders ``n_1, ..., n_r`` is a conjugacy
class in the free product ``Z/n_1 * ... * Z/n_r``.  Every class has a unique
cyclically reduced representative once exponents are stored in
``1..n_i - 1`` and the rotation is fixed, which is what :func:`normalize`
produces.
"""

from __future__ import annotations

import re
import string
from dataclasses import dataclass
from typing import Iterable, NamedTuple, Sequence

__all__ = [
    "SignatureMismatch",
    "WordParseError",
    "GeneratorOutOfRange",
    "OrbifoldSignature",
    "Letter",
    "CyclicWord",
    "normalize",
    "conjugacy_equal",
    "expand",
    "collect",
    "parse_signature",
    "parse_word",
    "format_word",
]


class SignatureMismatch(ValueError):
    """A word or combination does not live over the expected signature."""


class WordParseError(ValueError):
    """Malformed word or signature text; ``position`` is the offending offset."""

    def __init__(self, text: str, position: int, reason: str):
        self.text = text
        self.position = position
        self.reason = reason
        pointer = " " * position + "^"
        super().__init__(f"{reason} at position {position}\n  {text}\n  {pointer}")


class GeneratorOutOfRange(WordParseError, SignatureMismatch):
    """A word names a cone point the signature does not have."""


@dataclass(frozen=True)
class OrbifoldSignature:
    """Cone-point orders in the anticlockwise order of the points."""

    orders: tuple[int, ...]

    def __post_init__(self):
        orders = tuple(int(n) for n in self.orders)
        object.__setattr__(self, "orders", orders)
        if not orders:
            raise ValueError("a signature needs at least one cone point")
        if any(n < 2 for n in orders):
            raise ValueError(f"cone point orders must be >= 2, got {orders}")

    @property
    def r(self) -> int:
        return len(self.orders)

    def order(self, generator: int) -> int:
        self.check_generator(generator)
        return self.orders[generator - 1]

    def check_generator(self, generator: int) -> None:
        if not 1 <= generator <= len(self.orders):
            raise SignatureMismatch(
                f"generator g{generator} does not exist for signature {self}"
            )

    def __str__(self) -> str:
        return ",".join(str(n) for n in self.orders)


class Letter(NamedTuple):
    """``a_generator ** exponent``; tuples order by (generator, exponent)."""

    generator: int
    exponent: int


def _is_canonical(letters: tuple[Letter, ...], sig: OrbifoldSignature) -> bool:
    n = len(letters)
    for k, (g, e) in enumerate(letters):
        if not 1 <= g <= sig.r or not 1 <= e < sig.orders[g - 1]:
            return False
        if n > 1 and letters[k - 1].generator == g:
            return False
    return letters == _least_rotation(letters)


@dataclass(frozen=True)
class CyclicWord:
    """Canonical representative of a conjugacy class.

    Build these with :func:`normalize`; the constructor only accepts letter
    sequences that are already canonical.
    """

    letters: tuple[Letter, ...]
    signature: OrbifoldSignature

    def __post_init__(self):
        letters = tuple(Letter(int(g), int(e)) for g, e in self.letters)
        object.__setattr__(self, "letters", letters)
        if not _is_canonical(letters, self.signature):
            raise ValueError(
                f"{letters} is not a canonical cyclic word over {self.signature}; "
                "use normalize()"
            )

    @property
    def canonical_form(self) -> tuple[Letter, ...]:
        return self.letters

    def __len__(self) -> int:
        return len(self.letters)

    def __bool__(self) -> bool:
        return bool(self.letters)

    def __lt__(self, other: "CyclicWord") -> bool:
        return self.letters < other.letters

    @property
    def expanded_length(self) -> int:
        return sum(e for _, e in self.letters)

    def __str__(self) -> str:
        return format_word(self)


def _least_rotation(letters: Sequence[Letter]) -> tuple[Letter, ...]:
    if not letters:
        return ()
    seq = list(letters)
    return min(tuple(seq[k:] + seq[:k]) for k in range(len(seq)))


def _reduce(letters: list[tuple[int, int]], orders: tuple[int, ...]) -> list[tuple[int, int]]:
    """One pass: reduce exponents, drop trivial letters, merge equal neighbours."""
    out: list[tuple[int, int]] = []
    for g, e in letters:
        e %= orders[g - 1]
        if e == 0:
            continue
        if out and out[-1][0] == g:
            merged = (out.pop()[1] + e) % orders[g - 1]
            if merged:
                out.append((g, merged))
        else:
            out.append((g, e))
    # first/last merge: the word is cyclic
    while len(out) > 1 and out[0][0] == out[-1][0]:
        g = out[0][0]
        merged = (out[0][1] + out[-1][1]) % orders[g - 1]
        out = out[1:-1] + ([(g, merged)] if merged else [])
    return out


def normalize(raw: Iterable[tuple[int, int]], sig: OrbifoldSignature) -> CyclicWord:
    """Canonical cyclic word of the loop spelled by ``raw``.

    ``raw`` holds ``(generator, exponent)`` pairs with 1-based generators and
    arbitrary integer exponents.  The canonical form is the lexicographically
    least rotation of the cyclically reduced word.

    >>> sig = OrbifoldSignature((2, 4))
    >>> format_word(normalize([(1, 1), (1, 1), (2, 1)], sig))
    'b'
    """
    letters = []
    for g, e in raw:
        sig.check_generator(g)
        letters.append((int(g), int(e)))
    while True:
        reduced = _reduce(letters, sig.orders)
        if reduced == letters:
            break
        letters = reduced
    return CyclicWord(_least_rotation([Letter(g, e) for g, e in letters]), sig)


def conjugacy_equal(w1: CyclicWord, w2: CyclicWord, sig: OrbifoldSignature) -> bool:
    if w1.signature != sig or w2.signature != sig:
        raise SignatureMismatch("words are not over the given signature")
    return w1.letters == w2.letters


def expand(word: CyclicWord) -> tuple[int, ...]:
    """Unit occurrences: ``a^2 b`` becomes ``(1, 1, 2)``."""
    return tuple(g for g, e in word.letters for _ in range(e))


def collect(units: Sequence[int], sig: OrbifoldSignature) -> CyclicWord:
    """Inverse of :func:`expand` up to normalization."""
    return normalize(((g, 1) for g in units), sig)


_SIG_RE = re.compile(r"\s*(\d+)\s*")


def parse_signature(text: str) -> OrbifoldSignature:
    """Parse ``"2,4"`` into a signature."""
    orders = []
    pos = 0
    for chunk in text.split(","):
        m = _SIG_RE.fullmatch(chunk)
        if not m:
            raise WordParseError(text, pos, "expected a positive integer order")
        n = int(m.group(1))
        if n < 2:
            raise WordParseError(text, pos + m.start(1), "cone point orders must be >= 2")
        orders.append(n)
        pos += len(chunk) + 1
    return OrbifoldSignature(tuple(orders))


_TOKEN_RE = re.compile(r"(?:g(\d+)|([a-z]))(?:\^(-?\d+))?")


def parse_word(text: str, sig: OrbifoldSignature | None = None) -> list[tuple[int, int]]:
    """Parse the word grammar into raw ``(generator, exponent)`` pairs.

    Tokens are ``g<i>`` or ``g<i>^<e>``; when the signature has at most 26
    points the letters ``a``..``z`` stand for ``g1``..``g26``.  ``1`` (or the
    empty string) is the trivial loop.
    """
    stripped = text.strip()
    if stripped in ("", "1"):
        return []
    short_ok = sig is None or sig.r <= 26
    out = []
    pos = 0
    while pos < len(text):
        m = _TOKEN_RE.match(text, pos)
        if not m or m.end() == pos:
            raise WordParseError(text, pos, "expected g<i>, g<i>^<e> or a letter")
        if m.group(1) is not None:
            g = int(m.group(1))
        else:
            if not short_ok:
                raise WordParseError(text, pos, "letter shorthand needs at most 26 points")
            g = string.ascii_lowercase.index(m.group(2)) + 1
        if g < 1 or (sig is not None and g > sig.r):
            r = "?" if sig is None else sig.r
            raise GeneratorOutOfRange(text, pos, f"generator {g} out of range 1..{r}")
        e = int(m.group(3)) if m.group(3) is not None else 1
        out.append((g, e))
        pos = m.end()
    return out


def format_word(word: CyclicWord, expanded: bool = True) -> str:
    """Spell a word in the CLI grammar.

    With the letter shorthand available, powers are written out
    (``a^2 b`` -> ``"aab"``) unless ``expanded`` is false.
    """
    if not word.letters:
        return "1"
    if word.signature.r <= 26:
        parts = []
        for g, e in word.letters:
            ch = string.ascii_lowercase[g - 1]
            parts.append(ch * e if expanded else (ch if e == 1 else f"{ch}^{e}"))
        return "".join(parts)
    return "".join(f"g{g}" if e == 1 else f"g{g}^{e}" for g, e in word.letters)
