"""Goldman brackets of loops on orbifold disks, and the BV, Gysin and Hochschild
structures behind string brackets, all in exact rational arithmetic."""

from .goldman import bracket_combinations, goldman_bracket
from .loops import LoopCombination
from .words import CyclicWord, OrbifoldSignature, format_word, normalize, parse_signature, parse_word

__all__ = [
    "CyclicWord",
    "LoopCombination",
    "OrbifoldSignature",
    "bracket_combinations",
    "format_word",
    "goldman_bracket",
    "normalize",
    "parse_signature",
    "parse_word",
]
