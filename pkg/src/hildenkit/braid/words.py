from __future__ import annotations

import random
import re
from dataclasses import dataclass

from ..errors import IndexRangeError, ParseError, StrandMismatch
from .permutation import Permutation

_SIGMA = re.compile(r"^s(\d+)(?:\^(-?1))?$")
_INT = re.compile(r"^[+-]?\d+$")


@dataclass(frozen=True)
class BraidWord:
    """A word in the Artin generators of B_m.

    ``letters`` holds signed indices: ``i`` is sigma_i, ``-i`` its inverse.
    """

    strands: int
    letters: tuple[int, ...] = ()

    def __post_init__(self):
        if self.strands < 1:
            raise ValueError("strand count must be positive")
        object.__setattr__(self, "letters", tuple(int(x) for x in self.letters))
        for x in self.letters:
            if not 1 <= abs(x) <= self.strands - 1:
                raise IndexRangeError(f"generator index {x} out of range for B_{self.strands}")

    def __len__(self) -> int:
        return len(self.letters)

    def __mul__(self, other: "BraidWord") -> "BraidWord":
        if other.strands != self.strands:
            raise StrandMismatch(f"B_{self.strands} vs B_{other.strands}")
        return BraidWord(self.strands, self.letters + other.letters)

    def __str__(self) -> str:
        return format_word(self)


def parse_word(text: str, strands: int) -> BraidWord:
    """Parse ``s2 s1 s3^-1`` style text, or a list of signed integers.

    Commas and surrounding brackets are tolerated so that ``(2,1,-3)`` parses.
    """
    tokens = text.replace(",", " ").strip().strip("()[]").split()
    letters = []
    for tok in tokens:
        m = _SIGMA.match(tok)
        if m:
            idx = int(m.group(1))
            letters.append(-idx if m.group(2) == "-1" else idx)
        elif _INT.match(tok):
            val = int(tok)
            if val == 0:
                raise ParseError("0 is not a generator")
            letters.append(val)
        else:
            raise ParseError(f"malformed token {tok!r}")
    return BraidWord(strands, tuple(letters))


def format_word(w: BraidWord, style: str = "int") -> str:
    """Signed integers (the canonical file format) or ``s<i>`` tokens."""
    if style == "int":
        return " ".join(str(x) for x in w.letters)
    return " ".join(f"s{x}" if x > 0 else f"s{-x}^-1" for x in w.letters)


def free_reduce(w: BraidWord) -> BraidWord:
    out: list[int] = []
    for x in w.letters:
        if out and out[-1] == -x:
            out.pop()
        else:
            out.append(x)
    return BraidWord(w.strands, tuple(out))


def invert(w: BraidWord) -> BraidWord:
    return BraidWord(w.strands, tuple(-x for x in reversed(w.letters)))


def permutation_image(w: BraidWord) -> Permutation:
    arr = list(range(w.strands))
    for x in w.letters:
        i = abs(x) - 1
        arr[i], arr[i + 1] = arr[i + 1], arr[i]
    return Permutation.from_arrangement(arr)


def exponent_sum(w: BraidWord) -> int:
    return sum(1 if x > 0 else -1 for x in w.letters)


def random_word(rng: random.Random, strands: int, length: int) -> BraidWord:
    """Uniform letters from {+-1, ..., +-(m-1)}."""
    if strands < 2:
        return BraidWord(strands, ())
    choices = [sign * i for i in range(1, strands) for sign in (1, -1)]
    return BraidWord(strands, tuple(rng.choice(choices) for _ in range(length)))
