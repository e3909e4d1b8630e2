"""Words over the generators p_i, s_i, t_i, r_1, r_2 of the Hilden subgroup.

An abstract word is a tuple of :class:`Letter`; tokens print as ``p1``,
``s2^-1`` and so on.
"""

from __future__ import annotations

import re
from dataclasses import dataclass

from .braid import BraidWord
from .errors import IndexRangeError, ParseError

_TOKEN = re.compile(r"^([pstr])(\d+)(\^-1)?$")


@dataclass(frozen=True, order=True)
class HildenGenerator:
    kind: str
    index: int

    def __str__(self) -> str:
        return f"{self.kind}{self.index}"

    def check(self, n: int) -> None:
        lo, hi = index_range(self.kind, n)
        if not lo <= self.index <= hi:
            raise IndexRangeError(f"{self} is not defined for n={n}")

    def braid_letters(self) -> tuple[int, ...]:
        i = self.index
        if self.kind == "p":
            return (2 * i, 2 * i - 1, -(2 * i + 1), -(2 * i))
        if self.kind == "s":
            return (2 * i, 2 * i - 1, 2 * i + 1, 2 * i)
        if self.kind == "t":
            return (2 * i - 1,)
        if self.index == 1:
            return (2, 1, -3, -2)
        return (4, 3, 2, 1, -5, -4, -3, -2)


def index_range(kind: str, n: int) -> tuple[int, int]:
    if kind in ("p", "s"):
        return 1, n - 1
    if kind == "t":
        return 1, n
    if kind == "r":
        # r_2 involves sigma_5, so it needs at least six strands
        return 1, (2 if n >= 3 else 1)
    raise ParseError(f"unknown generator kind {kind!r}")


@dataclass(frozen=True, order=True)
class Letter:
    gen: HildenGenerator
    inverted: bool = False

    def inverse(self) -> "Letter":
        return Letter(self.gen, not self.inverted)

    def __str__(self) -> str:
        return f"{self.gen}^-1" if self.inverted else str(self.gen)


Word = tuple  # tuple[Letter, ...]


def letter(token: str) -> Letter:
    m = _TOKEN.match(token)
    if not m:
        raise ParseError(f"malformed generator token {token!r}")
    kind, idx, inv = m.groups()
    if int(idx) < 1 or (kind == "r" and int(idx) > 2):
        raise ParseError(f"malformed generator token {token!r}")
    return Letter(HildenGenerator(kind, int(idx)), bool(inv))


def parse(text: str) -> tuple[Letter, ...]:
    """Parse ``p1 s2 t3 p1^-1``; ``1`` or an empty string is the identity."""
    text = text.strip()
    if text in ("", "1", "e"):
        return ()
    return tuple(letter(tok) for tok in text.split())


def fmt(word) -> str:
    return " ".join(str(x) for x in word) if word else "1"


def inverse(word) -> tuple[Letter, ...]:
    return tuple(x.inverse() for x in reversed(word))


def free_reduce(word) -> tuple[Letter, ...]:
    out: list[Letter] = []
    for x in word:
        if out and out[-1] == x.inverse():
            out.pop()
        else:
            out.append(x)
    return tuple(out)


def min_n(word) -> int:
    """Smallest n at which every letter of ``word`` is defined (at least 2)."""
    n = 2
    for x in word:
        g = x.gen
        if g.kind in ("p", "s"):
            n = max(n, g.index + 1)
        elif g.kind == "t":
            n = max(n, g.index)
        elif g.index == 2:
            n = max(n, 3)
    return n


def to_braid(word, n: int) -> BraidWord:
    letters: list[int] = []
    for x in word:
        x.gen.check(n)
        block = x.gen.braid_letters()
        if x.inverted:
            block = tuple(-y for y in reversed(block))
        letters.extend(block)
    return BraidWord(2 * n, tuple(letters))


def gen(kind: str, index: int, inverted: bool = False) -> Letter:
    return Letter(HildenGenerator(kind, index), inverted)
