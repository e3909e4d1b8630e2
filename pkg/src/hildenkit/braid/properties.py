"""Seeded randomized checks of the normal form.

Used by the test suite and by ``hildenkit braid props``.  The default seed
comes from ``HILDENKIT_SEED`` (0 when unset).
"""

from __future__ import annotations

import os
import random
from dataclasses import dataclass, field

from .garside import expand, normal_form
from .permutation import Permutation, finishing_set, starting_set
from .words import BraidWord, exponent_sum, permutation_image, random_word

SEED_ENV = "HILDENKIT_SEED"


def default_seed() -> int:
    return int(os.environ.get(SEED_ENV, "0"))


def free_insertions(rng: random.Random, w: BraidWord, count: int) -> BraidWord:
    """Insert ``count`` cancelling pairs ``x x^-1`` at random positions."""
    letters = list(w.letters)
    for _ in range(count):
        x = rng.choice([s * i for i in range(1, w.strands) for s in (1, -1)])
        at = rng.randint(0, len(letters))
        letters[at:at] = [x, -x]
    return BraidWord(w.strands, tuple(letters))


def relation_moves(rng: random.Random, w: BraidWord, count: int) -> BraidWord:
    """Apply up to ``count`` random braid-relation rewrites.

    Moves are far commutation ``a b -> b a`` and the braid relation in the
    forms ``a b a -> b a b`` and ``a b a^-1 -> b^-1 a b``, where ``a`` and
    ``b`` are adjacent generators of the same sign.
    """
    letters = list(w.letters)
    for _ in range(count):
        sites = []
        for k in range(len(letters) - 1):
            a, b = letters[k], letters[k + 1]
            if abs(abs(a) - abs(b)) >= 2:
                sites.append(("comm", k))
            if k + 2 < len(letters):
                c = letters[k + 2]
                if abs(abs(a) - abs(b)) == 1 and c == a and (a > 0) == (b > 0):
                    sites.append(("braid", k))
                if abs(abs(a) - abs(b)) == 1 and c == -a and (a > 0) == (b > 0):
                    sites.append(("conj", k))
        if not sites:
            break
        kind, k = rng.choice(sites)
        a, b = letters[k], letters[k + 1]
        if kind == "comm":
            letters[k], letters[k + 1] = b, a
        elif kind == "braid":
            letters[k : k + 3] = [b, a, b]
        else:
            letters[k : k + 3] = [-b, a, b]
    return BraidWord(w.strands, tuple(letters))


def left_weighted(factors) -> bool:
    return all(starting_set(b) <= finishing_set(a) for a, b in zip(factors, factors[1:]))


@dataclass
class PropertyReport:
    seed: int
    words: int = 0
    checks: dict[str, int] = field(default_factory=dict)
    violations: list[str] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not self.violations

    def lines(self) -> list[str]:
        out = [f"# seed={self.seed} words={self.words}"]
        for name in ("idempotent", "insertion", "relations", "filter", "descent"):
            bad = sum(1 for v in self.violations if v.startswith(name))
            out.append(f"{name} {self.checks.get(name, 0)} {'PASS' if not bad else 'FAIL'}")
        out.extend(f"# {v}" for v in self.violations[:20])
        return out


def run_property_suite(count: int = 10_000, seed: int | None = None, max_strands: int = 8,
                       max_length: int = 40, kernel=None) -> PropertyReport:
    seed = default_seed() if seed is None else seed
    rng = random.Random(seed)
    rep = PropertyReport(seed)
    tally = dict.fromkeys(("idempotent", "insertion", "relations", "filter", "descent"), 0)

    def fail(kind, w, detail=""):
        rep.violations.append(f"{kind}: m={w.strands} w=({' '.join(map(str, w.letters))}) {detail}")

    for _ in range(count):
        m = rng.randint(2, max_strands)
        w = random_word(rng, m, rng.randint(0, max_length))
        rep.words += 1
        nf = normal_form(w, kernel)

        tally["idempotent"] += 1
        back = expand(nf)
        if normal_form(back, kernel) != nf:
            fail("idempotent", w)

        tally["insertion"] += 1
        if normal_form(free_insertions(rng, w, rng.randint(1, 5)), kernel) != nf:
            fail("insertion", w)

        tally["relations"] += 1
        moved = relation_moves(rng, w, rng.randint(1, 10))
        if normal_form(moved, kernel) != nf:
            fail("relations", w, f"moved=({' '.join(map(str, moved.letters))})")

        tally["filter"] += 1
        for other in (back, moved):
            if permutation_image(other) != permutation_image(w) or exponent_sum(other) != exponent_sum(w):
                fail("filter", w)
                break

        tally["descent"] += 1
        delta = Permutation.from_arrangement(list(range(m))[::-1])
        ident = Permutation.identity(m)
        if not left_weighted(nf.factors) or any(f in (ident, delta) for f in nf.factors):
            fail("descent", w)
    rep.checks = tally
    return rep


__all__ = [
    "SEED_ENV",
    "PropertyReport",
    "default_seed",
    "free_insertions",
    "left_weighted",
    "relation_moves",
    "run_property_suite",
]
