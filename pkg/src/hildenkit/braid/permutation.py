"""Permutations of {1, ..., m} and the projection B_m -> S_m.

Convention (used everywhere in the package): products are read left to right,
so ``(p * q)(x) == q(p(x))``.  A braid word acts the same way, letter by
letter, and ``images[s - 1]`` is the final position of the strand that
started at position ``s``.
"""

from __future__ import annotations

from dataclasses import dataclass


@dataclass(frozen=True)
class Permutation:
    images: tuple[int, ...]

    def __post_init__(self):
        if sorted(self.images) != list(range(1, len(self.images) + 1)):
            raise ValueError(f"not a permutation: {self.images}")

    @classmethod
    def identity(cls, m: int) -> "Permutation":
        return cls(tuple(range(1, m + 1)))

    @classmethod
    def transposition(cls, m: int, a: int, b: int) -> "Permutation":
        images = list(range(1, m + 1))
        images[a - 1], images[b - 1] = b, a
        return cls(tuple(images))

    @classmethod
    def from_arrangement(cls, arr) -> "Permutation":
        """Build from a 0-based arrangement (``arr[pos]`` is the strand at ``pos``)."""
        images = [0] * len(arr)
        for pos, strand in enumerate(arr):
            images[strand] = pos + 1
        return cls(tuple(images))

    def arrangement(self) -> list[int]:
        arr = [0] * len(self.images)
        for strand, pos in enumerate(self.images):
            arr[pos - 1] = strand
        return arr

    @property
    def degree(self) -> int:
        return len(self.images)

    def __call__(self, x: int) -> int:
        return self.images[x - 1]

    def __mul__(self, other: "Permutation") -> "Permutation":
        if other.degree != self.degree:
            raise ValueError("degree mismatch")
        return Permutation(tuple(other(self(x)) for x in range(1, self.degree + 1)))

    def inverse(self) -> "Permutation":
        inv = [0] * self.degree
        for x, y in enumerate(self.images, start=1):
            inv[y - 1] = x
        return Permutation(tuple(inv))

    def is_identity(self) -> bool:
        return all(y == x for x, y in enumerate(self.images, start=1))

    def inversions(self) -> int:
        im = self.images
        return sum(1 for a in range(len(im)) for b in range(a + 1, len(im)) if im[a] > im[b])

    def cycles(self) -> list[tuple[int, ...]]:
        seen = set()
        out = []
        for start in range(1, self.degree + 1):
            if start in seen or self(start) == start:
                continue
            cyc = [start]
            seen.add(start)
            x = self(start)
            while x != start:
                cyc.append(x)
                seen.add(x)
                x = self(x)
            out.append(tuple(cyc))
        return out

    def __str__(self) -> str:
        cyc = self.cycles()
        if not cyc:
            return "()"
        return "".join("(" + " ".join(map(str, c)) + ")" for c in cyc)


def starting_set(p: Permutation) -> frozenset[int]:
    """Indices i with sigma_i a left divisor of the permutation braid of ``p``.

    These are the pairs of adjacent strands i, i+1 that cross.
    """
    return frozenset(i for i in range(1, p.degree) if p(i) > p(i + 1))


def finishing_set(p: Permutation) -> frozenset[int]:
    """Indices i with sigma_i a right divisor of the permutation braid of ``p``.

    These are the pairs of adjacent end positions i, i+1 whose strands cross.
    """
    inv = p.inverse()
    return frozenset(i for i in range(1, p.degree) if inv(i) > inv(i + 1))
