"""Left normal form Delta^k A_1 ... A_l and the word problem in B_m.

The compiled kernel is used when it was built; ``HILDENKIT_PURE_PYTHON=1``
forces the fallback.
"""

from __future__ import annotations

import os
from dataclasses import dataclass

from ..errors import StrandMismatch
from . import _garside_py
from .permutation import Permutation
from .words import BraidWord, free_reduce

if os.environ.get("HILDENKIT_PURE_PYTHON"):
    _kernel = _garside_py
else:
    try:
        from . import _garside as _kernel  # type: ignore[attr-defined]
    except ImportError:  # extension not built
        _kernel = _garside_py

KERNEL = "compiled" if _kernel is not _garside_py else "python"


@dataclass(frozen=True)
class GarsideNormalForm:
    strands: int
    delta_power: int
    factors: tuple[Permutation, ...]

    def __str__(self) -> str:
        parts = [f"D^{self.delta_power}"] + [str(f) for f in self.factors]
        return " . ".join(parts)


def normal_form(w: BraidWord, kernel=None) -> GarsideNormalForm:
    kern = kernel or _kernel
    reduced = free_reduce(w)
    k, arrs = kern.left_normal_form(w.strands, list(reduced.letters))
    return GarsideNormalForm(w.strands, k, tuple(Permutation.from_arrangement(a) for a in arrs))


def delta_word(m: int) -> BraidWord:
    """Half twist as sigma_1 (sigma_2 sigma_1) ... (sigma_{m-1} ... sigma_1)."""
    letters = [j for i in range(1, m) for j in range(i, 0, -1)]
    return BraidWord(m, tuple(letters))


def permutation_braid_word(p: Permutation) -> BraidWord:
    """Positive word for the permutation braid of ``p`` (one crossing per inverted pair)."""
    arr = p.arrangement()
    rev = []
    while True:
        for i in range(len(arr) - 1):
            if arr[i] > arr[i + 1]:
                arr[i], arr[i + 1] = arr[i + 1], arr[i]
                rev.append(i + 1)
                break
        else:
            break
    return BraidWord(p.degree, tuple(reversed(rev)))


def expand(nf: GarsideNormalForm) -> BraidWord:
    d = delta_word(nf.strands)
    if nf.delta_power < 0:
        d = BraidWord(nf.strands, tuple(-x for x in reversed(d.letters)))
    letters = list(d.letters) * abs(nf.delta_power)
    for f in nf.factors:
        letters.extend(permutation_braid_word(f).letters)
    return BraidWord(nf.strands, tuple(letters))


def equal(w1: BraidWord, w2: BraidWord) -> bool:
    if w1.strands != w2.strands:
        raise StrandMismatch(f"B_{w1.strands} vs B_{w2.strands}")
    return normal_form(w1) == normal_form(w2)
