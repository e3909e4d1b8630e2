"""Pure-Python left normal form kernel.

Simple braids are carried as *arrangements*: ``arr[pos]`` is the (0-based)
strand sitting at position ``pos`` after the braid, reading the word left to
right.  The compiled kernel in ``_garside.pyx`` exposes the same
``left_normal_form`` with identical results.
"""

from __future__ import annotations


def _left_weight(a: list[int], b: list[int], m: int) -> bool:
    """Move crossings from the front of ``b`` to the back of ``a`` in place.

    Returns True when anything moved.
    """
    moved = False
    inv_b = [0] * m
    for pos, s in enumerate(b):
        inv_b[s] = pos
    i = 0
    while i < m - 1:
        if inv_b[i] > inv_b[i + 1] and a[i] < a[i + 1]:
            a[i], a[i + 1] = a[i + 1], a[i]
            # sigma^{-1} b: swap the strand labels i and i+1
            p, q = inv_b[i], inv_b[i + 1]
            b[p], b[q] = i + 1, i
            inv_b[i], inv_b[i + 1] = q, p
            moved = True
            i = 0
            continue
        i += 1
    return moved


def left_normal_form(m: int, letters) -> tuple[int, list[list[int]]]:
    """Return ``(k, factors)`` with the word equal to Delta^k A_1 ... A_l.

    ``factors`` are arrangements; none is the identity or Delta and
    consecutive pairs are left-weighted.
    """
    if m < 2:
        return 0, []
    flips_after = []
    simples = []
    negatives = 0
    for x in letters:
        i = abs(x) - 1
        if x > 0:
            arr = list(range(m))
            arr[i], arr[i + 1] = arr[i + 1], arr[i]
        else:
            # sigma_i^{-1} = Delta^{-1} (Delta sigma_i^{-1})
            arr = [m - 1 - q for q in range(m)]
            arr[i], arr[i + 1] = arr[i + 1], arr[i]
            negatives += 1
        simples.append(arr)
        flips_after.append(negatives)
    k = -negatives
    for arr, seen in zip(simples, flips_after):
        # Delta^{-1} pulled leftwards past this factor once per later negative letter
        if (negatives - seen) % 2:
            arr[:] = [m - 1 - arr[m - 1 - p] for p in range(m)]

    ident = list(range(m))
    delta = ident[::-1]
    changed = True
    while changed:
        changed = False
        for j in range(len(simples) - 1):
            if _left_weight(simples[j], simples[j + 1], m):
                changed = True
    factors = []
    for arr in simples:
        if arr == delta:
            k += 1
        elif arr != ident:
            factors.append(arr)
    return k, factors
