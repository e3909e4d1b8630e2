"""Unreduced Burau matrices with exact rational entries.

An equality oracle independent of the Garside code: equal braids have equal
Burau matrices at every parameter value.  Evaluated at two rational points,
distinct matrices certify distinct braids.
"""

from fractions import Fraction

POINTS = (Fraction(2, 7), Fraction(-5, 3))


def identity(m):
    return [[Fraction(int(r == c)) for c in range(m)] for r in range(m)]


def generator(m, x, t):
    mat = identity(m)
    i = abs(x) - 1
    if x > 0:
        block = [[1 - t, t], [Fraction(1), Fraction(0)]]
    else:
        block = [[Fraction(0), Fraction(1)], [1 / t, 1 - 1 / t]]
    for r in range(2):
        for c in range(2):
            mat[i + r][i + c] = block[r][c]
    return mat


def matmul(a, b):
    return [[sum(a[r][k] * b[k][c] for k in range(len(b))) for c in range(len(b[0]))] for r in range(len(a))]


def burau(m, letters, t):
    mat = identity(m)
    for x in letters:
        mat = matmul(mat, generator(m, x, t))
    return mat


def signature(w):
    return tuple(tuple(map(tuple, burau(w.strands, w.letters, t))) for t in POINTS)
