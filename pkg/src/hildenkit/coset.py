"""Todd-Coxeter coset enumeration (HLT strategy with lookahead).

Words are sequences of ``(generator, exponent)`` pairs with exponent +1 or
-1.  The enumeration is fully deterministic: cosets are processed in
definition order, relators in the order given, and columns in generator
order with inverses interleaved (``g, g^-1, h, h^-1, ...``).
"""

from __future__ import annotations

from collections import deque

from .errors import CosetLimitExceeded

UNDEF = -1


class CosetTable:
    def __init__(self, ngens: int, limit: int):
        if limit < 1:
            raise ValueError("limit must be at least 1")
        self.ncols = 2 * ngens
        self.limit = limit
        self.rows: list[list[int]] = [[UNDEF] * self.ncols]
        self.parent = [0]
        self.active = 1
        self._queue: deque = deque()

    @staticmethod
    def inv(col: int) -> int:
        return col ^ 1

    def alive(self, c: int) -> bool:
        return self.parent[c] == c

    def rep(self, c: int) -> int:
        root = c
        while self.parent[root] != root:
            root = self.parent[root]
        while self.parent[c] != root:
            self.parent[c], c = root, self.parent[c]
        return root

    def define(self, c: int, col: int) -> int:
        if self.active >= self.limit:
            raise CosetLimitExceeded(f"more than {self.limit} cosets")
        new = len(self.rows)
        self.rows.append([UNDEF] * self.ncols)
        self.parent.append(new)
        self.active += 1
        self.rows[c][col] = new
        self.rows[new][self.inv(col)] = c
        return new

    def _merge(self, a: int, b: int) -> None:
        a, b = self.rep(a), self.rep(b)
        if a == b:
            return
        if a > b:
            a, b = b, a
        self.parent[b] = a
        self.active -= 1
        self._queue.append(b)

    def coincidence(self, a: int, b: int) -> None:
        self._merge(a, b)
        q = self._queue
        while q:
            g = q.popleft()
            row = self.rows[g]
            for col in range(self.ncols):
                d = row[col]
                if d == UNDEF:
                    continue
                self.rows[d][self.inv(col)] = UNDEF
                e1, e2 = self.rep(g), self.rep(d)
                if self.rows[e1][col] != UNDEF:
                    self._merge(e2, self.rows[e1][col])
                elif self.rows[e2][self.inv(col)] != UNDEF:
                    self._merge(e1, self.rows[e2][self.inv(col)])
                else:
                    self.rows[e1][col] = e2
                    self.rows[e2][self.inv(col)] = e1

    def scan(self, start: int, word, fill: bool) -> None:
        """Scan ``word`` at coset ``start``; with ``fill`` define missing cosets."""
        rows, inv = self.rows, self.inv
        while True:
            f, i = start, 0
            b, j = start, len(word) - 1
            while i <= j and rows[f][word[i]] != UNDEF:
                f = rows[f][word[i]]
                i += 1
            if i > j:
                if f != start:
                    self.coincidence(f, start)
                return
            while j >= i and rows[b][inv(word[j])] != UNDEF:
                b = rows[b][inv(word[j])]
                j -= 1
            if j < i:
                self.coincidence(f, b)
                return
            if i == j:
                rows[f][word[i]] = b
                rows[b][inv(word[i])] = f
                return
            if not fill:
                return
            self.define(f, word[i])

    def lookahead(self, relators) -> None:
        for c in range(len(self.rows)):
            for w in relators:
                if not self.alive(c):
                    break
                self.scan(c, w, fill=False)


def _encode(word, index) -> list[int]:
    out = []
    for g, e in word:
        col = 2 * index[g]
        if e == -1:
            col += 1
        elif e != 1:
            raise ValueError(f"exponent must be +1 or -1, got {e}")
        out.append(col)
    return out


def coset_enumerate(generators, relators, subgroup_words=(), limit: int = 10_000) -> int:
    """Index of the subgroup generated by ``subgroup_words``.

    With no subgroup words this is the order of the group.  Raises
    :class:`CosetLimitExceeded` if more than ``limit`` live cosets would be
    needed even after a lookahead pass.
    """
    index = {g: k for k, g in enumerate(generators)}
    rels = [_encode(w, index) for w in relators]
    rels = [w for w in rels if w]
    table = CosetTable(len(generators), limit)

    def process(c: int) -> None:
        if c == 0:
            for w in subgroup_words:
                enc = _encode(w, index)
                if enc:
                    table.scan(0, enc, fill=True)
        for w in rels:
            if not table.alive(c):
                return
            table.scan(c, w, fill=True)
        for col in range(table.ncols):
            if not table.alive(c):
                return
            if table.rows[c][col] == UNDEF:
                table.define(c, col)

    c = 0
    while c < len(table.rows):
        try:
            process(c)
        except CosetLimitExceeded:
            table.lookahead(rels)
            if table.active >= table.limit:
                raise
            continue
        c += 1
    return table.active


__all__ = ["CosetTable", "coset_enumerate"]
