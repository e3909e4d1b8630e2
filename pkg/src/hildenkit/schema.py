"""Labelled vertices, edge lengths and face classes of the cut-system complex.

Only the bookkeeping is modelled: the vertices ``x_i``, ``y_ij``, ``z_ij``
adjacent to the basepoint, the lengths of edges between them, the face
classes ``T_ij``, ``R_ij``, ``S_ij`` and the panels that decompose a
rectangular face into faces with shorter edges.  The panels live in
``data/panels`` as text so that the checks below validate the diagrams
themselves.
"""

from __future__ import annotations

import ast
import operator
import re
from collections import Counter
from dataclasses import dataclass, field
from functools import lru_cache
from importlib import resources

from .errors import ParseError, TerminalFace

# ---------------------------------------------------------------- vertices


@dataclass(frozen=True, order=True)
class SchemaVertex:
    kind: str  # "x", "y" or "z"
    i: int
    j: int = 0

    def __post_init__(self):
        if self.kind not in ("x", "y", "z"):
            raise ValueError(f"unknown vertex kind {self.kind!r}")
        if self.i < 0 or self.j < 0:
            raise ValueError("vertex indices are non-negative")
        if self.kind == "x" and self.j:
            raise ValueError("x vertices carry one index")

    def canonical(self) -> "SchemaVertex":
        """Representative under ``x_i = y_0i`` and ``x_0 = y_00 = z_00``."""
        if self.kind == "x":
            return SchemaVertex("y", 0, self.i)
        if self.kind == "z" and self.i == 0 and self.j == 0:
            return SchemaVertex("y", 0, 0)
        return self

    def same(self, other: "SchemaVertex") -> bool:
        return self.canonical() == other.canonical()

    def is_basepoint(self) -> bool:
        return self.canonical() == SchemaVertex("y", 0, 0)

    def valid(self, n: int) -> bool:
        if self.kind == "x":
            return 0 <= self.i <= n - 1
        if self.kind == "y":
            return 0 <= self.i <= n - 2 and (self.j == 0 or self.i < self.j <= n - 1)
        return self.i + self.j <= n - 2

    def __str__(self) -> str:
        if self.kind == "x":
            return f"x{self.i}"
        return f"{self.kind}{self.i},{self.j}"


def vertex(label: str) -> SchemaVertex:
    """Parse ``x3``, ``y1,2``, ``y[1,2]`` or ``z_{0,2}``."""
    m = re.fullmatch(r"\s*([xyz])[_\[{]*\s*(\d+)\s*(?:,\s*(\d+))?\s*[\]}]*\s*", label)
    if not m:
        raise ParseError(f"malformed vertex label {label!r}")
    kind, a, b = m.groups()
    if (kind == "x") != (b is None):
        raise ParseError(f"wrong number of indices in {label!r}")
    return SchemaVertex(kind, int(a), int(b or 0))


def vertex_length(v: SchemaVertex) -> int:
    """Length of the edge ``(v0, v)``; 0 for the basepoint itself."""
    if v.is_basepoint():
        return 0
    if v.kind == "x":
        return v.i
    if v.i == 0:
        return v.j
    if v.j == 0:
        return v.i
    raise ValueError(f"{v} is not adjacent to the basepoint")


def edge_length(u: SchemaVertex, v: SchemaVertex) -> int:
    """Length of an edge between two y (or two z) vertices sharing an index.

    Moving along one index is a single disc change; its length is the index
    difference, which reduces to :func:`vertex_length` when one end is the
    basepoint and gives parallel sides of each rectangle equal length.
    """
    u, v = u.canonical(), v.canonical()
    if u.is_basepoint():
        return vertex_length(v)
    if v.is_basepoint():
        return vertex_length(u)
    if u.kind != v.kind:
        raise ValueError(f"no edge length between {u} and {v}")
    if u.i == v.i and u.j != v.j:
        return abs(u.j - v.j)
    if u.j == v.j and u.i != v.i:
        return abs(u.i - v.i)
    raise ValueError(f"no edge length between {u} and {v}")


# ---------------------------------------------------------------- faces


@dataclass(frozen=True, order=True)
class FaceClass:
    kind: str  # "T", "R" or "S"
    i: int
    j: int

    def __str__(self) -> str:
        return f"{self.kind}{self.i}{self.j}" if max(self.i, self.j) < 10 else f"{self.kind}{self.i},{self.j}"

    @property
    def third_length(self) -> int:
        if self.kind != "T":
            raise ValueError("only triangles have a third edge")
        return self.i + self.j

    def valid(self) -> bool:
        """Index constraints independent of n."""
        if self.kind == "R":
            return 1 <= self.i < self.j
        if self.kind in ("S", "T"):
            return 1 <= self.i <= self.j
        return False


def face(label: str) -> FaceClass:
    """Parse ``R34``, ``S1,10``, ``T[1,2]`` or ``R_{12}``."""
    m = re.fullmatch(r"\s*([TRS])[_\[{]*\s*(\d+)\s*,\s*(\d+)\s*[\]}]*\s*", label)
    if not m:
        m = re.fullmatch(r"\s*([TRS])[_{]*(\d)(\d)}?\s*", label)
    if not m:
        raise ParseError(f"malformed face class {label!r}")
    return FaceClass(m.group(1), int(m.group(2)), int(m.group(3)))


BASIS = frozenset({FaceClass("R", 1, 2), FaceClass("S", 1, 1)})

# The definition of the subcomplex names R12, S11, T11 in words and
# R11, S11, T11 in the displayed formula.  Both are kept.
BASIS_PROSE = frozenset({FaceClass("R", 1, 2), FaceClass("S", 1, 1), FaceClass("T", 1, 1)})
BASIS_FORMULA = frozenset({FaceClass("R", 1, 1), FaceClass("S", 1, 1), FaceClass("T", 1, 1)})


def basis_discrepancy() -> str:
    extra = sorted(str(c) for c in BASIS_PROSE ^ BASIS_FORMULA)
    notes = [f"prose and formula disagree on {', '.join(extra)}"]
    if not FaceClass("R", 1, 1).valid():
        notes.append("R11 violates inner < outer")
    notes.append("the decomposition panels end in R12 and S11, matching the prose")
    return "; ".join(notes)


def is_terminal(c: FaceClass) -> bool:
    return c.kind == "T" or c in BASIS


def classify_face(kind: str, i: int, j: int, n: int) -> bool:
    """Whether the class (or vertex label) exists at ambient size ``n``.

    ``kind`` is a face class ``T``, ``R``, ``S`` or a vertex kind ``x``,
    ``y``, ``z`` (for ``x`` the second index is ignored).  A face exists when
    the vertices of its representative do: ``R_ij`` uses ``y_ij``, ``S_ij``
    uses ``z_ij`` and ``T_ij`` uses ``x_{i+j}``.
    """
    if kind in ("x", "y", "z"):
        try:
            return SchemaVertex(kind, i, 0 if kind == "x" else j).valid(n)
        except ValueError:
            return False
    c = FaceClass(kind, i, j)
    if not c.valid():
        return False
    if kind == "R":
        return SchemaVertex("y", i, j).valid(n) and SchemaVertex("y", i, 0).valid(n)
    if kind == "S":
        return SchemaVertex("z", i, j).valid(n)
    return SchemaVertex("x", i + j).valid(n)


# ---------------------------------------------------------------- panels

_BINOPS = {ast.Add: operator.add, ast.Sub: operator.sub, ast.Mult: operator.mul}


def eval_index(expr: str, env: dict) -> int:
    """Evaluate an index expression such as ``i-1`` with only + - * allowed."""

    def ev(node):
        if isinstance(node, ast.Expression):
            return ev(node.body)
        if isinstance(node, ast.Constant) and isinstance(node.value, int):
            return node.value
        if isinstance(node, ast.Name) and node.id in env:
            return env[node.id]
        if isinstance(node, ast.BinOp) and type(node.op) in _BINOPS:
            return _BINOPS[type(node.op)](ev(node.left), ev(node.right))
        if isinstance(node, ast.UnaryOp) and isinstance(node.op, ast.USub):
            return -ev(node.operand)
        if isinstance(node, ast.Compare) and len(node.ops) == 1:
            ops = {ast.Gt: operator.gt, ast.Lt: operator.lt, ast.Eq: operator.eq,
                   ast.GtE: operator.ge, ast.LtE: operator.le}
            op = ops.get(type(node.ops[0]))
            if op:
                return int(op(ev(node.left), ev(node.comparators[0])))
        raise ParseError(f"unsupported index expression {expr!r}")

    try:
        tree = ast.parse(expr.strip(), mode="eval")
    except SyntaxError as exc:
        raise ParseError(f"malformed index expression {expr!r}") from exc
    return ev(tree)


_SYM = re.compile(r"([xyzTRS])\[([^\]]*)\]")


def _split_symbol(tok: str):
    m = _SYM.fullmatch(tok)
    if not m:
        raise ParseError(f"malformed panel symbol {tok!r}")
    return m.group(1), [a.strip() for a in m.group(2).split(",")]


@dataclass
class Panel:
    """A decomposition diagram with symbolic indices in ``i`` and ``j``."""

    name: str
    condition: str
    outer: list[str]
    interior: list[str]
    edges: list[tuple[str, str]]
    faces: list[tuple[str, list[str]]]  # (class symbol, boundary)

    @property
    def kind(self) -> str:
        return _split_symbol(self.name)[0]

    def applies(self, c: FaceClass) -> bool:
        env = {"i": c.i, "j": c.j}
        args = _split_symbol(self.name)[1]
        first = args[0]
        if first.isdigit() and int(first) != c.i:
            return False
        return c.kind == self.kind and bool(eval_index(self.condition, env))

    def instantiate(self, i: int, j: int) -> "ConcretePanel":
        env = {"i": i, "j": j}

        def vert(tok):
            kind, args = _split_symbol(tok)
            vals = [eval_index(a, env) for a in args]
            return SchemaVertex(kind, *vals)

        def cls(tok):
            kind, args = _split_symbol(tok)
            a, b = (eval_index(x, env) for x in args)
            return FaceClass(kind, a, b)

        return ConcretePanel(
            self.name,
            FaceClass(self.kind, i, j),
            [vert(v) for v in self.outer],
            [vert(v) for v in self.interior],
            [(vert(a), vert(b)) for a, b in self.edges],
            [(cls(c), [vert(v) for v in bd]) for c, bd in self.faces],
        )


@dataclass
class ConcretePanel:
    name: str
    parent: FaceClass
    outer: list[SchemaVertex]
    interior: list[SchemaVertex]
    edges: list[tuple[SchemaVertex, SchemaVertex]]
    faces: list[tuple[FaceClass, list[SchemaVertex]]]

    def all_edges(self) -> list[frozenset]:
        cyc = self.outer
        outer = [frozenset((a, b)) for a, b in zip(cyc, cyc[1:] + cyc[:1])]
        return outer + [frozenset(e) for e in self.edges]

    def tiling_problems(self) -> list[str]:
        """Check that the faces tile the outer cycle (a disc)."""
        out = []
        verts = self.outer + self.interior
        if len({v.canonical() for v in verts}) != len(verts):
            out.append("repeated vertex")
        cyc = self.outer
        outer = {frozenset((a, b)) for a, b in zip(cyc, cyc[1:] + cyc[:1])}
        edges = set(self.all_edges())
        if len(edges) != len(self.all_edges()):
            out.append("repeated edge")
        use: Counter = Counter()
        for c, bd in self.faces:
            for a, b in zip(bd, bd[1:] + bd[:1]):
                e = frozenset((a, b))
                if e not in edges:
                    out.append(f"face {c} uses missing edge {a}-{b}")
                use[e] += 1
            expected = 3 if c.kind == "T" else 4
            if len(bd) != expected:
                out.append(f"face {c} has {len(bd)} sides")
        for e in edges:
            want = 1 if e in outer else 2
            if use[e] != want:
                a, b = sorted(e)
                out.append(f"edge {a}-{b} bounds {use[e]} faces, expected {want}")
        euler = len(verts) - len(edges) + len(self.faces)
        if euler != 1:
            out.append(f"Euler characteristic {euler}, expected 1")
        return out

    def length_problems(self) -> list[str]:
        """Faces whose class label disagrees with the lengths of their edges."""
        out = []
        for c, bd in self.faces:
            lengths = [edge_length(a, b) for a, b in zip(bd, bd[1:] + bd[:1])]
            implied = implied_class(c.kind, lengths)
            if implied != c:
                shown = implied if implied else "no class"
                out.append(f"{c} labelled, edge lengths {lengths} give {shown}")
        outer_lengths = [edge_length(a, b) for a, b in zip(self.outer, self.outer[1:] + self.outer[:1])]
        if implied_class(self.parent.kind, outer_lengths) != self.parent:
            out.append(f"outer cycle lengths {outer_lengths} do not give {self.parent}")
        return out


def implied_class(kind: str, lengths: list[int]) -> FaceClass | None:
    """The face class whose edge lengths are ``lengths`` (nesting taken from ``kind``)."""
    if kind == "T":
        a, b, c = sorted(lengths)
        return FaceClass("T", a, b) if c == a + b else None
    if len(lengths) != 4 or lengths[0] != lengths[2] or lengths[1] != lengths[3]:
        return None
    a, b = sorted(lengths[:2])
    return FaceClass(kind, a, b)


def loads_panel(text: str) -> Panel:
    name = cond = None
    outer: list = []
    interior: list = []
    edges: list = []
    faces: list = []
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        key, sep, value = line.partition(":")
        if not sep:
            raise ParseError(f"line {lineno}: expected 'key: value'")
        key, toks = key.strip(), value.split()
        if key == "panel":
            name = value.strip()
        elif key == "applies":
            cond = value.strip()
        elif key == "outer":
            outer = toks
        elif key == "interior":
            interior = toks
        elif key == "edge":
            if len(toks) != 2:
                raise ParseError(f"line {lineno}: an edge needs two vertices")
            edges.append(tuple(toks))
        elif key.startswith("face "):
            faces.append((key[5:].strip(), toks))
        else:
            raise ParseError(f"line {lineno}: unknown key {key!r}")
    if not name or not cond or not outer:
        raise ParseError("panel needs 'panel:', 'applies:' and 'outer:' lines")
    for tok in outer + interior + [v for e in edges for v in e] + [v for _, bd in faces for v in bd]:
        _split_symbol(tok)
    for c, _ in faces:
        _split_symbol(c)
    return Panel(name, cond, outer, interior, edges, faces)


@lru_cache(maxsize=None)
def bundled_panels() -> tuple[Panel, ...]:
    root = resources.files("hildenkit") / "data" / "panels"
    files = sorted(p for p in root.iterdir() if p.name.endswith(".panel"))
    return tuple(loads_panel(p.read_text()) for p in files)


def panel_for(c: FaceClass) -> Panel:
    for p in bundled_panels():
        if p.applies(c):
            return p
    raise TerminalFace(f"no decomposition panel for {c}")


def decompose_face(c: FaceClass) -> list[FaceClass]:
    """The interior faces of the panel for ``c``, in panel order."""
    if not c.valid():
        raise ValueError(f"{c} violates its index constraints")
    if is_terminal(c):
        raise TerminalFace(f"{c} is terminal")
    panel = panel_for(c).instantiate(c.i, c.j)
    return [fc for fc, _ in panel.faces]


# ---------------------------------------------------------------- reduction


@dataclass(frozen=True)
class ReductionStep:
    parent: FaceClass
    count: int
    children: tuple[FaceClass, ...]


@dataclass
class Reduction:
    start: FaceClass
    steps: list[ReductionStep] = field(default_factory=list)
    result: Counter = field(default_factory=Counter)

    def lines(self) -> list[str]:
        out = [f"reduce {self.start}"]
        for s in self.steps:
            kids = " + ".join(str(c) for c in s.children)
            out.append(f"  {s.count} x {s.parent} -> {kids}")
        res = ", ".join(f"{k} x{v}" if v > 1 else str(k) for k, v in sorted(self.result.items()))
        out.append(f"basis: {res}")
        return out

    @property
    def degenerate(self) -> list[FaceClass]:
        """Result classes that violate the index constraints (such as T10)."""
        return sorted(k for k in self.result if not k.valid())

    @property
    def expansions(self) -> int:
        return sum(s.count for s in self.steps)


def reduce_to_basis(c: FaceClass) -> Reduction:
    """Decompose until only R12, S11 and T-classes remain.

    Classes are expanded largest first (by kind then indices) with their
    multiplicities, so each class appears at most once in the trace.
    """
    if not c.valid():
        raise ValueError(f"{c} violates its index constraints")
    red = Reduction(c)
    pending: Counter = Counter({c: 1})
    while True:
        open_ = [k for k in pending if not is_terminal(k)]
        if not open_:
            break
        top = max(open_, key=lambda k: (k.i, k.j, k.kind))
        count = pending.pop(top)
        kids = tuple(decompose_face(top))
        red.steps.append(ReductionStep(top, count, kids))
        for k in kids:
            pending[k] += count
    red.result = pending
    return red


@lru_cache(maxsize=None)
def expansion_count(c: FaceClass) -> int:
    """Number of single-face decompositions needed to reach the basis."""
    if is_terminal(c):
        return 0
    return 1 + sum(expansion_count(k) for k in decompose_face(c))


def decreases(parent: FaceClass, child: FaceClass) -> bool:
    return (child.i, child.j) < (parent.i, parent.j)


__all__ = [
    "BASIS",
    "BASIS_FORMULA",
    "BASIS_PROSE",
    "ConcretePanel",
    "FaceClass",
    "Panel",
    "Reduction",
    "ReductionStep",
    "SchemaVertex",
    "basis_discrepancy",
    "bundled_panels",
    "classify_face",
    "decompose_face",
    "decreases",
    "edge_length",
    "eval_index",
    "expansion_count",
    "face",
    "implied_class",
    "is_terminal",
    "loads_panel",
    "panel_for",
    "reduce_to_basis",
    "vertex",
    "vertex_length",
]
