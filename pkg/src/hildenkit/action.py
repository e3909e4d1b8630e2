"""Presentations from a group acting on a simply-connected 2-complex.

A finite permutation group ``G`` acts on the vertices of a finite complex,
transitively and cellularly.  Given a presentation ``<S0 | R0>`` of the
stabiliser ``H`` of the basepoint ``v0`` this module builds the extra
generators ``S1 = {r_lambda}`` (one per ``H``-orbit of edges at ``v0``) and
the relation families R1, R2, R3, then checks the result by evaluating every
relator and by coset enumeration.

Group elements are :class:`~hildenkit.braid.Permutation` objects on the
vertex indices ``1..|V|``; they act on the right, so ``v * (g h)`` means apply
``g`` first.  Abstract words are tuples of ``(name, exponent)`` pairs.
"""

from __future__ import annotations

import math

import re
from collections import deque
from dataclasses import dataclass, field
from pathlib import Path

from .braid import Permutation
from .coset import coset_enumerate
from .errors import ActionError, ParseError

Word = tuple  # tuple[tuple[str, int], ...]


# ---------------------------------------------------------------- parsing


def parse_cycles(text: str, labels: list[str]) -> Permutation:
    """Parse cycle notation such as ``(a b c)(d e)`` over vertex labels."""
    index = {v: k + 1 for k, v in enumerate(labels)}
    images = list(range(1, len(labels) + 1))
    text = text.strip()
    if text in ("", "()", "1", "id"):
        return Permutation(tuple(images))
    cycles = re.findall(r"\(([^()]*)\)", text)
    if re.sub(r"\([^()]*\)", "", text).strip() or not cycles:
        raise ParseError(f"malformed cycle notation {text!r}")
    seen: set = set()
    for cyc in cycles:
        pts = cyc.replace(",", " ").split()
        for p in pts:
            if p not in index:
                raise ParseError(f"unknown vertex {p!r} in {text!r}")
            if p in seen:
                raise ParseError(f"vertex {p!r} repeated in {text!r}")
            seen.add(p)
        for a, b in zip(pts, pts[1:] + pts[:1]):
            images[index[a] - 1] = index[b]
    return Permutation(tuple(images))


def parse_word(text: str) -> Word:
    """Parse ``s r1^-1 t^3``; ``1`` or an empty string is the empty word."""
    text = text.strip()
    if text in ("", "1", "e"):
        return ()
    out = []
    for tok in text.split():
        m = re.fullmatch(r"([A-Za-z_][A-Za-z0-9_]*)(?:\^(-?\d+))?", tok)
        if not m:
            raise ParseError(f"malformed word token {tok!r}")
        name, exp = m.group(1), int(m.group(2) or 1)
        if exp == 0:
            continue
        sign = 1 if exp > 0 else -1
        out.extend([(name, sign)] * abs(exp))
    return tuple(out)


def format_word(word: Word) -> str:
    if not word:
        return "1"
    parts = []
    k = 0
    while k < len(word):
        name, e = word[k]
        run = 1
        while k + run < len(word) and word[k + run] == (name, e):
            run += 1
        exp = run * e
        parts.append(name if exp == 1 else f"{name}^{exp}")
        k += run
    return " ".join(parts)


def invert(word: Word) -> Word:
    return tuple((g, -e) for g, e in reversed(word))


def free_reduce(word: Word) -> Word:
    out: list = []
    for g, e in word:
        if out and out[-1] == (g, -e):
            out.pop()
        else:
            out.append((g, e))
    return tuple(out)


# ---------------------------------------------------------------- complex


@dataclass
class ActionComplexSpec:
    """A finite complex with a permutation action and a stabiliser presentation."""

    vertices: list[str]
    edges: list[tuple[str, str]]
    faces: list[tuple[str, ...]]
    generators: dict[str, Permutation]
    basepoint: str
    stabilizer: dict[str, Permutation]
    stabilizer_relators: list[Word] = field(default_factory=list)
    name: str = ""

    def index(self, v: str) -> int:
        return self.vertices.index(v) + 1

    def label(self, k: int) -> str:
        return self.vertices[k - 1]

    @property
    def v0(self) -> int:
        return self.index(self.basepoint)

    def identity(self) -> Permutation:
        return Permutation.identity(len(self.vertices))

    def evaluate(self, word: Word, extra: dict | None = None) -> Permutation:
        """Evaluate a word over S0 (and optionally other named elements)."""
        table = dict(self.stabilizer)
        if extra:
            table.update(extra)
        g = self.identity()
        for name, e in word:
            if name not in table:
                raise ActionError(f"unknown generator {name!r}")
            x = table[name]
            g = g * (x if e > 0 else x.inverse())
        return g


def loads_complex(text: str, name: str = "") -> ActionComplexSpec:
    """Parse the complex format (``key: value`` lines, ``#`` comments).

    ``vertices: a b c`` once; ``edge: a b``, ``face: a b c``,
    ``generator g: (a b c)``, ``stabilizer s: (b c)`` and ``relator: s^2``
    may repeat; ``basepoint: a`` once; ``name:`` is optional.
    """
    vertices: list[str] | None = None
    edges, faces, rels = [], [], []
    gens_raw, stab_raw = [], []
    base = None
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if ":" not in line:
            raise ParseError(f"line {lineno}: expected 'key: value'")
        key, value = (x.strip() for x in line.split(":", 1))
        head, *rest = key.split()
        if head == "name":
            name = value
        elif head == "vertices":
            vertices = value.split()
        elif head == "edge":
            pts = value.split()
            if len(pts) != 2:
                raise ParseError(f"line {lineno}: an edge needs two vertices")
            edges.append(tuple(pts))
        elif head == "face":
            pts = tuple(value.split())
            if len(pts) < 3:
                raise ParseError(f"line {lineno}: a face needs at least three vertices")
            faces.append(pts)
        elif head in ("generator", "stabilizer"):
            if len(rest) != 1:
                raise ParseError(f"line {lineno}: expected '{head} NAME: cycles'")
            (gens_raw if head == "generator" else stab_raw).append((rest[0], value, lineno))
        elif head == "relator":
            rels.append(parse_word(value))
        elif head == "basepoint":
            base = value
        else:
            raise ParseError(f"line {lineno}: unknown key {head!r}")
    if vertices is None or base is None:
        raise ParseError("complex needs 'vertices:' and 'basepoint:' lines")
    if base not in vertices:
        raise ParseError(f"basepoint {base!r} is not a vertex")
    for e in edges:
        for v in e:
            if v not in vertices:
                raise ParseError(f"edge {e} uses unknown vertex {v!r}")
    for f in faces:
        for v in f:
            if v not in vertices:
                raise ParseError(f"face {f} uses unknown vertex {v!r}")
    gens = {g: parse_cycles(c, vertices) for g, c, _ in gens_raw}
    stab = {s: parse_cycles(c, vertices) for s, c, _ in stab_raw}
    clash = set(gens) & set(stab)
    if clash:
        raise ParseError(f"names used twice: {sorted(clash)}")
    return ActionComplexSpec(vertices, edges, faces, gens, base, stab, rels, name)


def load_complex(path) -> ActionComplexSpec:
    path = Path(path)
    return loads_complex(path.read_text(), name=path.stem)


# ---------------------------------------------------------------- groups


def closure(gens, identity: Permutation) -> dict[Permutation, Word]:
    """All elements of the group generated by ``gens`` (a name -> element map).

    Each element is paired with its shortlex-least word: breadth-first search
    in the Cayley graph with letters tried in the order ``g, g^-1`` for each
    generator in turn.
    """
    letters = []
    for name, x in gens.items():
        letters.append(((name, 1), x))
        letters.append(((name, -1), x.inverse()))
    words = {identity: ()}
    q = deque([identity])
    while q:
        g = q.popleft()
        for letter, x in letters:
            h = g * x
            if h not in words:
                words[h] = words[g] + (letter,)
                q.append(h)
    return words


def _search(words: dict, predicate):
    """First element (in shortlex order of its word) satisfying ``predicate``."""
    for g, w in words.items():  # insertion order is BFS order
        if predicate(g):
            return g, w
    return None


def _element_order(g: Permutation) -> int:
    return math.lcm(1, *(len(c) for c in g.cycles()))


def _face_key(face: tuple[int, ...]) -> tuple[int, ...]:
    """Canonical form of a boundary cycle up to rotation and reversal."""
    best = None
    for seq in (face, tuple(reversed(face))):
        for k in range(len(seq)):
            rot = seq[k:] + seq[:k]
            if best is None or rot < best:
                best = rot
    return best


@dataclass
class ValidationReport:
    transitive: bool = True
    cellular: bool = True
    edges_unique: bool = True
    stabilizer_ok: bool = True
    relators_ok: bool = True
    group_order: int = 0
    stabilizer_order: int = 0
    problems: list[str] = field(default_factory=list)

    @property
    def valid(self) -> bool:
        return not self.problems

    def lines(self) -> list[str]:
        out = [
            f"group order {self.group_order}",
            f"stabiliser order {self.stabilizer_order}",
        ]
        for name, ok in (
            ("edge-uniqueness", self.edges_unique),
            ("cellular", self.cellular),
            ("transitive", self.transitive),
            ("stabiliser", self.stabilizer_ok),
            ("stabiliser relators", self.relators_ok),
        ):
            out.append(f"{name} {'PASS' if ok else 'FAIL'}")
        out.extend(f"# {p}" for p in self.problems)
        return out


def validate_action(spec: ActionComplexSpec) -> ValidationReport:
    """Check the standing hypotheses; every violation is listed separately."""
    rep = ValidationReport()
    n = len(spec.vertices)
    if len(set(spec.vertices)) != n:
        rep.problems.append("vertex labels repeated")
    ident = spec.identity()

    seen: set = set()
    for a, b in spec.edges:
        if a == b:
            rep.edges_unique = False
            rep.problems.append(f"edge {a}-{b} is a loop")
        key = frozenset((a, b))
        if key in seen:
            rep.edges_unique = False
            rep.problems.append(f"edge {a}-{b} is not determined by its endpoints")
        seen.add(key)

    edge_set = {frozenset((spec.index(a), spec.index(b))) for a, b in spec.edges}
    face_set = {_face_key(tuple(spec.index(v) for v in f)) for f in spec.faces}
    for f in spec.faces:
        idx = [spec.index(v) for v in f]
        for a, b in zip(idx, idx[1:] + idx[:1]):
            if frozenset((a, b)) not in edge_set:
                rep.cellular = False
                rep.problems.append(f"face {' '.join(f)} uses a missing edge")
                break

    for name, g in spec.generators.items():
        if any(frozenset((g(a), g(b))) not in edge_set for a, b in map(tuple, edge_set)):
            rep.cellular = False
            rep.problems.append(f"generator {name} does not map edges to edges")
        if any(_face_key(tuple(g(v) for v in f)) not in face_set for f in face_set):
            rep.cellular = False
            rep.problems.append(f"generator {name} does not map faces to faces")

    group = closure(spec.generators, ident)
    rep.group_order = len(group)
    v0 = spec.v0
    orbit = {g(v0) for g in group}
    if len(orbit) != n:
        rep.transitive = False
        rep.problems.append(f"action is not transitive ({len(orbit)} of {n} vertices reached)")

    stab = {g for g in group if g(v0) == v0}
    rep.stabilizer_order = len(stab)
    for name, x in spec.stabilizer.items():
        if x not in group:
            rep.stabilizer_ok = False
            rep.problems.append(f"stabiliser generator {name} is not in the group")
        elif x(v0) != v0:
            rep.stabilizer_ok = False
            rep.problems.append(f"stabiliser generator {name} moves the basepoint")
    if rep.stabilizer_ok:
        generated = closure(spec.stabilizer, ident)
        if set(generated) != stab:
            rep.stabilizer_ok = False
            rep.problems.append(
                f"S0 generates a subgroup of order {len(generated)}, stabiliser has order {len(stab)}"
            )
    for w in spec.stabilizer_relators:
        try:
            ok = spec.evaluate(w).is_identity()
        except ActionError as exc:
            ok = False
            rep.problems.append(str(exc))
        if not ok:
            rep.relators_ok = False
            rep.problems.append(f"relator {format_word(w)} is not trivial in the stabiliser")
    return rep


# ---------------------------------------------------------------- orbits


@dataclass(frozen=True)
class EdgeOrbit:
    name: str  # the generator r_lambda
    endpoint: int  # v0 . r_lambda
    element: Permutation
    members: frozenset  # endpoints u of the edges (v0, u) in this H-orbit


@dataclass(frozen=True)
class FaceOrbit:
    boundary: tuple[int, ...]  # starts at v0
    size: int


@dataclass
class OrbitData:
    edges: list[EdgeOrbit]
    faces: list[FaceOrbit]


class _Context:
    """Group data shared by the orbit and assembly steps."""

    def __init__(self, spec: ActionComplexSpec):
        rep = validate_action(spec)
        if not rep.valid:
            raise ActionError("; ".join(rep.problems))
        self.spec = spec
        self.v0 = spec.v0
        ident = spec.identity()
        self.group = closure(spec.generators, ident)
        self.h_words = closure(spec.stabilizer, ident)
        self.neighbours = sorted(
            {spec.index(b) for a, b in spec.edges if a == spec.basepoint}
            | {spec.index(a) for a, b in spec.edges if b == spec.basepoint}
        )
        self.edges = self._edge_orbits()
        self.elements = {o.name: o.element for o in self.edges}

    def _edge_orbits(self) -> list[EdgeOrbit]:
        out = []
        done: set = set()
        for u in self.neighbours:
            if u in done:
                continue
            members = frozenset(h(u) for h in self.h_words)
            done |= members
            # lowest-order element wins (involutions when available), then BFS order
            cands = [g for g in self.group if g(self.v0) == u]
            r = min(cands, key=_element_order)
            out.append(EdgeOrbit(f"r{len(out) + 1}", u, r, members))
        return out

    def orbit_of(self, u: int) -> EdgeOrbit:
        for o in self.edges:
            if u in o.members:
                return o
        raise ActionError(f"({self.spec.basepoint}, {self.spec.label(u)}) is not an edge")

    def h_word(self, h: Permutation) -> Word:
        if h not in self.h_words:
            raise ActionError(f"{h} is not expressible over S0")
        return self.h_words[h]

    def step_to(self, u: int) -> tuple[EdgeOrbit, Word]:
        """Edge orbit and least S0-word h with ``v0 . r h == u``."""
        o = self.orbit_of(u)
        _, w = _search(self.h_words, lambda h: h(o.endpoint) == u)
        return o, w

    def evaluate(self, word: Word) -> Permutation:
        return self.spec.evaluate(word, self.elements)

    def face_orbits(self) -> list[FaceOrbit]:
        spec = self.spec
        keys = [_face_key(tuple(spec.index(v) for v in f)) for f in spec.faces]
        out = []
        covered: set = set()
        for f in spec.faces:
            idx = tuple(spec.index(v) for v in f)
            key = _face_key(idx)
            if key in covered:
                continue
            images = {}
            for g in self.group:
                img = tuple(g(v) for v in idx)
                images.setdefault(_face_key(img), img)
            covered |= set(images)
            # first orbit member (in listed order, then canonical order) through v0
            ordered = [k for k in keys if k in images] + sorted(images)
            for k in ordered:
                cyc = images[k]
                if self.v0 in cyc:
                    at = cyc.index(self.v0)
                    out.append(FaceOrbit(cyc[at:] + cyc[:at], len(images)))
                    break
        return out


def orbit_data(spec: ActionComplexSpec) -> OrbitData:
    ctx = _Context(spec)
    return OrbitData(ctx.edges, ctx.face_orbits())


# ---------------------------------------------------------------- h-products


@dataclass(frozen=True)
class HProduct:
    """``h_{k+1} r_{l_k} h_k ... r_{l_1} h_1`` stored as ``head`` and ``steps``.

    ``steps[i]`` is the pair ``(r_{l_{i+1}}, h_{i+1})``; a step whose ``r`` is
    ``None`` is an identity factor and produces a stationary point.
    """

    head: Word = ()
    steps: tuple = ()

    @property
    def length(self) -> int:
        return len(self.steps)

    def word(self) -> Word:
        out = list(self.head)
        for r, h in reversed(self.steps):
            if r is not None:
                out.append((r, 1))
            out.extend(h)
        return tuple(out)

    def __mul__(self, other: "HProduct") -> "HProduct":
        """Concatenation ``self other``: our ``h_1`` absorbs ``other``'s head."""
        if not self.steps:
            return HProduct(self.head + other.head, other.steps)
        (r, h1), rest = self.steps[0], self.steps[1:]
        return HProduct(self.head, other.steps + ((r, h1 + other.head),) + rest)


@dataclass(frozen=True)
class HPath:
    vertices: tuple[int, ...]
    stationary: tuple[int, ...]  # indices i with v_i == v_{i+1}


def h_product_path(hp: HProduct, spec: ActionComplexSpec, _ctx: _Context | None = None) -> HPath:
    """The edge path ``(v0, v1, ..., vk)`` with ``v_i = v0 . r_i h_i ... r_1 h_1``."""
    ctx = _ctx or _Context(spec)
    edge_set = {frozenset((spec.index(a), spec.index(b))) for a, b in spec.edges}
    for h in (hp.head,) + tuple(h for _, h in hp.steps):
        if ctx.evaluate(h)(ctx.v0) != ctx.v0:
            raise ActionError(f"h-factor {format_word(h)} does not fix the basepoint")
    verts = [ctx.v0]
    stationary = []
    suffix = spec.identity()
    for i, (r, h) in enumerate(hp.steps):
        factor = ctx.evaluate(((r, 1),) if r else ()) * ctx.evaluate(h)
        suffix = factor * suffix
        v = suffix(ctx.v0)
        if v == verts[-1]:
            stationary.append(i)
        elif frozenset((verts[-1], v)) not in edge_set:
            raise ActionError(
                f"step {i + 1} leaves {spec.label(verts[-1])} for {spec.label(v)} off the edges"
            )
        verts.append(v)
    return HPath(tuple(verts), tuple(stationary))


# ---------------------------------------------------------------- presentation


@dataclass(frozen=True)
class Relation:
    family: str
    lhs: Word
    rhs: Word = ()

    def relator(self) -> Word:
        return free_reduce(self.lhs + invert(self.rhs))

    def __str__(self) -> str:
        if not self.rhs:
            return format_word(self.lhs)
        return f"{format_word(self.lhs)} = {format_word(self.rhs)}"


@dataclass
class Presentation:
    generators: list[str]
    relations: list[Relation]
    elements: dict[str, Permutation] = field(default_factory=dict)
    degree: int = 0

    def relators(self) -> list[Word]:
        return [r.relator() for r in self.relations]

    def by_family(self, family: str) -> list[Relation]:
        return [r for r in self.relations if r.family == family]

    def evaluate(self, word: Word) -> Permutation:
        g = Permutation.identity(self.degree)
        for name, e in word:
            x = self.elements[name]
            g = g * (x if e > 0 else x.inverse())
        return g

    def check_relators(self) -> list[Relation]:
        """Relations whose relator is not the identity; empty when sound."""
        return [r for r in self.relations if not self.evaluate(r.relator()).is_identity()]

    def order(self, limit: int = 10_000) -> int:
        return coset_enumerate(self.generators, self.relators(), (), limit)

    def __str__(self) -> str:
        rels = ", ".join(format_word(r) for r in self.relators() if r)
        return f"< {', '.join(self.generators)} | {rels} >".replace("<  |", "< |").replace("|  >", "| >")


def assemble_presentation(spec: ActionComplexSpec) -> Presentation:
    ctx = _Context(spec)
    gens = list(spec.stabilizer) + [o.name for o in ctx.edges]
    elements = dict(spec.stabilizer)
    elements.update(ctx.elements)
    rels = [Relation("R0", w) for w in spec.stabilizer_relators]
    v0 = ctx.v0

    # R1: conjugate a generating set of each edge stabiliser by r
    for o in ctx.edges:
        stab_words = [(g, w) for g, w in ctx.h_words.items() if g(o.endpoint) == o.endpoint]
        chosen: list = []
        sub = {spec.identity()}
        for g, w in stab_words:
            if g in sub:
                continue
            chosen.append((g, w))
            sub = set(closure({str(k): x for k, (x, _) in enumerate(chosen)}, spec.identity()))
        for t, tw in chosen:
            h = o.element * t * o.element.inverse()
            rels.append(Relation("R1", ((o.name, 1),) + tw + ((o.name, -1),), ctx.h_word(h)))

    # R2: the backtracking path (v0, v0.r, v0)
    for o in ctx.edges:
        back = o.element.inverse()(v0)
        o2, hw = ctx.step_to(back)
        lhs = ((o2.name, 1),) + hw + ((o.name, 1),)
        rels.append(Relation("R2", lhs, ctx.h_word(ctx.evaluate(lhs))))

    # R3: one h-product per face orbit
    for f in ctx.face_orbits():
        hp = face_h_product(f.boundary, ctx)
        g = ctx.evaluate(hp.word())
        rels.append(Relation("R3", hp.word(), ctx.h_word(g)))

    pres = Presentation(gens, rels, elements, len(spec.vertices))
    bad = pres.check_relators()
    if bad:
        raise ActionError(f"relator not trivial: {bad[0]}")
    return pres


def face_h_product(boundary, ctx: _Context) -> HProduct:
    """An h-product tracing the closed path ``boundary + (v0,)``."""
    path = tuple(boundary[1:]) + (ctx.v0,)
    steps: list = []
    suffix = ctx.spec.identity()
    for v in path:
        target = suffix.inverse()(v)
        o, hw = ctx.step_to(target)
        steps.append((o.name, hw))
        suffix = ctx.evaluate(((o.name, 1),) + hw) * suffix
    return HProduct((), tuple(steps))


def eliminate_backtrack(hp: HProduct, spec: ActionComplexSpec, _ctx: _Context | None = None) -> HProduct:
    """Shorten an h-product whose path ends ``(..., v, u, v)`` by two.

    Uses the R2 relation for the inner edge and an R1 consequence for the
    correcting stabiliser element, as in the inductive step of the proof
    that R0 to R2 handle backtracking.
    """
    ctx = _ctx or _Context(spec)
    path = h_product_path(hp, spec, ctx).vertices
    if len(path) < 3 or path[-1] != path[-3]:
        raise ActionError("path does not end with a backtrack")
    (ra, ha), (rb, hb), rest = hp.steps[-1], hp.steps[-2], hp.steps[:-2]
    if ra is None or rb is None:
        raise ActionError("backtrack through a stationary point")
    # r_a h_{k+2} r_b with v0 . r_a h_{k+2} = v0 . r_b^{-1}
    o_b = next(o for o in ctx.edges if o.name == rb)
    o_a, hw = ctx.step_to(o_b.element.inverse()(ctx.v0))
    if o_a.name != ra:
        raise ActionError("inconsistent edge orbit in backtrack")
    h_prime = ctx.evaluate(((ra, 1),) + hw + ((rb, 1),))
    e = ctx.evaluate(ha) * ctx.evaluate(hw).inverse()
    f = o_a.element * e * o_a.element.inverse()
    new_head = free_reduce(hp.head + ctx.h_word(f) + ctx.h_word(h_prime) + hb)
    return HProduct(new_head, rest)


__all__ = [
    "ActionComplexSpec",
    "EdgeOrbit",
    "FaceOrbit",
    "HPath",
    "HProduct",
    "OrbitData",
    "Presentation",
    "Relation",
    "ValidationReport",
    "assemble_presentation",
    "closure",
    "coset_enumerate",
    "eliminate_backtrack",
    "face_h_product",
    "format_word",
    "h_product_path",
    "load_complex",
    "loads_complex",
    "orbit_data",
    "parse_cycles",
    "parse_word",
    "validate_action",
]
