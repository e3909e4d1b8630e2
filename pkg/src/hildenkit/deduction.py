"""Checking and searching rewriting derivations over p_i, s_i, t_i.

A single step replaces a subword ``u`` of the current word by ``v`` where the
free reduction of ``u v^-1`` is a cyclic permutation of a relator
``lhs rhs^-1`` (direction ``fwd``) or of its inverse (``rev``).  Words are
freely reduced after every step.
"""

from __future__ import annotations

import re
from collections import deque
from dataclasses import dataclass, field
from pathlib import Path

from . import alphabet as ab
from .alphabet import fmt, free_reduce, min_n, parse, to_braid
from .braid import equal
from .errors import IllegalStep, ParseError, SearchLimitExceeded
from .hilden import P_FAMILIES, RelationInstance, relation_instances, verify_instance

BUNDLED = Path(__file__).parent / "data" / "derivations"


@dataclass(frozen=True)
class RewriteSchema:
    """A relation family usable as a rewrite rule.

    Base schemas are P1..P14, instantiated at the ambient n.  A derived
    lemma carries its single instance directly.
    """

    id: str
    fixed: RelationInstance | None = None

    def instances(self, n: int) -> list[RelationInstance]:
        if self.fixed is not None:
            return [self.fixed] if min_n(self.fixed.lhs + self.fixed.rhs) <= n else []
        return relation_instances(self.id, n)


BASE_SCHEMAS = {fam: RewriteSchema(fam) for fam in P_FAMILIES}


@dataclass(frozen=True)
class DerivationStep:
    schema: str
    params: tuple[int, ...]
    direction: str
    position: int
    result: tuple
    length: int | None = None

    def line(self, k: int) -> str:
        ps = ",".join(map(str, self.params)) if self.params else "-"
        extra = f" len={self.length}" if self.length is not None else ""
        return (
            f"step {k}: rel={self.schema} i={ps} dir={self.direction} "
            f"at={self.position}{extra} -> {fmt(self.result)}"
        )


@dataclass
class Derivation:
    start: tuple
    end: tuple
    steps: list[DerivationStep] = field(default_factory=list)
    name: str = ""
    lemma: str | None = None
    notes: list[str] = field(default_factory=list)

    def min_n(self) -> int:
        words = self.start + self.end
        for st in self.steps:
            words += st.result
        return min_n(words)

    def dumps(self) -> str:
        out = [f"# {note}" for note in self.notes]
        if self.name:
            out.append(f"name: {self.name}")
        if self.lemma:
            out.append(f"lemma: {self.lemma}")
        out.append(f"claim: {fmt(self.start)} => {fmt(self.end)}")
        out += [st.line(k) for k, st in enumerate(self.steps, start=1)]
        return "\n".join(out) + "\n"


_STEP = re.compile(
    r"^step\s+(\d+):\s+rel=(\S+)\s+i=(\S+)\s+dir=(fwd|rev)\s+at=(\d+)"
    r"(?:\s+len=(\d+))?\s+->\s*(.*)$"
)


def loads(text: str) -> Derivation:
    d = None
    name, lemma, notes = "", None, []
    for raw in text.splitlines():
        line = raw.strip()
        if not line:
            continue
        if line.startswith("#"):
            notes.append(line.lstrip("# ").rstrip())
            continue
        if line.startswith("name:"):
            name = line[5:].strip()
        elif line.startswith("lemma:"):
            lemma = line[6:].strip()
        elif line.startswith("claim:"):
            lhs, sep, rhs = line[6:].partition("=>")
            if not sep:
                raise ParseError(f"claim needs '=>': {line!r}")
            d = Derivation(parse(lhs), parse(rhs), name=name, lemma=lemma, notes=notes)
        else:
            m = _STEP.match(line)
            if not m:
                raise ParseError(f"unrecognised line: {line!r}")
            if d is None:
                raise ParseError("step before claim")
            k, rel, idx, direction, pos, length, result = m.groups()
            if int(k) != len(d.steps) + 1:
                raise ParseError(f"step {k} out of sequence")
            params = () if idx == "-" else tuple(int(x) for x in idx.split(","))
            d.steps.append(DerivationStep(
                rel, params, direction, int(pos), parse(result),
                int(length) if length else None,
            ))
    if d is None:
        raise ParseError("missing claim line")
    return d


def load(path) -> Derivation:
    return loads(Path(path).read_text())


def _rotations(word: tuple):
    for k in range(len(word)):
        yield word[k:] + word[:k]


def rewrites(word: tuple, inst: RelationInstance, direction: str, position: int):
    """Yield ``(length, result)`` for every legal rewrite at ``position``."""
    rel = free_reduce(inst.relator())
    if direction == "rev":
        rel = ab.inverse(rel)
    seen = set()
    for rot in _rotations(rel):
        for ell in range(1, len(rot) + 1):
            u = rot[:ell]
            if word[position:position + ell] != u:
                break
            v = ab.inverse(rot[ell:])
            out = free_reduce(word[:position] + v + word[position + ell:])
            if (ell, out) not in seen:
                seen.add((ell, out))
                yield ell, out


class SchemaRegistry:
    """Base schemas plus lemmas registered once their derivations check."""

    def __init__(self):
        self.schemas: dict[str, RewriteSchema] = dict(BASE_SCHEMAS)

    def register(self, name: str, d: Derivation) -> None:
        inst = RelationInstance(name, (), d.start, d.end)
        self.schemas[name] = RewriteSchema(name, inst)

    def __getitem__(self, key: str) -> RewriteSchema:
        return self.schemas[key]

    def __contains__(self, key: str) -> bool:
        return key in self.schemas

    def instances(self, ids, n: int) -> list[RelationInstance]:
        return [inst for sid in ids for inst in self.schemas[sid].instances(n)]


def _matching_instances(step: DerivationStep, n: int, registry: SchemaRegistry):
    if step.schema not in registry:
        raise IllegalStep(f"unknown schema {step.schema!r}", step.position)
    insts = registry[step.schema].instances(n)
    return [x for x in insts if x.params[: len(step.params)] == step.params]


def apply_step(word, step: DerivationStep, n: int, registry: SchemaRegistry | None = None):
    """Apply ``step`` to ``word``; returns the step's (freely reduced) result.

    Raises :class:`IllegalStep` carrying the offending position.
    """
    registry = registry or SchemaRegistry()
    word = free_reduce(word)
    if not 0 <= step.position < max(len(word), 1) or not word:
        raise IllegalStep(f"position {step.position} outside word of length {len(word)}", step.position)
    target = free_reduce(step.result)
    insts = _matching_instances(step, n, registry)
    if not insts:
        raise IllegalStep(f"no instance of {step.schema} with i={step.params} at n={n}", step.position)
    for inst in insts:
        for ell, out in rewrites(word, inst, step.direction, step.position):
            if step.length is not None and ell != step.length:
                continue
            if out == target:
                return out
    raise IllegalStep(
        f"{step.schema} i={step.params} {step.direction} does not rewrite "
        f"{fmt(word)} at {step.position} to {fmt(target)}",
        step.position,
    )


def used_instance(word, step: DerivationStep, n: int, registry: SchemaRegistry) -> RelationInstance:
    word = free_reduce(word)
    target = free_reduce(step.result)
    for inst in _matching_instances(step, n, registry):
        for ell, out in rewrites(word, inst, step.direction, step.position):
            if out == target and (step.length is None or ell == step.length):
                return inst
    raise IllegalStep("step does not apply", step.position)


@dataclass
class CheckReport:
    name: str
    accepted: bool
    n: int
    failed_step: int | None = None
    message: str = ""
    braid_equal: bool | None = None
    instances_ok: bool | None = None

    @property
    def status(self) -> str:
        return "PASS" if self.accepted and self.braid_equal and self.instances_ok else "FAIL"

    def line(self) -> str:
        base = f"{self.name or 'derivation'} n={self.n} {self.status}"
        if self.failed_step is not None:
            return f"{base} # step {self.failed_step}: {self.message}"
        if self.message:
            return f"{base} # {self.message}"
        return base


def check_derivation(d: Derivation, n: int, registry: SchemaRegistry | None = None) -> CheckReport:
    """Replay ``d`` step by step; on success cross-check start = end in B_2n."""
    registry = registry or SchemaRegistry()
    report = CheckReport(d.name, False, n)
    if d.min_n() > n:
        report.message = f"derivation needs n >= {d.min_n()}"
        return report
    word = free_reduce(d.start)
    used = []
    for k, step in enumerate(d.steps, start=1):
        try:
            used.append(used_instance(word, step, n, registry))
            word = apply_step(word, step, n, registry)
        except IllegalStep as exc:
            report.failed_step = k
            report.message = f"at={exc.position}: {exc}"
            return report
    if word != free_reduce(d.end):
        report.message = f"chain ends at {fmt(word)}, not {fmt(d.end)}"
        return report
    report.accepted = True
    report.braid_equal = equal(to_braid(d.start, n), to_braid(d.end, n))
    report.instances_ok = all(verify_instance(inst, n).equal for inst in used)
    if not report.braid_equal:
        report.message = "start and end differ as braids"
    elif not report.instances_ok:
        report.message = "a relation instance used does not hold"
    return report


_BRIDGE = {1: parse("p1"), 2: parse("p2 p1")}


def eliminate_r(word) -> tuple:
    """Rewrite ``r1 -> p1`` and ``r2 -> p2 p1`` (the bridge identities)."""
    out: list = []
    for x in word:
        if x.gen.kind != "r":
            out.append(x)
        elif x.inverted:
            out.extend(ab.inverse(_BRIDGE[x.gen.index]))
        else:
            out.extend(_BRIDGE[x.gen.index])
    return free_reduce(tuple(out))


def _plain(u, v, inst) -> bool:
    lhs, rhs = free_reduce(inst.lhs), free_reduce(inst.rhs)
    return (u, v) in ((lhs, rhs), (rhs, lhs))


class _Index:
    """First-letter index of every (instance, direction, rotation, length) rule."""

    def __init__(self, instances, plain_only: bool = False):
        self.rules: dict = {}
        for inst in instances:
            for direction in ("fwd", "rev"):
                rel = free_reduce(inst.relator())
                if direction == "rev":
                    rel = ab.inverse(rel)
                for rot in _rotations(rel):
                    for ell in range(1, len(rot) + 1):
                        u, v = rot[:ell], ab.inverse(rot[ell:])
                        if plain_only and not _plain(u, v, inst):
                            continue
                        self.rules.setdefault(u[0], []).append((u, v, inst, direction))
        # plain lhs -> rhs (or rhs -> lhs) rules first, then longer matches
        for rules in self.rules.values():
            rules.sort(key=lambda r: (not _plain(r[0], r[1], r[2]), -len(r[0])))

    def successors(self, word):
        for pos, x in enumerate(word):
            for u, v, inst, direction in self.rules.get(x, ()):
                if word[pos:pos + len(u)] == u:
                    out = free_reduce(word[:pos] + v + word[pos + len(u):])
                    yield out, DerivationStep(
                        inst.family, inst.params, direction, pos, out, len(u)
                    )


def search_derivation(
    start,
    end,
    schemas=None,
    depth: int = 4,
    n: int | None = None,
    node_cap: int = 100_000,
    registry: SchemaRegistry | None = None,
    max_length: int | None = None,
    plain: bool = False,
) -> Derivation | None:
    """Breadth-first search for a shortest derivation of ``start => end``.

    Returns None when no derivation exists within ``depth`` (immediately if
    the two words differ as braids).  Raises :class:`SearchLimitExceeded`
    once more than ``node_cap`` words have been generated.  With ``plain``
    only whole-side rewrites (lhs -> rhs or rhs -> lhs) are tried.
    """
    if depth < 1:
        raise ValueError("depth must be at least 1")
    registry = registry or SchemaRegistry()
    start, end = free_reduce(start), free_reduce(end)
    n = n or max(min_n(start), min_n(end))
    if max_length is None:
        max_length = max(len(start), len(end)) + 4
    result = Derivation(start, end, name="search")
    if start == end:
        return result
    if not equal(to_braid(start, n), to_braid(end, n)):
        return None
    ids = list(schemas) if schemas is not None else list(registry.schemas)
    index = _Index(registry.instances(ids, n), plain_only=plain)
    parent: dict = {start: None}
    frontier = deque([(start, 0)])
    while frontier:
        word, dist = frontier.popleft()
        if dist >= depth:
            continue
        for out, step in index.successors(word):
            if out in parent or len(out) > max_length:
                continue
            parent[out] = (word, step)
            if out == end:
                steps = []
                cur = out
                while parent[cur] is not None:
                    prev, st = parent[cur]
                    steps.append(st)
                    cur = prev
                result.steps = steps[::-1]
                return result
            if len(parent) > node_cap:
                raise SearchLimitExceeded(f"more than {node_cap} words generated")
            frontier.append((out, dist + 1))
    return None


def bundled_files() -> list[Path]:
    return sorted(BUNDLED.glob("*.drv"))


def check_bundle(paths, n: int, registry: SchemaRegistry | None = None) -> list[CheckReport]:
    """Check derivation files, lemmas first, registering each accepted lemma."""
    registry = registry or SchemaRegistry()
    derivs = [(Path(p), load(p)) for p in paths]
    derivs.sort(key=lambda pd: (pd[1].lemma is None, pd[0].name))
    reports = []
    for path, d in derivs:
        d.name = d.name or path.stem
        rep = check_derivation(d, max(n, d.min_n()), registry)
        if d.lemma and rep.status == "PASS":
            registry.register(d.lemma, d)
        reports.append(rep)
    return reports
