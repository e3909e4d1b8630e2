"""Generators of the Hilden subgroup H_2n inside B_2n and its relation families.

Every relation is checked as an equality of braid words in B_2n.  Index
ranges are explicit per family; symmetric two-index families are listed once
per unordered pair.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from . import alphabet as ab
from .alphabet import HildenGenerator, gen, min_n, parse, to_braid
from .braid import BraidWord, equal, exponent_sum, permutation_image
from .braid.permutation import Permutation
from .errors import HildenkitError, IndexRangeError

R_FAMILIES = (
    [f"R1.{k}" for k in range(1, 13)] + ["R2.1", "R2.2"] + ["R3.1", "R3.2", "R3.3"]
)
P_FAMILIES = [f"P{k}" for k in range(1, 15)]
FAMILIES = ["R0"] + R_FAMILIES + P_FAMILIES


def generator_word(g: HildenGenerator, n: int) -> BraidWord:
    g.check(n)
    return BraidWord(2 * n, g.braid_letters())


@dataclass(frozen=True)
class RelationInstance:
    family: str
    params: tuple[int, ...]
    lhs: tuple
    rhs: tuple
    variant: str = ""

    @property
    def label(self) -> str:
        ps = ",".join(map(str, self.params))
        tag = f"{self.variant}" if self.variant else ""
        if ps and tag:
            return f"{tag}({ps})"
        return tag or (f"({ps})" if ps else "-")

    def relator(self) -> tuple:
        return self.lhs + ab.inverse(self.rhs)

    def __str__(self) -> str:
        return f"{self.family} {self.label}: {ab.fmt(self.lhs)} = {ab.fmt(self.rhs)}"


def _w(*tokens: str) -> tuple:
    return parse(" ".join(tokens))


def _conj(r: str, middle: str) -> tuple:
    conj = parse(r)
    return conj + parse(middle) + ab.inverse(conj)


def _r0(n: int):
    for i in range(1, n):
        for j in range(i + 2, n):
            yield "ss", (i, j), _w(f"s{i} s{j}"), _w(f"s{j} s{i}")
    for i in range(1, n - 1):
        j = i + 1
        yield "sss", (i, j), _w(f"s{i} s{j} s{i}"), _w(f"s{j} s{i} s{j}")
    for i in range(1, n + 1):
        for j in range(i + 1, n + 1):
            yield "tt", (i, j), _w(f"t{i} t{j}"), _w(f"t{j} t{i}")
    for i in range(1, n):
        for j in range(1, n + 1):
            if j not in (i, i + 1):
                yield "st", (i, j), _w(f"s{i} t{j}"), _w(f"t{j} s{i}")
    for i in range(1, n):
        for j, k in ((i, i + 1), (i + 1, i)):
            yield "stk", (i, j, k), _w(f"s{i} t{j}"), _w(f"t{k} s{i}")


def _p_family(family: str, n: int):
    rng = range(1, n)
    if family == "P1":
        for i in rng:
            for j in range(i + 2, n):
                yield (i, j), f"p{i} p{j}", f"p{j} p{i}"
    elif family == "P2":
        for i in range(1, n - 1):
            j = i + 1
            yield (i, j), f"p{i} p{j} p{i}", f"p{j} p{i} p{j}"
    elif family == "P3":
        for i in rng:
            for j in range(i + 2, n):
                yield (i, j), f"s{i} s{j}", f"s{j} s{i}"
    elif family == "P4":
        for i in range(1, n - 1):
            j = i + 1
            yield (i, j), f"s{i} s{j} s{i}", f"s{j} s{i} s{j}"
    elif family == "P5":
        for i in rng:
            for j in rng:
                if abs(i - j) > 1:
                    yield (i, j), f"p{i} s{j}", f"s{j} p{i}"
    elif family == "P6":
        for i in range(1, n - 1):
            yield (i,), f"p{i} s{i+1} s{i}", f"s{i+1} s{i} p{i+1}"
    elif family == "P7":
        for i in range(1, n - 1):
            yield (i,), f"p{i+1} p{i} s{i+1}", f"s{i} p{i+1} p{i}"
    elif family == "P8":
        for i in range(1, n - 1):
            yield (i,), f"p{i+1} s{i} s{i+1}", f"s{i} s{i+1} p{i}"
    elif family == "P9":
        for i in rng:
            yield (i,), f"p{i} t{i} s{i} p{i}", f"s{i} t{i}"
    elif family == "P10":
        for i in rng:
            for j in range(1, n + 1):
                if j not in (i, i + 1):
                    yield (i, j), f"p{i} t{j}", f"t{j} p{i}"
    elif family == "P11":
        for i in rng:
            yield (i,), f"p{i} t{i+1}", f"t{i} p{i}"
    elif family == "P12":
        for i in rng:
            for j in range(1, n + 1):
                if j not in (i, i + 1):
                    yield (i, j), f"s{i} t{j}", f"t{j} s{i}"
    elif family == "P13":
        for i in rng:
            for j, k in ((i, i + 1), (i + 1, i)):
                yield (i, j, k), f"s{i} t{j}", f"t{k} s{i}"
    elif family == "P14":
        for i in range(1, n + 1):
            for j in range(i + 1, n + 1):
                yield (i, j), f"t{i} t{j}", f"t{j} t{i}"


# (R3 1) is spelled out once; the h-product reads left to right
_R31_LHS = ("r1 s1 s2 s3 s1 s2 r1 s1 s2 s3 s1 s2 t2 t4 r1 s2 s3 s1 s2 r1")
_R31_RHS = "s1 s2 s3 s1 s2 s1 s2 s1 s3 s2 s2 s3 s1 s2 t1 t3"


def _r_family(family: str, n: int):
    if family == "R1.1":
        yield (), _conj("r1", "t2"), _w("t1")
    elif family == "R1.2":
        for k in range(3, n + 1):
            yield (k,), _conj("r1", f"t{k}"), _w(f"t{k}")
    elif family == "R1.3":
        for k in range(3, n):
            yield (k,), _conj("r1", f"s{k}"), _w(f"s{k}")
    elif family == "R1.4":
        yield (), _conj("r1", "s1 s1 t1 t1"), _w("s1 s1 t2 t2")
    elif family == "R1.5":
        yield (), _conj("r1", "s2 s1 s1 s2"), _w("s2 s1 s1 s2")
    elif family == "R1.6":
        yield (), _conj("r2", "t2"), _w("t1")
    elif family == "R1.7":
        yield (), _conj("r2", "t3"), _w("t2")
    elif family == "R1.8":
        for k in range(4, n + 1):
            yield (k,), _conj("r2", f"t{k}"), _w(f"t{k}")
    elif family == "R1.9":
        yield (), _conj("r2", "s2"), _w("s1")
    elif family == "R1.10":
        for k in range(4, n):
            yield (k,), _conj("r2", f"s{k}"), _w(f"s{k}")
    elif family == "R1.11":
        yield (), _conj("r2", "s1 s2 s2 s1 t1 t1"), _w("s2 s1 s1 s2 t3 t3")
    elif family == "R1.12":
        yield (), _conj("r2", "s3 s2 s1 s1 s2 s3"), _w("s3 s2 s1 s1 s2 s3")
    elif family == "R2.1":
        yield (), _w("r1 t1 s1 r1"), _w("s1 t1")
    elif family == "R2.2":
        yield (), _w("r2 s1 t2 s2 r2"), _w("s2 s1 t1")
    elif family == "R3.1":
        yield (), _w(_R31_LHS), _w(_R31_RHS)
    elif family == "R3.2":
        # the statement and the deduction table order t2, t3 differently
        yield ("stated",), _w("r1 r2 s1 s2 s1 t2 t3 r1 r2"), _w("s2 s1 s2 t1 t2")
        yield ("table",), _w("r1 r2 s1 s2 s1 t3 t2 r1 r2"), _w("s2 s1 s2 t2 t1")
    elif family == "R3.3":
        yield (), _w("r2 s1 t2 r1 s2 s1 r1"), _w("s1 s2 s1 t1")


def relation_instances(family: str, n: int) -> list[RelationInstance]:
    """All instances of ``family`` whose generators are defined at ``n``.

    ``family`` is a single label (``R1.4``, ``P9``, ``R0``) or a group
    (``R1``, ``R2``, ``R3``, ``P``).
    """
    if n < 2:
        raise IndexRangeError("n must be at least 2")
    if family in ("R1", "R2", "R3"):
        return [x for f in R_FAMILIES if f.startswith(family + ".") for x in relation_instances(f, n)]
    if family == "P":
        return [x for f in P_FAMILIES for x in relation_instances(f, n)]
    if family not in FAMILIES:
        raise HildenkitError(f"unknown relation family {family!r}")
    out = []
    if family == "R0":
        for variant, params, lhs, rhs in _r0(n):
            out.append(RelationInstance("R0", params, lhs, rhs, variant))
    elif family.startswith("P"):
        for params, lhs, rhs in _p_family(family, n):
            out.append(RelationInstance(family, params, _w(lhs), _w(rhs)))
    else:
        for params, lhs, rhs in _r_family(family, n):
            variant = ""
            if params and isinstance(params[0], str):
                variant, params = params[0], ()
            out.append(RelationInstance(family, params, lhs, rhs, variant))
    return [x for x in out if min_n(x.lhs + x.rhs) <= n]


@dataclass(frozen=True)
class EdgeStabilizerSet:
    edge: int
    generators: tuple[tuple, ...]


_I1_FIXED = ("s1 s1 t1 t1", "s2 s1 s1 s2")
_I2_FIXED = ("s1 s2 s2 s1 t1 t1", "s3 s2 s1 s1 s2 s3")


def stabilizer_generators(edge: int, n: int) -> EdgeStabilizerSet:
    """Generators of the stabiliser I_edge of the edge (v0, v0 . r_edge).

    Words mentioning a generator that does not exist at ``n`` are dropped
    (``s2 s1 s1 s2`` at n=2, ``s3 s2 s1 s1 s2 s3`` at n=3).
    """
    if edge == 1:
        if n < 2:
            raise IndexRangeError("I_1 needs n >= 2")
        words = [f"t{k}" for k in range(2, n + 1)] + [f"s{k}" for k in range(3, n)]
        words += list(_I1_FIXED)
    elif edge == 2:
        if n < 3:
            raise IndexRangeError("I_2 needs n >= 3 (r_2 and s_2)")
        words = [f"t{k}" for k in range(2, n + 1)] + ["s2"] + [f"s{k}" for k in range(4, n)]
        words += list(_I2_FIXED)
    else:
        raise IndexRangeError(f"edge must be 1 or 2, got {edge}")
    gens = tuple(parse(w) for w in words)
    return EdgeStabilizerSet(edge, tuple(g for g in gens if min_n(g) <= n))


def stabilizer_image(edge: int, word: tuple) -> tuple:
    """The vertex-stabiliser word h with r_edge . word . r_edge^-1 = h.

    This is the right-hand side of the matching (R1 k) relation.
    """
    text = ab.fmt(word)
    if edge == 1:
        table = {"t2": "t1", "s1 s1 t1 t1": "s1 s1 t2 t2", "s2 s1 s1 s2": "s2 s1 s1 s2"}
    else:
        table = {"t2": "t1", "t3": "t2", "s2": "s1",
                 "s1 s2 s2 s1 t1 t1": "s2 s1 s1 s2 t3 t3",
                 "s3 s2 s1 s1 s2 s3": "s3 s2 s1 s1 s2 s3"}
    if text in table:
        return parse(table[text])
    # remaining generators are single t_k or s_k that commute with r_edge
    return word


@dataclass
class VerificationReport:
    instance: RelationInstance
    equal: bool
    perm_lhs: Permutation
    perm_rhs: Permutation
    exp_lhs: int
    exp_rhs: int

    @property
    def status(self) -> str:
        return "PASS" if self.equal else "FAIL"

    def diagnostics(self) -> str:
        parts = []
        if self.perm_lhs != self.perm_rhs:
            parts.append(f"permutation {self.perm_lhs} vs {self.perm_rhs}")
        if self.exp_lhs != self.exp_rhs:
            parts.append(f"exponent sum {self.exp_lhs} vs {self.exp_rhs}")
        return "; ".join(parts)

    def line(self) -> str:
        out = f"{self.instance.family} {self.instance.label} {self.status}"
        diag = self.diagnostics()
        return f"{out} # {diag}" if diag and not self.equal else out


def verify_instance(inst: RelationInstance, n: int) -> VerificationReport:
    lhs = to_braid(inst.lhs, n)
    rhs = to_braid(inst.rhs, n)
    return VerificationReport(
        inst,
        equal(lhs, rhs),
        permutation_image(lhs),
        permutation_image(rhs),
        exponent_sum(lhs),
        exponent_sum(rhs),
    )


BRIDGES = (("r1", "p1"), ("r2", "p2 p1"))


@dataclass
class Summary:
    n: int
    lines: list[str] = field(default_factory=list)
    counts: dict[str, int] = field(default_factory=dict)
    failures: list[str] = field(default_factory=list)
    skipped: list[str] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not self.failures

    def report(self) -> str:
        total = sum(self.counts.values())
        tail = [f"# n={self.n} instances={total} failures={len(self.failures)} skipped={len(self.skipped)}"]
        return "\n".join(self.lines + tail)


def verify_all(n: int, families=None) -> Summary:
    """Verify every enumerable instance at ``n`` plus the bridge identities."""
    summary = Summary(n)
    for fam in families or FAMILIES:
        insts = relation_instances(fam, n)
        summary.counts[fam] = len(insts)
        if not insts:
            summary.lines.append(f"{fam} - SKIP")
            summary.skipped.append(fam)
            continue
        for inst in insts:
            rep = verify_instance(inst, n)
            summary.lines.append(rep.line())
            if not rep.equal:
                summary.failures.append(str(inst))
    if families is None:
        for left, right in BRIDGES:
            lhs, rhs = parse(left), parse(right)
            if min_n(lhs + rhs) > n:
                summary.lines.append(f"bridge {left}={right.replace(' ', '')} SKIP")
                continue
            inst = RelationInstance("bridge", (), lhs, rhs, f"{left}={right.replace(' ', '')}")
            rep = verify_instance(inst, n)
            summary.lines.append(f"bridge {inst.variant} {rep.status}")
            if not rep.equal:
                summary.failures.append(str(inst))
    return summary


__all__ = [
    "FAMILIES",
    "EdgeStabilizerSet",
    "RelationInstance",
    "Summary",
    "VerificationReport",
    "gen",
    "generator_word",
    "relation_instances",
    "stabilizer_generators",
    "stabilizer_image",
    "verify_all",
    "verify_instance",
]
