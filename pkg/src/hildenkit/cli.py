"""Command-line front end.

Exit status: 0 when every check passes, 1 when a report contains FAIL, 2 for
usage errors (bad flags, unreadable files, malformed words).
"""

from __future__ import annotations

import argparse
import sys
from importlib import resources
from pathlib import Path

from . import alphabet as ab
from . import deduction, schema
from .action import assemble_presentation, load_complex, orbit_data, validate_action
from .braid import equal, normal_form, parse_word
from .braid.garside import expand
from .braid.properties import default_seed, run_property_suite
from .errors import (
    ActionError,
    CosetLimitExceeded,
    HildenkitError,
    ParseError,
    SearchLimitExceeded,
)
from .hilden import FAMILIES, RelationInstance, verify_all, verify_instance

EXIT_OK, EXIT_FAIL, EXIT_USAGE = 0, 1, 2


class UsageError(Exception):
    pass


def data_path(name: str) -> Path:
    """Resolve ``name`` as given, else relative to the bundled data directory."""
    p = Path(name)
    if p.exists():
        return p
    bundled = Path(str(resources.files("hildenkit") / "data" / name))
    if bundled.exists():
        return bundled
    raise UsageError(f"no such file: {name}")


def _status(lines: list[str]) -> int:
    return EXIT_FAIL if any(" FAIL" in f" {ln}" for ln in lines if not ln.startswith("#")) else EXIT_OK


# ---------------------------------------------------------------- braid


def cmd_braid_eq(args) -> list[str]:
    w1, w2 = parse_word(args.w1, args.strands), parse_word(args.w2, args.strands)
    ok = equal(w1, w2)
    return [f"nf1 {normal_form(w1)}", f"nf2 {normal_form(w2)}", "PASS" if ok else "FAIL"]


def cmd_braid_nf(args) -> list[str]:
    w = parse_word(args.word, args.strands)
    nf = normal_form(w)
    return [str(nf), f"word {' '.join(map(str, expand(nf).letters)) or '1'}"]


def cmd_braid_props(args) -> list[str]:
    seed = default_seed() if args.seed is None else args.seed
    rep = run_property_suite(args.count, seed, args.max_strands, args.max_length)
    return rep.lines()


# ---------------------------------------------------------------- hilden


def cmd_hilden_verify(args) -> list[str]:
    families = None
    if args.family:
        fam = args.family.upper()
        if fam in ("R1", "R2", "R3", "P"):
            prefix = "P" if fam == "P" else fam + "."
            families = [f for f in FAMILIES if f.startswith(prefix)]
        elif fam in FAMILIES:
            families = [fam]
        else:
            raise UsageError(f"unknown family {args.family!r}")
    summary = verify_all(args.n, families)
    lines = summary.report().splitlines()
    counts = " ".join(f"{k}={v}" for k, v in summary.counts.items() if k.startswith("P"))
    if counts:
        lines.insert(-1, f"# P instances: {counts}")
    return lines


def cmd_hilden_check(args) -> list[str]:
    lhs, rhs = ab.parse(args.lhs), ab.parse(args.rhs)
    n = args.n or max(2, ab.min_n(lhs + rhs))
    rep = verify_instance(RelationInstance("relation", (), lhs, rhs), n)
    lines = [f"# {ab.fmt(lhs)} = {ab.fmt(rhs)} in B_{2 * n}"]
    line = f"relation n={n} {rep.status}"
    diag = rep.diagnostics()
    return lines + [f"{line} # {diag}" if diag else line]


# ---------------------------------------------------------------- derive


def _lemma_registry(n: int, skip=()) -> deduction.SchemaRegistry:
    registry = deduction.SchemaRegistry()
    for path in deduction.bundled_files():
        if path.resolve() in skip:
            continue
        d = deduction.load(path)
        if d.lemma:
            rep = deduction.check_derivation(d, max(n, d.min_n()), registry)
            if rep.status == "PASS":
                registry.register(d.lemma, d)
    return registry


def cmd_derive_check(args) -> list[str]:
    if args.bundled:
        paths = deduction.bundled_files()
    elif args.files:
        paths = [data_path(f) for f in args.files]
    else:
        raise UsageError("give derivation files or --bundled")
    derivs = [(p, deduction.load(p)) for p in paths]
    lines = []
    if args.bundled:
        for rep in deduction.check_bundle(paths, args.n):
            lines.append(rep.line())
        return lines
    registry = _lemma_registry(args.n, skip={p.resolve() for p in paths})
    derivs.sort(key=lambda pd: pd[1].lemma is None)
    for path, d in derivs:
        d.name = d.name or path.stem
        rep = deduction.check_derivation(d, args.n, registry)
        if d.lemma and rep.status == "PASS":
            registry.register(d.lemma, d)
        lines.append(rep.line())
    return lines


def cmd_derive_search(args) -> list[str]:
    start = deduction.eliminate_r(ab.parse(args.start))
    end = deduction.eliminate_r(ab.parse(args.end))
    schemas = args.schemas.split(",") if args.schemas else None
    registry = _lemma_registry(args.n or ab.min_n(start + end))
    try:
        d = deduction.search_derivation(
            start, end, schemas=schemas, depth=args.depth, n=args.n,
            node_cap=args.node_cap, registry=registry,
        )
    except SearchLimitExceeded as exc:
        return [f"# {exc}", "FAIL"]
    if d is None:
        return [f"# no derivation within depth {args.depth}", "FAIL"]
    return d.dumps().splitlines() + [f"found {len(d.steps)} steps PASS"]


# ---------------------------------------------------------------- present


def cmd_present(args) -> list[str]:
    spec = load_complex(data_path(args.complex))
    rep = validate_action(spec)
    lines = rep.lines()
    if not rep.valid:
        return lines + ["FAIL"]
    od = orbit_data(spec)
    lines.append(f"# edge orbits {len(od.edges)}, face orbits {len(od.faces)}")
    pres = assemble_presentation(spec)
    for rel in pres.relations:
        lines.append(f"{rel.family} {rel} PASS")
    lines.append(f"presentation {pres}")
    try:
        order = pres.order(args.enumerate_limit)
    except CosetLimitExceeded as exc:
        return lines + [f"enumeration FAIL # {exc}"]
    verdict = "PASS" if order == rep.group_order else "FAIL"
    lines.append(f"enumeration order={order} expected={rep.group_order} {verdict}")
    return lines


# ---------------------------------------------------------------- schema


def cmd_schema_reduce(args) -> list[str]:
    c = schema.face(args.face)
    if not c.valid():
        raise UsageError(f"{c} violates its index constraints")
    red = schema.reduce_to_basis(c)
    lines = red.lines()
    for k in red.degenerate:
        lines.append(f"# degenerate class {k} comes from the panel labels")
    return lines


def cmd_schema_check(args) -> list[str]:
    lines = []
    for panel in schema.bundled_panels():
        tiling, lengths = [], []
        for i in range(1, args.max_index + 1):
            for j in range(i, args.max_index + 1):
                c = schema.FaceClass(panel.kind, i, j)
                if not c.valid() or schema.is_terminal(c) or not panel.applies(c):
                    continue
                cp = panel.instantiate(i, j)
                tiling += [f"{c}: {p}" for p in cp.tiling_problems()]
                lengths += [f"{c}: {p}" for p in cp.length_problems()]
        lines.append(f"panel {panel.name} tiling {'FAIL' if tiling else 'PASS'}")
        lines.extend(f"# {p}" for p in tiling[:10])
        lines.append(f"panel {panel.name} lengths {'FLAG' if lengths else 'PASS'}")
        lines.extend(f"# {p}" for p in lengths[:4])
    lines.append(f"# basis: {schema.basis_discrepancy()}")
    return lines


# ---------------------------------------------------------------- parser


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(message)


def build_parser() -> argparse.ArgumentParser:
    p = _Parser(prog="hildenkit", description=__doc__.splitlines()[0])
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser)

    braid = sub.add_parser("braid", help="braid word problem").add_subparsers(dest="sub", required=True)
    q = braid.add_parser("eq", help="decide equality of two braid words")
    q.add_argument("w1")
    q.add_argument("w2")
    q.add_argument("--strands", "-m", type=int, required=True)
    q.set_defaults(func=cmd_braid_eq)
    q = braid.add_parser("nf", help="left normal form")
    q.add_argument("word")
    q.add_argument("--strands", "-m", type=int, required=True)
    q.set_defaults(func=cmd_braid_nf)
    q = braid.add_parser("props", help="seeded random-word property suite")
    q.add_argument("--count", type=int, default=10_000)
    q.add_argument("--seed", type=int, default=None, help="default: $HILDENKIT_SEED or 0")
    q.add_argument("--max-strands", type=int, default=8)
    q.add_argument("--max-length", type=int, default=40)
    q.set_defaults(func=cmd_braid_props)

    hilden = sub.add_parser("hilden", help="relation checks in B_2n").add_subparsers(dest="sub", required=True)
    q = hilden.add_parser("verify")
    q.add_argument("--n", type=int, default=4)
    q.add_argument("--family", help="R0, R1.4, P9, or a group R1/R2/R3/P")
    q.set_defaults(func=cmd_hilden_verify)
    q = hilden.add_parser("check", help="verify one relation lhs = rhs")
    q.add_argument("lhs")
    q.add_argument("rhs")
    q.add_argument("--n", type=int, default=None, help="default: smallest n defining every letter")
    q.set_defaults(func=cmd_hilden_check)

    derive = sub.add_parser("derive", help="rewriting derivations").add_subparsers(dest="sub", required=True)
    q = derive.add_parser("check")
    q.add_argument("files", nargs="*")
    q.add_argument("--n", type=int, default=4)
    q.add_argument("--bundled", action="store_true", help="check every bundled derivation")
    q.set_defaults(func=cmd_derive_check)
    q = derive.add_parser("search")
    q.add_argument("start")
    q.add_argument("end")
    q.add_argument("--depth", type=int, default=4)
    q.add_argument("--n", type=int, default=None)
    q.add_argument("--schemas", help="comma-separated schema ids (default P1..P14)")
    q.add_argument("--node-cap", type=int, default=100_000)
    q.set_defaults(func=cmd_derive_search)

    q = sub.add_parser("present", help="presentation from a group action on a complex")
    q.add_argument("complex")
    q.add_argument("--enumerate-limit", type=int, default=10_000)
    q.set_defaults(func=cmd_present)

    sch = sub.add_parser("schema", help="face classes and decomposition panels").add_subparsers(dest="sub", required=True)
    q = sch.add_parser("reduce")
    q.add_argument("face", help="e.g. R34, S1,10")
    q.set_defaults(func=cmd_schema_reduce)
    q = sch.add_parser("check")
    q.add_argument("--max-index", type=int, default=10)
    q.set_defaults(func=cmd_schema_check)
    return p


def run(argv=None) -> tuple[int, list[str]]:
    """Run a command and return ``(exit status, report lines)``."""
    try:
        args = build_parser().parse_args(argv)
        if getattr(args, "n", 2) is not None and getattr(args, "n", 2) < 2:
            raise UsageError("--n must be at least 2")
        lines = args.func(args)
    except UsageError as exc:
        return EXIT_USAGE, [f"usage error: {exc}"]
    except (ParseError, ValueError) as exc:
        return EXIT_USAGE, [f"usage error: {exc}"]
    except OSError as exc:
        return EXIT_USAGE, [f"usage error: {exc}"]
    except (ActionError, HildenkitError) as exc:
        return EXIT_FAIL, [f"FAIL # {exc}"]
    return _status(lines), lines


def main(argv=None) -> int:
    status, lines = run(argv)
    stream = sys.stderr if status == EXIT_USAGE else sys.stdout
    for line in lines:
        print(line, file=stream)
    return status


if __name__ == "__main__":
    sys.exit(main())
