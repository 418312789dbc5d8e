"""Command-line interface.

Group atoms use total order: ``D(16)`` is the dihedral group of order 16,
i.e. alpha = 3 in the ``D_{2^(alpha+1)}`` naming; likewise ``Q(n)``,
``SD(n)``, and ``M(p,k)`` has order ``p^k``.
"""

from __future__ import annotations

import argparse
import sys
from collections import Counter
from pathlib import Path

from . import __version__, verify
from .epg import build_epg, n_G, neighborhood_sizes, to_dot, universal_vertices
from .groups import GroupError, GroupTable, check_axioms, exponent, isomorphic
from .groupspec import DEFAULT_CLI_MAX_ORDER, SpecError, parse_spec
from .presentations import PresentationError, catalog_order16, parse_presentation, realize

SPECIAL_SUITES = ("all", "order16", "dihedral-aut")


def _header(out) -> None:
    print(f"# epgraph {__version__}", file=out)


def _summary_lines(g: GroupTable) -> list[str]:
    e = build_epg(g)
    sizes = Counter(neighborhood_sizes(g).values())
    comp_sizes = sorted((len(c) for c in e.components), reverse=True)
    return [
        f"group: {g.label}",
        f"order: {g.order}",
        f"exponent: {exponent(g)}",
        f"n_G: {n_G(g)}",
        f"components: {len(e.components)}",
        f"largest component: {comp_sizes[0]}",
        f"component sizes: {' '.join(map(str, comp_sizes))}",
        f"universal vertices: {len(universal_vertices(g))}",
        "neighborhood sizes: " + " ".join(f"{s}x{c}" for s, c in sorted(sizes.items())),
    ]


def _build(args, text: str) -> GroupTable:
    g = parse_spec(text).build(args.max_order)
    check_axioms(g, seed=args.seed)
    return g


def cmd_stats(args, out) -> int:
    g = _build(args, args.spec)
    if g.order < 2:
        raise GroupError("the trivial group has no enhanced power graph")
    _header(out)
    for line in _summary_lines(g):
        print(line, file=out)
    return 0


def cmd_dot(args, out) -> int:
    g = _build(args, args.spec)
    if g.order < 2:
        raise GroupError("the trivial group has no enhanced power graph")
    text = to_dot(build_epg(g))
    if args.output == "-":
        out.write(text)
    else:
        try:
            Path(args.output).write_text(text, encoding="utf-8")
        except OSError as e:
            raise GroupError(f"cannot write {args.output}: {e.strerror}") from e
    return 0


def cmd_realize(args, out) -> int:
    pres = parse_presentation(args.presentation)
    g = realize(pres, max_cosets=args.max_cosets)
    check_axioms(g, seed=args.seed)
    _header(out)
    print(f"presentation: {pres.render()}", file=out)
    if g.order < 2:
        print("group: trivial", file=out)
        return 0
    for line in _summary_lines(g)[1:]:
        print(line, file=out)
    if g.order == 16:
        names = [c.label for c in catalog_order16() if isomorphic(g, c)]
        print(f"isomorphism type: {names[0]}", file=out)
    return 0


def _write_reports(reports, outdir: Path, stem: str) -> None:
    try:
        outdir.mkdir(parents=True, exist_ok=True)
        (outdir / f"{stem}.jsonl").write_text(verify.to_jsonl(reports), encoding="utf-8")
        (outdir / f"{stem}.csv").write_text(verify.to_csv(reports), encoding="utf-8")
    except OSError as e:
        raise GroupError(f"cannot write reports to {outdir}: {e.strerror}") from e


def _emit(reports, fmt: str | None, out) -> None:
    if fmt == "jsonl":
        out.write(verify.to_jsonl(reports))
        return
    if fmt == "csv":
        out.write(verify.to_csv(reports))
        return
    _header(out)
    for r in reports:
        if r.status != verify.NA:
            line = f"{r.status:4}  {r.claim:18} {r.label}"
            if r.detail:
                line += f"  ({r.detail})"
            print(line, file=out)
    counts = verify.summarize(reports)
    print(f"total: {sum(counts.values())}  pass: {counts[verify.PASS]}  "
          f"fail: {counts[verify.FAIL]}  not-applicable: {counts[verify.NA]}", file=out)


def _run_suite(suite: str, specs, max_order: int):
    if suite == "order16":
        return verify.census_order16()
    if suite == "dihedral-aut":
        return [verify.check_dihedral_aut_fact(a) for a in range(2, 6)]
    suites = None if suite == "all" else [suite]
    return verify.run_census(specs or verify.default_census(), suites, max_order=max_order)


def cmd_verify(args, out) -> int:
    suite = args.suite
    if suite not in verify.SUITES and suite not in SPECIAL_SUITES:
        valid = ", ".join(list(verify.SUITES) + list(SPECIAL_SUITES))
        raise SpecError(f"unknown suite {suite!r}; valid suites: {valid}")
    specs = [parse_spec(s) for s in args.spec or ()]
    reports = _run_suite(suite, specs, args.max_order)
    _write_reports(reports, Path(args.out), suite)
    _emit(reports, args.format, out)
    if suite == "order16" and args.format is None:
        eq = verify.order16_with_nG_equal_exp()
        print(f"n_G = exp(G): {', '.join(eq)}", file=out)
    return 1 if verify.failures(reports) else 0


def cmd_census16(args, out) -> int:
    args.suite = "order16"
    args.spec = None
    return cmd_verify(args, out)


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--max-order", type=int, default=DEFAULT_CLI_MAX_ORDER,
                        help=f"largest group order to construct (default {DEFAULT_CLI_MAX_ORDER})")
    common.add_argument("--format", choices=("csv", "jsonl"), default=None,
                        help="print verdict records in this format instead of a summary")
    common.add_argument("--seed", type=int, default=0,
                        help="seed for sampled associativity checks above order 512")

    ap = argparse.ArgumentParser(
        prog="epgraph",
        description="Enhanced power graphs of finite p-groups.",
        epilog="Atoms name total orders: D(16) is dihedral of order 16 (alpha = 3); "
               "Q(n), SD(n) likewise; M(p,k) has order p^k; H(p) has order p^3.",
    )
    ap.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = ap.add_subparsers(dest="command", required=True)

    p = sub.add_parser("stats", parents=[common], help="print n_G and graph statistics")
    p.add_argument("spec")
    p.set_defaults(func=cmd_stats)

    p = sub.add_parser("verify", parents=[common], help="run a verification suite")
    p.add_argument("--suite", required=True)
    p.add_argument("--spec", action="append", help="group spec (repeatable); default is the built-in census")
    p.add_argument("--out", default="epg-reports", help="report directory (default ./epg-reports)")
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("census16", parents=[common], help="check the 14 groups of order 16")
    p.add_argument("--out", default="epg-reports")
    p.set_defaults(func=cmd_census16)

    p = sub.add_parser("dot", parents=[common], help="write the graph in GraphViz format")
    p.add_argument("spec")
    p.add_argument("-o", "--output", required=True, help="output file, or - for stdout")
    p.set_defaults(func=cmd_dot)

    p = sub.add_parser("realize", parents=[common], help="realize a presentation by coset enumeration")
    p.add_argument("presentation")
    p.add_argument("--max-cosets", type=int, default=1_000_000)
    p.set_defaults(func=cmd_realize)
    return ap


def main(argv=None, out=None) -> int:
    out = out or sys.stdout
    args = build_parser().parse_args(argv)
    try:
        return args.func(args, out)
    except (GroupError, SpecError, PresentationError) as e:
        print(f"epgraph: error: {e}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
