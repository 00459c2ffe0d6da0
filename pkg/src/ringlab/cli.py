"""Command-line entry point: ``ringlab <command> ...``.

Exit codes: 0 on success, 1 when a hard check fails, 2 on usage or input errors.
"""

from __future__ import annotations

import argparse
import json
import logging
import sys
from dataclasses import dataclass, replace

from .catalog import (
    build_catalog,
    dumps_report,
    load_config,
    load_pair,
    load_ring,
    parse_subring_arg,
    write_text_atomic,
)
from .errors import RingAxiomError, RingLabError
from .graph import to_dot, to_json_obj
from .isoclinism import find_isoclinism, isoclinism_obstruction, theorem51_report
from .limits import DEFAULT_LIMITS, Limits
from .ring import center, enumerate_subrings, ring_predicates
from .rncg import FAIL, RingPair, build_rncg, commuting_probability, edge_count_via_formula
from .sweep import format_table, run_verify

log = logging.getLogger("ringlab")


@dataclass(frozen=True)
class CommandOutcome:
    exit_code: int
    report_path: str | None = None
    summary: str = ""


def _limits(args) -> Limits:
    lim = DEFAULT_LIMITS.with_env()
    if args.max_order is not None:
        lim = replace(lim, max_order=args.max_order)
    if args.max_edges is not None:
        lim = replace(lim, edge_color_edges=args.max_edges)
    if args.edge_color_timeout_ms is not None:
        lim = replace(lim, edge_color_timeout_ms=args.edge_color_timeout_ms)
    return lim


def _emit(text: str, dest: str) -> None:
    if dest == "-":
        sys.stdout.write(text)
    else:
        write_text_atomic(dest, text)


def _fmt(x) -> str:
    return f"{x.numerator}/{x.denominator}" if hasattr(x, "denominator") and x.denominator != 1 else str(x)


# -- commands ---------------------------------------------------------------

def cmd_ring_show(args, lim: Limits) -> CommandOutcome:
    R = load_ring(args.ring, lim.max_order)
    p = ring_predicates(R)
    lines = [
        f"ring {R.name}",
        f"order {R.order}",
        f"commutative {str(p.commutative).lower()}",
        f"unity {p.unity if p.unity is not None else 'none'}",
        f"smallest_prime {p.smallest_prime_of_order}",
        f"center {list(center(R).members)}",
    ]
    if R.order <= 16:
        lines.append("add")
        lines += ["  " + " ".join(str(v) for v in row) for row in R.add]
        lines.append("mul")
        lines += ["  " + " ".join(str(v) for v in row) for row in R.mul]
    return CommandOutcome(0, summary="\n".join(lines))


def cmd_ring_subrings(args, lim: Limits) -> CommandOutcome:
    R = load_ring(args.ring, lim.max_order)
    subs = enumerate_subrings(R, lim.subring_enum_order)
    lines = [f"{len(subs)} subrings of {R.name}"]
    for S in subs:
        tag = "commutative" if S.is_commutative() else "noncommutative"
        lines.append(f"  {{{','.join(map(str, S.members))}}}  order {len(S)}  {tag}")
    return CommandOutcome(0, summary="\n".join(lines))


def cmd_graph_build(args, lim: Limits) -> CommandOutcome:
    R = load_ring(args.ring, lim.max_order)
    pair = RingPair(R, parse_subring_arg(R, args.subring))
    G = build_rncg(pair)
    if args.dot:
        _emit(to_dot(G), args.dot)
    if args.json:
        _emit(json.dumps(to_json_obj(G), sort_keys=True) + "\n", args.json)
    summary = f"{pair.name}: {G.order} vertices, {len(G.edges)} edges"
    quiet = "-" in (args.dot, args.json)
    return CommandOutcome(0, summary="" if quiet else summary)


def cmd_prob(args, lim: Limits) -> CommandOutcome:
    R = load_ring(args.ring, lim.max_order)
    pair = RingPair(R, parse_subring_arg(R, args.subring))
    pr = commuting_probability(pair)
    lines = [
        f"pair {pair.name}",
        f"Pr(S,R) {_fmt(pr.pr_SR)}",
        f"Pr(S) {_fmt(pr.pr_S)}",
        f"commuting_pairs {pr.commuting_pair_count}",
        f"edges_from_probability {_fmt(edge_count_via_formula(pair, pr))}",
    ]
    return CommandOutcome(0, summary="\n".join(lines))


def cmd_verify(args, lim: Limits) -> CommandOutcome:
    config, base = load_config(args.catalog)
    try:
        catalog = build_catalog(config, base, lim)
    except RingAxiomError as exc:
        # a catalog ring that is not a ring is a failed hard check, not a usage error
        return CommandOutcome(1, summary=f"FAIL ring_axioms: {exc}")
    results = run_verify(catalog, args.seed, lim, args.jobs, isoclinism=not args.no_isoclinism)
    if args.report:
        _emit(dumps_report(results), args.report)
    code = results["summary"]["exit_code"]
    summary = "" if args.report == "-" else format_table(results)
    return CommandOutcome(code, args.report, summary)


def cmd_iso_check(args, lim: Limits) -> CommandOutcome:
    p1, p2 = load_pair(args.pair1, lim.max_order), load_pair(args.pair2, lim.max_order)
    w = find_isoclinism(p1, p2, lim)
    if w is None:
        why = isoclinism_obstruction(p1, p2, lim) or "exhaustive search found no witness"
        return CommandOutcome(0, summary=f"not isoclinic: {why}")
    if args.witness:
        _emit(w.to_json(), args.witness)
    return CommandOutcome(0, args.witness, f"isoclinic: {p1.name} ~ {p2.name}")


def cmd_iso_thm51(args, lim: Limits) -> CommandOutcome:
    p1, p2 = load_pair(args.pair1, lim.max_order), load_pair(args.pair2, lim.max_order)
    rep = theorem51_report(p1, p2, lim)
    code = 1 if rep["status"] == FAIL else 0
    return CommandOutcome(code, summary=json.dumps(rep, sort_keys=True, indent=1))


# -- parser -----------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--max-order", type=int, default=None, help="largest ring order to construct or load")
    common.add_argument("--max-edges", type=int, default=None, help="edge cap for exact edge colouring")
    common.add_argument("--edge-color-timeout-ms", type=float, default=None)
    common.add_argument("--seed", type=int, default=0, help="seed for sampled subset corpora")
    common.add_argument("--quiet", action="store_true", help="suppress the summary on stdout")
    common.add_argument("-v", "--verbose", action="store_true")

    ap = argparse.ArgumentParser(prog="ringlab", description="Relative non-commuting graphs of finite rings.")
    sub = ap.add_subparsers(dest="command", required=True)

    ring = sub.add_parser("ring", help="inspect a ring").add_subparsers(dest="ring_cmd", required=True)
    p = ring.add_parser("show", parents=[common], help="predicates, center and tables")
    p.add_argument("ring", help="ring file or constructor shorthand")
    p.set_defaults(func=cmd_ring_show)
    p = ring.add_parser("subrings", parents=[common], help="list all subrings")
    p.add_argument("ring")
    p.set_defaults(func=cmd_ring_subrings)

    graph = sub.add_parser("graph", help="build graphs").add_subparsers(dest="graph_cmd", required=True)
    p = graph.add_parser("build", parents=[common], help="build the relative non-commuting graph")
    p.add_argument("ring")
    p.add_argument("--subring", default="all", help="all | members:a,b,.. | gens:a,b,..")
    p.add_argument("--dot", metavar="PATH", help="write Graphviz source ('-' for stdout)")
    p.add_argument("--json", metavar="PATH", help="write vertices/edges JSON ('-' for stdout)")
    p.set_defaults(func=cmd_graph_build)

    p = sub.add_parser("prob", parents=[common], help="relative commuting probability")
    p.add_argument("ring")
    p.add_argument("--subring", default="all")
    p.set_defaults(func=cmd_prob)

    p = sub.add_parser("verify", parents=[common], help="run the full check suite over a catalog")
    p.add_argument("catalog", help="catalog config file, or 'default'")
    p.add_argument("--report", metavar="PATH", help="write the JSON report ('-' for stdout)")
    p.add_argument("--jobs", type=int, default=1)
    p.add_argument("--no-isoclinism", action="store_true", help="skip the pairwise isoclinism sweep")
    p.set_defaults(func=cmd_verify)

    iso = sub.add_parser("iso", help="relative isoclinism").add_subparsers(dest="iso_cmd", required=True)
    p = iso.add_parser("check", parents=[common], help="search for an isoclinism witness")
    p.add_argument("pair1")
    p.add_argument("pair2")
    p.add_argument("--witness", metavar="PATH")
    p.set_defaults(func=cmd_iso_check)
    p = iso.add_parser("thm51", parents=[common], help="isoclinism plus graph-isomorphism conclusion")
    p.add_argument("pair1")
    p.add_argument("pair2")
    p.set_defaults(func=cmd_iso_thm51)
    return ap


def run(argv: list[str] | None = None) -> CommandOutcome:
    """Parse and execute; argparse itself exits 2 on malformed arguments."""
    args = build_parser().parse_args(argv)
    logging.basicConfig(level=logging.DEBUG if args.verbose else logging.WARNING, format="%(levelname)s %(name)s: %(message)s")
    try:
        out = args.func(args, _limits(args))
    except (RingLabError, OSError, ValueError) as exc:
        return CommandOutcome(2, summary=f"error: {exc}")
    return replace(out, summary="") if args.quiet else out


def main(argv: list[str] | None = None) -> int:
    out = run(argv)
    if out.summary:
        print(out.summary, file=sys.stderr if out.exit_code == 2 else sys.stdout)
    return out.exit_code


if __name__ == "__main__":
    sys.exit(main())
