"""Command-line entry point: ``solve``, ``verify`` and ``generate``."""

from __future__ import annotations

import argparse
import sys
from typing import Optional, Sequence

from .bounds import evaluate_all
from .campaign import (
    CHECKS,
    CampaignConfig,
    ConfigError,
    render,
    run_campaign,
)
from .generators import GeneratorError, GeneratorSpec
from .graph import Graph, Graph6Error, encode_graph6, parse_graph6, write_graph6_file
from .invariants import compute_profile

EXIT_CLEAN, EXIT_VIOLATIONS, EXIT_CONFIG = 0, 1, 2


def load_single(source: str) -> tuple[str, Graph]:
    """A graph from a generator spec (first graph) or a literal graph6 string."""
    if ":" in source:
        spec = GeneratorSpec.parse(source)
        for sid, g, _ in spec.graphs():
            return sid, g
        raise GeneratorError(f"{source!r} produced no graphs")
    return source, parse_graph6(source)


def _fmt(x) -> str:
    if x is None:
        return "-"
    return str(x)


def solve_one(source: str, time_budget: Optional[float] = None, out=None) -> int:
    out = out or sys.stdout
    sid, g = load_single(source)
    p = compute_profile(g, time_budget)
    lines = [
        f"source      {sid}",
        f"graph6      {encode_graph6(g).decode()}",
        f"n           {p.n}",
        f"delta       {p.delta}",
        f"kappa       {p.kappa}",
        f"c           {p.c}{'  (incomplete: lower bound)' if p.incomplete else ''}",
        f"cycle       {' '.join(map(str, p.cycle.vertices))}",
    ]
    if p.residual_empty:
        lines.append("residual    empty (Hamiltonian)")
    else:
        lines.append(f"cbar        {p.cbar}")
        lines.append(f"pbar        {p.pbar}")
    lines.append("")
    lines.append(f"{'bound':<12} {'applicable':<10} {'value':>8} {'slack':>8}  note")
    for e in evaluate_all(p).entries:
        lines.append(
            f"{e.name:<12} {str(e.applicable).lower():<10} {_fmt(e.value):>8} {_fmt(e.slack):>8}  {e.reason}".rstrip()
        )
    out.write("\n".join(lines) + "\n")
    return EXIT_CLEAN


def _parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="circumference", description="Circumference bound verification toolkit.")
    sub = ap.add_subparsers(dest="command", required=True)

    s = sub.add_parser("solve", help="print invariants and bounds for one graph")
    s.add_argument("source", help="graph6 string or generator spec such as named:petersen")
    s.add_argument("--time-budget", type=float, default=None)

    v = sub.add_parser("verify", help="run a verification campaign")
    v.add_argument("--sources", nargs="+", required=True,
                   help="graph6 files or generator specs (specs may not be comma-joined)")
    v.add_argument("--checks", nargs="+", required=True, help=f"subset of {', '.join(CHECKS)}")
    v.add_argument("--jobs", type=int, default=1)
    v.add_argument("--seed", type=int, default=0)
    v.add_argument("--format", choices=("json", "csv"), default="json")
    v.add_argument("--output", default=None)
    v.add_argument("--time-budget", type=float, default=10.0)
    v.add_argument("--timing", action="store_true", help="add total runtime to the summary")
    v.add_argument("--lemma-mode", choices=("all", "witness"), default="all",
                   help="lemma instances from every longest (C, H) pair or only the solver's witness pair")
    v.add_argument("--lemma-cap", type=int, default=12, help="largest n given to the lemma machinery")
    v.add_argument("--thetas-exclude-edges", action="store_true",
                   help="do not count a single edge as a neutral path in the Θ procedure")

    gen = sub.add_parser("generate", help="write generated graphs as graph6")
    gen.add_argument("spec")
    gen.add_argument("--count", type=int, default=None, help="maximum number of graphs to write")
    gen.add_argument("--output", required=True)
    return ap


def _verify(args) -> int:
    checks = tuple(c for v in args.checks for c in v.split(",") if c)
    config = CampaignConfig(
        sources=tuple(args.sources), checks=checks, jobs=args.jobs, seed=args.seed,
        output=args.output, format=args.format, time_budget=args.time_budget,
        include_timing=args.timing, edges_count=not args.thetas_exclude_edges,
        lemma_mode=args.lemma_mode, lemma_cap=args.lemma_cap,
    )
    report = run_campaign(config)
    text = render(report, config.format)
    if config.output:
        with open(config.output, "w", encoding="utf-8", newline="") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)
    s = report["summary"]
    msg = f"{s['graphs']} graphs, {len(s['violations'])} violations, {len(s['findings'])} findings"
    if "conjecture1" in s:
        msg += f"; conjecture1: {s['conjecture1']}"
    print(msg, file=sys.stderr)
    return EXIT_VIOLATIONS if s["violations"] else EXIT_CLEAN


def _generate(args) -> int:
    spec = GeneratorSpec.parse(args.spec)
    if args.count is not None and args.count < 0:
        raise ConfigError("count must be nonnegative")
    graphs = []
    for _, g, _ in spec.graphs():
        if args.count is not None and len(graphs) >= args.count:
            break
        graphs.append(g)
    n = write_graph6_file(args.output, graphs)
    print(f"wrote {n} graphs to {args.output}", file=sys.stderr)
    return EXIT_CLEAN


def main(argv: Optional[Sequence[str]] = None) -> int:
    ap = _parser()
    try:
        args = ap.parse_args(argv)
    except SystemExit as exc:
        return EXIT_CONFIG if exc.code else EXIT_CLEAN
    try:
        if args.command == "solve":
            return solve_one(args.source, args.time_budget)
        if args.command == "verify":
            return _verify(args)
        return _generate(args)
    except (ConfigError, GeneratorError, Graph6Error, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_CONFIG


if __name__ == "__main__":  # pragma: no cover
    sys.exit(main())
