"""Command-line frontend: verify, construct, enumerate, stabilize.

Exit codes: 0 all checks passed, 1 a mathematical check failed, 2 usage
error (bad arguments or budget breach).  --format json switches machine
output to stdout; stats lines always go to stderr.  Relative output
paths resolve against $STALLINGS_OUT_DIR when set.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from pathlib import Path
from typing import Optional

from .colored import colored_to_dot, colored_to_json
from .counterexample import (
    VerificationError,
    build_delta,
    build_gamma,
    build_family,
    infinite_rank_truncation,
    stabilize_one_noninjective,
    stabilize_two_noninjective,
    verify_main,
)
from .graphs import GraphSizeError, SubgroupHandle, graph_to_dot, graph_to_json, rank
from .oracle import (
    BudgetExceededError,
    CompressionViolationError,
    DEFAULT_WORD_BUDGET,
    enumerate_equalizer,
    rank_growth_probe,
    write_sample,
)

EXIT_OK = 0
EXIT_CHECK_FAILED = 1
EXIT_USAGE = 2

OUT_DIR_ENV = "STALLINGS_OUT_DIR"


@dataclass
class RunConfig:
    command: str
    n_min: Optional[int] = None
    n_max: Optional[int] = None
    family: Optional[str] = None
    maxlen: Optional[int] = None
    radius: Optional[int] = None
    r: Optional[int] = None
    mode: Optional[str] = None
    fmt: str = "text"
    budget: int = DEFAULT_WORD_BUDGET
    seed: int = 0
    out: Optional[str] = None


def parse_range(text: str) -> tuple[int, int]:
    if ".." in text:
        lo, hi = text.split("..", 1)
        return int(lo), int(hi)
    n = int(text)
    return n, n


def resolve_out(path: str) -> Path:
    p = Path(path)
    if p.is_absolute():
        return p
    return Path(os.environ.get(OUT_DIR_ENV, ".")) / p


def _emit(text: str, out: Optional[str]) -> None:
    if out is None:
        sys.stdout.write(text)
    else:
        resolve_out(out).write_text(text)


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--out", help="write output to this path instead of stdout")
    common.add_argument("--budget", type=int, default=DEFAULT_WORD_BUDGET,
                        help="enumeration word budget")
    common.add_argument("--seed", type=int, default=0,
                        help="seed for randomized checks (reserved)")

    parser = argparse.ArgumentParser(
        prog="stallings",
        description="Stallings graphs, colored graphs, and the equalizer "
                    "counterexample family.")
    sub = parser.add_subparsers(dest="command", required=True)

    p_verify = sub.add_parser("verify", parents=[common],
                              help="run the full verification over a range of n")
    p_verify.add_argument("--n", default="2..10", metavar="N or LO..HI",
                          help="single n or inclusive range (default 2..10)")
    p_verify.add_argument("--format", dest="fmt", choices=("text", "json"),
                          default="text")

    p_construct = sub.add_parser("construct", parents=[common],
                                 help="emit one of the graph families")
    p_construct.add_argument("family", choices=("gamma", "delta", "trunc"))
    p_construct.add_argument("--n", type=int, default=3)
    p_construct.add_argument("--radius", type=int, default=3)
    p_construct.add_argument("--format", dest="fmt", choices=("json", "dot"),
                             default="json")

    p_enumerate = sub.add_parser("enumerate", parents=[common],
                                 help="enumerate the equalizer sample and probe ranks")
    p_enumerate.add_argument("--n", type=int, required=True)
    p_enumerate.add_argument("--maxlen", type=int, required=True)
    p_enumerate.add_argument("--format", dest="fmt", choices=("text", "json"),
                             default="text")

    p_stabilize = sub.add_parser("stabilize", parents=[common],
                                 help="build a non-injective stabilized pair")
    p_stabilize.add_argument("--r", type=int, required=True)
    p_stabilize.add_argument("--mode", choices=("one", "two"), required=True)
    p_stabilize.add_argument("--format", dest="fmt", choices=("text", "json"),
                             default="text")
    return parser


def _config_from_args(args: argparse.Namespace) -> RunConfig:
    cfg = RunConfig(command=args.command, fmt=getattr(args, "fmt", "text"),
                    budget=args.budget, seed=args.seed, out=args.out)
    if args.command == "verify":
        cfg.n_min, cfg.n_max = parse_range(args.n)
    elif args.command == "construct":
        cfg.family = args.family
        cfg.n_min = cfg.n_max = args.n
        cfg.radius = args.radius
    elif args.command == "enumerate":
        cfg.n_min = cfg.n_max = args.n
        cfg.maxlen = args.maxlen
    elif args.command == "stabilize":
        cfg.r = args.r
        cfg.mode = args.mode
    return cfg


def _report_table(reports) -> str:
    lines = [f"{'n':>4} {'|V|':>5} {'|E+|':>6} {'eq-rank':>8} {'g-inj':>6} "
             f"{'h-inj':>6} {'colors-inj':>11} {'violated':>9}"]
    for rep in reports:
        graph = rep.certificate.subgroup.graph
        lines.append(
            f"{rep.n:>4} {len(graph.vertices):>5} {len(graph.edges):>6} "
            f"{rep.certificate.rank:>8} {'yes' if rep.g_injective else 'NO':>6} "
            f"{'yes' if rep.h_injective else 'NO':>6} "
            f"{'yes' if rep.certificate.colors_injective else 'NO':>11} "
            f"{'yes' if rep.conjecture_violated else 'no':>9}")
    return "\n".join(lines) + "\n"


def cmd_verify(cfg: RunConfig) -> int:
    if cfg.n_min < 2 or cfg.n_min > cfg.n_max:
        sys.stderr.write(f"verify: need 2 <= n_min <= n_max, got {cfg.n_min}..{cfg.n_max}\n")
        return EXIT_USAGE
    ns = range(cfg.n_min, cfg.n_max + 1)
    with ThreadPoolExecutor(max_workers=min(8, len(ns))) as pool:
        reports = list(pool.map(verify_main, ns))
    if cfg.fmt == "json":
        _emit(json.dumps([rep.to_json_dict() for rep in reports], indent=2) + "\n", cfg.out)
    else:
        _emit(_report_table(reports), cfg.out)
    sys.stderr.write(f"verified n={cfg.n_min}..{cfg.n_max}: all checks passed\n")
    return EXIT_OK


def cmd_construct(cfg: RunConfig) -> int:
    if cfg.family == "gamma":
        if cfg.n_min < 2:
            sys.stderr.write("construct gamma: need n >= 2\n")
            return EXIT_USAGE
        colored = build_gamma(cfg.n_min)
        graph = colored.graph
        text = colored_to_json(colored) if cfg.fmt == "json" else colored_to_dot(colored)
    elif cfg.family == "delta":
        if cfg.n_min < 2:
            sys.stderr.write("construct delta: need n >= 2\n")
            return EXIT_USAGE
        graph = build_delta(cfg.n_min)
        text = graph_to_json(graph) if cfg.fmt == "json" else graph_to_dot(graph)
    else:
        if cfg.radius < 1:
            sys.stderr.write("construct trunc: need radius >= 1\n")
            return EXIT_USAGE
        graph, _ = infinite_rank_truncation(cfg.radius)
        text = graph_to_json(graph) if cfg.fmt == "json" else graph_to_dot(graph)
    _emit(text, cfg.out)
    sys.stderr.write(f"|V|={len(graph.vertices)} |E+|={len(graph.edges)} "
                     f"rank={rank(graph)}\n")
    return EXIT_OK


def cmd_enumerate(cfg: RunConfig) -> int:
    if cfg.n_min < 2 or cfg.maxlen < 1:
        sys.stderr.write("enumerate: need n >= 2 and maxlen >= 1\n")
        return EXIT_USAGE
    inst = build_family(cfg.n_min)
    try:
        result = enumerate_equalizer(inst.g, inst.h, cfg.maxlen, budget=cfg.budget)
    except BudgetExceededError as exc:
        sys.stderr.write(f"enumerate: {exc}\n")
        return EXIT_USAGE
    out = cfg.out or f"eq-sample-n{cfg.n_min}-maxlen{cfg.maxlen}.txt"
    path = resolve_out(out)
    write_sample(path, result, n=cfg.n_min)
    handle = SubgroupHandle(inst.gamma.graph)
    probe = rank_growth_probe(handle, result.found, inst.g, inst.h)
    sys.stderr.write(f"count={result.count} probe_rank={probe} "
                     f"certified_bound={2 * cfg.n_min - 2} sample={path}\n")
    if cfg.fmt == "json":
        sys.stdout.write(json.dumps({
            "n": cfg.n_min,
            "maxlen": cfg.maxlen,
            "count": result.count,
            "probeRank": probe,
            "certifiedBound": 2 * cfg.n_min - 2,
            "sample": str(path),
        }, indent=2) + "\n")
    return EXIT_OK


def _stabilized_text(pair) -> str:
    lines = [f"stabilized pair: r={pair.r} mode={pair.mode}"]
    lines.append("  alpha: " + ", ".join(f"{k} -> {v}" for k, v in pair.alpha.as_dict().items()))
    lines.append("  beta:  " + ", ".join(f"{k} -> {v}" for k, v in pair.beta.as_dict().items()))
    for name, witness in pair.kernel_witnesses:
        lines.append(f"  kernel witness: {name}({witness}) = 1")
    lines.append(f"  embedded subgroup rank: {pair.base_rank}")
    lines.append(f"  certified bound: {pair.bound} > r = {pair.r}")
    return "\n".join(lines) + "\n"


def cmd_stabilize(cfg: RunConfig) -> int:
    try:
        if cfg.mode == "one":
            pair = stabilize_one_noninjective(cfg.r)
        else:
            pair = stabilize_two_noninjective(cfg.r)
    except ValueError as exc:
        sys.stderr.write(f"stabilize: {exc}\n")
        return EXIT_USAGE
    if cfg.fmt == "json":
        payload = {
            "r": pair.r,
            "mode": pair.mode,
            "alpha": pair.alpha.as_dict(),
            "beta": pair.beta.as_dict(),
            "kernelWitnesses": [{"map": name, "witness": str(w)}
                                for name, w in pair.kernel_witnesses],
            "embeddedRank": pair.base_rank,
            "certifiedBound": pair.bound,
            "embeddedBasis": [str(w) for w in pair.embedded_basis],
        }
        _emit(json.dumps(payload, indent=2) + "\n", cfg.out)
    else:
        _emit(_stabilized_text(pair), cfg.out)
    sys.stderr.write(f"bound={pair.bound} r={pair.r}\n")
    return EXIT_OK


def main(argv: Optional[list[str]] = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        cfg = _config_from_args(args)
    except ValueError as exc:
        sys.stderr.write(f"bad arguments: {exc}\n")
        return EXIT_USAGE
    try:
        if cfg.command == "verify":
            return cmd_verify(cfg)
        if cfg.command == "construct":
            return cmd_construct(cfg)
        if cfg.command == "enumerate":
            return cmd_enumerate(cfg)
        return cmd_stabilize(cfg)
    except (VerificationError, CompressionViolationError) as exc:
        sys.stderr.write(f"MATHEMATICAL CHECK FAILED: {exc}\n")
        return EXIT_CHECK_FAILED
    except (BudgetExceededError, GraphSizeError, ValueError) as exc:
        sys.stderr.write(f"error: {exc}\n")
        return EXIT_USAGE


if __name__ == "__main__":
    raise SystemExit(main())
