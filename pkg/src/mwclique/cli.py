"""Command-line entry point: ``mwclique solve|bench|configure|oracle``."""

from __future__ import annotations

import argparse
import json
import logging
import os
import sys
from typing import Sequence

from . import config as cfgmod
from .config import PARAMETER_NAMES, SPACE, ConfigError, Configuration, check, export_space, preset
from .graph import DimacsError, VertexWeightedGraph, load_dimacs
from .harness import record_row, run_batch, write_records
from .oracle import OracleTooLarge, exact_oracle
from .search import CLOCKS, solve
from .tuning import random_search_configure

EXIT_OK, EXIT_USAGE, EXIT_INPUT, EXIT_PARTIAL = 0, 1, 2, 3


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message: str):  # argparse would exit with 2, which we reserve for input errors
        self.print_usage(sys.stderr)
        print(f"{self.prog}: error: {message}", file=sys.stderr)
        raise SystemExit(EXIT_USAGE)


def _seed_range(text: str) -> range:
    try:
        if ".." in text:
            a, b = text.split("..", 1)
            return range(int(a), int(b) + 1)
        return range(int(text), int(text) + 1)
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected A..B, got {text!r}") from None


def _add_config_options(p: argparse.ArgumentParser) -> None:
    group = p.add_mutually_exclusive_group()
    group.add_argument("--config", metavar="FILE", help="JSON configuration file")
    group.add_argument("--preset", metavar="NAME", help="named configuration (default, bhoslib, ...)")
    for name in PARAMETER_NAMES:
        p.add_argument(f"--{name}", metavar="VALUE", dest=f"param_{name}", help=argparse.SUPPRESS)


def _add_run_options(p: argparse.ArgumentParser) -> None:
    p.add_argument("--cutoff", type=float, default=10.0, help="per-run cutoff (seconds, or moves with --clock steps)")
    p.add_argument("--clock", choices=CLOCKS, default="cpu")
    p.add_argument("--max-steps", type=int, default=None)
    p.add_argument("--weights", choices=("explicit", "default"), default="explicit",
                   help="use 'v' weight lines (explicit) or the (i mod 200)+1 rule for every vertex")


def _configuration(args) -> Configuration:
    if args.config:
        with open(args.config, encoding="utf-8") as fh:
            config = Configuration.from_json(fh.read())
    elif args.preset:
        try:
            config = preset(args.preset)
        except ValueError as exc:
            raise UsageError(str(exc)) from None
    else:
        config = Configuration()
    pairs = [(n, getattr(args, f"param_{n}")) for n in PARAMETER_NAMES if getattr(args, f"param_{n}") is not None]
    if pairs:
        try:
            config = cfgmod.override(config, pairs)
        except ValueError as exc:
            raise UsageError(str(exc)) from None
    return check(config)


def _load(path: str, weights: str = "explicit") -> VertexWeightedGraph:
    return load_dimacs(path, explicit_weights=weights == "explicit")


def _read_list(path: str) -> tuple[dict[str, str], dict[str, int]]:
    """Instance list: one ``path [target]`` per line; ``#`` starts a comment.

    Relative paths are resolved against the list file's directory.
    """
    base = os.path.dirname(os.path.abspath(path))
    instances: dict[str, str] = {}
    targets: dict[str, int] = {}
    with open(path, encoding="utf-8") as fh:
        for raw in fh:
            line = raw.split("#", 1)[0].split()
            if not line:
                continue
            name = line[0]
            instances[name] = name if os.path.isabs(name) else os.path.join(base, name)
            if len(line) > 1:
                targets[name] = int(line[1])
    return instances, targets


# -- subcommands -----------------------------------------------------------------

def cmd_solve(args) -> int:
    config = _configuration(args)
    graph = _load(args.instance, args.weights)
    r = solve(graph, config, seed=args.seed, cutoff=args.cutoff, max_steps=args.max_steps,
              target=args.target, clock=args.clock)
    r.instance = args.instance
    row = record_row(r)
    row["best_clique"] = [v + 1 for v in r.best_clique]
    print(json.dumps(row))
    return EXIT_OK


def cmd_bench(args) -> int:
    config = _configuration(args)
    instances, targets = _read_list(args.instances)
    batch = run_batch(instances, config, args.seeds, args.cutoff, targets, jobs=args.jobs,
                      clock=args.clock, max_steps=args.max_steps,
                      explicit_weights=args.weights == "explicit")
    if args.out:
        for path in write_records(args.out, batch.records, batch.stats):
            print(f"wrote {path}", file=sys.stderr)
    s = batch.stats
    summary = {
        "runs": s.runs, "n_success": s.n_success, "success_rate": s.success_rate, "t_avg": s.t_avg,
        "avgPAR10_run": s.avg_par10_run, "avgPAR10_instance": s.avg_par10_instance,
        "per_instance": s.per_instance, "errors": batch.errors,
    }
    print(json.dumps(summary, indent=2))
    return EXIT_OK if batch.ok else EXIT_PARTIAL


def cmd_configure(args) -> int:
    if args.space_out:
        text = export_space(args.format)
        with open(args.space_out, "w", encoding="utf-8") as fh:
            fh.write(text)
        print(f"wrote {args.space_out}", file=sys.stderr)
        return EXIT_OK
    if not args.train or args.budget is None:
        raise UsageError("configure needs --space-out FILE, or --train LIST with --budget N")
    instances, _ = _read_list(args.train)
    if not instances:
        raise UsageError("training list is empty")
    training = [_load(p, args.weights) for p in instances.values()]
    best = random_search_configure(SPACE, training, args.budget, args.cutoff, args.seed, clock=args.clock)
    text = best.to_json()
    if args.out:
        with open(args.out, "w", encoding="utf-8") as fh:
            fh.write(text + "\n")
    print(text)
    return EXIT_OK


def cmd_oracle(args) -> int:
    graph = _load(args.instance, args.weights)
    try:
        weight, clique = exact_oracle(graph, args.method)
    except OracleTooLarge as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    print(json.dumps({"instance": args.instance, "optimum": weight, "clique": [v + 1 for v in clique]}))
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="mwclique", description="Local search for the maximum vertex weight clique problem.")
    parser.add_argument("-v", "--verbose", action="store_true")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    p = sub.add_parser("solve", help="run the solver once on a DIMACS instance")
    p.add_argument("instance")
    _add_config_options(p)
    _add_run_options(p)
    p.add_argument("--seed", type=int, default=1)
    p.add_argument("--target", type=int, default=None, help="stop once a clique of this weight is found")
    p.set_defaults(func=cmd_solve)

    p = sub.add_parser("bench", help="seeded batch runs over an instance list")
    p.add_argument("instances", help="file with one 'path [target]' per line")
    _add_config_options(p)
    _add_run_options(p)
    p.add_argument("--seeds", type=_seed_range, default=range(1, 11), help="A..B (inclusive)")
    p.add_argument("--jobs", type=int, default=1)
    p.add_argument("--out", help="results.csv or results.json; both files are written")
    p.set_defaults(func=cmd_bench)

    p = sub.add_parser("configure", help="export the parameter space or run random search")
    p.add_argument("--space-out", metavar="FILE")
    p.add_argument("--format", choices=("pcs_text", "json"), default="pcs_text")
    p.add_argument("--train", metavar="LIST")
    p.add_argument("--budget", type=int)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--out", metavar="FILE")
    _add_run_options(p)
    p.set_defaults(func=cmd_configure)

    p = sub.add_parser("oracle", help="exact optimum of a small instance")
    p.add_argument("instance")
    p.add_argument("--method", choices=("bnb", "enumerate"), default="bnb")
    p.add_argument("--weights", choices=("explicit", "default"), default="explicit")
    p.set_defaults(func=cmd_oracle)
    return parser


def main(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING, format="%(levelname)s %(message)s")
    try:
        return args.func(args)
    except UsageError as exc:
        print(f"mwclique: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except (OSError, DimacsError, ConfigError, ValueError, OverflowError) as exc:
        print(f"mwclique: error: {exc}", file=sys.stderr)
        return EXIT_INPUT


if __name__ == "__main__":
    sys.exit(main())
