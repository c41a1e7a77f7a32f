"""Command line front end.

Subcommands: solve (full pipeline with certificates), oracle (exhaustive
reference solver), check-free (packing search), gen-hard (formula to
gadget graph), bench (seeded random timing sweep).  Exit codes: 0
colorable / free, 1 not colorable, 2 not rP3-free, 3 aborted, 4 usage
or parse errors.
"""

from __future__ import annotations

import argparse
import logging
import random
import sys
import time
from typing import List, Optional

from .graphs import Graph, anticomplete_packing
from .hardness import build_hardness_graph, parse_nae
from .instances import (
    Instance,
    ParseError,
    full_mask,
    parse_instance,
    serialize_instance,
)
from .oracle import solve_exact, solve_exact_frugal
from .pipeline import SolveOptions, Verdict, solve

_EXIT = {"colorable": 0, "not-colorable": 1, "not-rp3-free": 2, "aborted": 3}
_STATUS = {
    "colorable": "s COLORABLE",
    "not-colorable": "s NOT_COLORABLE",
    "not-rp3-free": "s NOT_RP3FREE",
    "aborted": "s ABORTED",
}


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        print(f"{self.prog}: error: {message}", file=sys.stderr)
        raise SystemExit(4)


def format_certificate(verdict: Verdict) -> str:
    """Line-oriented certificate: status, then v/w detail lines (1-based)."""
    lines = [_STATUS[verdict.status]]
    if verdict.status == "colorable":
        for v, c in enumerate(verdict.coloring):
            lines.append(f"v {v + 1} {c}")
    elif verdict.status == "not-rp3-free":
        for path in verdict.witness:
            lines.append("w " + " ".join(str(v + 1) for v in path))
    return "\n".join(lines) + "\n"


def _read(path: str) -> str:
    try:
        with open(path, "r", encoding="utf-8") as fh:
            return fh.read()
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        raise SystemExit(4)


def _load_instance(path: str) -> Instance:
    try:
        return parse_instance(_read(path))
    except ParseError as exc:
        print(f"error: {path}: {exc}", file=sys.stderr)
        raise SystemExit(4)


def _cmd_solve(args) -> int:
    inst = _load_instance(args.file)
    if args.trace:
        logging.basicConfig(
            stream=sys.stderr, level=logging.INFO, format="%(message)s"
        )
    opts = SolveOptions(
        r=args.r,
        force=args.force,
        jobs=args.jobs,
        budget=args.budget,
        trace=args.trace,
    )
    verdict = solve(inst, opts)
    if args.force:
        print(
            "note: --force skipped the packing check; a NOT_COLORABLE "
            "verdict is only meaningful for rP3-free inputs",
            file=sys.stderr,
        )
    sys.stdout.write(format_certificate(verdict))
    return _EXIT[verdict.status]


def _cmd_oracle(args) -> int:
    inst = _load_instance(args.file)
    phi = solve_exact_frugal(inst) if args.frugal else solve_exact(inst)
    if phi is None:
        sys.stdout.write("s NOT_COLORABLE\n")
        return 1
    lines = ["s COLORABLE"]
    for v, c in enumerate(phi):
        lines.append(f"v {v + 1} {c}")
    sys.stdout.write("\n".join(lines) + "\n")
    return 0


def _cmd_check_free(args) -> int:
    inst = _load_instance(args.file)
    packing = anticomplete_packing(inst.graph, args.r, args.t)
    if packing is None:
        sys.stdout.write("s FREE\n")
        return 0
    lines = ["s NOT_RP3FREE"]
    for path in packing:
        lines.append("w " + " ".join(str(v + 1) for v in path))
    sys.stdout.write("\n".join(lines) + "\n")
    return 2


def _cmd_gen_hard(args) -> int:
    try:
        nae = parse_nae(_read(args.file))
    except ParseError as exc:
        print(f"error: {args.file}: {exc}", file=sys.stderr)
        return 4
    inst = build_hardness_graph(nae)
    sys.stdout.write(serialize_instance(inst))
    return 0


def random_instance(rng: random.Random, n: int, k: int = 5) -> Instance:
    """Random graph with random nonempty lists; deterministic per rng state."""
    edges = [
        (u, v)
        for u in range(n)
        for v in range(u + 1, n)
        if rng.random() < 0.4
    ]
    lists = []
    for _ in range(n):
        mask = 0
        for c in range(k):
            if rng.random() < 0.7:
                mask |= 1 << c
        lists.append(mask or full_mask(k))
    return Instance(Graph(n, edges), k, tuple(lists))


def _cmd_bench(args) -> int:
    rng = random.Random(args.seed)
    opts = SolveOptions(r=2)
    tally = {"colorable": 0, "not-colorable": 0, "not-rp3-free": 0, "aborted": 0}
    started = time.perf_counter()
    for i in range(args.count):
        inst = random_instance(rng, args.size)
        t0 = time.perf_counter()
        verdict = solve(inst, opts)
        dt = time.perf_counter() - t0
        tally[verdict.status] += 1
        print(
            f"bench {i} {verdict.status} "
            f"nodes={verdict.stats.get('nodes', 0)}"
        )
        print(f"bench {i} took {dt:.3f}s", file=sys.stderr)
    total = time.perf_counter() - started
    print(
        "bench total "
        + " ".join(f"{key}={tally[key]}" for key in sorted(tally))
    )
    print(f"bench total took {total:.3f}s", file=sys.stderr)
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="rp3color")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("solve", help="run the reduction pipeline")
    p.add_argument("--r", type=int, default=2, help="packing parameter")
    p.add_argument("--force", action="store_true", help="skip the packing check")
    p.add_argument("--jobs", type=int, default=1, help="worker processes")
    p.add_argument("--budget", type=int, default=None, help="search node cap")
    p.add_argument("--trace", action="store_true", help="progress on stderr")
    p.add_argument("file")
    p.set_defaults(func=_cmd_solve)

    p = sub.add_parser("oracle", help="exhaustive reference solver")
    p.add_argument("--frugal", action="store_true", help="frugal colorings only")
    p.add_argument("file")
    p.set_defaults(func=_cmd_oracle)

    p = sub.add_parser("check-free", help="search an anticomplete path packing")
    p.add_argument("--r", type=int, required=True, help="number of paths")
    p.add_argument("--t", type=int, required=True, help="path length (vertices)")
    p.add_argument("file")
    p.set_defaults(func=_cmd_check_free)

    p = sub.add_parser("gen-hard", help="formula to gadget instance")
    p.add_argument("file", help="not-all-equal formula file")
    p.set_defaults(func=_cmd_gen_hard)

    p = sub.add_parser("bench", help="seeded random solve sweep")
    p.add_argument("--seed", type=int, required=True)
    p.add_argument("--count", type=int, required=True)
    p.add_argument("--size", type=int, required=True)
    p.set_defaults(func=_cmd_bench)
    return parser


def main(argv: Optional[List[str]] = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except SystemExit:
        raise
    except ParseError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 4
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 4


if __name__ == "__main__":
    sys.exit(main())
