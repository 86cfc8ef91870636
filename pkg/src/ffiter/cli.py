"""``ffiter`` command line: build, eval, gen, stats, inspect."""

from __future__ import annotations

import argparse
import sys
import time

from . import io as ffio
from .codec import build_code, describe_code, iterate
from .core import FFIterError, descent_bound
from .experiments import DEFAULT_SEED, emit_csv, emit_detail_csv, run_experiment
from .generators import (
    anti_chain_function,
    chain_function,
    random_function,
    random_permutation,
    staircase_function,
)
from .oracle import oracle_iterate

EXIT_VALIDATION = 2
EXIT_IO = 3
EXIT_MISMATCH = 4


class CheckMismatch(FFIterError):
    pass


def _open_out(path):
    return sys.stdout if path in (None, "-") else open(path, "w", newline="", encoding="ascii")


def cmd_build(args) -> int:
    table = ffio.read_table(args.input)
    t0 = time.perf_counter()
    code = build_code(table, args.strategy, args.index)
    elapsed = (time.perf_counter() - t0) * 1000.0
    ffio.write_code(code, args.output)
    print(f"components {code.n_components}")
    print(f"bound {descent_bound(code.n)}")
    print(f"elapsed_ms {elapsed:.3f}")
    return 0


def cmd_eval(args) -> int:
    code = ffio.read_code(args.code, args.index)
    trace = [] if args.trace else None
    res = iterate(code, args.x, args.m, trace=trace)
    for i, r in trace or ():
        print(f"descent component={i} r={r}", file=sys.stderr)
    print(f"{res.value} {res.descents} {res.table_reads}")
    if args.check:
        table = ffio.read_table(args.check)
        if table.n != code.n:
            raise CheckMismatch(f"table has n={table.n}, code has n={code.n}")
        expected = oracle_iterate(table, args.x, args.m)
        if expected != res.value:
            raise CheckMismatch(f"code gives {res.value}, oracle gives {expected}")
    return 0


def cmd_gen(args) -> int:
    family = args.family
    if family == "random":
        table = random_function(args.n, args.seed)
    elif family == "perm":
        table = random_permutation(args.n, args.seed).table
    elif family == "chain":
        table = chain_function(args.n)
    elif family == "antichain":
        table = anti_chain_function(args.n)
    else:
        table = staircase_function(args.n)[0]
    out = _open_out(args.output)
    try:
        ffio.write_table(table, out)
    finally:
        if out is not sys.stdout:
            out.close()
    return 0


def cmd_stats(args) -> int:
    rows = run_experiment(args.min_exp, args.max_exp, args.samples, args.seed, args.strategy, args.jobs)
    to_stdout = args.out in (None, "-")
    report = sys.stderr if to_stdout else sys.stdout
    for r in rows:
        print(
            f"n={r.n} max={r.max_descents} avg={float(r.avg_descents):.4f} "
            f"log2n={r.log2n:.0f} ratio={r.ratio:.3f} bound={r.bound}",
            file=report,
        )
    out = _open_out(args.out)
    try:
        emit_csv(rows, out)
    finally:
        if out is not sys.stdout:
            out.close()
    if args.detail:
        emit_detail_csv(rows, args.detail)
    return 0


def cmd_inspect(args) -> int:
    info = describe_code(ffio.read_code(args.code))
    print(f"n {info['n']}")
    print(f"kind {info['kind']}")
    print(f"components {info['components']}")
    print("structure " + " ".join(f"{size}x{count}" for size, count in info["structure_histogram"].items()))
    print(f"rho_orbits {info['rho_orbits']}")
    print(f"descent_orbits {info['descent_orbits']}")
    print("depths " + " ".join(map(str, info["depths"])))
    print(f"max_depth {info['max_depth']}")
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="ffiter", description="Fast-forward iteration of lookup-table functions.")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("build", help="code a table file")
    p.add_argument("--input", required=True)
    p.add_argument("--output", required=True)
    p.add_argument("--strategy", choices=["ordered", "greedy", "cycle"], default="greedy")
    p.add_argument("--index", choices=["dense", "bsearch"], default="dense")
    p.set_defaults(func=cmd_build)

    p = sub.add_parser("eval", help="evaluate f^m(x) from a code file")
    p.add_argument("--code", required=True)
    p.add_argument("--x", type=int, required=True)
    p.add_argument("--m", type=int, required=True)
    p.add_argument("--check", metavar="TABLE", help="compare against a brute-force walk of TABLE")
    p.add_argument("--trace", action="store_true", help="print each descent to stderr")
    p.add_argument("--index", choices=["dense", "bsearch"], default="dense")
    p.set_defaults(func=cmd_eval)

    p = sub.add_parser("gen", help="write a table from a generator family")
    p.add_argument("--family", choices=["random", "perm", "chain", "antichain", "staircase"], required=True)
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--seed", type=int, default=DEFAULT_SEED)
    p.add_argument("--output", default="-")
    p.set_defaults(func=cmd_gen)

    p = sub.add_parser("stats", help="descent statistics for random functions")
    p.add_argument("--min-exp", type=int, default=2)
    p.add_argument("--max-exp", type=int, default=14)
    p.add_argument("--samples", type=int, default=100)
    p.add_argument("--seed", type=int, default=DEFAULT_SEED)
    p.add_argument("--strategy", choices=["ordered", "greedy", "cycle"], default="greedy")
    p.add_argument("--jobs", type=int, default=None, help="worker processes (default $FFITER_THREADS or 1)")
    p.add_argument("--out", default="-")
    p.add_argument("--detail", help="also write per-sample rows to this file")
    p.set_defaults(func=cmd_stats)

    p = sub.add_parser("inspect", help="summarize a code file")
    p.add_argument("--code", required=True)
    p.set_defaults(func=cmd_inspect)
    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except CheckMismatch as e:
        print(f"CheckMismatch: {e}", file=sys.stderr)
        return EXIT_MISMATCH
    except (FFIterError, ValueError) as e:
        print(f"{type(e).__name__}: {e}", file=sys.stderr)
        return EXIT_VALIDATION
    except OSError as e:
        print(f"{type(e).__name__}: {e}", file=sys.stderr)
        return EXIT_IO


if __name__ == "__main__":
    sys.exit(main())
