"""Command-line front end: `mdseg bench | verify | fit`.

Exit codes: 0 success, 1 verification failure, 2 usage error, 3 resource
error (a workload that would blow past the memory cap is refused before
anything is allocated).
"""

from __future__ import annotations

import argparse
import sys

from .bench import (
    DEFAULT_SIZES,
    ResourceLimitError,
    WorkloadSpec,
    fit_curve,
    read_csv,
    run_bench,
    verify,
    write_csv,
)

_SERIES_ORDER = [
    ("update", "time_ns"),
    ("update", "visited_nodes"),
    ("query", "time_ns"),
    ("query", "visited_nodes"),
]


def _sizes_arg(text: str):
    try:
        sizes = [int(part) for part in text.split(",") if part.strip()]
    except ValueError:
        raise argparse.ArgumentTypeError(f"bad size list: {text!r}")
    if not sizes:
        raise argparse.ArgumentTypeError("size list is empty")
    return sizes


def _cmd_bench(args) -> int:
    spec = WorkloadSpec(
        dim=args.dim,
        sizes=args.sizes,
        updates=args.updates,
        queries_per_update=args.queries_per_update,
        seed=args.seed,
        value_range=(-100, 100),
        backend=args.backend,
    )
    records = run_bench(spec)
    if args.metric == "steps":
        records = [r for r in records if r.metric == "visited_nodes"]
    elif args.metric == "time":
        records = [r for r in records if r.metric == "time_ns"]
    write_csv(records, args.out)
    print(f"wrote {len(records)} records to {args.out}")
    return 0


def _cmd_verify(args) -> int:
    report = verify(args.dim, args.sizes, args.ops, args.seed)
    print(report.summary())
    return 0 if report.ok else 1


def _cmd_fit(args) -> int:
    records = read_csv(args.infile)
    if not records:
        raise ValueError(f"{args.infile}: no records to fit")
    for op, metric in _SERIES_ORDER:
        series = [r for r in records if r.op == op and r.metric == metric]
        if not series:
            continue
        result = fit_curve(series, args.dim)
        print(f"{op} {metric}: c={result.c:.6g} r_squared={result.r_squared:.6f}")
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="mdseg",
        description="Benchmark, verify and fit the range-sum trees.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p_bench = sub.add_parser("bench", help="run a seeded workload, write CSV")
    p_bench.add_argument("--dim", type=int, choices=(1, 2, 3), required=True)
    p_bench.add_argument(
        "--sizes", type=_sizes_arg, default=list(DEFAULT_SIZES),
        help="comma-separated grid sizes (default %(default)s)",
    )
    p_bench.add_argument("--updates", type=int, default=100)
    p_bench.add_argument("--queries-per-update", type=int, default=100)
    p_bench.add_argument("--seed", type=int, default=0)
    p_bench.add_argument(
        "--backend", choices=("rational", "float"), default="float"
    )
    p_bench.add_argument(
        "--metric", choices=("time", "steps", "both"), default="both",
        help="steps keeps visited-node rows, time keeps wall-time rows",
    )
    p_bench.add_argument("--out", required=True, help="output CSV path")
    p_bench.set_defaults(func=_cmd_bench)

    p_verify = sub.add_parser(
        "verify", help="replay a seeded op stream against the dense oracle"
    )
    p_verify.add_argument("--dim", type=int, choices=(1, 2, 3), default=2)
    p_verify.add_argument("--sizes", type=_sizes_arg, default=[8, 16, 32])
    p_verify.add_argument("--ops", type=int, default=1000)
    p_verify.add_argument("--seed", type=int, default=0)
    p_verify.set_defaults(func=_cmd_verify)

    p_fit = sub.add_parser("fit", help="fit c*(log2 n)^d to CSV series")
    p_fit.add_argument("--in", dest="infile", required=True)
    p_fit.add_argument("--dim", type=int, required=True)
    p_fit.set_defaults(func=_cmd_fit)

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except ResourceLimitError as exc:
        print(f"mdseg: resource limit: {exc}", file=sys.stderr)
        return 3
    except (ValueError, OSError) as exc:
        print(f"mdseg: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
