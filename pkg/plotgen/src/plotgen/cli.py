"""Command line front end for the chart renderer."""

import argparse
import sys
from pathlib import Path

from .core import METRICS, PlotConfig, render


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="plotgen",
        description="Plot a benchmark CSV: per-op scatter with fitted "
                    "c*(log2 n)^d curves.",
    )
    parser.add_argument("--in", dest="infile", required=True,
                        help="measurement CSV to read")
    parser.add_argument("--metric", required=True, choices=list(METRICS),
                        help="which measured series to plot")
    parser.add_argument("--dim", type=int, required=True, choices=[1, 2, 3],
                        help="exponent d of the fitted (log2 n)^d curve")
    parser.add_argument("--out", required=True,
                        help="output image path (.svg or .png)")
    parser.add_argument("--title", help="chart title (defaults to metric vs n)")
    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    config = PlotConfig(
        input_csv=Path(args.infile),
        output=Path(args.out),
        metric=args.metric,
        dim=args.dim,
        title=args.title,
    )
    try:
        fits = render(config)
    except (ValueError, OSError) as err:
        print(f"plotgen: {err}", file=sys.stderr)
        return 2
    for op in ("update", "query"):
        fit = fits[op]
        print(f"{op}: c={fit.c:.6g} r_squared={fit.r_squared:.6f}")
    print(f"wrote {config.output}")
    return 0


if __name__ == "__main__":
    sys.exit(main())
