"""Chart rendering for benchmark CSV tables.

Input is the measurement table ``n,op,metric,mean,std,samples`` with op in
{update, query} and metric in {time_ns, visited_nodes}.  For the chosen
metric the module scatters the per-size means for both op types, fits
c * (log2 n)^d to each series by least squares through the origin, and
overlays the fitted curves with coefficient and R^2 in the legend.

SVG output is byte-stable: element ids are salted with a fixed string, text
stays text instead of being outlined into paths, and no timestamp is
embedded, so rendering the same CSV twice gives identical files.
"""

import csv
import math
from dataclasses import dataclass
from pathlib import Path
from typing import Iterable, NamedTuple, Optional, Sequence, Tuple, Union

import matplotlib

matplotlib.use("Agg")

import matplotlib.pyplot as plt
from matplotlib.ticker import NullFormatter, ScalarFormatter

EXPECTED_HEADER = ["n", "op", "metric", "mean", "std", "samples"]
METRICS = ("time_ns", "visited_nodes")
OPS = ("update", "query")

_AXIS_LABEL = {
    "time_ns": "mean wall time per op (ns)",
    "visited_nodes": "mean visited nodes per op",
}
_STYLE = {"update": ("tab:blue", "o"), "query": ("tab:orange", "s")}

_RC = {"svg.hashsalt": "plotgen", "svg.fonttype": "none"}


class CsvFormatError(ValueError):
    """The input file does not follow the measurement table layout."""


class Row(NamedTuple):
    n: int
    op: str
    metric: str
    mean: float
    std: float
    samples: int


class Fit(NamedTuple):
    c: float
    r_squared: float


@dataclass(frozen=True)
class PlotConfig:
    input_csv: Path
    output: Path
    metric: str
    dim: int
    title: Optional[str] = None


def read_rows(path) -> list:
    """Parse a measurement CSV into Row tuples.

    Raises CsvFormatError for an empty file, missing columns (named in the
    message), a malformed row, or a header with no data under it.
    """
    path = Path(path)
    with path.open(newline="", encoding="utf-8") as fh:
        reader = csv.DictReader(fh)
        if reader.fieldnames is None:
            raise CsvFormatError(f"{path} is empty")
        missing = [h for h in EXPECTED_HEADER if h not in reader.fieldnames]
        if missing:
            raise CsvFormatError(f"missing column(s): {', '.join(missing)}")
        rows = []
        for lineno, raw in enumerate(reader, start=2):
            try:
                rows.append(Row(
                    n=int(raw["n"]),
                    op=raw["op"],
                    metric=raw["metric"],
                    mean=float(raw["mean"]),
                    std=float(raw["std"]),
                    samples=int(raw["samples"]),
                ))
            except (TypeError, ValueError) as err:
                raise CsvFormatError(f"malformed row at line {lineno}: {err}") from err
    if not rows:
        raise CsvFormatError(f"no data rows in {path}")
    return rows


def fit_log_power(points: Iterable[Tuple[Union[int, float], float]], d: int) -> Fit:
    """Least-squares fit of y = c * (log2 n)^d over (n, y) pairs.

    Needs at least 4 distinct sizes.  R^2 is clamped to [0, 1]; a constant
    series scores 1.0 only when the fit reproduces it exactly.
    """
    if d < 1:
        raise ValueError(f"dimension must be >= 1, got {d}")
    pts = [(int(n), float(y)) for n, y in points]
    if len({n for n, _ in pts}) < 4:
        raise ValueError("fit requires at least 4 distinct sizes")
    gs = [math.log2(n) ** d for n, _ in pts]
    ys = [y for _, y in pts]
    denom = sum(g * g for g in gs)
    if denom == 0.0:
        raise ValueError("all sizes are 1; nothing to fit")
    c = sum(y * g for y, g in zip(ys, gs)) / denom
    ss_res = sum((y - c * g) ** 2 for y, g in zip(ys, gs))
    mean_y = sum(ys) / len(ys)
    ss_tot = sum((y - mean_y) ** 2 for y in ys)
    if ss_tot == 0.0:
        r_squared = 1.0 if ss_res == 0.0 else 0.0
    else:
        r_squared = 1.0 - ss_res / ss_tot
    return Fit(c, min(1.0, max(0.0, r_squared)))


def _series(rows: Sequence[Row], metric: str) -> dict:
    """Per-op sorted (n, mean) points for one metric; validates coverage."""
    present = {r.metric for r in rows}
    if metric not in present:
        raise ValueError(
            f"metric {metric!r} not present in the CSV (has: {', '.join(sorted(present))})"
        )
    series = {}
    for op in OPS:
        points = sorted((r.n, r.mean) for r in rows if r.op == op and r.metric == metric)
        distinct = len({n for n, _ in points})
        if distinct < 4:
            raise ValueError(
                f"need at least 4 distinct sizes for op {op!r}, got {distinct}"
            )
        series[op] = points
    return series


def _curve_xs(lo: int, hi: int, steps: int = 200) -> list:
    ratio = hi / lo
    return [lo * ratio ** (i / (steps - 1)) for i in range(steps)]


def render(config: PlotConfig) -> dict:
    """Draw the chart for one metric and write it to config.output.

    Returns {op: Fit} with exactly the coefficients and R^2 shown in the
    legend.  The output format follows the file suffix (.svg or .png).
    """
    if config.dim not in (1, 2, 3):
        raise ValueError(f"dim must be 1, 2, or 3, got {config.dim}")
    if config.metric not in METRICS:
        raise ValueError(
            f"metric must be one of {', '.join(METRICS)}, got {config.metric!r}"
        )
    suffix = Path(config.output).suffix.lower()
    if suffix not in (".svg", ".png"):
        raise ValueError(f"output must end in .svg or .png, got {config.output}")

    rows = read_rows(config.input_csv)
    series = _series(rows, config.metric)
    fits = {op: fit_log_power(points, config.dim) for op, points in series.items()}

    with matplotlib.rc_context(_RC):
        fig, ax = plt.subplots(figsize=(7.0, 4.5), dpi=100)
        try:
            sizes = sorted({n for points in series.values() for n, _ in points})
            for op in OPS:
                color, marker = _STYLE[op]
                xs = [n for n, _ in series[op]]
                ys = [y for _, y in series[op]]
                ax.scatter(xs, ys, color=color, marker=marker, zorder=3,
                           label=f"{op} measured")
                fit = fits[op]
                cx = _curve_xs(min(xs), max(xs))
                cy = [fit.c * math.log2(x) ** config.dim for x in cx]
                ax.plot(cx, cy, color=color, linestyle="--", zorder=2,
                        label=(f"{op} fit: c={fit.c:.4g}, "
                               f"R^2={fit.r_squared:.4f}"))
            ax.set_xscale("log", base=2)
            ax.set_xticks(sizes)
            ax.xaxis.set_major_formatter(ScalarFormatter())
            ax.xaxis.set_minor_formatter(NullFormatter())
            ax.set_xlabel("n")
            ax.set_ylabel(_AXIS_LABEL[config.metric])
            ax.set_title(config.title or f"{config.metric} vs n")
            ax.grid(True, alpha=0.3)
            ax.legend()
            fig.tight_layout()
            if suffix == ".svg":
                fig.savefig(config.output, metadata={"Date": None})
            else:
                fig.savefig(config.output)
        finally:
            plt.close(fig)
    return fits
