"""Benchmark and verification harness for the range-sum trees.

Workloads are seeded and portable: the RNG is splitmix64 (Steele et al.,
"Fast splittable pseudorandom number generators"), chosen because it is five
lines of arithmetic that any language can reproduce, so a seed printed in a
report pins the exact operation stream.  Every range is drawn by sampling two
independent uniform endpoints per dimension and sorting them; every update
constant is a uniform integer from the workload's value range.  Bounded draws
use plain modulo -- the bias at grid-sized bounds is far below 2^-50 and
irrelevant for workload generation.

Per operation the harness records wall time and the number of tree nodes the
recursion visited.  Visited nodes is the metric the acceptance checks use;
timing is kept for plots but is noisy on shared machines.

CSV layout (UTF-8, comma-separated, '.' decimal point, header row)::

    n,op,metric,mean,std,samples

with op in {update, query} and metric in {time_ns, visited_nodes}.
"""

from __future__ import annotations

import csv
import math
import statistics
import time
from dataclasses import dataclass, field
from typing import Callable, Iterable, Optional, Sequence, Union

from .numeric import get_backend
from .oracle import DenseGrid
from .segtree1d import Tree1D, next_pow2
from .segtree2d import Tree2D
from .segtreend import TreeND

DEFAULT_SIZES = [16, 32, 64, 128, 256, 512, 1024]
DEFAULT_MEMORY_CAP = 1 << 30  # bytes; estimate checked before any allocation
VERIFY_MAX_EXTENT = 64  # oracle cost grows with the dense grid

CSV_HEADER = ["n", "op", "metric", "mean", "std", "samples"]


class ResourceLimitError(Exception):
    """A workload would allocate more tree storage than the configured cap."""

    def __init__(self, requested_bytes: int, cap_bytes: int, detail: str):
        super().__init__(
            f"{detail}: needs ~{requested_bytes} bytes, cap is {cap_bytes}"
        )
        self.requested_bytes = requested_bytes
        self.cap_bytes = cap_bytes


class SplitMix64:
    """splitmix64 stream: state advances by the 64-bit golden gamma and the
    output mixes with two fixed multipliers.  Identical on every platform."""

    _MASK = (1 << 64) - 1

    def __init__(self, seed: int):
        self.state = seed & self._MASK

    def next_u64(self) -> int:
        self.state = (self.state + 0x9E3779B97F4A7C15) & self._MASK
        z = self.state
        z = ((z ^ (z >> 30)) * 0xBF58476D1CE4E5B9) & self._MASK
        z = ((z ^ (z >> 27)) * 0x94D049BB133111EB) & self._MASK
        return z ^ (z >> 31)

    def randrange(self, bound: int) -> int:
        if bound <= 0:
            raise ValueError(f"bound must be positive, got {bound}")
        return self.next_u64() % bound

    def randint(self, lo: int, hi: int) -> int:
        """Uniform integer in [lo, hi], both ends inclusive."""
        if lo > hi:
            raise ValueError(f"empty interval [{lo}, {hi}]")
        return lo + self.randrange(hi - lo + 1)


@dataclass
class WorkloadSpec:
    """Shape of one benchmark run: square grids of each listed size, and per
    size `updates` rounds of one update followed by `queries_per_update`
    queries."""

    dim: int
    sizes: list = field(default_factory=lambda: list(DEFAULT_SIZES))
    updates: int = 100
    queries_per_update: int = 100
    seed: int = 0
    value_range: tuple = (-100, 100)
    backend: str = "float"


@dataclass(frozen=True)
class BenchRecord:
    n: int
    op: str
    metric: str
    mean: float
    std: float
    samples: int


@dataclass(frozen=True)
class FitResult:
    c: float
    r_squared: float


@dataclass(frozen=True)
class Divergence:
    size: int
    op_index: int
    box: tuple
    expected: object
    actual: object


@dataclass
class VerifyReport:
    ok: bool
    dim: int
    backend: str
    sizes: list
    ops_per_size: int
    queries_checked: int
    divergence: Optional[Divergence] = None

    def summary(self) -> str:
        head = (
            f"dim={self.dim} backend={self.backend} sizes={self.sizes} "
            f"ops/size={self.ops_per_size} queries checked={self.queries_checked}"
        )
        if self.ok:
            return f"verify PASS: {head}"
        d = self.divergence
        return (
            f"verify FAIL: {head}\n"
            f"  first divergence at size={d.size} op #{d.op_index} box={d.box}\n"
            f"  expected {d.expected!r}, got {d.actual!r}"
        )


def _validate_spec(spec: WorkloadSpec) -> None:
    if spec.dim not in (1, 2, 3):
        raise ValueError(f"dim must be 1, 2 or 3, got {spec.dim}")
    if not spec.sizes:
        raise ValueError("sizes must not be empty")
    if any(n < 1 for n in spec.sizes):
        raise ValueError(f"sizes must all be >= 1, got {spec.sizes}")
    if spec.updates < 1 or spec.queries_per_update < 1:
        raise ValueError("updates and queries_per_update must be >= 1")
    lo, hi = spec.value_range
    if lo > hi:
        raise ValueError(f"empty value range [{lo}, {hi}]")


def estimate_tree_bytes(dim: int, n: int) -> int:
    """Lower-bound storage estimate for a square size-n tree: slot count
    times two stores per channel times 8 bytes per slot."""
    slots = (2 * next_pow2(n)) ** dim
    channels = 2 ** (dim - 1)
    return slots * 2 * channels * 8


class _TreeHandle:
    """Box-shaped facade over the per-dimension tree classes, plus a single
    monotone visit count so the harness can take per-op deltas."""

    def __init__(self, dim: int, n: int, backend):
        self.dim = dim
        if dim == 1:
            self.tree = Tree1D(n, backend)
        elif dim == 2:
            self.tree = Tree2D(n, n, backend)
        else:
            self.tree = TreeND([n] * dim, backend)

    def update(self, box, c) -> None:
        if self.dim == 1:
            self.tree.update(box[0][0], box[0][1], c)
        elif self.dim == 2:
            (x1, x2), (y1, y2) = box
            self.tree.update(x1, x2, y1, y2, c)
        else:
            self.tree.update(box, c)

    def query(self, box):
        if self.dim == 1:
            return self.tree.query(box[0][0], box[0][1])
        if self.dim == 2:
            (x1, x2), (y1, y2) = box
            return self.tree.query(x1, x2, y1, y2)
        return self.tree.query(box)

    def visits(self) -> int:
        if self.dim == 1:
            return self.tree.visit_counter
        counters = self.tree.counters()
        return counters.update_visits + counters.query_visits


def _draw_box(rng: SplitMix64, dim: int, n: int) -> tuple:
    box = []
    for _ in range(dim):
        a = rng.randrange(n)
        b = rng.randrange(n)
        box.append((a, b) if a <= b else (b, a))
    return tuple(box)


def _mean_std(samples: Sequence[float]) -> tuple:
    if len(samples) == 1:
        return float(samples[0]), 0.0
    return statistics.fmean(samples), statistics.pstdev(samples)


def run_bench(
    spec: WorkloadSpec, memory_cap_bytes: int = DEFAULT_MEMORY_CAP
) -> list:
    """Run the workload and return one record per (size, op, metric).

    Deterministic given the seed: the op stream per size depends only on
    (seed, position of the size in the list), so two runs of the same spec
    produce identical visited-node rows.  Timing rows vary run to run.
    """
    _validate_spec(spec)
    backend = get_backend(spec.backend)
    for n in spec.sizes:
        need = estimate_tree_bytes(spec.dim, n)
        if need > memory_cap_bytes:
            raise ResourceLimitError(
                need, memory_cap_bytes, f"size {n} at dim {spec.dim}"
            )

    master = SplitMix64(spec.seed)
    size_seeds = [master.next_u64() for _ in spec.sizes]
    lo, hi = spec.value_range

    records = []
    for n, size_seed in zip(spec.sizes, size_seeds):
        handle = _TreeHandle(spec.dim, n, backend)
        rng = SplitMix64(size_seed)
        upd_times, upd_visits = [], []
        qry_times, qry_visits = [], []
        for _ in range(spec.updates):
            box = _draw_box(rng, spec.dim, n)
            c = rng.randint(lo, hi)
            v0 = handle.visits()
            t0 = time.perf_counter_ns()
            handle.update(box, c)
            t1 = time.perf_counter_ns()
            upd_times.append(t1 - t0)
            upd_visits.append(handle.visits() - v0)
            for _ in range(spec.queries_per_update):
                box = _draw_box(rng, spec.dim, n)
                v0 = handle.visits()
                t0 = time.perf_counter_ns()
                handle.query(box)
                t1 = time.perf_counter_ns()
                qry_times.append(t1 - t0)
                qry_visits.append(handle.visits() - v0)
        for op, metric, samples in (
            ("update", "time_ns", upd_times),
            ("update", "visited_nodes", upd_visits),
            ("query", "time_ns", qry_times),
            ("query", "visited_nodes", qry_visits),
        ):
            mean, std = _mean_std(samples)
            records.append(BenchRecord(n, op, metric, mean, std, len(samples)))
    return records


def fit_curve(records: Iterable, d: int) -> FitResult:
    """Least-squares fit of mean = c * (log2 n)^d over the given series.

    Accepts BenchRecord instances or plain (n, mean) pairs; requires at
    least 4 distinct sizes.
    """
    if d < 1:
        raise ValueError(f"dimension must be >= 1, got {d}")
    points = []
    for r in records:
        if isinstance(r, BenchRecord):
            points.append((r.n, r.mean))
        else:
            n, y = r
            points.append((int(n), float(y)))
    if len({n for n, _ in points}) < 4:
        raise ValueError("fit requires at least 4 distinct sizes")
    gs = [math.log2(n) ** d for n, _ in points]
    ys = [y for _, y in points]
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
    return FitResult(c, min(1.0, max(0.0, r_squared)))


def verify(
    dim: int,
    sizes: Sequence[int],
    ops: int,
    seed: int,
    backend: Union[str, object] = "rational",
    tree_factory: Optional[Callable] = None,
) -> VerifyReport:
    """Replay a seeded 50/50 update/query stream against the dense grid.

    Every query result is compared; the report carries the first divergence
    (op index, box, expected, actual) when one is found.  `tree_factory`
    swaps in an alternative tree builder with the _TreeHandle interface,
    which the test suite uses to prove broken trees are caught.
    """
    if dim not in (1, 2, 3):
        raise ValueError(f"dim must be 1, 2 or 3, got {dim}")
    sizes = list(sizes)
    if not sizes:
        raise ValueError("sizes must not be empty")
    if any(n < 1 for n in sizes):
        raise ValueError(f"sizes must all be >= 1, got {sizes}")
    if any(n > VERIFY_MAX_EXTENT for n in sizes):
        raise ValueError(
            f"verify sizes are capped at {VERIFY_MAX_EXTENT} per dimension"
        )
    if ops < 1:
        raise ValueError(f"ops must be >= 1, got {ops}")
    be = get_backend(backend)
    if tree_factory is None:
        tree_factory = lambda d, n, b: _TreeHandle(d, n, b)

    master = SplitMix64(seed)
    size_seeds = [master.next_u64() for _ in sizes]
    checked = 0
    for n, size_seed in zip(sizes, size_seeds):
        handle = tree_factory(dim, n, be)
        grid = DenseGrid([n] * dim, be)
        rng = SplitMix64(size_seed)
        for op_index in range(ops):
            box = _draw_box(rng, dim, n)
            if rng.next_u64() & 1:
                c = rng.randint(-100, 100)
                handle.update(box, c)
                grid.update(list(box), c)
            else:
                expected = grid.query(list(box))
                actual = handle.query(box)
                checked += 1
                if not be.allclose(actual, expected):
                    return VerifyReport(
                        False, dim, be.name, sizes, ops, checked,
                        Divergence(n, op_index, box, expected, actual),
                    )
    return VerifyReport(True, dim, be.name, sizes, ops, checked)


def write_csv(records: Iterable, path) -> None:
    """Write records in the fixed column order; floats keep full precision."""
    with open(path, "w", newline="", encoding="utf-8") as fh:
        writer = csv.writer(fh)
        writer.writerow(CSV_HEADER)
        for r in records:
            writer.writerow(
                [r.n, r.op, r.metric, repr(float(r.mean)), repr(float(r.std)), r.samples]
            )


def read_csv(path) -> list:
    """Parse a bench CSV back into records, insisting on the exact header."""
    with open(path, newline="", encoding="utf-8") as fh:
        reader = csv.reader(fh)
        try:
            header = next(reader)
        except StopIteration:
            raise ValueError(f"{path}: empty file, expected header {CSV_HEADER}")
        if header != CSV_HEADER:
            raise ValueError(
                f"{path}: bad header {header}, expected {CSV_HEADER}"
            )
        records = []
        for row in reader:
            if not row:
                continue
            if len(row) != len(CSV_HEADER):
                raise ValueError(f"{path}: malformed row {row}")
            n, op, metric, mean, std, samples = row
            records.append(
                BenchRecord(int(n), op, metric, float(mean), float(std), int(samples))
            )
    return records
