"""Multidimensional range-add / range-sum trees with exact and float arithmetic."""

from .numeric import FLOAT, RATIONAL, Ratio, Scalar, get_backend, ratio, scale
from .oracle import DenseGrid
from .segtree1d import Node1D, Tree1D, next_pow2
from .segtree2d import Channel, Counters, InnerNode, OuterNode, Tree2D
from .segtreend import MAX_DIMENSIONS, TreeND
from .bench import (
    BenchRecord,
    FitResult,
    ResourceLimitError,
    SplitMix64,
    VerifyReport,
    WorkloadSpec,
    fit_curve,
    read_csv,
    run_bench,
    verify,
    write_csv,
)

__version__ = "0.1.0"

__all__ = [
    "FLOAT",
    "RATIONAL",
    "Ratio",
    "Scalar",
    "get_backend",
    "ratio",
    "scale",
    "DenseGrid",
    "Node1D",
    "Tree1D",
    "next_pow2",
    "Channel",
    "Counters",
    "InnerNode",
    "OuterNode",
    "Tree2D",
    "MAX_DIMENSIONS",
    "TreeND",
    "BenchRecord",
    "FitResult",
    "ResourceLimitError",
    "SplitMix64",
    "VerifyReport",
    "WorkloadSpec",
    "fit_curve",
    "read_csv",
    "run_bench",
    "verify",
    "write_csv",
    "__version__",
]
