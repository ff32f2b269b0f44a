"""Benchmark CSV plotting: scatter per op type plus fitted log-power curves."""

from .core import (
    CsvFormatError,
    EXPECTED_HEADER,
    Fit,
    METRICS,
    OPS,
    PlotConfig,
    Row,
    fit_log_power,
    read_rows,
    render,
)

__version__ = "0.1.0"

__all__ = [
    "CsvFormatError",
    "EXPECTED_HEADER",
    "Fit",
    "METRICS",
    "OPS",
    "PlotConfig",
    "Row",
    "fit_log_power",
    "read_rows",
    "render",
    "__version__",
]
