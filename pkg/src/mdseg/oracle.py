"""Brute-force dense-array reference for range updates and sums.

This is the semantic ground truth the trees are tested against: updates and
queries are literal nested loops over the cells of a box.  It shares the
value backends with the trees so exact runs compare exactly.  No attention
is paid to performance.
"""

from __future__ import annotations

from itertools import product

from .numeric import RATIONAL, Scalar, get_backend


class DenseGrid:
    """Row-major dense array over ``dims``, all cells starting at zero."""

    def __init__(self, dims, backend=RATIONAL):
        dims = list(dims)
        if not dims or any(d < 1 for d in dims):
            raise ValueError(f"extents must all be >= 1, got {dims}")
        self.dims = dims
        self.backend = get_backend(backend)
        total = 1
        for d in dims:
            total *= d
        self.cells = self.backend.make_store(total)
        # stride of each dimension in the flat row-major store
        self._strides = [1] * len(dims)
        for k in range(len(dims) - 2, -1, -1):
            self._strides[k] = self._strides[k + 1] * dims[k + 1]

    def _check_box(self, box) -> None:
        if len(box) != len(self.dims):
            raise ValueError(
                f"box has {len(box)} ranges for {len(self.dims)} dimensions"
            )
        for (lo, hi), extent in zip(box, self.dims):
            if not (0 <= lo <= hi < extent):
                raise ValueError(f"range [{lo}, {hi}] invalid for extent {extent}")

    def _rows(self, box):
        """Flat offsets of the first cell of every innermost run in ``box``."""
        outer = [range(lo, hi + 1) for lo, hi in box[:-1]]
        for idx in product(*outer):
            yield sum(i * s for i, s in zip(idx, self._strides))

    def update(self, box, c) -> None:
        """Add ``c`` to every cell of ``box`` (list of inclusive ranges)."""
        self._check_box(box)
        c = self.backend.coerce(c)
        lo, hi = box[-1]
        cells = self.cells
        for start in self._rows(box):
            for i in range(start + lo, start + hi + 1):
                cells[i] += c

    def query(self, box) -> Scalar:
        """Sum of every cell of ``box``."""
        self._check_box(box)
        lo, hi = box[-1]
        total = self.backend.zero
        cells = self.cells
        for start in self._rows(box):
            total += sum(cells[start + lo : start + hi + 1])
        return total

    def __getitem__(self, idx) -> Scalar:
        if isinstance(idx, int):
            idx = (idx,)
        return self.cells[sum(i * s for i, s in zip(idx, self._strides))]
