"""Classic segment tree over one dimension with deferred range additions.

Nodes live in a flat heap-indexed store (root at slot 1, children of ``i`` at
``2i`` and ``2i+1``).  A range update stops at nodes fully inside the target
range: it bumps the node's value by ``c * width`` and records ``c`` in the
node's lazy slot, meaning "every cell below here still owes ``c``".  Queries
never push lazies down; they carry the sum of the lazies seen on the way down
as an accumulator, which keeps queries read-only.
"""

from __future__ import annotations

from dataclasses import dataclass

from .numeric import FLOAT, Scalar, get_backend


def next_pow2(n: int) -> int:
    return 1 if n <= 1 else 2 ** (n - 1).bit_length()


@dataclass(frozen=True)
class Node1D:
    """Snapshot of one tree node, for inspection and invariant checks."""

    lo: int
    hi: int
    value: Scalar
    lazy: Scalar

    @property
    def leaf(self) -> bool:
        return self.lo == self.hi


class Tree1D:
    """Range-add / range-sum tree over ``n`` cells, all starting at zero.

    Indices are 0-based and ranges are inclusive.  The backend fixes the value
    arithmetic: ``"rational"`` is exact, ``"float"`` is fast.

    ``visit_counter`` counts every recursive node visit performed by updates
    and queries since the last reset; it is the hardware-independent cost
    metric used by the benchmark harness.  The counter is the one piece of
    state queries touch, so disable concurrent readers or ignore the counter
    when sharing a quiescent tree.
    """

    def __init__(self, n: int, backend=FLOAT):
        if n < 1:
            raise ValueError(f"element count must be >= 1, got {n}")
        self.n = n
        self.backend = get_backend(backend)
        self.size = 2 * next_pow2(n)
        self._value = self.backend.make_store(self.size)
        self._lazy = self.backend.make_store(self.size)
        self.visit_counter = 0

    def reset_visit_counter(self) -> int:
        count, self.visit_counter = self.visit_counter, 0
        return count

    def _check_range(self, l: int, r: int) -> None:
        if not (0 <= l <= r < self.n):
            raise ValueError(
                f"range [{l}, {r}] invalid for {self.n} elements"
            )

    def update(self, l: int, r: int, c) -> None:
        """Add ``c`` to every cell in ``[l, r]``."""
        self._check_range(l, r)
        self._update(1, 0, self.n - 1, l, r, self.backend.coerce(c))

    def query(self, l: int, r: int) -> Scalar:
        """Sum of the cells in ``[l, r]``."""
        self._check_range(l, r)
        return self._query(1, 0, self.n - 1, l, r, self.backend.zero)

    def _update(self, i: int, lo: int, hi: int, l: int, r: int, c) -> None:
        self.visit_counter += 1
        if l <= lo and hi <= r:
            self._value[i] += c * (hi - lo + 1)
            self._lazy[i] += c
            return
        if hi < l or r < lo:
            return
        mid = (lo + hi) // 2
        self._update(2 * i, lo, mid, l, r, c)
        self._update(2 * i + 1, mid + 1, hi, l, r, c)
        self._value[i] = (
            self._value[2 * i]
            + self._value[2 * i + 1]
            + self._lazy[i] * (hi - lo + 1)
        )

    def _query(self, i: int, lo: int, hi: int, l: int, r: int, lazy) -> Scalar:
        self.visit_counter += 1
        if l <= lo and hi <= r:
            return self._value[i] + lazy * (hi - lo + 1)
        if hi < l or r < lo:
            return self.backend.zero
        mid = (lo + hi) // 2
        lazy = lazy + self._lazy[i]
        return self._query(2 * i, lo, mid, l, r, lazy) + self._query(
            2 * i + 1, mid + 1, hi, l, r, lazy
        )

    def to_list(self) -> list:
        """Cell values as a plain list (one point query per cell)."""
        return [self.query(i, i) for i in range(self.n)]

    def nodes(self):
        """Yield ``(slot, Node1D)`` for every existing node, root first."""
        stack = [(1, 0, self.n - 1)]
        while stack:
            i, lo, hi = stack.pop()
            yield i, Node1D(lo, hi, self._value[i], self._lazy[i])
            if lo != hi:
                mid = (lo + hi) // 2
                stack.append((2 * i + 1, mid + 1, hi))
                stack.append((2 * i, lo, mid))
