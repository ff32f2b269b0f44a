"""Range-add / range-sum tree generalized to ``d`` dimensions (1 <= d <= 4).

Trees nest by dimension: a node subdividing dimension ``k`` owns a whole tree
over dimension ``k+1``, and only the innermost nodes store values.  The
two-channel scheme of the 2D tree generalizes to one channel per subset of
the ``d-1`` outer dimensions: an update descends every dimension in turn and
accumulates a bitmask with bit ``k`` set when it covered the node's whole
span along outer dimension ``k`` (clear when it only partially overlapped and
was rescaled by ``overlap/span`` there); the innermost terminal adds its
constant to the channel named by that mask.  For ``d = 2`` this degenerates
exactly to the global ({bit set}) / local ({bit clear}) channel pair.

A query marks each outer dimension complete or partial on the way down.  A
terminal may read a channel only if the channel's mask has bit ``k`` set for
every dimension the query is partial in -- mass in such channels is uniform
along those dimensions, so scaling it by the product of ``overlap/span``
ratios over the partial dimensions yields exactly the overlap's share.
Channels failing the test hold non-uniform mass whose share is recovered by
the query's recursion into that dimension's children instead.  Lazy values of
the readable channels are carried down as an accumulator, keeping queries
read-only.
"""

from __future__ import annotations

from .numeric import FLOAT, Scalar, get_backend
from .segtree1d import next_pow2
from .segtree2d import Counters

MAX_DIMENSIONS = 4


class TreeND:
    """Range-add / range-sum over a zero grid with extents ``dims``.

    Boxes are sequences of ``(lo, hi)`` inclusive pairs, one per dimension.
    Storage is one flat slot block per channel, fully allocated at build
    time: ``prod(2 * next_pow2(extent))`` slots and ``2**(d-1)`` channels.
    """

    def __init__(self, dims, backend=FLOAT):
        dims = list(dims)
        if not dims:
            raise ValueError("dims must not be empty")
        if len(dims) > MAX_DIMENSIONS:
            raise ValueError(
                f"at most {MAX_DIMENSIONS} dimensions supported, got {len(dims)}"
            )
        if any(d < 1 for d in dims):
            raise ValueError(f"extents must all be >= 1, got {dims}")
        self.dims = dims
        self.d = len(dims)
        self.backend = get_backend(backend)
        self._tsizes = [2 * next_pow2(d) for d in dims]
        slots = 1
        for t in self._tsizes:
            slots *= t
        self.allocated_nodes = slots
        self.channels = 2 ** (self.d - 1)
        make = self.backend.make_store
        self._values = [make(slots) for _ in range(self.channels)]
        self._lazies = [make(slots) for _ in range(self.channels)]
        # channels readable for a given partial-dimension mask
        self._readable = [
            [ch for ch in range(self.channels) if ch & pmask == pmask]
            for pmask in range(self.channels)
        ]
        self.update_visits = 0
        self.query_visits = 0

    def counters(self) -> Counters:
        return Counters(self.update_visits, self.query_visits)

    def reset_counters(self) -> Counters:
        out = self.counters()
        self.update_visits = 0
        self.query_visits = 0
        return out

    def _check_box(self, box) -> None:
        if len(box) != self.d:
            raise ValueError(f"box has {len(box)} ranges for {self.d} dimensions")
        for (lo, hi), extent in zip(box, self.dims):
            if not (0 <= lo <= hi < extent):
                raise ValueError(f"range [{lo}, {hi}] invalid for extent {extent}")

    def update(self, box, c) -> None:
        """Add ``c`` to every cell of ``box``."""
        self._check_box(box)
        box = [tuple(r) for r in box]
        self._update_inward(0, 0, box, 0, 1, self.backend.coerce(c))

    def query(self, box) -> Scalar:
        """Sum over ``box``; read-only."""
        self._check_box(box)
        box = [tuple(r) for r in box]
        return self._query_inward(0, 0, box, 0, 1, 1, 1)

    # -- update ----------------------------------------------------------

    def _update_inward(self, k, base, box, mask, cross, c):
        if k == self.d - 1:
            lo, hi = box[k]
            self._update_inner(base, 1, 0, self.dims[k] - 1, lo, hi, mask, cross, c)
        else:
            self._update_outer(k, base, 1, 0, self.dims[k] - 1, box, mask, cross, c)

    def _update_outer(self, k, base, i, lo, hi, box, mask, cross, c):
        self.update_visits += 1
        blo, bhi = box[k]
        if blo <= lo and hi <= bhi:
            self._update_inward(
                k + 1, (base + i) * self._tsizes[k + 1], box,
                mask | (1 << k), cross * (hi - lo + 1), c,
            )
            return
        if hi < blo or bhi < lo:
            return
        # only children intersecting the box are descended into; a disjoint
        # subtree holds none of the box's mass
        mid = (lo + hi) // 2
        if blo <= mid:
            self._update_outer(k, base, 2 * i, lo, mid, box, mask, cross, c)
        if bhi > mid:
            self._update_outer(k, base, 2 * i + 1, mid + 1, hi, box, mask, cross, c)
        trim = min(bhi, hi) - max(blo, lo) + 1
        c_local = self.backend.mul_ratio(c, trim, hi - lo + 1)
        self._update_inward(
            k + 1, (base + i) * self._tsizes[k + 1], box,
            mask, cross * (hi - lo + 1), c_local,
        )

    def _update_inner(self, base, i, lo, hi, blo, bhi, mask, cross, c):
        self.update_visits += 1
        idx = base + i
        values = self._values[mask]
        if blo <= lo and hi <= bhi:
            values[idx] += c * (cross * (hi - lo + 1))
            self._lazies[mask][idx] += c
            return
        if hi < blo or bhi < lo:
            return
        mid = (lo + hi) // 2
        if blo <= mid:
            self._update_inner(base, 2 * i, lo, mid, blo, bhi, mask, cross, c)
        if bhi > mid:
            self._update_inner(base, 2 * i + 1, mid + 1, hi, blo, bhi, mask, cross, c)
        left = base + 2 * i
        values[idx] = (
            values[left]
            + values[left + 1]
            + self._lazies[mask][idx] * (cross * (hi - lo + 1))
        )

    # -- query -----------------------------------------------------------

    def _query_inward(self, k, base, box, pmask, dil_num, dil_den, covered):
        if k == self.d - 1:
            lo, hi = box[k]
            return self._query_inner(
                base, 1, 0, self.dims[k] - 1, lo, hi,
                self._readable[pmask], dil_num, dil_den, dil_num * covered,
                self.backend.zero,
            )
        return self._query_outer(
            k, base, 1, 0, self.dims[k] - 1, box, pmask, dil_num, dil_den, covered
        )

    def _query_outer(self, k, base, i, lo, hi, box, pmask, dil_num, dil_den, covered):
        self.query_visits += 1
        blo, bhi = box[k]
        if blo <= lo and hi <= bhi:
            return self._query_inward(
                k + 1, (base + i) * self._tsizes[k + 1], box,
                pmask, dil_num, dil_den, covered * (hi - lo + 1),
            )
        if hi < blo or bhi < lo:
            return self.backend.zero
        mid = (lo + hi) // 2
        trim = min(bhi, hi) - max(blo, lo) + 1
        total = self._query_inward(
            k + 1, (base + i) * self._tsizes[k + 1], box,
            pmask | (1 << k), dil_num * trim, dil_den * (hi - lo + 1), covered,
        )
        if blo <= mid:
            total = total + self._query_outer(
                k, base, 2 * i, lo, mid, box, pmask, dil_num, dil_den, covered
            )
        if bhi > mid:
            total = total + self._query_outer(
                k, base, 2 * i + 1, mid + 1, hi, box, pmask, dil_num, dil_den, covered
            )
        return total

    def _query_inner(self, base, i, lo, hi, blo, bhi, chans, dil_num, dil_den, cells, lazy):
        # cells: cell count one lazy unit stands for across the outer
        # dimensions -- overlap widths where partial, node spans where not.
        self.query_visits += 1
        idx = base + i
        if blo <= lo and hi <= bhi:
            total = self.backend.zero
            for ch in chans:
                total += self._values[ch][idx]
            if dil_num != dil_den:
                total = self.backend.mul_ratio(total, dil_num, dil_den)
            return total + lazy * (cells * (hi - lo + 1))
        if hi < blo or bhi < lo:
            return self.backend.zero
        mid = (lo + hi) // 2
        for ch in chans:
            lazy = lazy + self._lazies[ch][idx]
        total = self.backend.zero
        if blo <= mid:
            total = self._query_inner(
                base, 2 * i, lo, mid, blo, bhi, chans, dil_num, dil_den, cells, lazy
            )
        if bhi > mid:
            total = total + self._query_inner(
                base, 2 * i + 1, mid + 1, hi, blo, bhi, chans, dil_num, dil_den, cells, lazy
            )
        return total

    # -- inspection ------------------------------------------------------

    def _inner_bases(self):
        """Yield (base, cross) for every chain of outer-dimension nodes."""

        def walk(k, base, cross):
            if k == self.d - 1:
                yield base, cross
                return
            stack = [(1, 0, self.dims[k] - 1)]
            while stack:
                i, lo, hi = stack.pop()
                yield from walk(
                    k + 1, (base + i) * self._tsizes[k + 1], cross * (hi - lo + 1)
                )
                if lo != hi:
                    mid = (lo + hi) // 2
                    stack.append((2 * i + 1, mid + 1, hi))
                    stack.append((2 * i, lo, mid))

        yield from walk(0, 0, 1)
