"""Two-dimensional range-add / range-sum tree in O(log n * log m) per op.

Layout: an outer tree subdivides the x-range; every outer node owns a full
inner tree over the y-range.  Outer nodes store nothing themselves -- all
mass lives in inner nodes, each of which carries two (value, lazy) channels:

* the *global* channel records updates whose x-range covered the owning outer
  node's whole x-span ("intended" updates).  Global mass is uniform across
  the outer span, so a query that needs only part of that span can read it
  scaled down by ``covered_width / span_width`` ("diluted").
* the *local* channel records the leftover: when an update only partially
  overlaps an outer node's x-span, the update constant is rescaled by
  ``overlap_width / span_width`` and written here ("dispersed"), so the
  channel holds exactly the mass the update contributed inside the span.
  Local mass is not uniform along x and is therefore only read by queries
  that cover the whole span ("complete"), never by diluted reads.

Every update writes its mass both at the outer nodes that exactly tile its
x-range (globally) and at every partially overlapped outer node on the way
down (locally, rescaled).  Every query combines complete reads at the outer
nodes tiling its own x-range with diluted global-only reads at the partially
overlapped nodes above them.  Within an inner tree the usual lazy-propagation
rules apply per channel, with query-side lazies carried as an accumulator so
queries never write.
"""

from __future__ import annotations

import json
from typing import NamedTuple

from .numeric import FLOAT, Scalar, get_backend
from .segtree1d import next_pow2


class Channel(NamedTuple):
    value: Scalar
    lazy: Scalar


class InnerNode(NamedTuple):
    """Snapshot of one inner (y-dimension) node."""

    ylo: int
    yhi: int
    global_channel: Channel
    local_channel: Channel


class OuterNode(NamedTuple):
    """Snapshot of one outer (x-dimension) node; values live in its inner tree."""

    slot: int
    xlo: int
    xhi: int


class Counters(NamedTuple):
    update_visits: int
    query_visits: int


class Tree2D:
    """Range-add / range-sum over an ``n`` x ``m`` grid of zeros.

    All coordinates are 0-based inclusive: ``update(x1, x2, y1, y2, c)`` adds
    ``c`` to every cell with x in [x1, x2] and y in [y1, y2], and
    ``query(x1, x2, y1, y2)`` returns the sum over the same box.  ``c`` may be
    negative or fractional.

    Storage is fully allocated up front: four flat arrays (value and lazy for
    each channel) of ``2*next_pow2(n) * 2*next_pow2(m)`` slots, indexed by
    ``outer_slot * inner_size + inner_slot``.

    Queries only mutate ``query_visits``; callers needing concurrent readers
    on a quiescent tree can ignore or disable the counters.
    """

    def __init__(self, n: int, m: int, backend=FLOAT):
        if n < 1 or m < 1:
            raise ValueError(f"grid dimensions must be >= 1, got {n}x{m}")
        self.n = n
        self.m = m
        self.backend = get_backend(backend)
        self._xsize = 2 * next_pow2(n)
        self._ysize = 2 * next_pow2(m)
        slots = self._xsize * self._ysize
        self.allocated_inner_nodes = slots
        make = self.backend.make_store
        self._gv = make(slots)  # global value
        self._gl = make(slots)  # global lazy
        self._lv = make(slots)  # local value
        self._ll = make(slots)  # local lazy
        self.update_visits = 0
        self.query_visits = 0

    @classmethod
    def from_array(cls, grid, backend=FLOAT) -> "Tree2D":
        """Build a tree equivalent to loading ``grid`` cell by cell.

        Each cell is loaded as a 1x1 range update, so the result obeys every
        invariant an update-built tree does.
        """
        if not grid or not grid[0]:
            raise ValueError("grid must be non-empty")
        m = len(grid[0])
        if any(len(row) != m for row in grid):
            raise ValueError("grid rows must all have the same length")
        tree = cls(len(grid), m, backend=backend)
        for x, row in enumerate(grid):
            for y, cell in enumerate(row):
                tree.update(x, x, y, y, cell)
        return tree

    def counters(self) -> Counters:
        return Counters(self.update_visits, self.query_visits)

    def reset_counters(self) -> Counters:
        out = self.counters()
        self.update_visits = 0
        self.query_visits = 0
        return out

    def _check_box(self, x1, x2, y1, y2) -> None:
        if not (0 <= x1 <= x2 < self.n) or not (0 <= y1 <= y2 < self.m):
            raise ValueError(
                f"box [{x1},{x2}]x[{y1},{y2}] invalid for {self.n}x{self.m} grid"
            )

    def update(self, x1: int, x2: int, y1: int, y2: int, c) -> None:
        """Add ``c`` to every cell of ``[x1,x2] x [y1,y2]``."""
        self._check_box(x1, x2, y1, y2)
        self._update_x(1, 0, self.n - 1, x1, x2, y1, y2, self.backend.coerce(c))

    def query(self, x1: int, x2: int, y1: int, y2: int) -> Scalar:
        """Sum over the box ``[x1,x2] x [y1,y2]``; read-only."""
        self._check_box(x1, x2, y1, y2)
        return self._query_x(1, 0, self.n - 1, x1, x2, y1, y2)

    def point_query(self, x: int, y: int) -> Scalar:
        return self.query(x, x, y, y)

    # -- update recursion ------------------------------------------------

    def _update_x(self, xi, xlo, xhi, x1, x2, y1, y2, c):
        self.update_visits += 1
        if x1 <= xlo and xhi <= x2:
            # whole x-span covered: write the global channel
            self._update_y(xi, xlo, xhi, 1, 0, self.m - 1, True, y1, y2, c)
            return
        if xhi < x1 or x2 < xlo:
            return
        xmid = (xlo + xhi) // 2
        self._update_x(2 * xi, xlo, xmid, x1, x2, y1, y2, c)
        self._update_x(2 * xi + 1, xmid + 1, xhi, x1, x2, y1, y2, c)
        # partial overlap: trim to this span, rescale, write the local channel
        trim = min(x2, xhi) - max(x1, xlo) + 1
        c_local = self.backend.mul_ratio(c, trim, xhi - xlo + 1)
        self._update_y(xi, xlo, xhi, 1, 0, self.m - 1, False, y1, y2, c_local)

    def _update_y(self, xi, xlo, xhi, yi, ylo, yhi, global_ch, y1, y2, c):
        self.update_visits += 1
        idx = xi * self._ysize + yi
        if y1 <= ylo and yhi <= y2:
            size = (xhi - xlo + 1) * (yhi - ylo + 1)
            if global_ch:
                self._gv[idx] += c * size
                self._gl[idx] += c
            else:
                self._lv[idx] += c * size
                self._ll[idx] += c
            return
        if yhi < y1 or y2 < ylo:
            return
        ymid = (ylo + yhi) // 2
        self._update_y(xi, xlo, xhi, 2 * yi, ylo, ymid, global_ch, y1, y2, c)
        self._update_y(xi, xlo, xhi, 2 * yi + 1, ymid + 1, yhi, global_ch, y1, y2, c)
        size = (xhi - xlo + 1) * (yhi - ylo + 1)
        left = xi * self._ysize + 2 * yi
        self._lv[idx] = self._lv[left] + self._lv[left + 1] + self._ll[idx] * size
        self._gv[idx] = self._gv[left] + self._gv[left + 1] + self._gl[idx] * size

    # -- query recursion -------------------------------------------------

    def _query_x(self, xi, xlo, xhi, x1, x2, y1, y2):
        self.query_visits += 1
        if x1 <= xlo and xhi <= x2:
            # complete: both channels, undiluted
            return self._query_y(
                xi, xlo, xhi, 1, 0, self.m - 1, True, xhi - xlo + 1, y1, y2,
                self.backend.zero,
            )
        if xhi < x1 or x2 < xlo:
            return self.backend.zero
        xmid = (xlo + xhi) // 2
        # partial: global channel only, diluted to the trimmed overlap
        trim = min(x2, xhi) - max(x1, xlo) + 1
        part = self._query_y(
            xi, xlo, xhi, 1, 0, self.m - 1, False, trim, y1, y2,
            self.backend.zero,
        )
        return (
            part
            + self._query_x(2 * xi, xlo, xmid, x1, x2, y1, y2)
            + self._query_x(2 * xi + 1, xmid + 1, xhi, x1, x2, y1, y2)
        )

    def _query_y(self, xi, xlo, xhi, yi, ylo, yhi, complete, xcells, y1, y2, lazy):
        # xcells: x-cells the caller attributes to this inner tree -- the
        # full outer span for a complete read, the trimmed overlap otherwise.
        self.query_visits += 1
        idx = xi * self._ysize + yi
        if y1 <= ylo and yhi <= y2:
            if complete:
                size = (xhi - xlo + 1) * (yhi - ylo + 1)
                return self._gv[idx] + self._lv[idx] + lazy * size
            diluted = self.backend.mul_ratio(self._gv[idx], xcells, xhi - xlo + 1)
            return diluted + lazy * (xcells * (yhi - ylo + 1))
        if yhi < y1 or y2 < ylo:
            return self.backend.zero
        ymid = (ylo + yhi) // 2
        if complete:
            lazy = lazy + self._gl[idx] + self._ll[idx]
        else:
            lazy = lazy + self._gl[idx]
        return self._query_y(
            xi, xlo, xhi, 2 * yi, ylo, ymid, complete, xcells, y1, y2, lazy
        ) + self._query_y(
            xi, xlo, xhi, 2 * yi + 1, ymid + 1, yhi, complete, xcells, y1, y2, lazy
        )

    # -- export and inspection -------------------------------------------

    def to_dense(self) -> list:
        """Cell values as an ``n x m`` nested list (one point query per cell)."""
        return [
            [self.query(x, x, y, y) for y in range(self.m)] for x in range(self.n)
        ]

    def snapshot(self) -> dict:
        """JSON-ready snapshot: row-major cells, exact fractions as "p/q"."""
        cells = []
        for row in self.to_dense():
            for v in row:
                if isinstance(v, (int, float)):
                    cells.append(v)
                else:
                    cells.append(f"{v.numerator}/{v.denominator}")
        return {"version": 1, "n": self.n, "m": self.m, "cells": cells}

    def snapshot_json(self) -> str:
        return json.dumps(self.snapshot())

    def outer_nodes(self):
        """Yield every existing outer node, root first."""
        stack = [(1, 0, self.n - 1)]
        while stack:
            xi, xlo, xhi = stack.pop()
            yield OuterNode(xi, xlo, xhi)
            if xlo != xhi:
                xmid = (xlo + xhi) // 2
                stack.append((2 * xi + 1, xmid + 1, xhi))
                stack.append((2 * xi, xlo, xmid))

    def inner_nodes(self, outer: OuterNode):
        """Yield ``(slot, InnerNode)`` for the inner tree of ``outer``."""
        base = outer.slot * self._ysize
        stack = [(1, 0, self.m - 1)]
        while stack:
            yi, ylo, yhi = stack.pop()
            idx = base + yi
            yield yi, InnerNode(
                ylo,
                yhi,
                Channel(self._gv[idx], self._gl[idx]),
                Channel(self._lv[idx], self._ll[idx]),
            )
            if ylo != yhi:
                ymid = (ylo + yhi) // 2
                stack.append((2 * yi + 1, ymid + 1, yhi))
                stack.append((2 * yi, ylo, ymid))
