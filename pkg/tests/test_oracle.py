"""Dense reference grid: direct-definition examples and box additivity."""

import random

import pytest

from mdseg import DenseGrid, FLOAT, RATIONAL


def test_full_box_update():
    g = DenseGrid([3, 3], FLOAT)
    g.update([(0, 2), (0, 2)], 4.0)
    assert all(g[x, y] == 4.0 for x in range(3) for y in range(3))


def test_overlapping_updates_add():
    g = DenseGrid([4], RATIONAL)
    g.update([(0, 2)], 5)
    g.update([(1, 3)], 7)
    assert [g[i] for i in range(4)] == [5, 12, 12, 7]


def test_row_update():
    g = DenseGrid([2, 2], RATIONAL)
    g.update([(0, 0), (0, 1)], 3)
    assert [[g[x, y] for y in range(2)] for x in range(2)] == [[3, 3], [0, 0]]


def test_query_zeroed():
    g = DenseGrid([5, 5])
    assert g.query([(0, 4), (0, 4)]) == 0


def test_query_counts_cells():
    g = DenseGrid([6, 4], RATIONAL)
    g.update([(0, 5), (0, 3)], 1)
    assert g.query([(1, 3), (0, 2)]) == 3 * 3


def test_query_small_grid():
    g = DenseGrid([2, 2], RATIONAL)
    g.update([(0, 0), (0, 0)], 1)
    g.update([(0, 0), (1, 1)], 2)
    g.update([(1, 1), (0, 0)], 3)
    g.update([(1, 1), (1, 1)], 4)
    assert g.query([(0, 1), (0, 1)]) == 10


def test_three_dimensions():
    g = DenseGrid([3, 3, 3], RATIONAL)
    g.update([(0, 2), (0, 2), (0, 2)], 2)
    assert g.query([(1, 2), (0, 1), (2, 2)]) == 2 * 2 * 1 * 2


def test_invalid_input():
    with pytest.raises(ValueError):
        DenseGrid([])
    with pytest.raises(ValueError):
        DenseGrid([3, 0])
    g = DenseGrid([3, 3])
    for box in ([(0, 2)], [(0, 3), (0, 2)], [(2, 1), (0, 2)], [(-1, 1), (0, 2)]):
        with pytest.raises(ValueError):
            g.update(box, 1)
        with pytest.raises(ValueError):
            g.query(box)


def test_partition_additivity():
    rnd = random.Random(61)
    g = DenseGrid([9, 9], RATIONAL)
    for _ in range(40):
        x1, x2 = sorted(rnd.randrange(9) for _ in range(2))
        y1, y2 = sorted(rnd.randrange(9) for _ in range(2))
        g.update([(x1, x2), (y1, y2)], rnd.randint(-50, 50))
    for _ in range(60):
        x1, x2 = sorted(rnd.randrange(9) for _ in range(2))
        y1, y2 = sorted(rnd.randrange(9) for _ in range(2))
        whole = g.query([(x1, x2), (y1, y2)])
        if x1 == x2:
            continue
        cut = rnd.randrange(x1, x2)
        assert whole == g.query([(x1, cut), (y1, y2)]) + g.query(
            [(cut + 1, x2), (y1, y2)]
        )


def test_float_backend():
    g = DenseGrid([4], FLOAT)
    g.update([(0, 3)], 0.25)
    assert g.query([(1, 2)]) == pytest.approx(0.5)
