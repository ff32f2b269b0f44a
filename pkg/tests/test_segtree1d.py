"""One-dimensional tree: pinned examples, oracle scripts, structural bounds."""

import math
import random

import pytest
from hypothesis import given, settings, strategies as st

from mdseg import DenseGrid, RATIONAL, Tree1D, next_pow2
from mdseg.bench import SplitMix64


def test_zero_initialized():
    t = Tree1D(6, RATIONAL)
    assert t.query(0, 5) == 0
    assert t.to_list() == [0] * 6


def test_single_leaf():
    t = Tree1D(1, RATIONAL)
    t.update(0, 0, 7)
    assert t.query(0, 0) == 7


def test_uniform_update():
    t = Tree1D(5, RATIONAL)
    t.update(0, 4, 3)
    assert t.query(1, 3) == 9


def test_two_cells():
    t = Tree1D(8, RATIONAL)
    t.update(3, 4, 1)
    assert t.query(0, 7) == 2


def test_cancellation():
    t = Tree1D(8, RATIONAL)
    t.update(0, 7, -2)
    t.update(0, 7, 2)
    assert t.query(2, 5) == 0


def test_full_range_update_value():
    t = Tree1D(9, RATIONAL)
    t.update(0, 8, 4)
    assert t.query(2, 6) == 5 * 4


def test_invalid_construction():
    with pytest.raises(ValueError):
        Tree1D(0)
    with pytest.raises(ValueError):
        Tree1D(-3)


@pytest.mark.parametrize("l,r", [(-1, 2), (2, 1), (0, 5), (5, 5)])
def test_invalid_ranges(l, r):
    t = Tree1D(5)
    with pytest.raises(ValueError):
        t.update(l, r, 1)
    with pytest.raises(ValueError):
        t.query(l, r)


def test_random_script_matches_oracle():
    rnd = random.Random(160)
    t = Tree1D(16, RATIONAL)
    g = DenseGrid([16], RATIONAL)
    for _ in range(200):
        l, r = sorted(rnd.randrange(16) for _ in range(2))
        if rnd.random() < 0.5:
            c = rnd.randint(-100, 100)
            t.update(l, r, c)
            g.update([(l, r)], c)
        else:
            assert t.query(l, r) == g.query([(l, r)])


def test_node_invariant_after_ops():
    # internal nodes satisfy value = left + right + lazy * width
    t = Tree1D(11, RATIONAL)
    rnd = random.Random(3)
    for _ in range(40):
        l, r = sorted(rnd.randrange(11) for _ in range(2))
        t.update(l, r, rnd.randint(-9, 9))
    nodes = dict(t.nodes())
    for slot, node in nodes.items():
        if node.leaf:
            continue
        width = node.hi - node.lo + 1
        left, right = nodes[2 * slot], nodes[2 * slot + 1]
        assert node.value == left.value + right.value + node.lazy * width


def test_storage_bound():
    for n in (1, 2, 3, 5, 17, 100, 1000):
        t = Tree1D(n)
        assert t.size == 2 * next_pow2(n)
        assert len(t._value) == t.size


def test_queries_are_read_only():
    t = Tree1D(10, RATIONAL)
    rnd = random.Random(4)
    for _ in range(20):
        l, r = sorted(rnd.randrange(10) for _ in range(2))
        t.update(l, r, rnd.randint(-5, 5))
    before = (list(t._value), list(t._lazy))
    for _ in range(50):
        l, r = sorted(rnd.randrange(10) for _ in range(2))
        t.query(l, r)
    assert (list(t._value), list(t._lazy)) == before


def test_visit_counter_reset():
    t = Tree1D(8)
    assert t.visit_counter == 0
    t.update(0, 7, 1)
    first = t.visit_counter
    assert first >= 1
    t.query(0, 7)
    total = t.visit_counter
    assert total > first
    assert t.reset_visit_counter() == total
    assert t.visit_counter == 0


def test_visits_within_log_bound():
    # per-op visits stay under 4*(ceil(log2 n)+1) across sizes up to 4096
    for n in (1, 2, 3, 5, 17, 63, 64, 100, 511, 1000, 2048, 4095, 4096):
        t = Tree1D(n)
        bound = 4 * (math.ceil(math.log2(n)) + 1) if n > 1 else 4
        rng = SplitMix64(n)
        ops = [tuple(sorted((rng.randrange(n), rng.randrange(n)))) for _ in range(300)]
        if n <= 64:
            ops += [(l, r) for l in range(n) for r in range(l, n)]
        for l, r in ops:
            t.reset_visit_counter()
            t.update(l, r, 1.0)
            assert t.visit_counter <= bound
            t.reset_visit_counter()
            t.query(l, r)
            assert t.visit_counter <= bound


@settings(deadline=None, max_examples=60)
@given(
    n=st.integers(1, 48),
    data=st.data(),
)
def test_update_linearity(n, data):
    ranges = st.tuples(st.integers(0, n - 1), st.integers(0, n - 1)).map(
        lambda p: (min(p), max(p))
    )
    consts = st.integers(-50, 50)
    split = Tree1D(n, RATIONAL)
    joined = Tree1D(n, RATIONAL)
    for _ in range(data.draw(st.integers(1, 5))):
        l, r = data.draw(ranges)
        a, b = data.draw(consts), data.draw(consts)
        split.update(l, r, a)
        split.update(l, r, b)
        joined.update(l, r, a + b)
    assert split.to_list() == joined.to_list()


@settings(deadline=None, max_examples=60)
@given(n=st.integers(1, 48), data=st.data())
def test_oracle_equivalence_property(n, data):
    t = Tree1D(n, RATIONAL)
    g = DenseGrid([n], RATIONAL)
    for _ in range(data.draw(st.integers(1, 12))):
        l = data.draw(st.integers(0, n - 1))
        r = data.draw(st.integers(l, n - 1))
        if data.draw(st.booleans()):
            c = data.draw(st.integers(-100, 100))
            t.update(l, r, c)
            g.update([(l, r)], c)
        else:
            assert t.query(l, r) == g.query([(l, r)])
    l = data.draw(st.integers(0, n - 1))
    r = data.draw(st.integers(l, n - 1))
    assert t.query(l, r) == g.query([(l, r)])
