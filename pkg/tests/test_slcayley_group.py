import numpy as np
import pytest

from lieboundary.gf import field_of_order
from lieboundary.slcayley.group import (
    bfs_enumerate,
    check_generation,
    det_spot_check,
    psl_order,
    sl_generators,
    sl_order,
    tabulated_psl_order,
)
from lieboundary.slcayley.matrices import batch_keys

from .oracles import special_linear


def test_order_formula():
    assert sl_order(2, 2) == 6
    assert sl_order(2, 3) == 24
    assert sl_order(3, 2) == 168
    assert sl_order(3, 3) == 5616
    assert sl_order(4, 2) == 20160
    assert sl_order(5, 2) == 9_999_360
    assert psl_order(2, 5) == 60
    assert tabulated_psl_order(3, 2) != psl_order(3, 2)


@pytest.mark.parametrize("n,q", [(2, 2), (2, 3), (2, 4), (2, 5), (3, 2)])
def test_bfs_equals_brute_force_group(n, q):
    enum = bfs_enumerate(sl_generators(n - 1, q))
    assert enum.conclusive
    got = {tuple(int(c) for c in X.reshape(-1)) for X in enum.elements}
    assert got == special_linear(n, q)


@pytest.mark.parametrize("l,q,order", [(1, 2, 6), (1, 3, 24), (2, 2, 168), (2, 3, 5616), (3, 2, 20160),
                                       (1, 4, 60), (1, 5, 120), (2, 4, 60480)])
def test_generation(l, q, order):
    rep = check_generation(l, q)
    assert rep.order == order == rep.expected and rep.match


def test_bfs_order_is_canonical():
    enum = bfs_enumerate(sl_generators(2, 3))
    keys = enum.keys
    start = 0
    for size in enum.levels:
        lvl = keys[start: start + size]
        assert (np.diff(lvl) > 0).all()
        start += size
    assert start == enum.order
    assert enum.elements[0].tolist() == np.eye(3, dtype=int).tolist()
    again = bfs_enumerate(sl_generators(2, 3))
    assert np.array_equal(enum.elements, again.elements)


def test_bfs_levels_are_distances():
    """Level k holds exactly the elements at word length k (checked on SL(3,2))."""
    gens = sl_generators(2, 2)
    enum = bfs_enumerate(gens)
    dist = {enum.elements[0].tobytes(): 0}
    frontier = [enum.elements[0]]
    T = gens.matrices()
    while frontier:
        nxt = []
        for X in frontier:
            for t in T:
                Y = (X @ t) % 2
                if Y.tobytes() not in dist:
                    dist[Y.tobytes()] = dist[X.tobytes()] + 1
                    nxt.append(Y)
        frontier = nxt
    counts = np.bincount(list(dist.values()))
    assert counts.tolist() == enum.levels


def test_cap_is_flagged():
    enum = bfs_enumerate(sl_generators(2, 3), cap=1000)
    assert not enum.conclusive and enum.order == 1000
    rep = check_generation(2, 3, cap=1000)
    assert not rep.match and not rep.conclusive


def test_bytes_keys_path():
    # q^(n^2) = 9^25 overflows int64, so this exercises the bytes branch
    enum = bfs_enumerate(sl_generators(4, 9), cap=2000)
    assert isinstance(enum.keys, list) and enum.order == 2000
    idx = enum.index_of(enum.elements[[5, 17, 1999]])
    assert idx.tolist() == [5, 17, 1999]


def test_index_of_and_det():
    enum = bfs_enumerate(sl_generators(2, 4))
    sel = np.array([0, 3, 999, enum.order - 1])
    assert enum.index_of(enum.elements[sel]).tolist() == sel.tolist()
    assert det_spot_check(field_of_order(4), enum.elements)
    with pytest.raises(KeyError):
        enum.index_of(np.zeros((1, 3, 3), dtype=np.int64))


@pytest.mark.parametrize("q,degree,names", [
    (2, 3, ["A", "B", "B^-1"]),
    (3, 5, ["A", "A^-1", "B", "B^-1", "C"]),
    (4, 5, ["A", "B", "B^-1", "C", "C^-1"]),
    (8, 5, ["A", "B", "B^-1", "C", "C^-1"]),
    (5, 6, ["A", "A^-1", "B", "B^-1", "C", "C^-1"]),
])
def test_connection_sets(q, degree, names):
    for l in (2, 3, 4):
        g = sl_generators(l, q)
        assert g.degree == degree and g.names() == names
        assert g.is_inverse_closed()
        assert not any(m.is_identity() for _, m in g.connection)
        keys = batch_keys(g.matrices(), q)
        assert len(set(np.asarray(keys).tolist())) == degree


def test_l1_q2_connection():
    g = sl_generators(1, 2)
    assert g.names() == ["A", "B"] and g.degree == 2
