import math
from fractions import Fraction

import numpy as np
import pytest

from lieboundary import spectral
from lieboundary.gf import field_of_order
from lieboundary.slcayley.boundary import boundary_exact
from lieboundary.slcayley.export import cayley_graph
from lieboundary.slcayley.group import sl_generators
from lieboundary.spectral import (
    Graph,
    SpectralError,
    adjacency_apply,
    cheeger_consistency,
    complete_graph,
    cycle_graph,
    from_cayley,
    lambda2,
)

from .oracles import _mul, special_linear

SL32_LAMBDA2 = 2.879960832109035


@pytest.fixture(scope="module")
def sl32():
    return from_cayley(cayley_graph(2, 2))


@pytest.mark.parametrize("n", [5, 6, 17, 50, 101])
@pytest.mark.parametrize("mode", ["dense", "iter", "lanczos"])
def test_cycle(n, mode):
    rep = lambda2(cycle_graph(n), mode)
    assert rep.lambda2 == pytest.approx(2 * math.cos(2 * math.pi / n), abs=1e-9)


@pytest.mark.parametrize("m", [3, 4, 7, 12])
@pytest.mark.parametrize("mode", ["dense", "iter"])
def test_complete(m, mode):
    rep = lambda2(complete_graph(m), mode)
    assert rep.lambda2 == pytest.approx(-1, abs=1e-9)
    assert rep.gap == pytest.approx(m, abs=1e-9)


def test_sl32_against_independent_adjacency():
    """Adjacency built from the brute-force group and plain tuple products."""
    F = field_of_order(2)
    G = sorted(special_linear(3, 2))
    index = {X: i for i, X in enumerate(G)}
    conn = [tuple(int(c) for c in t.reshape(-1)) for t in sl_generators(2, 2).matrices()]
    A = np.zeros((len(G), len(G)))
    for X in G:
        for t in conn:
            A[index[X], index[_mul(F, X, t, 3)]] += 1
    ev = np.linalg.eigvalsh(A)
    assert ev[-2] == pytest.approx(SL32_LAMBDA2, abs=1e-12)


def test_sl32_frozen(sl32):
    for mode in spectral.MODES:
        rep = lambda2(sl32, mode)
        assert rep.lambda2 == pytest.approx(SL32_LAMBDA2, abs=1e-9)
        assert rep.lambda2 < rep.d


def test_adjacency_apply_examples(sl32):
    g = sl32
    assert np.array_equal(adjacency_apply(g, np.ones(g.n)), 3 * np.ones(g.n))
    e = np.zeros(g.n)
    e[7] = 1
    # (A e_7)[u] counts the neighbours of u equal to 7; symmetric, so = nbrs of 7
    assert set(np.flatnonzero(adjacency_apply(g, e))) == set(g.nbr[7])
    rng = np.random.default_rng(0)
    u, v = rng.standard_normal(g.n), rng.standard_normal(g.n)
    assert np.dot(adjacency_apply(g, u), v) == pytest.approx(np.dot(u, adjacency_apply(g, v)))
    with pytest.raises(SpectralError):
        adjacency_apply(g, np.ones(g.n + 1))


def test_adjacency_apply_thread_independent():
    g = from_cayley(cayley_graph(2, 3))
    X = np.random.default_rng(1).standard_normal((g.n, 4))
    assert np.array_equal(adjacency_apply(g, X, workers=1), adjacency_apply(g, X, workers=3))


def test_graph_properties(sl32):
    assert sl32.is_symmetric() and sl32.is_connected()
    assert Graph(np.array([[1], [0], [3], [2]])).is_connected() is False


@pytest.mark.parametrize("l,q", [(1, 3), (1, 5), (2, 2), (1, 7), (2, 3)])
def test_iter_agrees_with_reference(l, q):
    g = from_cayley(cayley_graph(l, q))
    ref = lambda2(g, "dense" if g.n <= spectral.DENSE_MAX else "lanczos")
    it = lambda2(g, "iter")
    assert it.converged and it.residual <= 1e-6
    assert abs(it.lambda2 - ref.lambda2) <= 1e-6 * g.d


def test_iter_deterministic():
    g = from_cayley(cayley_graph(2, 3))
    a, b = lambda2(g, "iter", seed=5), lambda2(g, "iter", seed=5)
    assert a.lambda2 == b.lambda2 and a.iterations == b.iterations


def test_iteration_cap_flag():
    rep = lambda2(cycle_graph(400), "iter", cap=1, block=2)
    assert not rep.converged


def test_mode_limits():
    with pytest.raises(SpectralError):
        lambda2(cycle_graph(spectral.DENSE_MAX + 1), "dense")
    with pytest.raises(SpectralError):
        lambda2(cycle_graph(5), "power")


def test_cheeger_on_sl32(sl32):
    sp = lambda2(sl32, "dense")
    b = boundary_exact(2, 2, sweep_oracle=False)
    assert cheeger_consistency(sp, b)
    assert sp.h_upper == Fraction(1)
    assert sp.to_json()["h_upper"] == {"num": 1, "den": 1}


def test_cheeger_mismatch(sl32):
    sp = lambda2(sl32, "dense")
    with pytest.raises(SpectralError):
        cheeger_consistency(sp, boundary_exact(2, 3, sweep_oracle=False))


def test_cheeger_synthetic_disconnected_subset():
    """A set made of two far-apart arcs of a long cycle: the inequality still holds."""
    n = 200
    g = cycle_graph(n)
    sp = lambda2(g, "dense")

    class Cut:
        degree, group_order = 2, n
        ratio = Fraction(4, 40)  # two arcs of 20 vertices, 2 boundary vertices each

    assert cheeger_consistency(sp, Cut)
