import json
from fractions import Fraction

import numpy as np
import pytest

from lieboundary.slcayley.boundary import (
    ResourceCapError,
    boundary_exact,
    build_subset,
    candidate_cosets,
    half_check,
    restricted_boundary,
    sweep_boundary,
)
from lieboundary.slcayley.group import sl_generators
from lieboundary.slcayley.matrices import batch_keys

from .oracles import boundary as oracle_boundary

# |dS| from the brute-force sweep, frozen as regression values
FROZEN = {(1, 2): 2, (1, 3): 5, (2, 2): 12, (2, 3): 96, (3, 2): 336, (2, 4): 240, (2, 5): 600}


@pytest.mark.parametrize("l,q", [(1, 2), (1, 3), (1, 4), (2, 2), (1, 5), (2, 3)])
def test_matches_set_oracle(l, q):
    rep = boundary_exact(l, q, sweep_oracle=True)
    s0, s, ds = oracle_boundary(l, q, sl_generators(l, q).matrices())
    assert (rep.s0, rep.s, rep.boundary) == (s0, s, ds)


@pytest.mark.parametrize("lq,expected", sorted(FROZEN.items()))
def test_frozen_values(lq, expected):
    rep = boundary_exact(*lq, sweep_oracle=True)
    assert rep.boundary == expected == rep.sweep_boundary
    assert rep.passed


def test_ratio_fixtures():
    rep = boundary_exact(3, 2)
    assert rep.ratio == Fraction(2, 3) <= Fraction(2)
    rep = boundary_exact(2, 2)
    assert rep.cosets["S_{l-1} C"] == rep.cosets["S_{l-1} C^-1"] == 0
    assert sum(1 for v in rep.cosets.values() if v) == 4


def test_boundary_disjoint_from_S():
    for l, q in [(2, 2), (2, 3), (3, 2)]:
        sub = build_subset(l, q)
        keys, _ = restricted_boundary(sub, sl_generators(l, q))
        S = set(batch_keys(sub.members(), sub.field.q).tolist())
        assert not S & set(keys.tolist())


def test_structural_membership():
    sub = build_subset(3, 3)
    for i in range(3):
        assert (sub.coset_index(sub.coset(i)) == i).all()
    # S_l = S_0 B^l and S_0 B^-1 are outside S
    assert (sub.coset_index(sub.coset(3)) == -1).all()
    assert (sub.coset_index(sub.coset(-1)) == -1).all()


def test_candidate_cosets_are_cosets():
    sub = build_subset(2, 5)
    for name, X in candidate_cosets(sub).items():
        assert len(X) == len(sub.s0) == len(np.unique(batch_keys(X, 5))), name


def test_half_check():
    assert half_check(3, 2) and 3 * 168 < 20160 // 2
    assert half_check(2, 2) and 2 * 6 < 168 // 2
    assert half_check(4, 2) and 4 * 20160 < 9_999_360 // 2
    for l in range(1, 8):
        for q in (2, 3, 4, 5, 7):
            assert half_check(l, q)


def test_sweep_is_thread_independent():
    sub = build_subset(3, 2)
    gens = sl_generators(3, 2)
    a = sweep_boundary(sub, gens, workers=1, chunk=50)
    b = sweep_boundary(sub, gens, workers=3, chunk=50)
    assert np.array_equal(a, b)
    rj = boundary_exact(3, 2, workers=1).to_json()
    assert rj == boundary_exact(3, 2, workers=4).to_json()


def test_json_shape():
    data = boundary_exact(2, 3).to_json()
    json.dumps(data)
    assert data["ratio"] == {"num": 2, "den": 1}
    assert data["bound"] == {"num": 3, "den": 1}
    assert "runtime_s" not in data
    assert "runtime_s" in boundary_exact(2, 3).to_json(timing=True)


def test_errors():
    with pytest.raises(ValueError):
        boundary_exact(0, 2)
    with pytest.raises(ResourceCapError):
        boundary_exact(3, 3, cap=100)
