import itertools

import numpy as np
import pytest

from lieboundary.gf import field_of_order, primitive_element
from lieboundary.slcayley.matrices import (
    MatGF,
    batch_keys,
    batch_matmul,
    block_embed,
    commutator,
    gen_A,
    gen_B,
    gen_C,
    transvection,
)


def test_gen_C_gf7():
    C = gen_C(2, 7)
    assert C.entries.tolist() == [[5, 0, 0], [0, 3, 0], [0, 0, 1]]


def test_gen_A_and_B_shapes():
    A = gen_A(3, 5)
    assert A.entries.tolist() == [[1, 1, 0, 0], [0, 1, 0, 0], [0, 0, 1, 0], [0, 0, 0, 1]]
    B = gen_B(3, 5)
    assert B.entries.tolist() == [[0, 0, 0, 4], [1, 0, 0, 0], [0, 1, 0, 0], [0, 0, 1, 0]]
    assert gen_B(2, 5).entries[0, 2] == 1


@pytest.mark.parametrize("q", [2, 3, 4, 5, 7, 8, 9])
def test_generators_have_det_one(q):
    F = field_of_order(q)
    for l in range(1, 5):
        for g in (gen_A(l, q), gen_B(l, q), gen_C(l, q)):
            assert g.det() == F.one


@pytest.mark.parametrize("q", [2, 3, 4, 5, 7, 8, 9])
def test_B_power(q):
    F = field_of_order(q)
    for l in range(1, 6):
        B = gen_B(l, q)
        sign = int(F(-1)) if l % 2 else 1
        assert (B ** (l + 1)).entries.tolist() == (sign * np.eye(l + 1, dtype=int)).tolist()


def test_C_is_identity_iff_q_is_2():
    for q in (2, 3, 4, 5, 7, 8, 9):
        assert gen_C(3, q).is_identity() == (q == 2)
    assert int(primitive_element(field_of_order(2))) == 1


def test_transvection_validation():
    with pytest.raises(ValueError):
        transvection(2, 2, 1, 3, 5)
    with pytest.raises(IndexError):
        transvection(1, 4, 1, 3, 5)
    with pytest.raises(ValueError):
        gen_B(0, 2)


@pytest.mark.parametrize("q", [2, 3, 4, 5])
def test_transvection_algebra_dim3(q):
    F = field_of_order(q)
    n = 3
    elems = list(F.elements())
    for i, j in itertools.permutations(range(1, n + 1), 2):
        for a, b in itertools.product(elems, elems):
            assert transvection(i, j, a, n, F) @ transvection(i, j, b, n, F) == transvection(i, j, a + b, n, F)
    for i, j, k in itertools.permutations(range(1, n + 1), 3):
        for a, b in itertools.product(elems, elems):
            lhs = commutator(transvection(i, j, a, n, F), transvection(j, k, b, n, F))
            assert lhs == transvection(i, k, a * b, n, F)


def test_inverse_and_equality():
    F = field_of_order(9)
    rng = np.random.default_rng(1)
    for _ in range(20):
        while True:
            M = MatGF(F, rng.integers(0, 9, size=(3, 3)))
            if M.det() != F.zero:
                break
        assert (M @ M.inv()).is_identity()
        assert M == MatGF(F, M.entries.copy()) and hash(M) == hash(MatGF(F, M.entries.copy()))
    with pytest.raises(ZeroDivisionError):
        MatGF(F, np.zeros((2, 2), dtype=int)).inv()
    with pytest.raises(ValueError):
        MatGF(F, [[9, 0], [0, 1]])
    assert not gen_A(2, 9).entries.flags.writeable


def test_batch_keys_order_is_lexicographic():
    rng = np.random.default_rng(0)
    X = rng.integers(0, 5, size=(200, 3, 3))
    keys = batch_keys(X, 5)
    order = np.argsort(keys, kind="stable")
    lex = sorted(range(200), key=lambda k: tuple(X[k].reshape(-1)))
    assert [tuple(X[k].reshape(-1)) for k in order] == [tuple(X[k].reshape(-1)) for k in lex]
    # large q^(n^2): falls back to bytes, still order preserving
    Y = rng.integers(0, 9, size=(50, 5, 5))
    kb = batch_keys(Y, 9)
    assert isinstance(kb, list)
    assert sorted(range(50), key=lambda k: kb[k]) == sorted(range(50), key=lambda k: tuple(Y[k].reshape(-1)))


@pytest.mark.parametrize("q", [4, 8, 9])
def test_batch_matmul_extension_field(q):
    F = field_of_order(q)
    rng = np.random.default_rng(q)
    X = rng.integers(0, q, size=(10, 3, 3))
    Y = rng.integers(0, q, size=(3, 3))
    out = batch_matmul(F, X, Y)
    for a in range(10):
        ref = MatGF(F, X[a]) @ MatGF(F, Y)
        slow = [[int(sum((F.from_code(int(X[a, i, k])) * F.from_code(int(Y[k, j])) for k in range(3)), F.zero))
                 for j in range(3)] for i in range(3)]
        assert out[a].tolist() == slow == ref.entries.tolist()


def test_block_embed():
    D = np.arange(8).reshape(2, 2, 2)
    E = block_embed(D)
    assert E.shape == (2, 3, 3)
    assert (E[:, 2, :2] == 0).all() and (E[:, :2, 2] == 0).all() and (E[:, 2, 2] == 1).all()
