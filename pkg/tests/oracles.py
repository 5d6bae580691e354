"""Slow, independent reference computations in plain Python.

Nothing here reuses the BFS, the structural membership test or the batched
matrix code: matrices are tuples of element codes multiplied with FieldElem
arithmetic.
"""

import itertools

from lieboundary.gf import field_of_order


def _mul(F, X, Y, n):
    out = []
    for i in range(n):
        for j in range(n):
            acc = F.zero
            for k in range(n):
                acc = acc + F.from_code(X[i * n + k]) * F.from_code(Y[k * n + j])
            out.append(int(acc))
    return tuple(out)


def _det(F, X, n):
    if n == 1:
        return F.from_code(X[0])
    total = F.zero
    for j in range(n):
        minor = tuple(X[r * n + c] for r in range(1, n) for c in range(n) if c != j)
        term = F.from_code(X[j]) * _det(F, minor, n - 1)
        total = total + term if j % 2 == 0 else total - term
    return total


def special_linear(n, q):
    """Every n x n matrix over GF(q) with determinant 1, as flat code tuples."""
    F = field_of_order(q)
    return {X for X in itertools.product(range(q), repeat=n * n) if _det(F, X, n) == F.one}


def boundary(l, q, connection):
    """|S|, |dS| with G enumerated by brute force and S built as sets."""
    F = field_of_order(q)
    n = l + 1
    G = special_linear(n, q)
    e = tuple([0] * l + [1])
    s0 = {X for X in G if X[l * n:] == e and tuple(X[r * n + l] for r in range(n)) == e}
    conn = [tuple(int(c) for c in t.reshape(-1)) for t in connection]
    B = conn_B(l, q)
    S, cur = set(), s0
    for _ in range(l):
        S |= cur
        cur = {_mul(F, X, B, n) for X in cur}
    dS = {x for x in G - S if any(_mul(F, x, t, n) in S for t in conn)}
    return len(s0), len(S), len(dS)


def conn_B(l, q):
    F = field_of_order(q)
    n = l + 1
    M = [0] * (n * n)
    for k in range(1, n):
        M[k * n + k - 1] = 1
    M[n - 1] = int(F(-1)) if l % 2 else 1
    return tuple(M)
