"""Second adjacency eigenvalue of regular graphs given as neighbour tables.

Three routes compute the same number:

``dense``
    ``scipy.linalg.eigvalsh`` on the assembled adjacency matrix.  Exact to
    solver precision, limited to small graphs.
``iter``
    Matrix-free block orthogonal iteration on A + dI with the constant
    vector deflated explicitly and Chebyshev filtering.
``lanczos``
    ``scipy.sparse.linalg.eigsh`` on the sparse adjacency matrix, used as an
    independent reference where the dense route does not fit in memory.
"""

from __future__ import annotations

import math
import os
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass

import numpy as np
import scipy.linalg
import scipy.sparse
import scipy.sparse.linalg

DENSE_MAX = 5_000
ITER_MAX = 10_000_000
ITER_CAP = 100_000
REL_TOL = 1e-6
CHEEGER_SLACK = 1e-9
CLUSTER_WIDTH = 1e-3
MODES = ("dense", "iter", "lanczos")


class SpectralError(ValueError):
    pass


@dataclass
class Graph:
    """A d-regular graph: row u of ``nbr`` lists the neighbours of u."""

    nbr: np.ndarray
    name: str = "graph"

    def __post_init__(self):
        self.nbr = np.ascontiguousarray(self.nbr, dtype=np.int64)
        if self.nbr.ndim != 2:
            raise SpectralError("neighbour table must be 2-dimensional")

    @property
    def n(self) -> int:
        return self.nbr.shape[0]

    @property
    def d(self) -> int:
        return self.nbr.shape[1]

    def is_symmetric(self) -> bool:
        """Every directed edge u -> v has the matching v -> u (with multiplicity)."""
        u = np.repeat(np.arange(self.n), self.d)
        v = self.nbr.reshape(-1)
        fwd = np.sort(u * self.n + v)
        back = np.sort(v * self.n + u)
        return bool(np.array_equal(fwd, back))

    def is_connected(self) -> bool:
        return scipy.sparse.csgraph.connected_components(self.sparse(), directed=False)[0] == 1

    def sparse(self) -> scipy.sparse.csr_matrix:
        n, d = self.n, self.d
        rows = np.repeat(np.arange(n), d)
        return scipy.sparse.csr_matrix((np.ones(n * d), (rows, self.nbr.reshape(-1))), shape=(n, n))

    def dense(self) -> np.ndarray:
        A = np.zeros((self.n, self.n))
        np.add.at(A, (np.repeat(np.arange(self.n), self.d), self.nbr.reshape(-1)), 1.0)
        return A


def from_cayley(g) -> Graph:
    """Wrap a :class:`~lieboundary.slcayley.export.CayleyGraph`."""
    return Graph(g.nbr, f"SL({g.l + 1},{g.q})")


def cycle_graph(n: int) -> Graph:
    i = np.arange(n)
    return Graph(np.stack([(i + 1) % n, (i - 1) % n], axis=1), f"C{n}")


def complete_graph(m: int) -> Graph:
    i = np.arange(m)
    nbr = np.stack([(i + k) % m for k in range(1, m)], axis=1)
    return Graph(nbr, f"K{m}")


def _workers(workers: int | None) -> int:
    if workers:
        return workers
    env = os.environ.get("LIEBOUNDARY_WORKERS")
    return max(1, int(env)) if env else 1


def adjacency_apply(graph: Graph, v: np.ndarray, workers: int | None = None) -> np.ndarray:
    """(Av)[u] = sum over the neighbours w of u of v[w].

    ``v`` may be a vector or an (n, k) block.  Rows are split across threads;
    each row is summed in the fixed column order of the table, so the result
    does not depend on the worker count.
    """
    v = np.asarray(v, dtype=float)
    if v.shape[0] != graph.n:
        raise SpectralError(f"vector length {v.shape[0]} != vertex count {graph.n}")
    nbr = graph.nbr

    def rows(lo, hi):
        blk = nbr[lo:hi]
        acc = v[blk[:, 0]].copy()
        for j in range(1, graph.d):
            acc += v[blk[:, j]]
        return acc

    w = _workers(workers)
    if w == 1 or graph.n < 4096:
        return rows(0, graph.n)
    bounds = np.linspace(0, graph.n, w + 1).astype(int)
    out = np.empty_like(v)
    with ThreadPoolExecutor(w) as pool:
        parts = pool.map(lambda k: rows(bounds[k], bounds[k + 1]), range(w))
        for k, part in enumerate(parts):
            out[bounds[k]: bounds[k + 1]] = part
    return out


@dataclass
class SpectralReport:
    n: int
    d: int
    lambda2: float
    method: str
    residual: float
    converged: bool = True
    iterations: int = 0
    h_upper: object = None  # Fraction from a BoundaryReport, if attached

    @property
    def gap(self) -> float:
        return self.d - self.lambda2

    @property
    def cheeger_lower(self) -> float:
        return self.gap / 2

    def to_json(self) -> dict:
        out = {
            "n": self.n,
            "d": self.d,
            "lambda2": self.lambda2,
            "gap": self.gap,
            "cheeger_lower": self.cheeger_lower,
            "method": self.method,
            "residual": self.residual,
            "converged": self.converged,
            "iterations": self.iterations,
        }
        if self.h_upper is not None:
            out["h_upper"] = {"num": self.h_upper.numerator, "den": self.h_upper.denominator}
        return out


def _lambda2_dense(g: Graph) -> SpectralReport:
    if g.n > DENSE_MAX:
        raise SpectralError(f"dense mode limited to n <= {DENSE_MAX}, got {g.n}")
    ev = scipy.linalg.eigvalsh(g.dense())
    return SpectralReport(g.n, g.d, float(ev[-2]), "dense", 0.0)


def _lambda2_lanczos(g: Graph, tol: float) -> SpectralReport:
    A = g.sparse()
    v0 = np.random.default_rng(0).standard_normal(g.n)
    vals, vecs = scipy.sparse.linalg.eigsh(A, k=2, which="LA", v0=v0, tol=tol * 1e-3)
    x = vecs[:, 0]
    res = np.linalg.norm(A @ x - vals[0] * x) / g.d
    return SpectralReport(g.n, g.d, float(vals[0]), "lanczos", float(res))


def _deflate(V: np.ndarray) -> np.ndarray:
    return V - V.mean(axis=0, keepdims=True)


def _orthonormalize(V: np.ndarray) -> np.ndarray:
    Q, _ = np.linalg.qr(_deflate(V))
    return _deflate(Q)


def _lambda2_iter(g: Graph, tol: float, cap: int, seed: int, block: int, degree: int,
                  workers: int | None) -> SpectralReport:
    """Chebyshev-filtered orthogonal iteration on the complement of 1.

    The shifted operator A + dI has spectrum in [0, 2d]; each sweep applies a
    Chebyshev polynomial that damps [0, cut] (``cut`` = largest unwanted Ritz
    value) and amplifies everything above it, then re-orthogonalises against
    the constant vector and performs a Rayleigh-Ritz step.
    """
    n, d = g.n, g.d
    if n > ITER_MAX:
        raise SpectralError(f"iterative mode limited to n <= {ITER_MAX}, got {n}")
    k = max(1, min(block, n - 1))
    rng = np.random.default_rng(seed)
    V = _orthonormalize(rng.standard_normal((n, k)))

    def op(X):
        return adjacency_apply(g, X, workers) + d * X

    lo = 0.0
    theta = np.zeros(k)
    res = math.inf
    it = 0
    while it < cap:
        # Rayleigh-Ritz on span(V)
        AV = op(V)
        H = V.T @ AV
        theta, Y = np.linalg.eigh((H + H.T) / 2)
        theta, Y = theta[::-1], Y[:, ::-1]
        V, AV = V @ Y, AV @ Y
        r = AV[:, 0] - theta[0] * V[:, 0]
        res = float(np.linalg.norm(r)) / d
        if res <= tol:
            break
        # A cluster of Ritz values filling the block means the top eigenspace
        # may not fit; without a gap below it the filter cannot separate it.
        cluster = int(np.sum(theta >= theta[0] - CLUSTER_WIDTH * d))
        if 2 * cluster > V.shape[1] and V.shape[1] < n - 1:
            extra = min(V.shape[1], n - 1 - V.shape[1])
            V = _orthonormalize(np.hstack([V, rng.standard_normal((n, extra))]))
            continue
        cut = max(theta[-1], lo)
        V = _orthonormalize(_chebyshev(op, V, degree, lo, cut))
        it += degree
    return SpectralReport(n, d, float(theta[0] - d), "iter", res, res <= tol, it)


def _chebyshev(op, X, m, a, b):
    """p_m(op) X, where p_m is the degree-m Chebyshev polynomial of [a, b]."""
    e = (b - a) / 2
    c = (b + a) / 2
    if e <= 0:
        return op(X)
    Y0 = X
    Y1 = (op(X) - c * X) / e
    for _ in range(2, m + 1):
        Y2 = 2 * (op(Y1) - c * Y1) / e - Y0
        Y0, Y1 = Y1, Y2
        # rescale to keep the block well inside float range
        s = np.abs(Y1).max()
        if s > 1e100:
            Y0, Y1 = Y0 / s, Y1 / s
    return Y1


def lambda2(graph: Graph, mode: str = "iter", *, tol: float = 1e-10, cap: int = ITER_CAP,
            seed: int = 0, block: int = 24, degree: int = 20,
            workers: int | None = None) -> SpectralReport:
    """Second largest adjacency eigenvalue.

    ``tol`` bounds the residual ||Ax - theta x|| / d of the returned Ritz
    pair; the default is far inside the required 1e-6.  The iterative mode
    is deterministic for a fixed ``seed``; ``converged`` is False if ``cap``
    matrix applications were spent without reaching ``tol``.
    """
    if mode not in MODES:
        raise SpectralError(f"unknown mode {mode!r}; choose from {MODES}")
    if graph.n < 2:
        raise SpectralError("need at least two vertices")
    if mode == "dense":
        return _lambda2_dense(graph)
    if mode == "lanczos":
        return _lambda2_lanczos(graph, tol)
    return _lambda2_iter(graph, tol, cap, seed, block, degree, workers)


def cheeger_consistency(spectral: SpectralReport, boundary, slack: float = CHEEGER_SLACK) -> bool:
    """(d - lambda2) / 2 <= |dS| / |S| + slack.

    Raises :class:`SpectralError` when the two reports describe different
    graphs.
    """
    if spectral.d != boundary.degree or spectral.n != boundary.group_order:
        raise SpectralError("spectral and boundary reports are for different graphs")
    spectral.h_upper = boundary.ratio
    return spectral.cheeger_lower <= float(boundary.ratio) + slack
