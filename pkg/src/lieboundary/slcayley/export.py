"""Cayley graph of SL(l+1, q) as a neighbour table, and its edge-list export."""

from __future__ import annotations

import io
from dataclasses import dataclass

import numpy as np

from .boundary import ResourceCapError
from .group import DEFAULT_MAX_ORDER, Enumeration, GenSet, bfs_enumerate, sl_generators
from .matrices import batch_matmul


@dataclass
class CayleyGraph:
    """Right Cayley graph: vertex u is joined to u * t for each t in the
    connection set.  ``nbr[u, j]`` is the BFS index of ``u * t_j``."""

    l: int
    q: int
    gens: GenSet
    enum: Enumeration
    nbr: np.ndarray

    @property
    def n(self) -> int:
        return self.nbr.shape[0]

    @property
    def d(self) -> int:
        return self.nbr.shape[1]

    def edges(self) -> np.ndarray:
        """(m, 2) array of undirected edges u < v, sorted, each once."""
        n = self.n
        u = np.repeat(np.arange(n, dtype=np.int64), self.d)
        v = self.nbr.reshape(-1)
        keep = u != v
        lo, hi = np.minimum(u, v)[keep], np.maximum(u, v)[keep]
        codes = np.unique(lo * n + hi)
        return np.stack([codes // n, codes % n], axis=1)


def cayley_graph(l: int, q, cap: int = DEFAULT_MAX_ORDER) -> CayleyGraph:
    gens = sl_generators(l, q)
    enum = bfs_enumerate(gens, cap)
    if not enum.conclusive:
        raise ResourceCapError(f"SL({l + 1},{gens.field.q}) has more than {cap} elements")
    cols = [enum.index_of(batch_matmul(gens.field, enum.elements, t)) for t in gens.matrices()]
    nbr = np.stack(cols, axis=1)
    nbr.setflags(write=False)
    return CayleyGraph(l, gens.field.q, gens, enum, nbr)


def edgelist_header(g: CayleyGraph) -> str:
    return f"# cayley sl l={g.l} q={g.q} n={g.n} d={g.d}"


def write_edgelist(g: CayleyGraph, fh) -> None:
    fh.write(edgelist_header(g) + "\n")
    E = g.edges()
    if len(E):
        np.savetxt(fh, E, fmt="%d")


def export_graph(l: int, q, format: str = "edgelist", cap: int = DEFAULT_MAX_ORDER) -> str:
    """The whole export as a string.  Only ``edgelist`` is supported."""
    if format != "edgelist":
        raise ValueError(f"unsupported export format {format!r}")
    buf = io.StringIO()
    write_edgelist(cayley_graph(l, q, cap), buf)
    return buf.getvalue()
