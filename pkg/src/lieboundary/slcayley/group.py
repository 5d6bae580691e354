"""Connection sets and breadth-first enumeration of SL(l+1, q)."""

from __future__ import annotations

import logging
from dataclasses import dataclass, field
from math import prod

import numpy as np

from ..gf import FieldSpec
from .matrices import MatGF, _field, batch_keys, batch_matmul, gen_A, gen_B, gen_C, keys_fit_int64

log = logging.getLogger(__name__)

DEFAULT_MAX_ORDER = 5_000_000


def sl_order(n: int, q: int) -> int:
    """|SL(n, q)| = prod_{i<n} (q^n - q^i) / (q - 1)."""
    return prod(q**n - q**i for i in range(n)) // (q - 1)


def psl_order(n: int, q: int) -> int:
    from math import gcd

    return sl_order(n, q) // gcd(n, q - 1)


def tabulated_psl_order(n: int, q: int) -> int:
    """The A-series order with q-exponent m(m-1)/2 (m = n - 1) in place of
    the classical m(m+1)/2, kept only to report how far it is off."""
    from math import gcd

    m = n - 1
    return q ** (m * (m - 1) // 2) * prod(q ** (i + 1) - 1 for i in range(1, m + 1)) // gcd(m + 1, q - 1)


@dataclass
class GenSet:
    """Named generators, their inverses and the deduplicated connection set."""

    l: int
    field: FieldSpec
    named: list[tuple[str, MatGF]]
    connection: list[tuple[str, MatGF]] = field(init=False)

    def __post_init__(self):
        seen: dict[bytes, str] = {}
        conn = []
        for name, g in self.named:
            key = g.to_bytes()
            if g.is_identity() or key in seen:
                continue
            seen[key] = name
            conn.append((name, g))
        self.connection = conn

    @property
    def degree(self) -> int:
        return len(self.connection)

    def matrices(self) -> np.ndarray:
        return np.stack([g.entries for _, g in self.connection])

    def is_inverse_closed(self) -> bool:
        keys = {g.to_bytes() for _, g in self.connection}
        return all(g.inv().to_bytes() in keys for _, g in self.connection)

    def names(self) -> list[str]:
        return [name for name, _ in self.connection]


def sl_generators(l: int, q) -> GenSet:
    """A, B, C and their inverses in SL(l+1, q)."""
    F = _field(q)
    A, B, C = gen_A(l, F), gen_B(l, F), gen_C(l, F)
    named = [("A", A), ("A^-1", A.inv()), ("B", B), ("B^-1", B.inv()), ("C", C), ("C^-1", C.inv())]
    return GenSet(l, F, named)


@dataclass
class Enumeration:
    """Vertices in BFS order.  ``conclusive`` is False when the cap stopped
    the search early, in which case ``order`` is only a lower bound."""

    field: FieldSpec
    dim: int
    elements: np.ndarray  # (N, n, n), BFS order
    keys: object  # int64 array or list of bytes, aligned with elements
    conclusive: bool
    levels: list[int]

    @property
    def order(self) -> int:
        return len(self.elements)

    def index_of(self, X: np.ndarray) -> np.ndarray:
        """BFS indices of the matrices in ``X`` (all must be present)."""
        keys = batch_keys(X, self.field.q)
        if isinstance(keys, np.ndarray):
            srt = self._sorted
            pos = np.searchsorted(self._sorted_keys, keys)
            pos = np.minimum(pos, len(srt) - 1)
            if not np.array_equal(self._sorted_keys[pos], keys):
                raise KeyError("matrix not in the enumerated group")
            return srt[pos]
        lookup = self._lookup
        return np.array([lookup[k] for k in keys], dtype=np.int64)

    def __post_init__(self):
        if isinstance(self.keys, np.ndarray):
            self._sorted = np.argsort(self.keys, kind="stable")
            self._sorted_keys = self.keys[self._sorted]
        else:
            self._lookup = {k: i for i, k in enumerate(self.keys)}


def bfs_enumerate(gens, cap: int = DEFAULT_MAX_ORDER) -> Enumeration:
    """Level-synchronous BFS from the identity under right multiplication.

    ``gens`` is a :class:`GenSet` or a ``(field, (d, n, n) array)`` pair.  Each
    new level is ordered by the lexicographic order of the row-major entry
    sequence, so vertex indices do not depend on how a level was produced.
    """
    if isinstance(gens, GenSet):
        F, T = gens.field, gens.matrices()
    else:
        F, T = gens
    n = T.shape[-1]
    q = F.q
    ident = np.eye(n, dtype=np.int64)[None]
    if keys_fit_int64(q, n):
        return _bfs_int(F, T, ident, cap)
    return _bfs_bytes(F, T, ident, cap)


def _bfs_int(F, T, ident, cap) -> Enumeration:
    q = F.q
    blocks = [ident]
    key_blocks = [batch_keys(ident, q)]
    seen = np.sort(key_blocks[0])
    frontier = ident
    levels = [1]
    total = 1
    conclusive = True
    while len(frontier):
        cand = np.concatenate([batch_matmul(F, frontier, t) for t in T])
        keys = batch_keys(cand, q)
        uniq, first = np.unique(keys, return_index=True)
        fresh = ~np.isin(uniq, seen, assume_unique=True)
        uniq, first = uniq[fresh], first[fresh]
        if not len(uniq):
            break
        if total + len(uniq) > cap:
            room = cap - total
            uniq, first = uniq[:room], first[:room]
            conclusive = False
        frontier = cand[first]
        blocks.append(frontier)
        key_blocks.append(uniq)
        seen = np.union1d(seen, uniq)
        total += len(uniq)
        levels.append(len(uniq))
        log.debug("bfs level %d: %d new, %d total", len(levels) - 1, len(uniq), total)
        if not conclusive:
            break
    return Enumeration(F, ident.shape[-1], np.concatenate(blocks), np.concatenate(key_blocks),
                       conclusive, levels)


def _bfs_bytes(F, T, ident, cap) -> Enumeration:
    q = F.q
    order_keys = list(batch_keys(ident, q))
    seen = set(order_keys)
    blocks = [ident]
    frontier = ident
    levels = [1]
    conclusive = True
    while len(frontier):
        cand = np.concatenate([batch_matmul(F, frontier, t) for t in T])
        keys = batch_keys(cand, q)
        new: dict[bytes, int] = {}
        for i, k in enumerate(keys):
            if k not in seen and k not in new:
                new[k] = i
        if not new:
            break
        ordered = sorted(new)
        if len(seen) + len(ordered) > cap:
            ordered = ordered[: cap - len(seen)]
            conclusive = False
        frontier = cand[[new[k] for k in ordered]]
        blocks.append(frontier)
        order_keys.extend(ordered)
        seen.update(ordered)
        levels.append(len(ordered))
        if not conclusive:
            break
    return Enumeration(F, ident.shape[-1], np.concatenate(blocks), order_keys, conclusive, levels)


def det_spot_check(F: FieldSpec, elements: np.ndarray, samples: int = 32, seed: int = 0) -> bool:
    """det == 1 on a reproducible sample of enumerated elements."""
    rng = np.random.default_rng(seed)
    idx = rng.choice(len(elements), size=min(samples, len(elements)), replace=False)
    return all(MatGF(F, elements[i]).det() == F.one for i in idx)


@dataclass
class GenerationReport:
    l: int
    q: int
    order: int
    expected: int
    conclusive: bool
    degree: int
    connection: list[str]
    psl_order: int
    tabulated_psl_order: int

    @property
    def match(self) -> bool:
        return self.conclusive and self.order == self.expected

    def to_json(self) -> dict:
        return {
            "l": self.l,
            "q": self.q,
            "order": self.order,
            "expected_order": self.expected,
            "match": self.match,
            "conclusive": self.conclusive,
            "degree": self.degree,
            "connection": self.connection,
            "psl_order": self.psl_order,
            "tabulated_psl_order": self.tabulated_psl_order,
        }


def check_generation(l: int, q: int, cap: int = DEFAULT_MAX_ORDER) -> GenerationReport:
    """BFS closure of {A, B, C}^{+-1} compared with |SL(l+1, q)|."""
    gens = sl_generators(l, q)
    enum = bfs_enumerate(gens, cap)
    n = l + 1
    return GenerationReport(l, q, enum.order, sl_order(n, q), enum.conclusive, gens.degree,
                            gens.names(), psl_order(n, q), tabulated_psl_order(n, q))
