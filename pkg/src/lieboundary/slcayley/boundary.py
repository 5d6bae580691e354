"""The subset S = S_0 u S_0 B u ... u S_0 B^{l-1} and its exact vertex boundary.

S_0 is the block-diagonal copy diag(D, 1) of SL(l, q).  Membership in S is
decided structurally: M is in S_i exactly when M B^{-i} has last row and
last column equal to the last unit vector.  No lookup into an enumeration
of the whole group is ever needed.
"""

from __future__ import annotations

import os
import time
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from fractions import Fraction

import numpy as np

from ..gf import FieldSpec
from .group import DEFAULT_MAX_ORDER, GenSet, bfs_enumerate, sl_generators, sl_order
from .matrices import MatGF, _field, batch_keys, batch_matmul, block_embed, gen_A, gen_B, gen_C


class ResourceCapError(RuntimeError):
    """An enumeration would exceed the configured size cap."""


def default_workers() -> int:
    env = os.environ.get("LIEBOUNDARY_WORKERS")
    if env:
        return max(1, int(env))
    return os.cpu_count() or 1


@dataclass
class SubsetS:
    """S_0 and its right translates S_i = S_0 B^i, 0 <= i <= l - 1."""

    l: int
    field: FieldSpec
    s0: np.ndarray  # (|S_0|, l+1, l+1)
    B: MatGF
    binv_powers: np.ndarray = field(init=False)  # B^{-i}, 0 <= i <= l

    def __post_init__(self):
        Binv = self.B.inv()
        self.binv_powers = np.stack([(Binv**i).entries for i in range(self.l + 1)])

    def coset(self, i: int) -> np.ndarray:
        """S_0 B^i (i may be negative or equal to l)."""
        return batch_matmul(self.field, self.s0, (self.B**i).entries)

    def members(self) -> np.ndarray:
        return np.concatenate([self.coset(i) for i in range(self.l)])

    def coset_index(self, X: np.ndarray) -> np.ndarray:
        """For each matrix, the i in 0..l-1 with X in S_i, or -1."""
        n = self.l + 1
        e = np.zeros(n, dtype=np.int64)
        e[-1] = 1
        out = np.full(len(X), -1, dtype=np.int64)
        for i in range(self.l):
            Y = batch_matmul(self.field, X, self.binv_powers[i])
            hit = (Y[:, n - 1, :] == e).all(axis=1) & (Y[:, :, n - 1] == e).all(axis=1)
            out[hit & (out < 0)] = i
        return out

    def contains(self, X: np.ndarray) -> np.ndarray:
        return self.coset_index(X) >= 0


def build_subset(l: int, q, cap: int = DEFAULT_MAX_ORDER) -> SubsetS:
    F = _field(q)
    if l == 1:
        s0 = np.eye(2, dtype=np.int64)[None]
    else:
        inner = bfs_enumerate(sl_generators(l - 1, F), cap)
        if not inner.conclusive:
            raise ResourceCapError(f"SL({l},{F.q}) has more than {cap} elements")
        if inner.order != sl_order(l, F.q):
            raise AssertionError(f"BFS found {inner.order} elements in SL({l},{F.q})")
        s0 = block_embed(inner.elements)
    return SubsetS(l, F, s0, gen_B(l, F))


def candidate_cosets(sub: SubsetS) -> dict[str, np.ndarray]:
    """The six right cosets of S_0 that can meet the boundary."""
    F, l = sub.field, sub.l
    last = sub.coset(l - 1)
    A, C = gen_A(l, F), gen_C(l, F)
    return {
        "S_l": sub.coset(l),
        "S_0 B^-1": sub.coset(-1),
        "S_{l-1} A": batch_matmul(F, last, A.entries),
        "S_{l-1} A^-1": batch_matmul(F, last, A.inv().entries),
        "S_{l-1} C": batch_matmul(F, last, C.entries),
        "S_{l-1} C^-1": batch_matmul(F, last, C.inv().entries),
    }


def _unique_keys(keys):
    if isinstance(keys, np.ndarray):
        return np.unique(keys)
    return sorted(set(keys))


def _concat_keys(parts):
    if parts and isinstance(parts[0], np.ndarray):
        return np.concatenate(parts) if parts else np.zeros(0, dtype=np.int64)
    return [k for p in parts for k in p]


def _as_set(keys) -> set:
    return set(keys.tolist()) if isinstance(keys, np.ndarray) else set(keys)


def restricted_boundary(sub: SubsetS, gens: GenSet) -> tuple[object, dict[str, int]]:
    """Boundary found by scanning only the candidate cosets.

    Returns the sorted unique keys and, per named coset, how many of its
    elements lie in the boundary.
    """
    F, q = sub.field, sub.field.q
    T = gens.matrices()
    parts, counts = [], {}
    for name, X in candidate_cosets(sub).items():
        outside = ~sub.contains(X)
        touches = np.zeros(len(X), dtype=bool)
        for t in T:
            touches |= sub.contains(batch_matmul(F, X, t))
        hit = X[outside & touches]
        keys = _unique_keys(batch_keys(hit, q)) if len(hit) else []
        counts[name] = len(keys)
        if len(hit):
            parts.append(keys)
    if not parts:
        return np.zeros(0, dtype=np.int64), counts
    return _unique_keys(_concat_keys(parts)), counts


def sweep_boundary(sub: SubsetS, gens: GenSet, workers: int | None = None, chunk: int = 20_000):
    """Brute force: every s t with s in S, t in the connection set, minus S."""
    F, q = sub.field, sub.field.q
    S = sub.members()
    T = gens.matrices()

    def work(lo: int):
        block = S[lo: lo + chunk]
        out = []
        for t in T:
            Y = batch_matmul(F, block, t)
            Y = Y[~sub.contains(Y)]
            if len(Y):
                out.append(_unique_keys(batch_keys(Y, q)))
        return out

    starts = range(0, len(S), chunk)
    workers = workers or default_workers()
    if workers > 1 and len(starts) > 1:
        with ThreadPoolExecutor(workers) as pool:
            results = list(pool.map(work, starts))
    else:
        results = [work(lo) for lo in starts]
    parts = [p for r in results for p in r]
    if not parts:
        return np.zeros(0, dtype=np.int64)
    return _unique_keys(_concat_keys(parts))


@dataclass
class BoundaryReport:
    l: int
    q: int
    degree: int
    connection: list[str]
    group_order: int
    s0: int
    s: int
    boundary: int
    cosets: dict[str, int]
    disjoint: bool
    size_ok: bool
    half_ok: bool
    sweep_boundary: int | None = None
    sweep_agrees: bool | None = None
    within_cosets: bool | None = None
    runtime: float = 0.0

    @property
    def ratio(self) -> Fraction:
        return Fraction(self.boundary, self.s)

    @property
    def bound(self) -> Fraction:
        return Fraction(6, self.l)

    @property
    def within_bound(self) -> bool:
        return self.ratio <= self.bound

    @property
    def passed(self) -> bool:
        checks = [self.within_bound, self.disjoint, self.size_ok, self.half_ok]
        checks += [c for c in (self.sweep_agrees, self.within_cosets) if c is not None]
        return all(checks)

    def to_json(self, timing: bool = False) -> dict:
        out = {
            "l": self.l,
            "q": self.q,
            "group_order": self.group_order,
            "degree": self.degree,
            "connection": self.connection,
            "S0": self.s0,
            "S": self.s,
            "boundary": self.boundary,
            "ratio": {"num": self.ratio.numerator, "den": self.ratio.denominator},
            "bound": {"num": self.bound.numerator, "den": self.bound.denominator},
            "within_bound": self.within_bound,
            "cosets": self.cosets,
            "cosets_disjoint": self.disjoint,
            "S_equals_l_S0": self.size_ok,
            "half_check": self.half_ok,
            "sweep_boundary": self.sweep_boundary,
            "sweep_agrees": self.sweep_agrees,
            "within_named_cosets": self.within_cosets,
            "pass": self.passed,
        }
        if timing:
            out["runtime_s"] = round(self.runtime, 3)
        return out


def half_check(l: int, q: int) -> bool:
    """l |SL(l, q)| < |SL(l+1, q)| / 2."""
    return 2 * l * sl_order(l, q) < sl_order(l + 1, q)


def boundary_exact(l: int, q, sweep_oracle: bool = True, workers: int | None = None,
                   cap: int = DEFAULT_MAX_ORDER) -> BoundaryReport:
    if l < 1:
        raise ValueError(f"l must be >= 1, got {l}")
    t0 = time.perf_counter()
    F = _field(q)
    sub = build_subset(l, F, cap)
    gens = sl_generators(l, F)

    cosets_keys = [batch_keys(sub.coset(i), F.q) for i in range(l)]
    all_keys = _concat_keys(cosets_keys)
    n_unique = len(_unique_keys(all_keys))
    disjoint = n_unique == sum(len(k) for k in cosets_keys)
    # the structural test must place S_i exactly at index i
    for i in range(l):
        if not (sub.coset_index(sub.coset(i)) == i).all():
            raise AssertionError(f"structural membership test misplaces S_{i}")
    s0 = len(sub.s0)
    s = n_unique

    bkeys, counts = restricted_boundary(sub, gens)
    rep = BoundaryReport(
        l=l, q=F.q, degree=gens.degree, connection=gens.names(),
        group_order=sl_order(l + 1, F.q), s0=s0, s=s, boundary=len(bkeys), cosets=counts,
        disjoint=disjoint, size_ok=(s == l * s0), half_ok=half_check(l, F.q),
    )
    if sweep_oracle:
        skeys = sweep_boundary(sub, gens, workers)
        rep.sweep_boundary = len(skeys)
        rep.sweep_agrees = _as_set(skeys) == _as_set(bkeys)
        cand = set()
        for X in candidate_cosets(sub).values():
            cand |= _as_set(batch_keys(X, F.q))
        rep.within_cosets = _as_set(skeys) <= cand
    rep.runtime = time.perf_counter() - t0
    return rep
