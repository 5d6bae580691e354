"""Root systems of types A, B, C, D in the simple-root basis.

A root is a tuple of integers, its coordinates with respect to the simple
roots r_1..r_l.  Simple reflections act through the Cartan matrix, so all
arithmetic here is exact integer arithmetic.

Conventions (pinned by fixtures):

* ``cartan[i, j] = <r_j, r_i> = 2 (r_j, r_i) / (r_i, r_i)``.
* B_l has its short simple root at r_1 (``w_1(r_2) = r_2 + 2 r_1``);
  C_l has its long simple root at r_l (``w_{l-1}(r_l) = r_l + 2 r_{l-1}``);
  in D_l the roots r_1 and r_2 are both attached to r_3.
* A word ``[a_1, ..., a_m]`` denotes the product ``w_{a_1} ... w_{a_m}``
  acting on roots, so its rightmost letter acts first.  With this,
  ``apply_word(A_l, [1..l], r_i) == r_{i+1}``.
"""

from __future__ import annotations

import functools
from dataclasses import dataclass
from typing import Iterable, Sequence

import numpy as np

Root = tuple[int, ...]
WeylWord = tuple[int, ...]

MIN_RANK = {"A": 2, "B": 2, "C": 2, "D": 4}
RANK_CAP = 30


@dataclass(frozen=True)
class SeriesType:
    family: str
    rank: int

    def __post_init__(self):
        if self.family not in MIN_RANK:
            raise ValueError(f"unknown family {self.family!r}")
        if self.rank < MIN_RANK[self.family]:
            raise ValueError(f"{self.family}_l needs l >= {MIN_RANK[self.family]}, got {self.rank}")

    def __str__(self) -> str:
        return f"{self.family}{self.rank}"


def series(name: str, rank: int | None = None) -> SeriesType:
    """``series("B5")`` or ``series("B", 5)``."""
    if rank is None:
        return SeriesType(name[0].upper(), int(name[1:]))
    return SeriesType(name.upper(), rank)


# -- roots as tuples ------------------------------------------------------

def simple_root(l: int, i: int) -> Root:
    if not 1 <= i <= l:
        raise IndexError(f"simple root index {i} outside 1..{l}")
    return tuple(int(j == i - 1) for j in range(l))


def root_sum(l: int, indices: Iterable[int], coeff: int = 1) -> Root:
    """``coeff * (r_a + r_b + ...)`` for the listed 1-based indices."""
    v = [0] * l
    for i in indices:
        v[i - 1] += coeff
    return tuple(v)


def radd(*roots: Root) -> Root:
    return tuple(int(sum(c)) for c in zip(*roots))


def rneg(v: Root) -> Root:
    return tuple(-c for c in v)


def rscale(k: int, v: Root) -> Root:
    return tuple(k * c for c in v)


def support(v: Root) -> frozenset[int]:
    return frozenset(i + 1 for i, c in enumerate(v) if c)


def format_root(v: Root) -> str:
    """Readable form such as ``2r1 + r2 - r4``; ``0`` for the zero vector."""
    terms = []
    for i, c in enumerate(v, start=1):
        if c == 0:
            continue
        mag = "" if abs(c) == 1 else str(abs(c))
        sign = "-" if c < 0 else "+"
        terms.append((sign, f"{mag}r{i}"))
    if not terms:
        return "0"
    first_sign, first = terms[0]
    out = ("-" if first_sign == "-" else "") + first
    for sign, t in terms[1:]:
        out += f" {sign} {t}"
    return out


# -- Cartan data ----------------------------------------------------------

@functools.lru_cache(maxsize=None)
def cartan_matrix(s: SeriesType) -> np.ndarray:
    """Cartan matrix with rows/columns indexed by r_1..r_l (0-based)."""
    l = s.rank
    C = 2 * np.eye(l, dtype=np.int64)
    if s.family == "D":
        edges = [(0, 2), (1, 2)] + [(i, i + 1) for i in range(2, l - 1)]
    else:
        edges = [(i, i + 1) for i in range(l - 1)]
    for i, j in edges:
        C[i, j] = C[j, i] = -1
    if s.family == "B":
        C[0, 1] = -2  # r_1 short
    elif s.family == "C":
        C[l - 2, l - 1] = -2  # r_l long
    C.setflags(write=False)
    return C


@functools.lru_cache(maxsize=None)
def simple_norms(s: SeriesType) -> tuple[int, ...]:
    """Squared lengths (r_i, r_i), normalised so long roots have length 2."""
    l = s.rank
    if s.family == "B":
        return (1,) + (2,) * (l - 1)
    if s.family == "C":
        return (1,) * (l - 1) + (2,)
    return (2,) * l


def inner_product_matrix(s: SeriesType) -> np.ndarray:
    """Gram matrix ``(r_i, r_j)`` scaled by 2 to stay integral."""
    C = cartan_matrix(s)
    norms = np.array(simple_norms(s))
    G = C * norms[:, None]
    assert np.array_equal(G, G.T), "Cartan matrix is not symmetrisable with these norms"
    return G


@functools.lru_cache(maxsize=None)
def reflection_matrices(s: SeriesType) -> tuple[np.ndarray, ...]:
    """Integer matrices of w_1..w_l acting on coordinate column vectors."""
    C = cartan_matrix(s)
    mats = []
    for i in range(s.rank):
        R = np.eye(s.rank, dtype=np.int64)
        R[i, :] -= C[i, :]
        R.setflags(write=False)
        mats.append(R)
    return tuple(mats)


def _check_index(s: SeriesType, i: int) -> None:
    if not 1 <= i <= s.rank:
        raise IndexError(f"reflection index {i} outside 1..{s.rank} for {s}")


def reflect(s: SeriesType, i: int, v: Root) -> Root:
    """w_i(v) = v - <v, r_i^vee> r_i."""
    _check_index(s, i)
    C = cartan_matrix(s)
    pairing = int(sum(C[i - 1, j] * c for j, c in enumerate(v)))
    out = list(v)
    out[i - 1] -= pairing
    return tuple(out)


def word_matrix(s: SeriesType, word: Sequence[int]) -> np.ndarray:
    return _word_matrix(s, tuple(word))


@functools.lru_cache(maxsize=4096)
def _word_matrix(s: SeriesType, word: WeylWord) -> np.ndarray:
    R = reflection_matrices(s)
    M = np.eye(s.rank, dtype=np.int64)
    for a in word:
        _check_index(s, a)
        M = M @ R[a - 1]
    M.setflags(write=False)
    return M


def inverse_word(word: Sequence[int]) -> WeylWord:
    return tuple(reversed(word))


def apply_word(s: SeriesType, word: Sequence[int], v: Root, power: int = 1) -> Root:
    """Image of ``v`` under ``w**power``; negative powers use the reversed word."""
    if power < 0:
        word, power = inverse_word(word), -power
    M = np.linalg.matrix_power(word_matrix(s, word), power)
    return tuple(int(c) for c in M @ np.asarray(v, dtype=np.int64))


def coxeter_word(s: SeriesType) -> WeylWord:
    """w_1 w_2 ... w_l."""
    return tuple(range(1, s.rank + 1))


def orbit(s: SeriesType, word: Sequence[int], start: Root, steps: int) -> list[Root]:
    """``[start, w(start), ..., w^steps(start)]``."""
    M = word_matrix(s, word)
    out = [tuple(start)]
    v = np.asarray(start, dtype=np.int64)
    for _ in range(steps):
        v = M @ v
        out.append(tuple(int(c) for c in v))
    return out


@dataclass(frozen=True)
class OrbitTrace:
    series: SeriesType
    word: WeylWord
    start: Root
    steps: tuple[Root, ...]


def orbit_trace(s: SeriesType, word: Sequence[int], start: Root, steps: int) -> OrbitTrace:
    pts = orbit(s, word, start, steps)
    return OrbitTrace(s, tuple(word), tuple(start), tuple(pts[1:]))


def cycle_length(s: SeriesType, word: Sequence[int], start: Root, limit: int = 10_000) -> int:
    M = word_matrix(s, word)
    v0 = np.asarray(start, dtype=np.int64)
    v = M @ v0
    n = 1
    while not np.array_equal(v, v0):
        v = M @ v
        n += 1
        if n > limit:
            raise RuntimeError(f"orbit of {start} did not close within {limit} steps")
    return n


# -- root enumeration -----------------------------------------------------

@functools.lru_cache(maxsize=None)
def enumerate_roots(s: SeriesType) -> frozenset[Root]:
    """Full root system: closure of the simple roots under simple reflections."""
    if s.rank > RANK_CAP:
        raise ValueError(f"rank {s.rank} exceeds enumeration cap {RANK_CAP}")
    return _subsystem_roots(s, tuple(range(1, s.rank + 1)))


def enumerate_positive_roots(s: SeriesType) -> frozenset[Root]:
    return frozenset(v for v in enumerate_roots(s) if all(c >= 0 for c in v))


def permutes_roots(s: SeriesType, word: Sequence[int]) -> bool:
    """Whether the word maps the enumerated root system onto itself."""
    roots = enumerate_roots(s)
    arr = np.array(sorted(roots), dtype=np.int64)
    images = {tuple(v) for v in (arr @ word_matrix(s, word).T).tolist()}
    return images == roots


def expected_positive_count(s: SeriesType) -> int:
    l = s.rank
    return {"A": l * (l + 1) // 2, "B": l * l, "C": l * l, "D": l * (l - 1)}[s.family]


def subsystem_roots(s: SeriesType, indices: Iterable[int]) -> frozenset[Root]:
    """Roots of the sub-root-system generated by the listed simple roots,
    embedded in the coordinates of ``s``."""
    idx = sorted(set(indices))
    return _subsystem_roots(s, tuple(idx))


@functools.lru_cache(maxsize=None)
def _subsystem_roots(s: SeriesType, idx: tuple[int, ...]) -> frozenset[Root]:
    l = s.rank
    cols = np.array([i - 1 for i in idx])
    Crows = cartan_matrix(s)[cols]  # pairing with r_i^vee, one row per reflection
    row = np.dtype((np.void, 8 * l))
    frontier = np.eye(l, dtype=np.int64)[cols]
    seen = set(frontier.view(row).ravel().tolist())
    found = [frontier]
    while len(frontier):
        pair = frontier @ Crows.T  # (f, k)
        images = np.repeat(frontier[None], len(cols), axis=0)  # (k, f, l)
        images[np.arange(len(cols)), :, cols] -= pair.T
        images = np.unique(images.reshape(-1, l).view(row).ravel())
        fresh = [v for v in images.tolist() if v not in seen]
        seen.update(fresh)
        frontier = np.frombuffer(b"".join(fresh), dtype=np.int64).reshape(-1, l)
        found.append(frontier)
    return frozenset(map(tuple, np.concatenate(found).tolist()))


def in_subsystem(s: SeriesType, v: Root, indices: Iterable[int]) -> bool:
    """Support inside ``indices`` and membership in that sub-root-system."""
    indices = frozenset(indices)
    return support(v) <= indices and tuple(v) in subsystem_roots(s, indices)


# -- root shift under a word -------------------------------------------

def lemma1_hypotheses(s: SeriesType, i: int) -> bool:
    """Orthogonality/length pattern under which the Coxeter element shifts
    r_i to r_{i+1}."""
    l = s.rank
    if not 1 <= i <= l - 1:
        return False
    G = inner_product_matrix(s)
    a, b = i - 1, i
    if any(G[a, j] != 0 for j in range(a + 2, l)):
        return False
    if any(G[b, k] != 0 for k in range(0, a)):
        return False
    if simple_norms(s)[a] != simple_norms(s)[b]:
        return False
    return reflect(s, i, simple_root(l, i + 1)) == root_sum(l, [i, i + 1])


def verify_lemma1(s: SeriesType, i: int) -> bool | None:
    """Whether the Coxeter element maps r_i to r_{i+1}.

    Returns ``None`` when the hypotheses fail (not applicable).
    """
    if not lemma1_hypotheses(s, i):
        return None
    return apply_word(s, coxeter_word(s), simple_root(s.rank, i)) == simple_root(s.rank, i + 1)
