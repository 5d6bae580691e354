"""Order-2 diagram symmetries and the twisted Coxeter words.

Three twisted series are covered, each parametrised by ``n``:

``A1odd``   underlying A_{2n-1}, rho(i) = 2n - i
``D1``      underlying D_n, rho swaps r_1 and r_2
``A1even``  underlying A_{2n}, rho(i) = 2n + 1 - i

Only root-level data is modelled: the fundamental sets, the words w_Z, the
twisted Coxeter word and the orbit facts the boundary arguments consume.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

import numpy as np

from .orbits import OrbitReport
from .rootsys import (
    Root,
    SeriesType,
    WeylWord,
    apply_word,
    cartan_matrix,
    coxeter_word,
    enumerate_positive_roots,
    enumerate_roots,
    in_subsystem,
    inner_product_matrix,
    radd,
    rneg,
    root_sum,
    simple_root,
    word_matrix,
)

KINDS = ("A1odd", "D1", "A1even")
MIN_N = 3


@dataclass(frozen=True)
class TwistedSeries:
    kind: str
    n: int

    def __post_init__(self):
        if self.kind not in KINDS:
            raise ValueError(f"unknown twisted series {self.kind!r}; expected one of {KINDS}")
        lo = 4 if self.kind == "D1" else MIN_N
        if self.n < lo:
            raise ValueError(f"{self.kind} needs n >= {lo}, got {self.n}")

    @property
    def base(self) -> SeriesType:
        if self.kind == "A1odd":
            return SeriesType("A", 2 * self.n - 1)
        if self.kind == "A1even":
            return SeriesType("A", 2 * self.n)
        return SeriesType("D", self.n)

    def __str__(self) -> str:
        return f"{self.kind}({self.n})"


@dataclass(frozen=True)
class DiagramAut:
    series: SeriesType
    perm: tuple[int, ...]  # perm[i-1] = rho(i)

    def rho(self, i: int) -> int:
        return self.perm[i - 1]

    def matrix(self) -> np.ndarray:
        """tau on root coordinates: tau(r_i) = r_{rho(i)}."""
        l = self.series.rank
        T = np.zeros((l, l), dtype=np.int64)
        for i in range(1, l + 1):
            T[self.rho(i) - 1, i - 1] = 1
        return T

    def tau(self, v: Root) -> Root:
        return tuple(int(c) for c in self.matrix() @ np.asarray(v))

    def is_valid(self) -> bool:
        C = cartan_matrix(self.series)
        l = self.series.rank
        invol = all(self.rho(self.rho(i)) == i for i in range(1, l + 1))
        P = self.matrix()
        return invol and np.array_equal(P @ C @ P.T, C)


def diagram_aut(t: TwistedSeries) -> DiagramAut:
    l = t.base.rank
    if t.kind == "D1":
        perm = (2, 1) + tuple(range(3, l + 1))
    else:
        perm = tuple(l + 1 - i for i in range(1, l + 1))
    return DiagramAut(t.base, perm)


@dataclass(frozen=True)
class FundamentalSet:
    """An equivalence class Z of positive roots under rho, with its word w_Z."""

    label: int
    members: frozenset[Root]
    kind: str  # single | pair | triple
    word: WeylWord


def _r(l, i):
    return simple_root(l, i)


def fundamental_sets(t: TwistedSeries) -> list[FundamentalSet]:
    """Z_1, Z_2, ... in the order used to build the twisted Coxeter word."""
    l, n = t.base.rank, t.n
    out = []
    if t.kind == "A1odd":
        for i in range(1, n):
            out.append(FundamentalSet(i, frozenset({_r(l, i), _r(l, 2 * n - i)}), "pair", (i, 2 * n - i)))
        out.append(FundamentalSet(n, frozenset({_r(l, n)}), "single", (n,)))
    elif t.kind == "D1":
        out.append(FundamentalSet(1, frozenset({_r(l, 1), _r(l, 2)}), "pair", (1, 2)))
        for i in range(2, n):
            out.append(FundamentalSet(i, frozenset({_r(l, i + 1)}), "single", (i + 1,)))
    else:
        z1 = frozenset({_r(l, n), _r(l, n + 1), root_sum(l, [n, n + 1])})
        out.append(FundamentalSet(1, z1, "triple", (n, n + 1, n)))
        for i in range(2, n + 1):
            out.append(FundamentalSet(i, frozenset({_r(l, n + 1 - i), _r(l, n + i)}), "pair",
                                      (n + 1 - i, n + i)))
    return out


def classify(t: TwistedSeries, z: FundamentalSet) -> str:
    """Kind of Z recomputed from the root system (single/pair/triple)."""
    aut = diagram_aut(t)
    roots = enumerate_roots(t.base)
    r = min(z.members)
    rbar = aut.tau(r)
    if rbar == r:
        return "single"
    return "triple" if radd(r, rbar) in roots else "pair"


def twisted_coxeter(t: TwistedSeries) -> WeylWord:
    """Concatenation of the w_Z words in the order Z_1, Z_2, ..."""
    return tuple(a for z in fundamental_sets(t) for a in z.word)


def truncated_word(t: TwistedSeries) -> WeylWord:
    """For A1even: the twisted word without its final factor w_1 w_{2n}."""
    if t.kind != "A1even":
        raise ValueError("the truncated word is defined for A1even only")
    return twisted_coxeter(t)[:-2]


def is_tau_equivariant(t: TwistedSeries, word: Sequence[int]) -> bool:
    """tau w tau^{-1} == w, compared on every root of the system."""
    aut = diagram_aut(t)
    T = aut.matrix()
    M = word_matrix(t.base, word)
    roots = np.array(sorted(enumerate_roots(t.base)), dtype=np.int64).T
    return np.array_equal(T @ M @ T.T @ roots, M @ roots)


def _image(t: TwistedSeries, word, v: Root, i: int = 1) -> Root:
    return apply_word(t.base, word, v, i)


def _set_image(t, word, members, i=1) -> frozenset[Root]:
    return frozenset(_image(t, word, v, i) for v in members)


def _span(l, a, b):
    return root_sum(l, range(a, b + 1))


def _z(t: TwistedSeries, label: int) -> frozenset[Root]:
    return next(z.members for z in fundamental_sets(t) if z.label == label)


# -- verification ---------------------------------------------------------

def _structure(rep: OrbitReport, t: TwistedSeries, prefix: str) -> None:
    base = t.base
    aut = diagram_aut(t)
    rep.add(f"{prefix}.rho", aut.is_valid(), True)
    pos = enumerate_positive_roots(base)
    sets = fundamental_sets(t)
    seen: set[Root] = set()
    disjoint = True
    for z in sets:
        rep.add(f"{prefix}.kind", classify(t, z), z.kind, Z=z.label)
        rep.add(f"{prefix}.positive", z.members <= pos, True, Z=z.label)
        rep.add(f"{prefix}.tau_closed", frozenset(aut.tau(v) for v in z.members), z.members, Z=z.label)
        neg = frozenset(rneg(v) for v in z.members)
        rep.add(f"{prefix}.wZ", _set_image(t, z.word, z.members), neg, Z=z.label)
        rep.add(f"{prefix}.wZ_fixed", is_tau_equivariant(t, z.word), True, Z=z.label)
        disjoint &= not (seen & z.members)
        seen |= z.members
    simple = {simple_root(base.rank, i) for i in range(1, base.rank + 1)}
    rep.add(f"{prefix}.partition", (disjoint, simple <= seen), (True, True))
    w = twisted_coxeter(t)
    rep.add(f"{prefix}.equivariant", is_tau_equivariant(t, w), True)


def _verify_A1odd(rep: OrbitReport, t: TwistedSeries) -> None:
    n, l = t.n, t.base.rank
    w = twisted_coxeter(t)
    aut = diagram_aut(t)
    for k in range(1, n - 1):
        rep.add("A1odd.step", _image(t, w, _r(l, k)), _r(l, k + 1), k=k)
    for i in range(1, n - 1):
        img = _image(t, w, _r(l, 1), i)
        rep.add("A1odd.pow", img, _r(l, i + 1), i=i)
        rep.add("A1odd.conj", _image(t, w, _r(l, 2 * n - 1), i), aut.tau(img), i=i)
        rep.add("A1odd.zset", _set_image(t, w, _z(t, i + 1), -i), _z(t, 1), i=i)
        rep.add("A1odd.zfwd", _set_image(t, w, _z(t, 1), i), _z(t, i + 1), i=i)


def _verify_D1(rep: OrbitReport, t: TwistedSeries) -> None:
    n = t.n
    base = t.base
    w = twisted_coxeter(t)
    aut = diagram_aut(t)
    rep.add("D1.same", np.array_equal(word_matrix(base, w), word_matrix(base, coxeter_word(base))), True)
    for i in range(3, n):
        rep.add("D1.step", _image(t, w, _r(n, i)), _r(n, i + 1), i=i)
    for i in range(0, n - 2):
        rep.add("D1.disjoint", _set_image(t, w, _z(t, n - 1 - i), i), _z(t, n - 1), i=i)
    for i in range(1, n - 1):
        for start, other in ((1, 2), (2, 1)):
            y = _r(n, other) if i % 2 else _r(n, start)
            rep.add("D1.pot3", _image(t, w, _r(n, start), i), radd(_span(n, 3, i + 2), y),
                    i=i, start=f"r{start}")
        rep.add("D1.conj", _image(t, w, _r(n, 2), i), aut.tau(_image(t, w, _r(n, 1), i)), i=i)


def _verify_A1even(rep: OrbitReport, t: TwistedSeries) -> None:
    n, l = t.n, t.base.rank
    w = twisted_coxeter(t)
    aut = diagram_aut(t)
    G = inner_product_matrix(t.base)
    rep.add("A1even.wrn", _image(t, w, _r(l, n)), root_sum(l, [n - 1, n]))
    for k in range(1, n - 1):
        rep.add("A1even.step", _image(t, w, _r(l, k + 1)), _r(l, k), k=k)
        rep.add("A1even.eg3", _image(t, w, _r(l, n - k)), _r(l, n - k - 1), k=k)
    for i in range(1, n - 1):
        rep.add("A1even.pow", _image(t, w, _r(l, i + 1), i), _r(l, 1), i=i)
        rep.add("A1even.powbar", _image(t, w, aut.tau(_r(l, i + 1)), i), _r(l, 2 * n), i=i)
    for i in range(0, n - 1):
        rep.add("A1even.zset", _set_image(t, w, _z(t, n - i), i), _z(t, n), i=i)
        img = _image(t, w, _r(l, n), i)
        rep.add("A1even.eg5", img, _span(l, n - i, n), i=i)
        imgbar = _image(t, w, _r(l, n + 1), i)
        rep.add("A1even.conj", imgbar, aut.tau(img), i=i)
        rep.add("A1even.conj_sum", imgbar, _span(l, n + 1, n + 1 + i), i=i)
        if i <= n - 3:
            # w^i(r_n) meets r_2 once i = n-2, so orthogonality to r_1 stops there;
            # the truncation argument only needs the images up to power n-3
            orth = all(int(G[e - 1] @ np.asarray(v)) == 0 for e in (1, 2 * n) for v in (img, imgbar))
            rep.add("A1even.orth", orth, True, i=i)


_VERIFY = {"A1odd": _verify_A1odd, "D1": _verify_D1, "A1even": _verify_A1even}


def verify_twisted_orbit(t: TwistedSeries) -> OrbitReport:
    rep = OrbitReport(t.kind, t.n)
    _structure(rep, t, t.kind)
    _VERIFY[t.kind](rep, t)
    for e in twisted_absorption_certificate(t):
        rep.add(f"{t.kind}.absorb", e.holds, True, i=e.power, root=e.subject)
    return rep


# -- absorption -----------------------------------------------------------

@dataclass(frozen=True)
class TwistedAbsorption:
    power: int
    subject: str
    claim: str  # "contained" or "truncation"
    image: object
    holds: bool


def twisted_absorption_certificate(t: TwistedSeries) -> list[TwistedAbsorption]:
    """Facts that keep the generators' conjugates inside the twisted subgroup.

    A1odd: w^i(Z_1) lies in the subsystem on r_2..r_{2n-2} for 1 <= i <= n-2.
    D1:    w^i(r_1), w^i(r_2) lie in the subsystem on r_1..r_{n-1}, 0 <= i <= n-3.
    A1even: w^i and the truncated word agree on r_n, r_{n+1}, r_n + r_{n+1}
            for 0 <= i <= n-2, and the truncated word only uses r_2..r_{2n-1}.
    """
    n, base = t.n, t.base
    l = base.rank
    w = twisted_coxeter(t)
    out = []
    if t.kind == "A1odd":
        sub = frozenset(range(2, 2 * n - 1))
        for i in range(1, n - 1):
            img = _set_image(t, w, _z(t, 1), i)
            out.append(TwistedAbsorption(i, "Z1", "contained", img,
                                         all(in_subsystem(base, v, sub) for v in img)))
    elif t.kind == "D1":
        sub = frozenset(range(1, n))
        for i in range(0, n - 2):
            for j in (1, 2):
                img = _image(t, w, _r(l, j), i)
                out.append(TwistedAbsorption(i, f"r{j}", "contained", img, in_subsystem(base, img, sub)))
    else:
        wp = truncated_word(t)
        subjects = {"r_n": _r(l, n), "r_n+1": _r(l, n + 1), "r_n+r_n+1": root_sum(l, [n, n + 1])}
        for i in range(0, n - 1):
            for name, v in subjects.items():
                a, b = _image(t, w, v, i), _image(t, wp, v, i)
                out.append(TwistedAbsorption(i, name, "truncation", (a, b), a == b))
        inner = set(wp) <= set(range(2, 2 * n))
        out.append(TwistedAbsorption(0, "w'", "contained", tuple(wp), inner))
    return out

