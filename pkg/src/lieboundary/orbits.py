"""Coxeter-element orbit identities behind the boundary estimates.

Every identity is evaluated exactly and recorded as an :class:`EquationCheck`
so that a failing identity shows up as a report entry rather than an
exception.  Equation ids are stable (``Al.orbit.step``, ``Bl.eq.negy``,
``Dl.pot3`` ...) and are part of the JSON report format.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Any

from .rootsys import (
    Root,
    SeriesType,
    apply_word,
    cartan_matrix,
    coxeter_word,
    cycle_length,
    format_root,
    in_subsystem,
    permutes_roots,
    radd,
    reflect,
    rneg,
    root_sum,
    rscale,
    simple_root,
    verify_lemma1,
)


def _jsonable(v: Any) -> Any:
    if isinstance(v, Fraction):
        return {"num": v.numerator, "den": v.denominator}
    if isinstance(v, tuple) and all(isinstance(c, int) for c in v):
        return list(v)
    if isinstance(v, (frozenset, set)):
        return sorted(_jsonable(x) for x in v)
    if isinstance(v, (list, tuple)):
        return [_jsonable(x) for x in v]
    return v


@dataclass(frozen=True)
class EquationCheck:
    id: str
    params: dict
    lhs: Any
    rhs: Any

    @property
    def passed(self) -> bool:
        return self.lhs == self.rhs

    def to_json(self) -> dict:
        return {
            "id": self.id,
            "params": dict(self.params),
            "lhs": _jsonable(self.lhs),
            "rhs": _jsonable(self.rhs),
            "pass": self.passed,
        }


@dataclass
class OrbitReport:
    series: str
    rank: int
    equations: list[EquationCheck] = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return all(e.passed for e in self.equations)

    def failures(self) -> list[EquationCheck]:
        return [e for e in self.equations if not e.passed]

    def ids(self) -> set[str]:
        return {e.id for e in self.equations}

    def add(self, id: str, lhs, rhs, **params) -> None:
        self.equations.append(EquationCheck(id, params, lhs, rhs))

    def to_json(self) -> dict:
        return {
            "series": self.series,
            "rank": self.rank,
            "pass": self.passed,
            "equations": [e.to_json() for e in self.equations],
        }


def _r(l: int, i: int) -> Root:
    return simple_root(l, i)


def _span(l: int, a: int, b: int) -> Root:
    """r_a + r_{a+1} + ... + r_b."""
    return root_sum(l, range(a, b + 1))


# -- boundary constructions -----------------------------------------------

@dataclass(frozen=True)
class Generator:
    name: str
    root: Root
    elements: int  # group elements it contributes to the connection set (1 or 2)
    escapes: frozenset[int]  # powers i in range where w^i(root) leaves the subsystem


@dataclass(frozen=True)
class Construction:
    """Root-level data of one Cayley-graph/subset construction.

    The subset is the union of cosets ``K n_w^i`` for ``0 <= i <= top`` where
    K is generated by the root subgroups of ``subsystem``.
    """

    name: str
    series: SeriesType
    subsystem: frozenset[int]
    top: int
    generators: tuple[Generator, ...]
    bound: Fraction

    @property
    def cosets(self) -> int:
        return self.top + 1

    def boundary_cosets(self) -> int:
        """n_w^{top+1}, n_w^{-1} and one coset per escaping generator element."""
        return 2 + sum(g.elements * len(g.escapes) for g in self.generators)


def constructions(s: SeriesType) -> list[Construction]:
    l = s.rank
    r1 = _r(l, 1)
    lower = frozenset(range(1, l))
    if s.family == "A":
        return [Construction("A", s, lower, l - 1, (
            Generator("x_1(1)", r1, 2, frozenset({l - 1})),
            Generator("h_r1(lambda)", r1, 2, frozenset({l - 1})),
        ), Fraction(6, l))]
    if s.family == "B":
        t = radd(rscale(2, r1), _span(l, 2, l))
        sroot = _span(l, 2, l)
        return [
            Construction("B", s, lower, l - 2, (
                Generator("x_1(1)", r1, 2, frozenset()),
                Generator("h_t(lambda)", t, 2, frozenset({0})),
            ), Fraction(4, l - 1)),
            Construction("B'", s, lower, l - 2, (
                Generator("x_s(1)", sroot, 1, frozenset({0})),
                Generator("x_-r1(1)", rneg(r1), 1, frozenset()),
                Generator("h_t(lambda)", t, 2, frozenset({0})),
            ), Fraction(5, l - 1)),
        ]
    if s.family == "C":
        return [Construction("C", s, frozenset(range(2, l + 1)), l - 2, (
            Generator("x_1(1)", r1, 2, frozenset({0})),
            Generator("h_r1(lambda)", r1, 2, frozenset({0})),
        ), Fraction(6, l - 1))]
    if s.family == "D":
        if l % 2:
            return [Construction("D", s, lower, l - 3, (
                Generator("x_r1(1)", r1, 2, frozenset()),
                Generator("h_r1(lambda)", r1, 2, frozenset()),
            ), Fraction(2, l - 2))]
        return [Construction("D'", s, lower, l - 4, (
            Generator("x_-r1(1)", rneg(r1), 2, frozenset()),
            Generator("x_r1(1)", r1, 2, frozenset()),
            Generator("x_r3(1)", _r(l, 3), 2, frozenset()),
            Generator("h_r1(lambda)", r1, 2, frozenset()),
        ), Fraction(2, l - 3))]
    raise ValueError(s)


@dataclass(frozen=True)
class AbsorptionEntry:
    construction: str
    generator: str
    power: int
    image: Root
    contained: bool


def absorption_certificate(s: SeriesType) -> list[AbsorptionEntry]:
    """For every generator root g and 0 <= i <= top, whether w^i(g) lies in the
    rank-(l-1) subsystem that generates K."""
    w = coxeter_word(s)
    out = []
    for c in constructions(s):
        for g in c.generators:
            for i in range(c.top + 1):
                img = apply_word(s, w, g.root, i)
                out.append(AbsorptionEntry(c.name, g.name, i, img, in_subsystem(s, img, c.subsystem)))
    return out


@dataclass(frozen=True)
class DisjointnessEntry:
    construction: str
    power: int
    witness: Root
    image: Root
    target: Root
    inverse: bool  # image is w^{-i}(witness) rather than w^i(witness)

    @property
    def valid(self) -> bool:
        return self.image == self.target


def disjointness_certificate(s: SeriesType) -> list[DisjointnessEntry]:
    """Witness roots showing n_w^i is not in K for 1 <= i <= top.

    The witness lies in the subsystem of K while its image under w^i (or
    w^{-i} for type C) is a simple root outside it.
    """
    l = s.rank
    w = coxeter_word(s)
    out = []
    for c in constructions(s):
        for i in range(1, c.top + 1):
            if s.family == "C":
                wit, target, inv = _r(l, i + 1), _r(l, 1), True
                img = apply_word(s, w, wit, -i)
            else:
                wit, target, inv = _r(l, l - i), _r(l, l), False
                img = apply_word(s, w, wit, i)
            out.append(DisjointnessEntry(c.name, i, wit, img, target, inv))
    return out


# -- per-series identities ------------------------------------------------

def _common(rep: OrbitReport, s: SeriesType) -> None:
    l = s.rank
    w = coxeter_word(s)
    rep.add(f"{s.family}l.permutes", permutes_roots(s, w), True)
    for c in constructions(s):
        for g in c.generators:
            esc = frozenset(i for i in range(c.top + 1)
                            if not in_subsystem(s, apply_word(s, w, g.root, i), c.subsystem))
            rep.add(f"{s.family}l.absorb", esc, g.escapes, construction=c.name, generator=g.name)
        rep.add(f"{s.family}l.cosets", Fraction(c.boundary_cosets(), c.cosets), c.bound,
                construction=c.name)
    for d in disjointness_certificate(s):
        sub = next(c.subsystem for c in constructions(s) if c.name == d.construction)
        ok = in_subsystem(s, d.witness, sub) and not in_subsystem(s, d.target, sub)
        rep.add(f"{s.family}l.disjoint", (d.image, ok), (d.target, True),
                construction=d.construction, i=d.power)


def _verify_A(rep: OrbitReport, s: SeriesType) -> None:
    l = s.rank
    w = coxeter_word(s)
    total = _span(l, 1, l)
    for i in range(1, l):
        rep.add("Al.fixture", reflect(s, i, _r(l, i + 1)), root_sum(l, [i, i + 1]), i=i)
        rep.add("Al.fixture", reflect(s, i + 1, _r(l, i)), root_sum(l, [i, i + 1]), i=i)
        rep.add("Al.lemma1", verify_lemma1(s, i), True, i=i)
        rep.add("Al.orbit.step", apply_word(s, w, _r(l, i)), _r(l, i + 1), i=i)
        rep.add("Al.partial", reflect(s, i, _span(l, i + 1, l)), _span(l, i, l), j=i)
    rep.add("Al.prefix", apply_word(s, w[:-1], _r(l, l)), total)
    rep.add("Al.orbit.wrap", apply_word(s, w, _r(l, l)), rneg(total))
    rep.add("Al.orbit.sum", apply_word(s, w, total), rneg(_r(l, 1)))
    rep.add("Al.orbit.close", apply_word(s, w, rneg(total)), _r(l, 1))
    rep.add("Al.orbit.cycle", cycle_length(s, w, _r(l, 1)), l + 1)


def _verify_B(rep: OrbitReport, s: SeriesType) -> None:
    l = s.rank
    w = coxeter_word(s)
    r = lambda i: _r(l, i)  # noqa: E731
    total = _span(l, 1, l)
    rep.add("Bl.fixture", reflect(s, 1, r(2)), radd(r(2), rscale(2, r(1))))
    rep.add("Bl.fixture", reflect(s, 2, r(1)), radd(r(1), r(2)))
    rep.add("Bl.lemma1", verify_lemma1(s, 1), None, i=1)
    for i in range(2, l):
        rep.add("Bl.lemma1", verify_lemma1(s, i), True, i=i)
        rep.add("Bl.eq1", apply_word(s, w, r(i)), r(i + 1), i=i)
        rep.add("Bl.pot1", apply_word(s, w, _span(l, 1, i)), _span(l, 1, i + 1), j=i)
        rep.add("Bl.partial", reflect(s, i, _span(l, i + 1, l)), _span(l, i, l), i=i)
    rep.add("Bl.w_r1", apply_word(s, w, r(1)), radd(r(1), r(2)))
    rep.add("Bl.w_rl", apply_word(s, w, r(l)), rneg(radd(r(1), total)))
    rep.add("Bl.eq3", apply_word(s, w, total), rneg(r(1)))
    t = radd(r(1), total)
    srt = _span(l, 2, l)
    for i in range(1, l):
        rep.add("Bl.eq.negy", apply_word(s, w, r(1), i), _span(l, 1, i + 1), i=i)
        rep.add("Bl.eq4", apply_word(s, w, t, i), r(i + 1), i=i)
        rep.add("Bl.eq5", apply_word(s, w, srt, i),
                radd(rscale(-2, _span(l, 1, i + 1)), r(i + 1)), i=i)


def _verify_C(rep: OrbitReport, s: SeriesType) -> None:
    l = s.rank
    w = coxeter_word(s)
    r = lambda i: _r(l, i)  # noqa: E731
    rep.add("Cl.fixture", reflect(s, l - 1, r(l)), radd(r(l), rscale(2, r(l - 1))))
    rep.add("Cl.fixture", reflect(s, l, r(l - 1)), radd(r(l - 1), r(l)))
    rep.add("Cl.lemma1", verify_lemma1(s, l - 1), None, i=l - 1)
    for i in range(1, l - 1):
        rep.add("Cl.lemma1", verify_lemma1(s, i), True, i=i)
        rep.add("Cl.step", apply_word(s, w, r(i)), r(i + 1), i=i)
        rep.add("Cl.partial", reflect(s, i, _span(l, i + 1, l - 1)), _span(l, i, l - 1), i=i)
    rep.add("Cl.prefix", apply_word(s, w[: l - 2], r(l - 1)), _span(l, 1, l - 1))
    rep.add("Cl.wrap", apply_word(s, w, r(l - 1)), _span(l, 1, l))
    for i in range(l):
        expect = r(i + 1) if i <= l - 2 else _span(l, 1, l)
        rep.add("Cl.orbit", apply_word(s, w, r(1), i), expect, i=i)


def _verify_D(rep: OrbitReport, s: SeriesType) -> None:
    l = s.rank
    w = coxeter_word(s)
    r = lambda i: _r(l, i)  # noqa: E731
    C = cartan_matrix(s)
    nbrs = lambda i: sorted(j + 1 for j in range(l) if j != i - 1 and C[i - 1, j])  # noqa: E731
    rep.add("Dl.fixture", (nbrs(1), nbrs(2)), ([3], [3]))
    rep.add("Dl.w_r1", apply_word(s, w, r(1)), radd(r(2), r(3)))
    rep.add("Dl.w_r2", apply_word(s, w, r(2)), radd(r(3), r(1)))
    for i in range(3, l):
        rep.add("Dl.lemma1", verify_lemma1(s, i), True, i=i)
        rep.add("Dl.step", apply_word(s, w, r(i)), r(i + 1), i=i)
    for i in range(1, l - 1):
        for start, other in ((1, 2), (2, 1)):
            y = r(other) if i % 2 else r(start)
            rep.add("Dl.pot3", apply_word(s, w, r(start), i), radd(_span(l, 3, i + 2), y),
                    i=i, start=f"r{start}")


_VERIFIERS = {"A": _verify_A, "B": _verify_B, "C": _verify_C, "D": _verify_D}


def verify_series_orbit(s: SeriesType) -> OrbitReport:
    rep = OrbitReport(s.family, s.rank)
    _VERIFIERS[s.family](rep, s)
    _common(rep, s)
    return rep


def describe(check: EquationCheck) -> str:
    """One-line human-readable rendering."""
    fmt = lambda v: format_root(v) if isinstance(v, tuple) and v and isinstance(v[0], int) else str(v)  # noqa: E731
    params = ", ".join(f"{k}={v}" for k, v in check.params.items())
    mark = "ok" if check.passed else "FAIL"
    return f"[{mark}] {check.id}({params}): {fmt(check.lhs)} == {fmt(check.rhs)}"
