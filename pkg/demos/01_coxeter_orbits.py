#!/usr/bin/env python3
"""Walk a Coxeter orbit by hand, then run the full identity check.

The first half follows the simple root r_1 of A_5 under the Coxeter
element c = w_1 w_2 ... w_l and prints each step; the orbit closes after
l + 1 steps.  The second half runs every recorded identity for the four
classical series and the three twisted families and summarises the counts.

Run with ``python demos/01_coxeter_orbits.py``.
"""

from collections import Counter

from lieboundary.orbits import verify_series_orbit
from lieboundary.rootsys import MIN_RANK, SeriesType, coxeter_word, cycle_length, format_root, orbit, simple_root
from lieboundary.twistsys import TwistedSeries, fundamental_sets, verify_twisted_orbit


def walk(s: SeriesType) -> None:
    c = coxeter_word(s)
    start = simple_root(s.rank, 1)
    print(f"{s}: c = {' '.join(f'w{i}' for i in c)}")
    for k, v in enumerate(orbit(s, c, start, s.rank + 1)):
        print(f"  c^{k} r_1 = {format_root(v)}")
    print(f"  orbit of r_1 closes after {cycle_length(s, c, start)} steps\n")


def main() -> None:
    walk(SeriesType("A", 5))

    t = TwistedSeries("A1even", 3)
    print(f"{t}: fundamental sets under the diagram automorphism")
    for z in fundamental_sets(t)[:4]:
        roots = ", ".join(format_root(v) for v in sorted(z.members))
        print(f"  Z_{z.label} ({z.kind}): {roots}")
    print()

    tally = Counter()
    failures = []
    for f in "ABCD":
        for l in range(MIN_RANK[f], 13):
            rep = verify_series_orbit(SeriesType(f, l))
            tally[f] += len(rep.equations)
            failures += rep.failures()
    for kind in ("A1odd", "D1", "A1even"):
        for n in range(4 if kind == "D1" else 3, 10):
            rep = verify_twisted_orbit(TwistedSeries(kind, n))
            tally[kind] += len(rep.equations)
            failures += rep.failures()
    for name, n in tally.items():
        print(f"  {name:7s} {n:5d} identities checked")
    print(f"failures: {len(failures)}")


if __name__ == "__main__":
    main()
