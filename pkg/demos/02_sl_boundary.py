#!/usr/bin/env python3
"""Enumerate SL(l+1, q), then measure the boundary of the coset union S.

S is the union of the l cosets S_0 B^i with S_0 = diag(SL(l, q), 1).
Its vertex boundary in the Cayley graph sits inside six cosets only, so
the exact count comes from those; a full sweep over S confirms it.

Run with ``python demos/02_sl_boundary.py``.
"""

import time

from lieboundary.slcayley.boundary import boundary_exact
from lieboundary.slcayley.group import check_generation, sl_generators


def main() -> None:
    print("generation check (BFS order against the order formula)")
    for l, q in [(1, 2), (1, 3), (2, 2), (2, 3), (3, 2)]:
        rep = check_generation(l, q)
        names = ", ".join(sl_generators(l, q).names())
        print(f"  SL({l + 1},{q}): {rep.order:6d} elements, match={rep.match}, gens {names}")

    print("\nboundary of S (restricted count, swept for confirmation)")
    print(f"  {'l':>2} {'q':>2} {'|S|':>7} {'|dS|':>7} {'ratio':>6} {'6/l':>5}  sweep")
    for l, q in [(2, 2), (3, 2), (2, 3), (2, 4), (2, 5), (4, 2)]:
        t0 = time.perf_counter()
        rep = boundary_exact(l, q, sweep_oracle=True)
        dt = time.perf_counter() - t0
        print(f"  {l:>2} {q:>2} {rep.s:>7} {rep.boundary:>7} {str(rep.ratio):>6} {str(rep.bound):>5}"
              f"  {'agrees' if rep.sweep_agrees else 'DIFFERS'} ({dt:.1f} s)")

    rep = boundary_exact(3, 2)
    print("\nper-coset contributions for (l, q) = (3, 2):")
    for name, n in rep.cosets.items():
        print(f"  {name:14s} {n}")


if __name__ == "__main__":
    main()
