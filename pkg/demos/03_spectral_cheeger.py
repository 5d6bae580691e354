#!/usr/bin/env python3
"""Second adjacency eigenvalue of small SL Cayley graphs, two ways.

lambda_2 is computed by the block Chebyshev iteration and by a reference
solver (dense below 5000 vertices, ARPACK above).  The spectral lower
bound (d - lambda_2)/2 on the expansion is then set against the measured
ratio |dS|/|S|, which is an upper bound.

Run with ``python demos/03_spectral_cheeger.py``.
"""

from lieboundary.slcayley.boundary import boundary_exact
from lieboundary.slcayley.export import cayley_graph
from lieboundary.spectral import DENSE_MAX, cheeger_consistency, from_cayley, lambda2


def main() -> None:
    for l, q in [(1, 5), (2, 2), (2, 3), (3, 2)]:
        g = from_cayley(cayley_graph(l, q))
        it = lambda2(g, "iter")
        ref = lambda2(g, "dense" if g.n <= DENSE_MAX else "lanczos")
        b = boundary_exact(l, q)
        ok = cheeger_consistency(it, b)
        print(f"SL({l + 1},{q}): n={g.n}, d={g.d}")
        print(f"  lambda2 iter   = {it.lambda2:.12f}  ({it.iterations} sweeps, residual {it.residual:.1e})")
        print(f"  lambda2 {ref.method:7s}= {ref.lambda2:.12f}")
        print(f"  (d - lambda2)/2 = {it.cheeger_lower:.4f} <= |dS|/|S| = {b.ratio}: {ok}\n")


if __name__ == "__main__":
    main()
