"""
Detailed-balance duality
========================

Conjugation with respect to the Gibbs-weighted scalar product reverses every
transition.  Vertices split into self-dual ones and conjugate pairs, and no
non-trivial self-dual vertex is a product of processes on fewer levels.
"""

from fractions import Fraction as F

from thermoproc import conjecture1_scan, duality_report, enumerate_vertices, make_context

for weights in [(1, F(1, 2), F(1, 4)), (1, F(9, 10), F(8, 10))]:
    ctx = make_context(weights)
    rep = duality_report(enumerate_vertices(ctx))
    print("self-dual:", sorted(rep.self_dual_names(), key=lambda n: int(n[1:])))
    print("pairs:    ", [tuple(sorted(p)) for p in rep.pair_names()])
    scan = conjecture1_scan(ctx, depth=6)
    for row in scan.rows:
        print(f"  {row.name:>4} self-dual={row.self_dual!s:5} product of 2-level={row.decomposable}")
    print("counterexamples:", scan.counterexamples)

# four levels: the scan is exploratory
ctx = make_context((1, F(1, 2), F(1, 4), F(1, 8)))
scan = conjecture1_scan(ctx, depth=2)
print(f"d = 4: {len(scan.rows)} indecomposable-sum vertices,",
      f"{sum(r.self_dual for r in scan.rows)} self-dual,",
      f"{len(scan.counterexamples)} counterexamples at depth 2")
