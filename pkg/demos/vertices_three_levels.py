"""
Extreme points of three-level Thermal Processes
===============================================

Enumerate the vertices of the Gibbs-preserving stochastic matrices on either
side of the threshold temperature and match them to the closed-form catalog.
"""

from fractions import Fraction as F

from thermoproc import enumerate_vertices, make_context
from thermoproc.vertices import generating_set_names, name_vertices

# Below the threshold q1 + q2 < 1, above it q1 + q2 > 1
for weights in [(1, F(1, 2), F(1, 4)), (1, F(9, 10), F(8, 10))]:
    ctx = make_context(weights)
    vs = enumerate_vertices(ctx)
    names = name_vertices(ctx, list(vs))
    print(f"weights {[str(w) for w in ctx.weights]}: {len(vs)} vertices ({vs.regime.value})")
    print("  ", " ".join(sorted(names, key=lambda n: int(n[1:]))))
    print("   generators:", " ".join(generating_set_names(ctx)))

# The non-universal vertex, written out
ctx = make_context((1, F(1, 2), F(1, 4)))
for name, v in zip(name_vertices(ctx, list(enumerate_vertices(ctx))), enumerate_vertices(ctx)):
    if name == "A9":
        for row in v.m:
            print("   ", "  ".join(f"{str(x):>5}" for x in row))

# Larger systems grow quickly
for weights in [(1, F(1, 2), F(1, 4), F(1, 8)), (1, F(1, 2), F(1, 3), F(1, 5), F(1, 7))]:
    ctx = make_context(weights)
    print(f"d = {ctx.d}: {len(enumerate_vertices(ctx, jobs=2))} vertices")
