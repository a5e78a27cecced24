"""
What two-level processes cannot do
==================================

The transition from the ground state to (1 - q1 - q2, q1, q2) forces a single
process that acts on all three levels at once.  Sequences and mixtures of
two-level processes never reach it, and stay a finite L1 distance away.
"""

from fractions import Fraction as F

from thermoproc import build_P, make_context, mixture_decomposable, reach2_closure, transition_pair
from thermoproc.decompose import approx_bound, approx_bound_terms, min_l1_to, unique_tp_for

ctx = make_context((1, F(1, 2), F(1, 4)))
p, r = transition_pair(ctx)
print("target", [str(x) for x in r])
print("forced process unique:", unique_tp_for(ctx, p, r).status)
print(build_P(ctx).m)

res = mixture_decomposable(ctx, build_P(ctx), k=2, depth=6)
print(f"mixture of {res.products} two-level products reproduces it: {res.found}")

rs = reach2_closure(ctx, p, depth=8)
for depth, states in enumerate(rs.history):
    print(f"depth {depth}: {len(states)} hull vertices, L1 distance {min_l1_to(states, r)}")
print("fixed point reached:", rs.fixed_point)

print("bound", approx_bound(ctx), "as printed", approx_bound(ctx, as_printed=True))
for name, value in approx_bound_terms(ctx).items():
    print(f"  {name:28s} {value}")

ctx4 = make_context((1, F(1, 2), F(1, 4), F(1, 8)))
p4, r4 = transition_pair(ctx4)
rs4 = reach2_closure(ctx4, p4, depth=5)
print("d = 4 distance", min_l1_to(rs4.vertices, r4), "bound", approx_bound(ctx4))
