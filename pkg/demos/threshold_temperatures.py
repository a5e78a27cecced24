"""
Threshold temperatures
======================

Pairs of level sets whose Boltzmann sums swap order as the temperature
changes.  Each swap makes some vertices appear and others vanish.
"""

import math
from fractions import Fraction as F

from thermoproc import make_context, solve_beta0, threshold_pairs, undetermined_pairs
from thermoproc.thresholds import allocation_total, construct_threshold_tp

for d in range(2, 9):
    print(f"d = {d}: {len(undetermined_pairs(d)):5d} undetermined of {allocation_total(d)} pairs")

b = solve_beta0((0, 1, 2), (0,), (1, 2))
print("beta0 for E = (0, 1, 2):", b, "golden check", math.exp(-b) - (math.sqrt(5) - 1) / 2)

# an undetermined pair need not change sign for one particular spectrum
for tp in threshold_pairs((0, 0.7, 1.9, 2.4)):
    where = f"beta0 = {tp.beta0:.6f}" if tp.roots else "no sign change for this spectrum"
    print(f"  {tp.A} vs {tp.B}: {where}")

ctx = make_context((1, F(1, 2), F(1, 4)))
print(construct_threshold_tp(ctx, (0,), (1, 2)).m)
