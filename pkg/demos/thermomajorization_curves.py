"""
Thermomajorization curves and beta-order maps
=============================================

Draw the curves of a state and of its images under several catalog
processes, then rebuild the table of which vertex sends which beta-order to
which, keeping every elbow on the input curve.
"""

from fractions import Fraction as F
from pathlib import Path

from thermoproc import make_context
from thermoproc.render import curves_csv, curves_svg
from thermoproc.reproduce import fig3_curves, table1

ctx, curves = fig3_curves()
for label, c in curves:
    print(f"{label:>5}: order {''.join(map(str, c.order.one_based()))}",
          "elbows", [(round(float(x), 3), round(float(y), 3)) for x, y in c.elbows[1:]])

out = Path("demo_output")
out.mkdir(exist_ok=True)
(out / "curves.svg").write_text(curves_svg(curves))
(out / "curves.csv").write_text(curves_csv(curves))

for weights in [(1, F(1, 2), F(1, 4)), (1, F(9, 10), F(8, 10))]:
    res = table1(make_context(weights), samples=100, seed=1)
    print(f"\n{res['regime']} threshold:")
    for order in ("312", "321", "231"):
        cells = [c for c in res["cells"] if c["order_in"] == order]
        print(f"  ({order})", ", ".join(f"{c['process']}({'|'.join(c['observed'])})"
                                       for c in cells))
    print("  all cells match:", res["all_match"])
