"""Reference values and routines that regenerate them.

Golden data: the table of beta-order maps, three-level vertex counts,
threshold counts and the inputs of the curve figure.
"""

from __future__ import annotations

from fractions import Fraction

from .core import GibbsContext, make_context, make_state, apply
from .thermo import curve, order_map_check
from .thresholds import undetermined_pairs
from .vertices import Regime, catalog_matrix, enumerate_vertices, regime

# Table of beta-order maps.  Keys: regime, input order (1-based).  Values:
# catalog name -> set of accepted output orders (two where the order is degenerate).
TABLE1 = {
    Regime.BELOW: {
        "312": {"A1": {"321"}, "A3": {"132"}, "A4": {"231"}, "A7": {"123"}, "A8": {"213"}},
        "321": {"A1": {"312"}, "A2": {"231"}, "A5": {"213"}, "A9": {"132", "123"}},
        "231": {"A2": {"321"}, "A3": {"213"}, "A6": {"312"}, "A9": {"132", "123"}},
    },
    Regime.ABOVE: {
        "312": {"A1": {"321"}, "A3": {"132"}, "A4": {"231"}, "A7": {"123"}, "A8": {"213"}},
        "321": {"A1": {"312"}, "A2": {"231"}, "A5": {"213"}, "A12": {"132"}, "A13": {"123"}},
        "231": {"A2": {"321"}, "A3": {"213"}, "A6": {"312"}, "A10": {"132"}, "A11": {"123"}},
    },
}

# Three-level vertex counts: below threshold, above threshold, all weights equal.
VERTEX_COUNTS = {
    "below": ((1, Fraction(1, 2), Fraction(1, 4)), 10),
    "above": ((1, Fraction(9, 10), Fraction(8, 10)), 13),
    "degenerate": ((1, 1, 1), 6),
}

# Number of threshold temperatures for d = 3, 4, 5, 6.
THRESHOLD_COUNTS = {3: 1, 4: 6, 5: 26, 6: 106}

# Curve figure: beta E = (0, 1, 2), p = (0, 0.9, 0.1) and its images.
FIG3_ENERGIES = (0.0, 1.0, 2.0)
FIG3_STATE = (0.0, 0.9, 0.1)
FIG3_MAPS = ("A2", "A3", "A4", "A6", "A9")


def table1(ctx: GibbsContext, samples: int = 100, seed: int = 0) -> dict:
    """Recompute every cell of the order-map table for the regime of ``ctx``.

    Each cell records the expected orders, the orders common to every sampled
    image, whether all elbows stayed on the input curve, and ``match``.
    """
    reg = regime(ctx)
    if reg is Regime.AT:
        raise ValueError("the table is not defined at the threshold temperature")
    rows = []
    for order_in, cells in TABLE1[reg].items():
        for name, expected in cells.items():
            t = catalog_matrix(ctx, name)
            rep = order_map_check(ctx, t, order_in, samples=samples, seed=seed)
            got = {"".join(map(str, o)) for o in rep.common_orders_one_based()}
            rows.append({
                "order_in": order_in, "process": name,
                "expected": sorted(expected), "observed": sorted(got),
                "elbows_on_curve": rep.elbows_on_curve,
                "match": got == expected and rep.elbows_on_curve,
            })
    return {"regime": reg.value, "samples": samples, "seed": seed, "cells": rows,
            "all_match": all(r["match"] for r in rows)}


def threshold_counts(dmax: int = 6) -> dict:
    out = {}
    for d in range(3, dmax + 1):
        got = len(undetermined_pairs(d))
        row = {"d": d, "count": got}
        if d in THRESHOLD_COUNTS:
            row["reference"] = THRESHOLD_COUNTS[d]
            row["match"] = got == THRESHOLD_COUNTS[d]
        out[d] = row
    return out


def vertex_counts() -> dict:
    out = {}
    for label, (weights, expected) in VERTEX_COUNTS.items():
        ctx = make_context(weights)
        n = len(enumerate_vertices(ctx))
        out[label] = {"weights": [str(Fraction(w)) for w in weights], "count": n,
                      "reference": expected, "match": n == expected}
    return out


def fig3_curves():
    """``(label, ThermoCurve)`` pairs for the curve figure, in float mode."""
    ctx = make_context(energies=FIG3_ENERGIES, beta=1.0)
    p = make_state(ctx, FIG3_STATE)
    curves = [("p", curve(ctx, p))]
    for name in FIG3_MAPS:
        curves.append((f"{name} p", curve(ctx, apply(catalog_matrix(ctx, name), p))))
    return ctx, curves
