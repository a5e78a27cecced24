"""Thermal Processes: Gibbs-preserving column-stochastic matrices on diagonal states."""

from .core import (DiagState, GibbsContext, InvalidProcess, ThermalError, ThermalProcess,
                   apply, compose, identity, make_context, make_state, mix, to_transportation,
                   validate_tp)
from .decompose import (approx_bound, build_P, mixture_decomposable, product_decomposable,
                        reach2_closure, transition_pair, unique_tp_for)
from .duality import conjecture1_scan, conjugate, duality_report, is_self_dual
from .thermo import (beta_order, curve, find_tp, order_map_check, slope_map,
                     thermomajorizes)
from .thresholds import (allocation_total, construct_threshold_tp, fmin, solve_beta0,
                         threshold_pairs, undetermined_pairs, w_extr)
from .vertices import catalog3, enumerate_vertices, is_extremal, regime

__all__ = [
    "DiagState", "GibbsContext", "InvalidProcess", "ThermalError", "ThermalProcess",
    "apply", "compose", "identity", "make_context", "make_state", "mix", "to_transportation",
    "validate_tp", "approx_bound", "build_P", "mixture_decomposable", "product_decomposable",
    "reach2_closure", "transition_pair", "unique_tp_for", "conjecture1_scan", "conjugate",
    "duality_report", "is_self_dual", "beta_order", "curve", "find_tp", "order_map_check",
    "slope_map", "thermomajorizes", "allocation_total", "construct_threshold_tp", "fmin",
    "solve_beta0", "threshold_pairs", "undetermined_pairs", "w_extr", "catalog3",
    "enumerate_vertices", "is_extremal", "regime",
]
