"""JSON encoding of contexts, states and matrices.

Rationals are written as ``"num/den"`` strings, floats as JSON numbers.
Matrices are row-major nested arrays in the column-stochastic convention
(``m[i][j]`` is the probability of ``j -> i``).
"""

from __future__ import annotations

import json
from fractions import Fraction
from importlib import resources

from .core import (DiagState, GibbsContext, ThermalError, make_context, make_state,
                   rationalize, validate_tp)


def encode_scalar(x):
    if isinstance(x, Fraction):
        return str(x)
    if isinstance(x, (bool, int)):
        return x
    return float(x)


def encode(obj):
    """Recursively turn scalars into JSON-friendly values."""
    if isinstance(obj, (Fraction, float, int)) and not isinstance(obj, bool):
        return encode_scalar(obj)
    if isinstance(obj, DiagState):
        return [encode_scalar(x) for x in obj.p]
    if isinstance(obj, dict):
        return {str(k): encode(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple, set, frozenset)):
        items = sorted(obj) if isinstance(obj, (set, frozenset)) else obj
        return [encode(v) for v in items]
    if hasattr(obj, "m") and hasattr(obj, "ctx"):
        return encode(obj.m)
    return obj


def encode_matrix(m):
    if hasattr(m, "m"):
        m = m.m
    return [[encode_scalar(x) for x in row] for row in m]


def context_to_json(ctx: GibbsContext) -> dict:
    out = {"d": ctx.d, "weights": [encode_scalar(w) for w in ctx.weights]}
    if ctx.energies is not None:
        out["energies"] = list(ctx.energies)
        out["beta"] = ctx.beta
    return out


def _decode_scalar(x, exact, rationalize_floats):
    if isinstance(x, str):
        v = Fraction(x)
        return v if exact else float(v)
    if isinstance(x, float) and exact:
        if rationalize_floats:
            return rationalize(x)
        raise ThermalError(f"float {x!r} in exact mode (pass --rationalize)")
    if isinstance(x, int) and exact:
        return Fraction(x)
    return float(x)


def context_from_json(data: dict, mode: str | None = None, eps: float | None = None,
                      rationalize_floats: bool = False) -> GibbsContext:
    """Build a context from its JSON form.

    ``mode`` forces ``"exact"`` or ``"float"``; by default weights given as
    strings or integers are exact and floats are float.
    """
    kw = {} if eps is None else {"eps": eps}
    if "weights" in data:
        raw = data["weights"]
        if mode is None:
            exact = not any(isinstance(w, float) for w in raw)
        else:
            exact = mode == "exact"
        ws = [_decode_scalar(w, exact, rationalize_floats) for w in raw]
        ctx = make_context(ws, exact=exact, **kw)
    elif "energies" in data:
        if mode == "exact" and not rationalize_floats:
            raise ThermalError("energies+beta give a float context (pass --rationalize)")
        ctx = make_context(energies=data["energies"], beta=data["beta"], **kw)
        if mode == "exact":
            ctx = make_context([rationalize(w) for w in ctx.weights], exact=True, **kw)
    else:
        raise ThermalError("context needs 'weights' or 'energies'")
    if "d" in data and data["d"] != ctx.d:
        raise ThermalError(f"context says d = {data['d']} but has {ctx.d} weights")
    return ctx


def state_from_json(ctx: GibbsContext, data, rationalize_floats: bool = False) -> DiagState:
    p = data["p"] if isinstance(data, dict) else data
    return make_state(ctx, [_decode_scalar(x, ctx.exact, rationalize_floats) for x in p])


def matrix_from_json(ctx: GibbsContext, data, rationalize_floats: bool = False):
    m = data["matrix"] if isinstance(data, dict) else data
    return validate_tp(ctx, [[_decode_scalar(x, ctx.exact, rationalize_floats) for x in row]
                             for row in m])


def load_json(path):
    with open(path) as fh:
        return json.load(fh)


def schema(name: str) -> dict:
    """Shipped JSON schema ``name`` (``context``, ``state``, ``matrix``, ``output``)."""
    text = resources.files("thermoproc").joinpath("schemas", f"{name}.json").read_text()
    return json.loads(text)
