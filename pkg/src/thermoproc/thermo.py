"""Thermomajorization curves, beta-orders and the transition criterion."""

from __future__ import annotations

import itertools
import random
from dataclasses import dataclass
from fractions import Fraction
from typing import NamedTuple, Sequence

import numpy as np

from .core import (DiagState, GibbsContext, ThermalError, ThermalProcess, apply,
                   make_state, validate_tp)
from . import exactlp


@dataclass(frozen=True)
class BetaOrder:
    """Levels listed by non-increasing slope ``p_i / q_{i,0}`` (0-based).

    ``classes`` groups consecutive entries of ``perm`` with equal slopes.
    """

    perm: tuple
    classes: tuple

    def one_based(self) -> tuple:
        return tuple(i + 1 for i in self.perm)

    @property
    def degenerate(self) -> bool:
        return any(len(c) > 1 for c in self.classes)

    def all_orders(self) -> set:
        """Every permutation that is a valid beta-order (ties in any order)."""
        out = set()
        for choice in itertools.product(*(itertools.permutations(c) for c in self.classes)):
            out.add(tuple(i for block in choice for i in block))
        return out


def slope_vector(ctx: GibbsContext, p) -> tuple:
    """Segment slopes ``s_i = p_i q_{0,i}``."""
    return tuple(x / w for x, w in zip(p, ctx.weights))


def from_slopes(ctx: GibbsContext, s) -> DiagState:
    """Inverse of :func:`slope_vector`; ``s`` must give a normalised state."""
    return make_state(ctx, [x * w for x, w in zip(s, ctx.weights)])


def beta_order(ctx: GibbsContext, p) -> BetaOrder:
    s = slope_vector(ctx, p)
    # stable sort: ties keep ascending level index
    perm = sorted(range(ctx.d), key=lambda i: -s[i])
    classes = []
    for i in perm:
        if classes and ctx.eq(s[classes[-1][0]], s[i]):
            classes[-1].append(i)
        else:
            classes.append([i])
    return BetaOrder(tuple(perm), tuple(tuple(c) for c in classes))


def parse_order(order, one_based: bool = True) -> tuple:
    """Accept ``"312"``, ``(3, 1, 2)`` or a 0-based tuple."""
    if isinstance(order, str):
        order = [int(ch) for ch in order.replace(",", "").replace(" ", "")]
    order = tuple(int(i) - (1 if one_based else 0) for i in order)
    if sorted(order) != list(range(len(order))):
        raise ThermalError(f"{order} is not a permutation")
    return order


@dataclass(frozen=True)
class ThermoCurve:
    """Elbows ``(x_k, y_k)`` starting at ``(0, 0)``; x is cumulative Gibbs weight."""

    elbows: tuple
    order: BetaOrder

    def segment_slopes(self) -> tuple:
        return tuple((y1 - y0) / (x1 - x0)
                     for (x0, y0), (x1, y1) in zip(self.elbows, self.elbows[1:]))

    def value_at(self, x):
        """Height of the piecewise-linear curve at ``0 <= x <= Z``."""
        pts = self.elbows
        for (x0, y0), (x1, y1) in zip(pts, pts[1:]):
            if x <= x1:
                return y0 + (y1 - y0) * (x - x0) / (x1 - x0)
        return pts[-1][1]

    def xs(self):
        return tuple(x for x, _ in self.elbows)

    def ys(self):
        return tuple(y for _, y in self.elbows)


def curve(ctx: GibbsContext, p) -> ThermoCurve:
    order = beta_order(ctx, p)
    x = y = ctx.zero
    pts = [(x, y)]
    for i in order.perm:
        x = x + ctx.weights[i]
        y = y + p[i]
        pts.append((x, y))
    return ThermoCurve(tuple(pts), order)


class Majorization(NamedTuple):
    """Result of :func:`thermomajorizes`; truthy when the criterion holds."""

    holds: bool
    witness: tuple | None  # first elbow of the target curve above the source curve

    def __bool__(self):
        return self.holds


def thermomajorizes(ctx: GibbsContext, p, r) -> Majorization:
    """Whether every elbow of the curve of ``r`` lies on or below that of ``p``."""
    cp, cr = curve(ctx, p), curve(ctx, r)
    for x, y in cr.elbows[1:]:
        if not ctx.le(y, cp.value_at(x)):
            return Majorization(False, (x, y))
    return Majorization(True, None)


def elbows_on_curve(ctx: GibbsContext, p, r) -> bool:
    """All elbows of the curve of ``r`` lie exactly on the curve of ``p``."""
    cp, cr = curve(ctx, p), curve(ctx, r)
    return all(ctx.eq(y, cp.value_at(x)) for x, y in cr.elbows)


def _slice_constraints(ctx: GibbsContext, p, r):
    """Equalities of ``{T : T TP, T p = r}`` over the row-major entries of T."""
    d = ctx.d
    w = ctx.weights
    A, b = [], []
    for j in range(d):  # columns sum to one
        row = [0] * (d * d)
        for i in range(d):
            row[i * d + j] = 1
        A.append(row)
        b.append(1)
    for i in range(d):  # Gibbs rows
        row = [0] * (d * d)
        for j in range(d):
            row[i * d + j] = w[j]
        A.append(row)
        b.append(w[i])
    if p is not None:
        for i in range(d):
            row = [0] * (d * d)
            for j in range(d):
                row[i * d + j] = p[j]
            A.append(row)
            b.append(r[i])
    return A, b


def _unflatten(ctx, x):
    d = ctx.d
    return [[x[i * d + j] for j in range(d)] for i in range(d)]


def find_tp(ctx: GibbsContext, p, r) -> ThermalProcess | None:
    """Some TP with ``T p = r``, or ``None`` if no such process exists.

    Exact mode returns a vertex of the polytope slice.  Float mode uses a
    floating-point LP and revalidates with the context tolerance.
    """
    A, b = _slice_constraints(ctx, tuple(p), tuple(r))
    if ctx.exact:
        x = exactlp.feasible_point(A, b)
        return None if x is None else validate_tp(ctx, _unflatten(ctx, x))
    from scipy.optimize import linprog

    n = ctx.d ** 2
    res = linprog(np.zeros(n), A_eq=np.array(A, float), b_eq=np.array(b, float),
                  bounds=[(0, None)] * n, method="highs")
    if res.status != 0:
        return None
    m = np.clip(res.x, 0, None).reshape(ctx.d, ctx.d)
    m = m / m.sum(axis=0, keepdims=True)
    t = validate_tp(ctx, m)
    out = apply(t, p)
    if not all(ctx.eq(a, b_) for a, b_ in zip(out, r)):
        return None
    return t


def slope_map(t: ThermalProcess) -> tuple:
    """Matrix acting on slope vectors, ``A^s = M^{-1} A M``."""
    w = t.ctx.weights
    return tuple(tuple(t.m[i][j] * w[j] / w[i] for j in range(t.d)) for i in range(t.d))


def sample_state_with_order(ctx: GibbsContext, order: Sequence[int], rng: random.Random,
                            spread: int = 1000) -> DiagState:
    """Random state whose beta-order is strictly ``order`` (0-based)."""
    d = ctx.d
    vals = sorted(rng.sample(range(1, spread * d), d), reverse=True)
    slopes = [None] * d
    for level, v in zip(order, vals):
        slopes[level] = v
    raw = [s * w for s, w in zip(slopes, ctx.weights)]
    tot = sum(raw)
    return DiagState(tuple(x / tot for x in raw))


@dataclass
class OrderMapReport:
    """Outcome of :func:`order_map_check`.

    ``common_orders`` holds the permutations (0-based) that are valid
    beta-orders of every sampled output; empty when outputs disagree.
    """

    order_in: tuple
    samples: int
    common_orders: set
    elbows_on_curve: bool
    degenerate: bool

    @property
    def fixed_order(self) -> bool:
        return bool(self.common_orders)

    def common_orders_one_based(self) -> list:
        return sorted(tuple(i + 1 for i in o) for o in self.common_orders)


def order_map_check(ctx: GibbsContext, t: ThermalProcess, order_in, samples: int = 100,
                    seed: int = 0, one_based: bool = True) -> OrderMapReport:
    """Sample states of a fixed beta-order and look at their images under ``t``."""
    order = parse_order(order_in, one_based)
    if len(order) != ctx.d:
        raise ThermalError("order length does not match the context")
    rng = random.Random(seed)
    common = None
    on_curve = True
    degenerate = False
    for _ in range(samples):
        p = sample_state_with_order(ctx, order, rng)
        r = apply(t, p)
        bo = beta_order(ctx, r)
        degenerate |= bo.degenerate
        orders = bo.all_orders()
        common = orders if common is None else common & orders
        on_curve &= elbows_on_curve(ctx, p, r)
    return OrderMapReport(order, samples, common or set(), on_curve, degenerate)
