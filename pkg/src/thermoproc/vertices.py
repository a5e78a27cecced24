"""Extreme points of the Thermal Process polytope.

Scaling column ``j`` of a TP by ``q_{j,0}`` gives a transportation matrix
with both margins equal to the weights.  Its vertices are the basic feasible
solutions, whose supports are forests of the complete bipartite graph
``K_{d,d}``.  Every forest extends to a spanning tree and a spanning tree fixes
the transportation entries uniquely, so solving the ``d^(2d-2)`` spanning
trees and keeping the non-negative solutions yields every vertex (degenerate
vertices show up once per completing tree and are deduplicated).
"""

from __future__ import annotations

import enum
import itertools
import random
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable, Iterator

from .core import (GibbsContext, ThermalError, ThermalProcess, identity, make_context,
                   matmul, mix, to_transportation, validate_tp)
from . import exactlp

DEFAULT_CAP = 5


# -- spanning trees -----------------------------------------------------------

def spanning_trees(d: int, first_edge: int | None = None) -> Iterator[tuple]:
    """Spanning trees of ``K_{d,d}`` as tuples of ``(row, col)`` edges.

    With ``first_edge`` set, only trees whose lowest-indexed edge (row-major)
    is that edge; the partitions over all first edges cover every tree once.
    """
    edges = [(i, j) for i in range(d) for j in range(d)]
    need = 2 * d - 1
    E = len(edges)
    parent = list(range(2 * d))
    chosen: list = []

    def find(x):
        while parent[x] != x:
            x = parent[x]
        return x

    def rec(k):
        if len(chosen) == need:
            yield tuple(edges[c] for c in chosen)
            return
        if E - k < need - len(chosen):
            return
        i, j = edges[k]
        a, b = find(i), find(d + j)
        if a != b:
            parent[a] = b
            chosen.append(k)
            yield from rec(k + 1)
            chosen.pop()
            parent[a] = a
        yield from rec(k + 1)

    if first_edge is None:
        yield from rec(0)
        return
    # force edges[first_edge] to be the first chosen edge
    i, j = edges[first_edge]
    parent[find(i)] = find(d + j)
    chosen.append(first_edge)
    yield from rec(first_edge + 1)


def solve_tree(tree, rows, cols):
    """Transportation entries on ``tree`` with margins ``rows``/``cols``.

    Leaves are peeled one at a time: a leaf's only edge carries its residual
    margin.  Returns ``{(i, j): value}`` or ``None`` when a value is negative.
    """
    d = len(rows)
    resid = list(rows) + list(cols)
    adj = [set() for _ in range(2 * d)]
    for i, j in tree:
        adj[i].add(d + j)
        adj[d + j].add(i)
    leaves = [v for v in range(2 * d) if len(adj[v]) == 1]
    sol = {}
    while leaves:
        v = leaves.pop()
        if len(adj[v]) != 1:
            continue
        (u,) = adj[v]
        x = resid[v]
        if x < 0:
            return None
        resid[u] -= x
        resid[v] = 0
        edge = (v, u - d) if v < d else (u, v - d)
        sol[edge] = x
        adj[u].discard(v)
        adj[v].clear()
        if len(adj[u]) == 1:
            leaves.append(u)
    if any(r != 0 for r in resid):
        return None
    return sol


def _tree_vertices(args):
    weights, first_edge = args
    d = len(weights)
    found = set()
    for tree in spanning_trees(d, first_edge):
        sol = solve_tree(tree, weights, weights)
        if sol is None:
            continue
        m = [[Fraction(0)] * d for _ in range(d)]
        for (i, j), x in sol.items():
            m[i][j] = x / weights[j]
        found.add(tuple(tuple(r) for r in m))
    return found


class Regime(str, enum.Enum):
    """Temperature regime of a three-level system."""

    BELOW = "below"   # below the threshold temperature, q1 + q2 < 1
    AT = "at-threshold"
    ABOVE = "above"   # above the threshold temperature, q1 + q2 > 1


@dataclass
class VertexSet:
    ctx: GibbsContext
    vertices: list
    regime: Regime | None = None

    def __len__(self):
        return len(self.vertices)

    def __iter__(self):
        return iter(self.vertices)

    def matrices(self) -> set:
        return {v.m for v in self.vertices}


def enumerate_vertices(ctx: GibbsContext, cap: int = DEFAULT_CAP, jobs: int = 1) -> VertexSet:
    """All extreme points of the TP polytope of ``ctx`` (exact mode only).

    ``jobs > 1`` distributes the spanning trees over worker processes, split by
    their first edge.  Output is sorted lexicographically by matrix entries.
    """
    if not ctx.exact:
        raise ThermalError("vertex enumeration requires exact mode")
    d = ctx.d
    if d > cap:
        raise ThermalError(f"d = {d} exceeds the enumeration cap {cap}")
    tasks = [(ctx.weights, e) for e in range(d)]  # a tree's first edge lies in row 0
    if jobs > 1:
        with ProcessPoolExecutor(max_workers=jobs) as ex:
            parts = list(ex.map(_tree_vertices, tasks))
    else:
        parts = [_tree_vertices(t) for t in tasks]
    mats = set().union(*parts)
    verts = [ThermalProcess(ctx, m) for m in sorted(mats)]
    return VertexSet(ctx, verts, regime(ctx) if d == 3 else None)


# -- extremality ----------------------------------------------------------------

@dataclass
class Extremality:
    extremal: bool
    zero_count: int
    necessary_ok: bool  # zero_count >= (d-1)^2

    def __bool__(self):
        return self.extremal


def support(t: ThermalProcess) -> list:
    return [(i, j) for i in range(t.d) for j in range(t.d) if not t.ctx.is_zero(t.m[i][j])]


def is_forest(d: int, edges) -> bool:
    parent = list(range(2 * d))

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    for i, j in edges:
        a, b = find(i), find(d + j)
        if a == b:
            return False
        parent[a] = b
    return True


def is_extremal(ctx: GibbsContext, t: ThermalProcess) -> Extremality:
    """Forest test on the support of the transportation matrix."""
    d = ctx.d
    zeros = t.zero_count()
    return Extremality(is_forest(d, support(t)), zeros, zeros >= (d - 1) ** 2)


def active_rank_test(ctx: GibbsContext, t: ThermalProcess) -> bool:
    """Independent check: the support columns of the constraint matrix are independent."""
    d = ctx.d
    sup = support(t)
    cols = []
    for i, j in sup:
        col = [0] * (2 * d)
        col[j] = 1            # column-sum constraint of T column j
        col[d + i] = ctx.weights[j]  # Gibbs constraint of row i
        cols.append(col)
    return exactlp.rank(cols) == len(sup)


# -- the three-level catalog ------------------------------------------------------

def regime(ctx: GibbsContext) -> Regime:
    if ctx.d != 3:
        raise ThermalError("regime is defined for d = 3")
    s = 1 - ctx.weights[1] - ctx.weights[2]
    if ctx.is_zero(s):
        return Regime.AT
    return Regime.BELOW if s > 0 else Regime.ABOVE


def near_threshold(ctx: GibbsContext) -> bool:
    """Float-mode flag: the regime sign is within the comparison tolerance."""
    return ctx.is_zero(1 - ctx.weights[1] - ctx.weights[2])


@dataclass(frozen=True)
class CatalogEntry:
    name: str
    build: Callable = field(repr=False)
    valid: Callable = field(repr=False)


def _q(ctx):
    q10, q20 = ctx.weights[1], ctx.weights[2]
    q21 = q20 / q10
    return q10, q20, q21, 1 / q20, q10 / q20, 1 / q10  # ..., q02, q12, q01


def _A0(c):
    return identity(c).m


def _A1(c):
    q10, q20, q21, *_ = _q(c)
    return ((1 - q10, 1, 0), (q10, 0, 0), (0, 0, 1))


def _A2(c):
    q10, q20, q21, *_ = _q(c)
    return ((1, 0, 0), (0, 1 - q21, 1), (0, q21, 0))


def _A3(c):
    q10, q20, q21, *_ = _q(c)
    return ((1 - q20, 0, 1), (0, 1, 0), (q20, 0, 0))


def _A4(c):
    q10, q20, q21, *_ = _q(c)
    return ((1 - q10, 1, 0), (q10 - q20, 0, 1), (q20, 0, 0))


def _A5(c):
    q10, q20, q21, *_ = _q(c)
    return ((1 - q20, q21, 0), (0, 1 - q21, 1), (q20, 0, 0))


def _A6(c):
    q10, q20, q21, *_ = _q(c)
    return ((1 - q10, 1 - q21, 1), (q10, 0, 0), (0, q21, 0))


def _A7(c):
    q10, q20, q21, *_ = _q(c)
    return ((1 - q20, 0, 1), (q20, 1 - q21, 0), (0, q21, 0))


def _A8(c):
    q10, q20, q21, *_ = _q(c)
    return ((1 - q10 + q20, 1 - q21, 0), (q10 - q20, 0, 1), (0, q21, 0))


def _A9(c):
    q10, q20, *_ = _q(c)
    return ((1 - q10 - q20, 1, 1), (q10, 0, 0), (q20, 0, 0))


def _A10(c):
    q10, q20, q21, q02, q12, q01 = _q(c)
    return ((0, 1, q02 - q12), (q10, 0, 0), (1 - q10, 0, 1 - q02 + q12))


def _A11(c):
    q10, q20, q21, q02, q12, q01 = _q(c)
    return ((0, 1, q02 - q12), (1 - q20, 0, 1 - q02 + q12), (q20, 0, 0))


def _A12(c):
    q10, q20, q21, q02, q12, q01 = _q(c)
    return ((0, q01 - q21, 1), (q10, 0, 0), (1 - q10, 1 - q01 + q21, 0))


def _A13(c):
    q10, q20, q21, q02, q12, q01 = _q(c)
    return ((0, q01 - q21, 1), (1 - q20, 1 - q01 + q21, 0), (q20, 0, 0))


def _always(c):
    return True


def _low_t(c):
    return c.le(c.weights[1] + c.weights[2], 1)


def _high_t(c):
    return c.le(1, c.weights[1] + c.weights[2])


CATALOG3 = tuple(
    [CatalogEntry(f"A{i}", b, _always)
     for i, b in enumerate([_A0, _A1, _A2, _A3, _A4, _A5, _A6, _A7, _A8])]
    + [CatalogEntry("A9", _A9, _low_t)]
    + [CatalogEntry(f"A{i}", b, _high_t) for i, b in zip(range(10, 14), [_A10, _A11, _A12, _A13])]
)
UNIVERSAL = tuple(f"A{i}" for i in range(9))


def catalog_matrix(ctx: GibbsContext, name: str) -> ThermalProcess:
    """Closed-form catalog matrix ``name`` (validated; raises if invalid for ctx)."""
    if ctx.d != 3:
        raise ThermalError("the catalog is defined for d = 3")
    entry = next(e for e in CATALOG3 if e.name == name)
    return validate_tp(ctx, entry.build(ctx))


def catalog3(ctx: GibbsContext) -> dict:
    """Catalog members valid for the regime of ``ctx``, keyed by name."""
    if ctx.d != 3:
        raise ThermalError("the catalog is defined for d = 3")
    return {e.name: catalog_matrix(ctx, e.name) for e in CATALOG3 if e.valid(ctx)}


def name_vertices(ctx: GibbsContext, vertices) -> list:
    """Catalog names for each vertex (``None`` when unmatched or d != 3).

    At the threshold temperature A9..A13 coincide; the lowest name wins.
    """
    if ctx.d != 3:
        return [None] * len(list(vertices))
    cat = catalog3(ctx)
    out = []
    for v in vertices:
        out.append(next((n for n, t in cat.items() if t.same(v)), None))
    return out


def minimal_generating_set(ctx: GibbsContext) -> list:
    """Generators that produce every TP by mixtures and compositions (d = 3)."""
    if ctx.d != 3:
        raise ThermalError("defined for d = 3")
    names = ["A0", "A1", "A2", "A3", "A8"]
    names += ["A9"] if _low_t(ctx) else ["A10", "A11", "A12", "A13"]
    return [catalog_matrix(ctx, n) for n in names]


def generating_set_names(ctx: GibbsContext) -> list:
    names = ["A0", "A1", "A2", "A3", "A8"]
    return names + (["A9"] if _low_t(ctx) else ["A10", "A11", "A12", "A13"])


def random_tp(ctx: GibbsContext, rng: random.Random, vertices=None, terms: int = 4,
              denominator: int = 16) -> ThermalProcess:
    """Random exact TP as a convex mixture of a few random vertices."""
    verts = list(vertices if vertices is not None else enumerate_vertices(ctx))
    picks = [rng.choice(verts) for _ in range(terms)]
    raw = [rng.randint(1, denominator) for _ in picks]
    tot = sum(raw)
    return mix([(Fraction(w, tot), v) for w, v in zip(raw, picks)])


def embed(ctx: GibbsContext, levels, sub: ThermalProcess) -> ThermalProcess:
    """Embed a process on ``levels`` into ``ctx``, acting as identity elsewhere."""
    levels = sorted(levels)
    m = [list(r) for r in identity(ctx).m]
    for a, i in enumerate(levels):
        for b, j in enumerate(levels):
            m[i][j] = sub.m[a][b]
    return validate_tp(ctx, m)
