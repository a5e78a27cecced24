"""Decomposability of Thermal Processes into processes on fewer levels.

Covers the non-decomposable process ``P(d)`` that is forced by the transition
``(1, 0, ..., 0) -> (1 - sum q_i, q_1, ..., q_{d-1})``, product and mixture
searches over k-level generators, and the reachable-state closure under
two-level processes together with its closed-form distance bound.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from fractions import Fraction

from .core import (DiagState, GibbsContext, ThermalError, ThermalProcess, apply, identity,
                   matmul, validate_tp)
from . import exactlp
from .thermo import _slice_constraints, _unflatten
from .vertices import embed, enumerate_vertices

DEFAULT_PRODUCT_CAP = 200_000


def transition_pair(ctx: GibbsContext):
    """Ground state and the target state reachable only through ``P(d)``."""
    d = ctx.d
    p = DiagState(tuple(ctx.one if i == 0 else ctx.zero for i in range(d)))
    rest = ctx.weights[1:]
    r = DiagState((1 - sum(rest, ctx.zero), *rest))
    return p, r


def build_P(ctx: GibbsContext) -> ThermalProcess:
    """The unique TP mapping the ground state to the target of :func:`transition_pair`."""
    d = ctx.d
    head = 1 - sum(ctx.weights[1:], ctx.zero)
    if head < 0 and not ctx.is_zero(head):
        raise ThermalError("P(d) needs q_1 + ... + q_{d-1} <= 1 (temperature too high)")
    m = [[ctx.zero] * d for _ in range(d)]
    m[0][0] = head
    for j in range(1, d):
        m[0][j] = ctx.one
    for i in range(1, d):
        m[i][0] = ctx.weights[i]
    return validate_tp(ctx, m)


@dataclass
class SliceResult:
    status: str  # "unique" | "many" | "none"
    witnesses: list = field(default_factory=list)

    @property
    def process(self) -> ThermalProcess | None:
        return self.witnesses[0] if self.status == "unique" else None


def unique_tp_for(ctx: GibbsContext, p, r) -> SliceResult:
    """Classify the slice ``{T TP : T p = r}`` as a point, a larger set or empty.

    The slice is a point iff every entry has equal minimum and maximum over it.
    """
    if not ctx.exact:
        raise ThermalError("unique_tp_for requires exact mode")
    A, b = _slice_constraints(ctx, tuple(p), tuple(r))
    n = ctx.d ** 2
    first = exactlp.feasible_point(A, b)
    if first is None:
        return SliceResult("none")
    for k in range(n):
        c = [0] * n
        c[k] = 1
        lo = exactlp.linprog(c, A, b)
        c[k] = -1
        hi = exactlp.linprog(c, A, b)
        if lo.x[k] != hi.x[k]:
            return SliceResult("many", [validate_tp(ctx, _unflatten(ctx, lo.x)),
                                        validate_tp(ctx, _unflatten(ctx, hi.x))])
    return SliceResult("unique", [validate_tp(ctx, _unflatten(ctx, first))])


@dataclass(frozen=True)
class KLevelGenerator:
    levels: tuple  # levels the process acts on; () for the identity
    process: ThermalProcess


def two_level_extremal(ctx: GibbsContext, i: int, j: int) -> ThermalProcess:
    """Non-identity vertex of the two-level polytope on levels ``i < j``."""
    q = ctx.q(j, i)
    m = [list(r) for r in identity(ctx).m]
    m[i][i], m[i][j] = 1 - q, ctx.one
    m[j][i], m[j][j] = q, ctx.zero
    return validate_tp(ctx, m)


def klevel_generators(ctx: GibbsContext, k: int) -> list:
    """Extremal TPs acting non-trivially on at most ``k`` levels, plus identity."""
    d = ctx.d
    if not 2 <= k <= d:
        raise ThermalError(f"k must lie in [2, {d}]")
    gens = [KLevelGenerator((), identity(ctx))]
    seen = {gens[0].process.m}
    if k == 2:
        for i, j in itertools.combinations(range(d), 2):
            g = two_level_extremal(ctx, i, j)
            gens.append(KLevelGenerator((i, j), g))
            seen.add(g.m)
        return gens
    for levels in itertools.combinations(range(d), k):
        sub = ctx.subcontext(levels)
        for v in enumerate_vertices(sub):
            g = embed(ctx, levels, v)
            if g.m not in seen:
                seen.add(g.m)
                gens.append(KLevelGenerator(levels, g))
    return gens


@dataclass
class ProductSearch:
    found: bool
    sequence: tuple = ()  # generator indices, leftmost factor first
    depth: int = 0
    explored: int = 0
    capped: bool = False

    def __bool__(self):
        return self.found


def _products(ctx, gens, depth, cap):
    """Distinct products of at most ``depth`` generators, with a shortest word each.

    Yields ``(depth, {matrix: word})`` level by level.  Stops early with the
    last level flagged when the running total exceeds ``cap``.
    """
    ident = identity(ctx).m
    known = {ident: ()}
    frontier = {ident: ()}
    yield 0, frontier, False
    for dep in range(1, depth + 1):
        nxt = {}
        for m, word in frontier.items():
            for gi, g in enumerate(gens):
                if not g.levels:
                    continue
                prod = matmul(g.process.m, m)
                if prod not in known and prod not in nxt:
                    nxt[prod] = (gi, *word)
        known.update(nxt)
        capped = len(known) > cap
        yield dep, nxt, capped
        if capped or not nxt:
            return
        frontier = nxt


def product_decomposable(ctx: GibbsContext, t: ThermalProcess, k: int, depth: int,
                         cap: int = DEFAULT_PRODUCT_CAP, gens=None) -> ProductSearch:
    """Search for ``t`` among products of at most ``depth`` k-level generators.

    Complete at the given depth unless ``capped`` is reported.
    """
    if not ctx.exact:
        raise ThermalError("product search requires exact mode")
    gens = gens if gens is not None else klevel_generators(ctx, k)
    explored = 0
    for dep, level, capped in _products(ctx, gens, depth, cap):
        explored += len(level)
        if t.m in level:
            return ProductSearch(True, level[t.m], dep, explored)
        if capped:
            return ProductSearch(False, (), dep, explored, True)
    return ProductSearch(False, (), depth, explored)


@dataclass
class MixtureSearch:
    found: bool
    combination: list = field(default_factory=list)  # (weight, word, matrix)
    products: int = 0
    capped: bool = False

    def __bool__(self):
        return self.found


def mixture_decomposable(ctx: GibbsContext, t: ThermalProcess, k: int, depth: int,
                         cap: int = DEFAULT_PRODUCT_CAP, gens=None) -> MixtureSearch:
    """Whether ``t`` is a convex combination of products of k-level generators."""
    if not ctx.exact:
        raise ThermalError("mixture search requires exact mode")
    gens = gens if gens is not None else klevel_generators(ctx, k)
    words = {}
    capped = False
    for _, level, cap_hit in _products(ctx, gens, depth, cap):
        words.update(level)
        capped = cap_hit
    mats = list(words)
    flat = [tuple(x for row in m for x in row) for m in mats]
    target = tuple(x for row in t.m for x in row)
    lam = exactlp.in_hull(target, flat)
    if lam is None:
        return MixtureSearch(False, [], len(mats), capped)
    combo = [(w, words[m], m) for w, m in zip(lam, mats) if w]
    d = ctx.d
    recon = [[sum((w * m[i][j] for w, _, m in combo), Fraction(0)) for j in range(d)]
             for i in range(d)]
    assert tuple(tuple(r) for r in recon) == t.m
    return MixtureSearch(True, combo, len(mats), capped)


def factor_forcing(ctx: GibbsContext, vertices=None) -> dict:
    """Check every vertex pair ``(A, B)`` with ``A B = P(d)``.

    The product representation forces one factor to equal ``P`` and the other
    to act trivially on the ground level.  Returns the factorizations found
    and whether all of them obey this.
    """
    P = build_P(ctx)
    verts = list(vertices if vertices is not None else enumerate_vertices(ctx))
    facts = []
    ok = True
    for a in verts:
        for b in verts:
            if matmul(a.m, b.m) == P.m:
                good = (a.m == P.m and b.m[0][0] == 1) or (b.m == P.m and a.m[0][0] == 1)
                ok &= good
                facts.append((a, b, good))
    return {"factorizations": facts, "holds": ok}


# -- approximate reachability -----------------------------------------------------

@dataclass
class ReachSet:
    depth: int
    vertices: list  # DiagStates, hull vertices
    history: list  # hull vertices after each depth 0..depth
    fixed_point: bool
    partial: bool = False


def _project(v):
    return tuple(v[:-1])


def _lift(x):
    return DiagState((*x, 1 - sum(x, Fraction(0))))


def reach2_closure(ctx: GibbsContext, p, depth: int, max_vertices: int = 5000) -> ReachSet:
    """Hull of states reachable from ``p`` by mixtures of sequences of two-level TPs.

    Iterates ``S_{t+1} = hull(S_t u {E v : E two-level extremal, v in S_t})``.
    Stops at ``depth`` or at a fixed point.  ``partial`` is set when the
    vertex count exceeds ``max_vertices``.
    """
    if not ctx.exact:
        raise ThermalError("reach2_closure requires exact mode")
    if ctx.d > 4:
        raise ThermalError("reach2_closure is limited to d <= 4")
    gens = [g.process for g in klevel_generators(ctx, 2) if g.levels]
    current = [DiagState(tuple(p))]
    history = [list(current)]
    fixed = False
    partial = False
    for _ in range(depth):
        pts = {_project(v.p) for v in current}
        for g in gens:
            for v in current:
                pts.add(_project(apply(g, v).p))
        hull = exactlp.hull_vertices(sorted(pts))
        new = [_lift(x) for x in hull]
        if {v.p for v in new} == {v.p for v in current}:
            fixed = True
            current = new
            history.append(list(new))
            break
        current = new
        history.append(list(new))
        if len(new) > max_vertices:
            partial = True
            break
    return ReachSet(len(history) - 1, current, history, fixed, partial)


def min_l1_to(states, r) -> Fraction:
    """Smallest L1 distance between ``r`` and the hull of ``states``."""
    pts = [tuple(s) for s in states]
    dist, _ = exactlp.min_l1_distance(pts, tuple(r))
    return dist


def approx_bound_terms(ctx: GibbsContext, as_printed: bool = False) -> dict:
    """Named lower-bound terms for the two-level approximation of ``P(d)``.

    The default uses the terms that follow from the case-by-case slope
    analysis; ``as_printed`` reproduces the alternative final expression in
    which two of the ``i = 1`` terms differ (one of them is negative whenever
    ``E_1 > 0``).
    """
    d = ctx.d
    if d < 3:
        raise ThermalError("bound is defined for d >= 3")
    if ctx.lt(1, sum(ctx.weights[1:], ctx.zero)):
        raise ThermalError("bound needs q_1 + ... + q_{d-1} <= 1")
    q = ctx.q
    terms = {}
    for i in range(2, d):
        terms[f"q{i-1}0*q{i}0"] = q(i - 1, 0) * q(i, 0)
        terms[f"q{i-1}0^2*(1-q{i}{i-1})"] = q(i - 1, 0) ** 2 * (1 - q(i, i - 1))
    q10, q20, q21 = q(1, 0), q(2, 0), q(2, 1)
    terms["q20*q10"] = q20 * q10
    terms["q10^2*(1-q10)"] = q10 ** 2 * (1 - q10)
    if as_printed:
        terms["q10*(q20-q21)"] = q10 * (q20 - q21)
        terms["q10*(2q21+q10*(1-q21^2))"] = q10 * (2 * q21 + q10 * (1 - q21 ** 2))
    else:
        terms["q10*(q10-q20)"] = q10 * (q10 - q20)
        terms["q10*(2q21+q10*(1-q21)^2)"] = q10 * (2 * q21 + q10 * (1 - q21) ** 2)
    return terms


def approx_bound(ctx: GibbsContext, as_printed: bool = False):
    """Lower bound on the L1 distance from two-level-reachable states to the target."""
    return min(approx_bound_terms(ctx, as_printed).values())
