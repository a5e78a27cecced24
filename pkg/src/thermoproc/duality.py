"""Detailed-balance conjugation of Thermal Processes."""

from __future__ import annotations

from dataclasses import dataclass, field

from .core import GibbsContext, ThermalError, ThermalProcess, validate_tp
from .decompose import klevel_generators, product_decomposable
from .vertices import enumerate_vertices, name_vertices


def conjugate(ctx: GibbsContext, t: ThermalProcess) -> ThermalProcess:
    """Adjoint with respect to the Gibbs-weighted scalar product.

    ``conj[i][j] = t[j][i] * q_{i,0} / q_{j,0}``, i.e. ``M t^T M^{-1}`` with
    ``M = diag(q_{0,0}, ..., q_{d-1,0})``.  Reverses every transition.
    """
    w = ctx.weights
    d = ctx.d
    return validate_tp(ctx, [[t.m[j][i] * w[i] / w[j] for j in range(d)] for i in range(d)])


def is_self_dual(ctx: GibbsContext, t: ThermalProcess) -> bool:
    return conjugate(ctx, t).same(t)


def direct_sum_blocks(t: ThermalProcess) -> list:
    """Level blocks of ``t``: connected components of its transition graph.

    More than one block means ``t`` is a direct sum of processes on fewer levels.
    """
    d = t.d
    ctx = t.ctx
    seen = [False] * d
    blocks = []
    for s in range(d):
        if seen[s]:
            continue
        comp, stack = [], [s]
        seen[s] = True
        while stack:
            i = stack.pop()
            comp.append(i)
            for j in range(d):
                if not seen[j] and (not ctx.is_zero(t.m[i][j]) or not ctx.is_zero(t.m[j][i])):
                    seen[j] = True
                    stack.append(j)
        blocks.append(tuple(sorted(comp)))
    return blocks


def is_direct_sum(t: ThermalProcess) -> bool:
    return len(direct_sum_blocks(t)) > 1


@dataclass
class DualityReport:
    self_dual: list = field(default_factory=list)   # (name, process)
    pairs: list = field(default_factory=list)       # ((name, process), (name, process))

    def self_dual_names(self) -> set:
        return {n for n, _ in self.self_dual}

    def pair_names(self) -> set:
        return {frozenset((a[0], b[0])) for a, b in self.pairs}


def duality_report(vs, names=None) -> DualityReport:
    """Split a vertex set into self-dual vertices and conjugate pairs.

    Raises if a conjugate falls outside the set, which would mean the
    enumeration missed a vertex.
    """
    verts = list(vs)
    ctx = verts[0].ctx
    if names is None:
        names = name_vertices(ctx, verts)
        names = [n if n is not None else f"V{k}" for k, n in enumerate(names)]
    index = {v.m: k for k, v in enumerate(verts)}
    rep = DualityReport()
    done = set()
    for k, v in enumerate(verts):
        if k in done:
            continue
        c = conjugate(ctx, v)
        j = index.get(c.m)
        if j is None:
            j = next((i for i, u in enumerate(verts) if u.same(c)), None)
        if j is None:
            raise ThermalError(f"conjugate of {names[k]} is not in the vertex set")
        done.update((k, j))
        if j == k:
            rep.self_dual.append((names[k], v))
        else:
            rep.pairs.append(((names[k], v), (names[j], verts[j])))
    return rep


@dataclass
class ConjectureRow:
    name: str
    self_dual: bool
    decomposable: bool
    inconclusive: bool
    word: tuple = ()


@dataclass
class ConjectureReport:
    rows: list
    counterexamples: list
    depth: int


def conjecture1_scan(ctx: GibbsContext, depth: int = 2, vertices=None,
                     cap: int = 200_000) -> ConjectureReport:
    """Look for a self-dual vertex that is a product of (d-1)-level extremal TPs.

    Vertices that are direct sums are skipped.  Nothing is asserted; a
    counterexample is only recorded.
    """
    if not ctx.exact:
        raise ThermalError("conjecture scan requires exact mode")
    if ctx.d > 4:
        raise ThermalError("conjecture scan is limited to d <= 4")
    verts = list(vertices if vertices is not None else enumerate_vertices(ctx))
    names = name_vertices(ctx, verts)
    names = [n if n is not None else f"V{k}" for k, n in enumerate(names)]
    gens = klevel_generators(ctx, ctx.d - 1)
    rows, bad = [], []
    for name, v in zip(names, verts):
        if is_direct_sum(v):
            continue
        sd = is_self_dual(ctx, v)
        res = product_decomposable(ctx, v, ctx.d - 1, depth, cap=cap, gens=gens)
        row = ConjectureRow(name, sd, res.found, res.capped and not res.found, res.sequence)
        rows.append(row)
        if sd and res.found:
            bad.append(row)
    return ConjectureReport(rows, bad, depth)
