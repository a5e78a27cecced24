"""Threshold temperatures, min-free energy and deterministic work.

Energies and work are in units of ``kT`` with ``k = 1``.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass
from fractions import Fraction

import numpy as np
from scipy.optimize import brentq

from .core import GibbsContext, ThermalError, ThermalProcess, validate_tp


# -- min-free energy and work ------------------------------------------------------

def support_weight(ctx: GibbsContext, p):
    """Sum of the Boltzmann weights over the support of ``p``."""
    if not ctx.exact and any(0 < abs(x) <= ctx.eps for x in p):
        raise ThermalError("support is ambiguous within the float tolerance")
    return sum((w for w, x in zip(ctx.weights, p) if x != 0), ctx.zero)


def _kt(ctx):
    return 1.0 / ctx.beta if ctx.beta else 1.0


def fmin(ctx: GibbsContext, p) -> float:
    """Min-free energy ``-kT ln sum_{i: p_i != 0} q_{i,0}``.

    Uses the context's ``beta`` when known, otherwise ``kT = 1``.
    """
    return -_kt(ctx) * math.log(support_weight(ctx, p))


def w_extr(ctx: GibbsContext, p) -> float:
    """Deterministically extractable work ``F_min(p) - F_min(gibbs)``."""
    return _kt(ctx) * (math.log(ctx.partition_function) - math.log(support_weight(ctx, p)))


# -- subset pairs ----------------------------------------------------------------

def dominates(A, B) -> bool:
    """``sum_A w >= sum_B w`` for every non-increasing positive weight vector.

    Holds iff every prefix ``{0..k}`` meets ``A`` at least as often as ``B``.
    """
    A, B = set(A), set(B)
    top = max(A | B)
    a = b = 0
    for k in range(top + 1):
        a += k in A
        b += k in B
        if b > a:
            return False
    return True


def subset_pairs(d: int):
    """Unordered pairs of disjoint non-empty subsets of ``range(d)``."""
    for labels in itertools.product((0, 1, 2), repeat=d):
        A = tuple(i for i, x in enumerate(labels) if x == 1)
        B = tuple(i for i, x in enumerate(labels) if x == 2)
        if A and B and min(A) < min(B):
            yield A, B


def undetermined_pairs(d: int) -> list:
    """Subset pairs whose weight-sum comparison the level order leaves open."""
    if not 2 <= d <= 8:
        raise ThermalError("d must lie in [2, 8]")
    return [(A, B) for A, B in subset_pairs(d) if not dominates(A, B) and not dominates(B, A)]


def allocation_total(d: int) -> int:
    """Number of unordered pairs of disjoint non-empty subsets, ``(3^d - 2^{d+1} + 1)/2``."""
    if d < 2:
        raise ThermalError("d must be at least 2")
    return (3 ** d - 2 ** (d + 1) + 1) // 2


# -- threshold roots ----------------------------------------------------------------

@dataclass(frozen=True)
class ThresholdPair:
    A: tuple
    B: tuple
    roots: tuple  # all beta_0 found, ascending
    sign_hot: int   # sign of sum_A - sum_B as beta -> 0+
    sign_cold: int  # ... as beta -> infinity

    @property
    def beta0(self) -> float | None:
        return self.roots[0] if self.roots else None


def _difference(energies, A, B):
    E = np.asarray(energies, float)
    base = E[list(A) + list(B)].min()
    ea, eb = E[list(A)] - base, E[list(B)] - base

    def f(beta):
        return float(np.exp(-beta * ea).sum() - np.exp(-beta * eb).sum())
    return f


def _limit_signs(energies, A, B):
    # beta -> 0: compare counts, then first moments
    if len(A) != len(B):
        hot = 1 if len(A) > len(B) else -1
    else:
        ma = sum(energies[a] for a in A)
        mb = sum(energies[b] for b in B)
        hot = 0 if ma == mb else (1 if ma < mb else -1)
    # beta -> infinity: the lowest-energy level with unequal multiplicity wins
    ea = sorted(energies[a] for a in A)
    eb = sorted(energies[b] for b in B)
    cold = 0
    levels = sorted(set(ea) | set(eb))
    for e in levels:
        ca, cb = ea.count(e), eb.count(e)
        if ca != cb:
            cold = 1 if ca > cb else -1
            break
    return hot, cold


def find_threshold_roots(energies, A, B, beta_max: float | None = None,
                         grid: int = 4000, xtol: float = 1e-14) -> ThresholdPair:
    """All sign changes of ``sum_A e^{-beta E} - sum_B e^{-beta E}`` on ``(0, beta_max]``.

    A logarithmic grid brackets roots; each is refined with Brent's method.
    """
    energies = tuple(float(e) for e in energies)
    if energies[0] != 0.0 or any(b < a for a, b in zip(energies, energies[1:])):
        raise ThermalError("energies must be sorted ascending with E_0 = 0")
    gaps = [b - a for a, b in zip(energies, energies[1:]) if b > a]
    if not gaps:
        raise ThermalError("fully degenerate spectrum has no threshold")
    if beta_max is None:
        beta_max = 200.0 / min(gaps)
    f = _difference(energies, A, B)
    lo = 1e-8 / max(energies[-1], 1e-300)
    grid_pts = np.geomspace(lo, beta_max, grid)
    vals = [f(b) for b in grid_pts]
    roots = []
    for (b0, v0), (b1, v1) in zip(zip(grid_pts, vals), zip(grid_pts[1:], vals[1:])):
        if v0 == 0.0:
            roots.append(float(b0))
        elif v0 * v1 < 0:
            roots.append(brentq(f, b0, b1, xtol=xtol, rtol=4 * np.finfo(float).eps))
    hot, cold = _limit_signs(energies, A, B)
    return ThresholdPair(tuple(A), tuple(B), tuple(sorted(set(roots))), hot, cold)


def solve_beta0(energies, A, B, **kw) -> float:
    """Smallest inverse temperature where the two partial partition sums agree."""
    pair = find_threshold_roots(energies, A, B, **kw)
    if pair.beta0 is None:
        raise ThermalError(f"no sign change for pair {A}, {B} with these energies")
    return pair.beta0


def threshold_pairs(energies, **kw) -> list:
    """Threshold pairs of a spectrum: each undetermined pair with its roots."""
    d = len(energies)
    degenerate = len(set(energies)) < d
    if degenerate:
        raise ThermalError("degenerate spectrum: threshold count is not comparable")
    return [find_threshold_roots(energies, A, B, **kw) for A, B in undetermined_pairs(d)]


# -- construction -------------------------------------------------------------------

def construct_threshold_tp(ctx: GibbsContext, A, B, method: str = "block") -> ThermalProcess:
    """TP sending every state supported on ``B`` to one supported on ``A``.

    Needs ``sum_A q >= sum_B q``.

    Parameters
    ----------
    method : {"block", "northwest"}
        ``"block"``: with ``n = min A``, ``m = min B``, ``I = A - {n}``,
        ``J = B - {m}``, column ``m`` goes to ``n`` and ``I`` with weights
        ``q_{i,m}`` and columns ``J`` go to ``n``; the remaining entries are the
        rank-one completion of the leftover margins.  This layout also needs
        ``sum_I q <= q_m`` and raises otherwise.
        ``"northwest"``: northwest-corner rule on the transportation problem
        with rows ``A`` and columns ``B`` listed first.  Works for every
        admissible pair and returns a vertex.
    """
    A, B = sorted(set(A)), sorted(set(B))
    if not A or not B or set(A) & set(B):
        raise ThermalError("A and B must be disjoint and non-empty")
    d = ctx.d
    if max(A + B) >= d:
        raise ThermalError("level index out of range")
    w = ctx.weights
    y = sum((w[a] for a in A), ctx.zero) - sum((w[b] for b in B), ctx.zero)
    if y < 0 and not ctx.is_zero(y):
        raise ThermalError("construction needs sum_A q >= sum_B q")
    if method == "northwest":
        return _northwest(ctx, A, B)
    if method != "block":
        raise ThermalError(f"unknown method {method!r}")
    n, m = A[0], B[0]
    I, J = A[1:], B[1:]
    head = 1 - sum((ctx.q(i, m) for i in I), ctx.zero)
    if head < 0 and not ctx.is_zero(head):
        raise ThermalError("block layout needs sum_I q <= q_m; use method='northwest'")
    y = max(y, ctx.zero)
    N = [[ctx.zero] * d for _ in range(d)]  # transportation scale
    N[n][m] = max(head, ctx.zero) * w[m]
    for i in I:
        N[i][m] = w[i]
    for j in J:
        N[n][j] = w[j]
    rows = {i: w[i] for i in range(d) if i not in A}
    rows[n] = y
    cols = {j: w[j] for j in range(d) if j not in B}
    total = sum(rows.values(), ctx.zero)
    if not ctx.is_zero(total):
        for i, ri in rows.items():
            for j, cj in cols.items():
                N[i][j] = ri * cj / total
    return validate_tp(ctx, [[N[i][j] / w[j] for j in range(d)] for i in range(d)])


def _northwest(ctx, A, B):
    d = ctx.d
    w = ctx.weights
    rows = A + [i for i in range(d) if i not in A]
    cols = B + [j for j in range(d) if j not in B]
    r = [w[i] for i in rows]
    c = [w[j] for j in cols]
    N = [[ctx.zero] * d for _ in range(d)]
    a = b = 0
    while a < d and b < d:
        x = min(r[a], c[b])
        N[rows[a]][cols[b]] = x
        r[a] -= x
        c[b] -= x
        if ctx.is_zero(r[a]) and a < d - 1:
            a += 1
        elif ctx.is_zero(c[b]):
            b += 1
        else:
            a += 1
    return validate_tp(ctx, [[N[i][j] / w[j] for j in range(d)] for i in range(d)])
