"""Exact rational linear programming and convex hulls.

A dense two-phase simplex on :class:`~fractions.Fraction` tableaux with
Bland's anti-cycling rule.  Problems here are tiny (tens of rows, at most a few
thousand columns) so no sparsity tricks beyond skipping zero entries.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

__all__ = ["LPResult", "linprog", "feasible_point", "in_hull", "hull_vertices",
           "min_l1_distance", "rank"]


@dataclass
class LPResult:
    status: str  # "optimal" | "infeasible" | "unbounded"
    x: tuple | None = None
    fun: Fraction | None = None

    @property
    def success(self) -> bool:
        return self.status == "optimal"


def _pivot(T, basis, r, c):
    row = T[r]
    piv = row[c]
    if piv != 1:
        inv = 1 / piv
        for k, v in enumerate(row):
            if v:
                row[k] = v * inv
    nz = [k for k, v in enumerate(row) if v]
    for i, other in enumerate(T):
        if i == r:
            continue
        f = other[c]
        if f:
            for k in nz:
                other[k] -= f * row[k]
    basis[r] = c


def _simplex(T, basis, ncols, allowed):
    """Minimise the objective stored in the last row of ``T``.

    The objective row holds reduced costs; its last entry is ``-value``.
    Only columns in ``allowed`` may enter.
    """
    m = len(T) - 1
    obj = T[-1]
    while True:
        enter = next((j for j in range(ncols) if allowed[j] and obj[j] < 0), None)
        if enter is None:
            return "optimal"
        best = None
        for i in range(m):
            a = T[i][enter]
            if a > 0:
                ratio = T[i][-1] / a
                if best is None or ratio < best[0] or (ratio == best[0] and basis[i] < basis[best[1]]):
                    best = (ratio, i)
        if best is None:
            return "unbounded"
        _pivot(T, basis, best[1], enter)


def linprog(c, A_eq=(), b_eq=(), A_ub=(), b_ub=()) -> LPResult:
    """Minimise ``c x`` subject to ``A_eq x = b_eq``, ``A_ub x <= b_ub``, ``x >= 0``."""
    n = len(c)
    rows = []
    for a, b in zip(A_eq, b_eq):
        rows.append(([Fraction(v) for v in a], Fraction(b), None))
    n_ub = len(A_ub)
    for k, (a, b) in enumerate(zip(A_ub, b_ub)):
        rows.append(([Fraction(v) for v in a], Fraction(b), k))
    m = len(rows)
    nvar = n + n_ub
    ncols = nvar + m  # plus artificials
    T = []
    for r, (a, b, slack) in enumerate(rows):
        line = a + [Fraction(0)] * (ncols - n) + [b]
        if slack is not None:
            line[n + slack] = Fraction(1)
        if b < 0:
            line = [-v for v in line]
        line[nvar + r] = Fraction(1)
        T.append(line)
    basis = [nvar + r for r in range(m)]
    # phase one: minimise the sum of artificials
    obj = [Fraction(0)] * (ncols + 1)
    for line in T:
        for k in range(nvar):
            obj[k] -= line[k]
        obj[-1] -= line[-1]
    T.append(obj)
    allowed = [True] * ncols
    _simplex(T, basis, ncols, allowed)
    if T[-1][-1] != 0:
        return LPResult("infeasible")
    # drive artificials out of the basis, dropping redundant rows
    r = 0
    while r < len(T) - 1:
        if basis[r] >= nvar:
            col = next((k for k in range(nvar) if T[r][k] != 0), None)
            if col is None:
                del T[r]
                del basis[r]
                continue
            _pivot(T, basis, r, col)
        r += 1
    for k in range(nvar, ncols):
        allowed[k] = False
    obj = [Fraction(0)] * (ncols + 1)
    for k in range(n):
        obj[k] = Fraction(c[k])
    for i, bcol in enumerate(basis):
        f = obj[bcol]
        if f:
            line = T[i]
            for k in range(ncols + 1):
                if line[k]:
                    obj[k] -= f * line[k]
    T[-1] = obj
    status = _simplex(T, basis, ncols, allowed)
    if status == "unbounded":
        return LPResult("unbounded")
    x = [Fraction(0)] * nvar
    for i, bcol in enumerate(basis):
        if bcol < nvar:
            x[bcol] = T[i][-1]
    fun = sum((Fraction(c[k]) * x[k] for k in range(n)), Fraction(0))
    return LPResult("optimal", tuple(x[:n]), fun)


def feasible_point(A_eq, b_eq, A_ub=(), b_ub=()) -> tuple | None:
    """A vertex of ``{x >= 0 : A_eq x = b_eq, A_ub x <= b_ub}`` or ``None``."""
    n = len(A_eq[0]) if A_eq else len(A_ub[0])
    res = linprog([0] * n, A_eq, b_eq, A_ub, b_ub)
    return res.x if res.success else None


def in_hull(point: Sequence, points: Sequence[Sequence]) -> tuple | None:
    """Convex weights expressing ``point`` from ``points``, or ``None``."""
    if not points:
        return None
    dim = len(point)
    A = [[p[k] for p in points] for k in range(dim)]
    A.append([1] * len(points))
    b = list(point) + [1]
    return feasible_point(A, b)


def _cross(o, a, b):
    return (a[0] - o[0]) * (b[1] - o[1]) - (a[1] - o[1]) * (b[0] - o[0])


def _hull2(pts):
    pts = sorted(pts)
    if len(pts) <= 2:
        return pts
    lower, upper = [], []
    for p in pts:
        while len(lower) >= 2 and _cross(lower[-2], lower[-1], p) <= 0:
            lower.pop()
        lower.append(p)
    for p in reversed(pts):
        while len(upper) >= 2 and _cross(upper[-2], upper[-1], p) <= 0:
            upper.pop()
        upper.append(p)
    hull = lower[:-1] + upper[:-1]
    if not hull:  # all collinear and equal endpoints
        return pts[:1]
    return hull


def hull_vertices(points: Sequence[Sequence]) -> list:
    """Extreme points of the convex hull of ``points`` (exact).

    Duplicates are removed.  Two-dimensional input uses a monotone chain,
    other dimensions an LP membership test per point.
    """
    pts = sorted(set(tuple(p) for p in points))
    if len(pts) <= 1:
        return pts
    dim = len(pts[0])
    if dim == 1:
        return [pts[0], pts[-1]]
    if dim == 2:
        return sorted(_hull2(pts))
    keep = list(pts)
    i = 0
    while i < len(keep):
        others = keep[:i] + keep[i + 1:]
        if in_hull(keep[i], others) is not None:
            del keep[i]
        else:
            i += 1
    return keep


def min_l1_distance(points: Sequence[Sequence], target: Sequence) -> tuple:
    """Minimum L1 distance from ``target`` to the hull of ``points``.

    Returns ``(distance, closest_point)``.
    """
    npts = len(points)
    dim = len(target)
    # variables: lambda (npts), t (dim);  minimise sum t
    # t_k >= +(sum lambda p_k - r_k)  and  t_k >= -(...)
    c = [0] * npts + [1] * dim
    A_eq = [[1] * npts + [0] * dim]
    b_eq = [1]
    A_ub, b_ub = [], []
    for k in range(dim):
        row = [p[k] for p in points] + [0] * dim
        row[npts + k] = -1
        A_ub.append(row)
        b_ub.append(target[k])
        row = [-p[k] for p in points] + [0] * dim
        row[npts + k] = -1
        A_ub.append(row)
        b_ub.append(-target[k])
    res = linprog(c, A_eq, b_eq, A_ub, b_ub)
    lam = res.x[:npts]
    closest = tuple(sum((lam[i] * points[i][k] for i in range(npts)), Fraction(0))
                    for k in range(dim))
    return res.fun, closest


def rank(rows: Sequence[Sequence]) -> int:
    """Exact rank by Gaussian elimination."""
    M = [[Fraction(v) for v in r] for r in rows]
    if not M:
        return 0
    r = 0
    ncol = len(M[0])
    for c in range(ncol):
        piv = next((i for i in range(r, len(M)) if M[i][c] != 0), None)
        if piv is None:
            continue
        M[r], M[piv] = M[piv], M[r]
        for i in range(r + 1, len(M)):
            f = M[i][c] / M[r][c]
            if f:
                for k in range(c, ncol):
                    M[i][k] -= f * M[r][k]
        r += 1
        if r == len(M):
            break
    return r
