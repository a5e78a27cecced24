"""Gibbs contexts, diagonal states and Thermal Process matrices.

A Thermal Process (TP) on ``d`` levels is a ``d x d`` matrix ``m`` with
``m[i][j]`` the probability of the transition ``j -> i``.  It is column
stochastic and fixes the Gibbs distribution.  Everything is written in terms
of the Boltzmann weights ``q_{i,0} = exp(-beta E_i)`` with ``E_0 = 0``.

Two arithmetic modes are supported.  In exact mode every scalar is a
:class:`fractions.Fraction` and all comparisons are decided without tolerance.
In float mode scalars are Python floats and equality uses ``eps``
(absolute below magnitude one, relative above).
"""

from __future__ import annotations

import math
import random
from dataclasses import dataclass, field
from fractions import Fraction
from numbers import Rational
from typing import Iterable, Sequence, Union

import numpy as np

Scalar = Union[Fraction, float]
Matrix = tuple  # tuple[tuple[Scalar, ...], ...], row-major

DEFAULT_EPS = 1e-9


class ThermalError(ValueError):
    """Base class for domain errors (violated preconditions)."""


class InvalidProcess(ThermalError):
    """A matrix failed one of the Thermal Process invariants.

    Attributes
    ----------
    constraint : str
        One of ``"shape"``, ``"nonnegative"``, ``"column"``, ``"gibbs"``.
    index : tuple
        Offending ``(row, col)`` for entry checks, ``(col,)`` for column sums,
        ``(row,)`` for the Gibbs row condition.
    """

    def __init__(self, message, constraint, index=()):
        super().__init__(message)
        self.constraint = constraint
        self.index = tuple(index)


def to_scalar(x, exact: bool) -> Scalar:
    """Coerce ``x`` into the scalar type of the given mode.

    Strings of the form ``"n/d"`` and rationals are accepted in both modes.
    Floats are refused in exact mode; rationalise them beforehand.
    """
    if isinstance(x, str):
        x = Fraction(x.strip())
    if exact:
        if isinstance(x, Fraction):
            return x
        if isinstance(x, (int, Rational)) and not isinstance(x, bool):
            return Fraction(x)
        raise ThermalError(f"exact mode needs rational input, got {x!r}")
    return float(x)


def rationalize(x, max_denominator: int = 10**6) -> Fraction:
    """Continued-fraction approximation of ``x``."""
    if isinstance(x, str):
        return Fraction(x.strip())
    return Fraction(x).limit_denominator(max_denominator)


@dataclass(frozen=True)
class GibbsContext:
    """Boltzmann weights of a ``d``-level system.

    ``weights[i]`` is ``q_{i,0}``; ``weights[0] == 1`` and the weights are
    non-increasing.  ``energies`` and ``beta`` are kept when the context was
    derived from a spectrum.
    """

    weights: tuple
    exact: bool = True
    eps: float = DEFAULT_EPS
    energies: tuple | None = None
    beta: float | None = None

    @property
    def d(self) -> int:
        return len(self.weights)

    @property
    def mode(self) -> str:
        return "exact" if self.exact else "float"

    def q(self, m: int, n: int) -> Scalar:
        """Pairwise factor ``q_{m,n} = q_{m,0} / q_{n,0}``."""
        return self.weights[m] / self.weights[n]

    @property
    def partition_function(self) -> Scalar:
        return sum(self.weights, self.zero)

    @property
    def zero(self) -> Scalar:
        return Fraction(0) if self.exact else 0.0

    @property
    def one(self) -> Scalar:
        return Fraction(1) if self.exact else 1.0

    def scalar(self, x) -> Scalar:
        return to_scalar(x, self.exact)

    def gibbs_state(self) -> "DiagState":
        z = self.partition_function
        return DiagState(tuple(w / z for w in self.weights))

    # comparisons -----------------------------------------------------------
    def eq(self, a, b) -> bool:
        if self.exact:
            return a == b
        return abs(a - b) <= self.eps * max(1.0, abs(a), abs(b))

    def is_zero(self, a) -> bool:
        return self.eq(a, 0)

    def le(self, a, b) -> bool:
        return a <= b or self.eq(a, b)

    def lt(self, a, b) -> bool:
        return a < b and not self.eq(a, b)

    def sign(self, a) -> int:
        if self.is_zero(a):
            return 0
        return 1 if a > 0 else -1

    def subcontext(self, levels: Sequence[int]) -> "GibbsContext":
        """Context of the levels ``levels`` (sorted) renormalised to the lowest."""
        levels = sorted(levels)
        base = self.weights[levels[0]]
        energies = None
        if self.energies is not None:
            e0 = self.energies[levels[0]]
            energies = tuple(self.energies[i] - e0 for i in levels)
        return GibbsContext(tuple(self.weights[i] / base for i in levels),
                            self.exact, self.eps, energies, self.beta)


def make_context(weights=None, *, energies=None, beta=None, exact=None,
                 eps: float = DEFAULT_EPS, rationalize_floats: bool = False
                 ) -> GibbsContext:
    """Build a :class:`GibbsContext` from weights or from energies and ``beta``.

    Parameters
    ----------
    weights : sequence, optional
        Boltzmann weights ``(q_{0,0}, ..., q_{d-1,0})``.  They are divided by
        the first entry.  Rationals (``Fraction``, ``int``, ``"1/2"``) give an
        exact context, floats a float context unless ``exact`` says otherwise.
    energies, beta : optional
        Spectrum with ``E_0 = 0`` sorted ascending, and inverse temperature.
        Always produces a float context (``exp`` is irrational).
    exact : bool, optional
        Force the mode.  Floats in exact mode need ``rationalize_floats``.
    eps : float
        Float-mode comparison tolerance.
    """
    if (weights is None) == (energies is None):
        raise ThermalError("give either weights or energies+beta")
    if energies is not None:
        if beta is None:
            raise ThermalError("energies need beta")
        energies = tuple(float(e) for e in energies)
        beta = float(beta)
        if beta < 0:
            raise ThermalError("beta must be non-negative")
        if energies[0] != 0.0:
            raise ThermalError("ground state energy must be 0")
        if any(b < a for a, b in zip(energies, energies[1:])):
            raise ThermalError("energies must be sorted ascending")
        if exact:
            raise ThermalError("energies+beta only produce float contexts")
        ws = [math.exp(-beta * e) for e in energies]
        ctx_exact = False
    else:
        raw = list(weights)
        if exact is None:
            exact = not any(isinstance(w, float) for w in raw)
        if exact and rationalize_floats:
            raw = [rationalize(w) for w in raw]
        ws = [to_scalar(w, exact) for w in raw]
        ctx_exact = exact
    if len(ws) < 2:
        raise ThermalError("need at least 2 levels")
    if any(w <= 0 for w in ws):
        raise ThermalError("weights must be positive")
    ws = [w / ws[0] for w in ws]
    for i, w in enumerate(ws):
        if w > 1 and not (not ctx_exact and w - 1 <= eps):
            raise ThermalError(f"weight {i} exceeds q_00 = 1 after normalization")
    for i in range(1, len(ws)):
        if ws[i] > ws[i - 1] and not (not ctx_exact and ws[i] - ws[i - 1] <= eps):
            raise ThermalError("weights must be non-increasing (levels sorted by energy)")
    return GibbsContext(tuple(ws), ctx_exact, eps, energies, beta)


@dataclass(frozen=True)
class DiagState:
    """Populations of the energy levels."""

    p: tuple

    def __len__(self):
        return len(self.p)

    def __iter__(self):
        return iter(self.p)

    def __getitem__(self, i):
        return self.p[i]


def make_state(ctx: GibbsContext, p: Iterable) -> DiagState:
    """Validate a probability vector against ``ctx``."""
    vals = tuple(ctx.scalar(x) for x in p)
    if len(vals) != ctx.d:
        raise ThermalError(f"state has {len(vals)} entries, context has {ctx.d} levels")
    for i, x in enumerate(vals):
        if x < 0 and not ctx.is_zero(x):
            raise ThermalError(f"negative population at level {i}")
    if not ctx.eq(sum(vals, ctx.zero), 1):
        raise ThermalError("populations must sum to 1")
    return DiagState(vals)


@dataclass(frozen=True)
class ThermalProcess:
    """A validated Thermal Process.  Build with :func:`validate_tp`."""

    ctx: GibbsContext = field(repr=False, compare=False, hash=False)
    m: Matrix

    @property
    def d(self) -> int:
        return len(self.m)

    def __getitem__(self, ij):
        i, j = ij
        return self.m[i][j]

    def __matmul__(self, other: "ThermalProcess") -> "ThermalProcess":
        return compose(self, other)

    def to_numpy(self) -> np.ndarray:
        return np.array([[float(x) for x in row] for row in self.m])

    def zero_count(self) -> int:
        return sum(1 for row in self.m for x in row if self.ctx.is_zero(x))

    def same(self, other: "ThermalProcess") -> bool:
        """Entrywise equality in the context's comparison mode."""
        return all(self.ctx.eq(a, b) for ra, rb in zip(self.m, other.m)
                   for a, b in zip(ra, rb))


def as_matrix(ctx: GibbsContext, m) -> Matrix:
    if isinstance(m, ThermalProcess):
        m = m.m
    if isinstance(m, np.ndarray):
        m = m.tolist()
    return tuple(tuple(ctx.scalar(x) for x in row) for row in m)


def validate_tp(ctx: GibbsContext, m) -> ThermalProcess:
    """Check both TP invariants and wrap ``m``.

    Raises
    ------
    InvalidProcess
        With ``constraint`` naming the first failing condition.
    """
    mat = as_matrix(ctx, m)
    d = ctx.d
    if len(mat) != d or any(len(row) != d for row in mat):
        raise InvalidProcess(f"matrix must be {d}x{d}", "shape")
    for i in range(d):
        for j in range(d):
            x = mat[i][j]
            if x < 0 and not ctx.is_zero(x):
                raise InvalidProcess(f"negative entry at ({i}, {j})", "nonnegative", (i, j))
    for j in range(d):
        s = sum((mat[i][j] for i in range(d)), ctx.zero)
        if not ctx.eq(s, 1):
            raise InvalidProcess(f"column {j} sums to {s}, not 1", "column", (j,))
    w = ctx.weights
    for i in range(d):
        s = sum((mat[i][j] * w[j] for j in range(d)), ctx.zero)
        if not ctx.eq(s, w[i]):
            raise InvalidProcess(f"Gibbs condition fails on row {i}", "gibbs", (i,))
    return ThermalProcess(ctx, mat)


def identity(ctx: GibbsContext) -> ThermalProcess:
    one, zero = ctx.one, ctx.zero
    return ThermalProcess(ctx, tuple(tuple(one if i == j else zero for j in range(ctx.d))
                                     for i in range(ctx.d)))


def matmul(a: Matrix, b: Matrix) -> Matrix:
    n = len(a)
    cols = list(zip(*b))
    return tuple(tuple(sum(x * y for x, y in zip(a[i], c)) for c in cols)
                 for i in range(n))


def apply(t: ThermalProcess, p) -> DiagState:
    """Return ``T p``."""
    vals = tuple(p)
    if len(vals) != t.d:
        raise ThermalError("dimension mismatch between process and state")
    return DiagState(tuple(sum(x * y for x, y in zip(row, vals)) for row in t.m))


def compose(a: ThermalProcess, b: ThermalProcess) -> ThermalProcess:
    """Matrix product ``a b`` (``b`` acts first)."""
    if a.ctx != b.ctx:
        raise ThermalError("processes belong to different contexts")
    return validate_tp(a.ctx, matmul(a.m, b.m))


def mix(pairs) -> ThermalProcess:
    """Convex combination of ``(weight, process)`` pairs."""
    pairs = list(pairs)
    if not pairs:
        raise ThermalError("empty mixture")
    ctx = pairs[0][1].ctx
    ws = [ctx.scalar(w) for w, _ in pairs]
    if any(w < 0 and not ctx.is_zero(w) for w in ws) or not ctx.eq(sum(ws, ctx.zero), 1):
        raise ThermalError("mixture weights must form a probability distribution")
    d = ctx.d
    acc = [[ctx.zero] * d for _ in range(d)]
    for w, (_, t) in zip(ws, pairs):
        if t.ctx != ctx:
            raise ThermalError("processes belong to different contexts")
        for i in range(d):
            for j in range(d):
                acc[i][j] += w * t.m[i][j]
    return validate_tp(ctx, acc)


def to_transportation(t: ThermalProcess) -> Matrix:
    """Scale column ``j`` by ``q_{j,0}``; both margins become the weights."""
    w = t.ctx.weights
    return tuple(tuple(x * w[j] for j, x in enumerate(row)) for row in t.m)


def random_state(ctx: GibbsContext, rng: random.Random, support=None,
                 denominator: int = 64) -> DiagState:
    """Random state with small-denominator entries (exact) or floats."""
    d = ctx.d
    levels = range(d) if support is None else sorted(support)
    raw = [0] * d
    for i in levels:
        raw[i] = rng.randint(1, denominator)
    tot = sum(raw)
    if ctx.exact:
        return DiagState(tuple(Fraction(x, tot) for x in raw))
    return DiagState(tuple(x / tot for x in raw))


def random_weights(rng: random.Random, d: int, denominator: int = 20,
                   max_sum: Fraction | None = None) -> tuple:
    """Random exact weight vector ``1 >= q_1 >= ... > 0``.

    ``max_sum`` caps ``q_1 + ... + q_{d-1}`` (use ``1`` for the low temperature
    regime needed by the non-decomposable process).
    """
    while True:
        ws = sorted((Fraction(rng.randint(1, denominator), denominator) for _ in range(d - 1)),
                    reverse=True)
        if max_sum is None or sum(ws) <= max_sum:
            return (Fraction(1), *ws)
