"""Acceptance suite: one test per criterion, tolerances and limits pinned."""

import itertools
import math
import random
import time
from fractions import Fraction as F

from thermoproc import (apply, build_P, compose, conjecture1_scan, conjugate, duality_report,
                        enumerate_vertices, make_context, mix, mixture_decomposable,
                        order_map_check, reach2_closure, slope_map, solve_beta0,
                        thermomajorizes, to_transportation, transition_pair, undetermined_pairs,
                        validate_tp, w_extr)
from thermoproc.core import random_state
from thermoproc.decompose import approx_bound, factor_forcing, min_l1_to
from thermoproc.reproduce import TABLE1
from thermoproc.thresholds import allocation_total, subset_pairs
from thermoproc.vertices import Regime, catalog3, catalog_matrix, random_tp

LOW = (1, F(1, 2), F(1, 4))
HIGH = (1, F(9, 10), F(8, 10))


def _strict_weights(rng, d, denominator=40, max_sum=None):
    """Strictly decreasing rational weights below 1, optionally with a capped sum."""
    while True:
        nums = sorted(rng.sample(range(1, denominator), d - 1), reverse=True)
        ws = (F(1), *(F(n, denominator) for n in nums))
        if max_sum is None or sum(ws[1:]) < max_sum:
            return ws


def test_c01_two_level_vertices():
    rng = random.Random(101)
    t0 = time.perf_counter()
    for _ in range(20):
        q = F(rng.randint(1, 99), 100)
        vs = enumerate_vertices(make_context((1, q)))
        assert vs.matrices() == {((1, 0), (0, 1)), ((1 - q, 1), (q, 0))}
    assert time.perf_counter() - t0 < 1.0


def test_c02_three_level_regime_counts():
    t0 = time.perf_counter()
    lo, hi = make_context(LOW), make_context(HIGH)
    vlo, vhi = enumerate_vertices(lo), enumerate_vertices(hi)
    assert len(vlo) == 10 and len(vhi) == 13
    assert vlo.matrices() == {t.m for t in catalog3(lo).values()}
    assert vhi.matrices() == {t.m for t in catalog3(hi).values()}
    assert set(catalog3(lo)) == {f"A{i}" for i in range(10)}
    assert set(catalog3(hi)) == {f"A{i}" for i in range(14)} - {"A9"}
    assert time.perf_counter() - t0 < 5.0


def test_c03_birkhoff_limit():
    for d in (2, 3, 4):
        perms = {tuple(tuple(int(p[j] == i) for j in range(d)) for i in range(d))
                 for p in itertools.permutations(range(d))}
        assert enumerate_vertices(make_context((1,) * d)).matrices() == perms


def test_c04_product_identities():
    rng = random.Random(104)
    for _ in range(20):
        ctx = make_context(_strict_weights(rng, 3))
        A = catalog3(ctx)
        assert compose(A["A2"], A["A1"]).m == A["A4"].m
        assert compose(A["A3"], A["A2"]).m == A["A5"].m
        assert compose(A["A1"], A["A2"]).m == A["A6"].m
        assert compose(A["A2"], A["A3"]).m == A["A7"].m


def test_c05_non_decomposability():
    rng = random.Random(105)
    for _ in range(10):
        ctx = make_context(_strict_weights(rng, 3, max_sum=1))
        res = mixture_decomposable(ctx, build_P(ctx), k=2, depth=6)
        assert not res.found and not res.capped
    for w in (LOW, (1, F(3, 5), F(1, 5)), (1, F(1, 3), F(1, 4), F(1, 5))):
        assert factor_forcing(make_context(w))["holds"]


def test_c06_two_level_distance_bound():
    rng = random.Random(106)
    t0 = time.perf_counter()
    for d, depth in ((3, 8), (4, 5)):
        for _ in range(10):
            ctx = make_context(_strict_weights(rng, d, max_sum=1))
            p, r = transition_pair(ctx)
            bound = approx_bound(ctx)
            assert bound > 0
            rs = reach2_closure(ctx, p, depth)
            assert min(min_l1_to(h, r) for h in rs.history) >= bound
    assert time.perf_counter() - t0 < 120.0


def test_c07_threshold_counts():
    t0 = time.perf_counter()
    counts = tuple(len(undetermined_pairs(d)) for d in (3, 4, 5, 6))
    elapsed = time.perf_counter() - t0
    for d in range(2, 9):
        assert allocation_total(d) == sum(1 for _ in subset_pairs(d))
    assert elapsed < 10.0
    assert counts == (1, 6, 26, 106)


def test_c08_golden_threshold_root():
    beta0 = solve_beta0((0, 1, 2), (0,), (1, 2))
    golden = (math.sqrt(5) - 1) / 2  # x + x^2 = 1
    assert abs(math.exp(-beta0) - golden) < 1e-10


def test_c09_duality():
    rng = random.Random(109)
    pools = []
    for d in (2, 3, 4):
        for _ in range(3):
            ctx = make_context(_strict_weights(rng, d, denominator=12))
            pools.append((ctx, list(enumerate_vertices(ctx))))
    for _ in range(1000):
        ctx, verts = rng.choice(pools)
        t = random_tp(ctx, rng, verts)
        assert conjugate(ctx, conjugate(ctx, t)).m == t.m

    lo, hi = make_context(LOW), make_context(HIGH)
    rlo, rhi = duality_report(enumerate_vertices(lo)), duality_report(enumerate_vertices(hi))
    assert rlo.self_dual_names() == {"A0", "A1", "A2", "A3", "A8", "A9"}
    assert rlo.pair_names() == {frozenset(("A4", "A6")), frozenset(("A5", "A7"))}
    assert rhi.self_dual_names() == {"A0", "A1", "A2", "A3", "A8", "A10", "A13"}
    assert rhi.pair_names() == {frozenset(("A4", "A6")), frozenset(("A5", "A7")),
                                frozenset(("A11", "A12"))}
    for ctx in (lo, hi):
        assert conjecture1_scan(ctx, depth=6).counterexamples == []


def test_c10_order_map_table():
    for weights, reg in ((LOW, Regime.BELOW), (HIGH, Regime.ABOVE)):
        ctx = make_context(weights)
        assert ctx.exact
        for order_in, cells in TABLE1[reg].items():
            for name, expected in cells.items():
                rep = order_map_check(ctx, catalog_matrix(ctx, name), order_in, samples=100,
                                      seed=110)
                got = {"".join(map(str, o)) for o in rep.common_orders_one_based()}
                assert got == expected, (reg, order_in, name, got)
                assert rep.elbows_on_curve, (reg, order_in, name)
                assert rep.degenerate == (len(expected) > 1)


def test_c11_property_suites():
    rng = random.Random(111)
    pools = []
    for d in (2, 3, 4):
        for _ in range(4):
            ctx = make_context(_strict_weights(rng, d, denominator=16))
            pools.append((ctx, list(enumerate_vertices(ctx))))
    n = 500
    for _ in range(n):
        ctx, verts = rng.choice(pools)
        t = random_tp(ctx, rng, verts)
        u = random_tp(ctx, rng, verts)
        support = rng.sample(range(ctx.d), rng.randint(1, ctx.d))
        p = random_state(ctx, rng, support=support)
        g = ctx.gibbs_state()
        # Gibbs fixed point
        assert apply(t, g) == g
        # closure under compose and mix
        validate_tp(ctx, compose(t, u).m)
        lam = F(rng.randint(0, 8), 8)
        validate_tp(ctx, mix([(lam, t), (1 - lam, u)]).m)
        N = to_transportation(t)
        assert tuple(map(sum, N)) == ctx.weights == tuple(map(sum, zip(*N)))
        # thermomajorization of every image
        r = apply(t, p)
        assert thermomajorizes(ctx, p, r)
        # deterministic work never grows
        assert w_extr(ctx, r) <= w_extr(ctx, p) + 1e-12
        # slope map equals the transposed conjugate
        assert slope_map(t) == tuple(zip(*conjugate(ctx, t).m))
