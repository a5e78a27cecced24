import itertools
import math
import random
from fractions import Fraction as F

import numpy as np
import pytest

from thermoproc import (ThermalError, allocation_total, apply, construct_threshold_tp, fmin,
                        make_context, solve_beta0, threshold_pairs, undetermined_pairs, w_extr)
from thermoproc.core import random_state
from thermoproc.thresholds import dominates, find_threshold_roots, subset_pairs
from thermoproc.vertices import Regime, catalog3, regime
from thermoproc import exactlp


def test_fmin(lo):
    assert fmin(lo, (1, 0, 0)) == 0
    assert fmin(lo, (F(1, 2), F(1, 4), F(1, 4))) == pytest.approx(-math.log(F(7, 4)))
    assert fmin(lo, (0, F(1, 2), F(1, 2))) == pytest.approx(-math.log(0.75))


def test_fmin_uses_temperature():
    ctx = make_context(energies=(0, 1, 2), beta=2.0)
    assert fmin(ctx, (0, 0.5, 0.5)) == pytest.approx(-0.5 * math.log(math.exp(-2) + math.exp(-4)))


def test_w_extr(lo):
    assert w_extr(lo, lo.gibbs_state()) == 0
    assert w_extr(lo, (1, 0, 0)) == pytest.approx(math.log(7 / 4))
    # q_0 >= q_1 + q_2 here, so the ground state holds less work than {1,2}
    assert w_extr(lo, (1, 0, 0)) <= w_extr(lo, (0, F(1, 2), F(1, 2)))


def test_w_extr_monotone(lo, rng):
    cat = list(catalog3(lo).values())
    for _ in range(50):
        p = random_state(lo, rng, support=rng.sample(range(3), rng.randint(1, 3)))
        t = rng.choice(cat)
        assert w_extr(lo, apply(t, p)) <= w_extr(lo, p) + 1e-12


def test_undetermined_small():
    assert undetermined_pairs(2) == []
    assert undetermined_pairs(3) == [((0,), (1, 2))]
    assert len(undetermined_pairs(4)) == 6
    assert len(undetermined_pairs(5)) == 26
    with pytest.raises(ThermalError):
        undetermined_pairs(9)


@pytest.mark.parametrize("d", [3, 4, 5, 6])
def test_undetermined_agrees_with_sampling(d):
    # independent oracle: a pair is undetermined iff sampled admissible weights give both signs
    gen = np.random.default_rng(d)
    w = np.sort(gen.random((200_000, d)) ** gen.choice([1, 2, 4, 8], size=(200_000, 1)),
                axis=1)[:, ::-1]
    w = w / w[:, :1]
    pairs = list(subset_pairs(d))
    inc = np.zeros((d, len(pairs)))
    for k, (A, B) in enumerate(pairs):
        inc[list(A), k] = 1
        inc[list(B), k] = -1
    diff = w @ inc
    flipping = {pairs[k] for k in range(len(pairs))
                if (diff[:, k] > 1e-12).any() and (diff[:, k] < -1e-12).any()}
    assert flipping == set(undetermined_pairs(d))


def test_dominates():
    assert dominates((0,), (1,))
    assert not dominates((0,), (1, 2))
    assert not dominates((1, 2), (0,))
    assert dominates((0, 3), (1, 2)) is False
    assert dominates((0, 2), (1, 3))


def test_allocation_total():
    assert [allocation_total(d) for d in (2, 3, 4)] == [1, 6, 25]
    for d in range(2, 9):
        brute = sum(1 for _ in subset_pairs(d))
        assert allocation_total(d) == brute


def test_beta0_golden():
    b = solve_beta0((0, 1, 2), (0,), (1, 2))
    assert abs(math.exp(-b) - (math.sqrt(5) - 1) / 2) < 1e-10
    assert b == pytest.approx(math.log(2 / (math.sqrt(5) - 1)), abs=1e-12)


def test_beta0_degenerate():
    assert solve_beta0((0, 1, 1), (0,), (1, 2)) == pytest.approx(math.log(2), abs=1e-12)


def test_at_threshold_regime():
    rng = random.Random(4)
    for _ in range(10):
        es = (0.0, *sorted(rng.uniform(0.1, 3) for _ in range(2)))
        b = solve_beta0(es, (0,), (1, 2))
        assert regime(make_context(energies=es, beta=b)) is Regime.AT


def test_no_root_raises():
    with pytest.raises(ThermalError):
        solve_beta0((0, 1, 2), (0,), (1,))


def test_threshold_pairs_signs():
    pairs = threshold_pairs((0, 1, 2.5, 4))
    assert len(pairs) == 6
    for tp in pairs:
        assert tp.sign_hot * tp.sign_cold <= 0 or not tp.roots


def test_limit_signs_flip():
    tp = find_threshold_roots((0, 1, 2), (0,), (1, 2))
    assert (tp.sign_hot, tp.sign_cold) == (-1, 1)
    assert len(tp.roots) == 1


def test_degenerate_spectrum_flagged():
    with pytest.raises(ThermalError):
        threshold_pairs((0, 1, 1))


def test_construct_d3_low(lo):
    assert construct_threshold_tp(lo, (0,), (1, 2)).m == catalog3(lo)["A9"].m


def test_construct_d3_high(hi):
    t = construct_threshold_tp(hi, (1, 2), (0,))
    cat = catalog3(hi)
    flat = [x for r in t.m for x in r]
    lam = exactlp.in_hull(flat, [[x for r in cat[n].m for x in r] for n in ("A11", "A13")])
    assert lam is not None and all(x > 0 for x in lam)


def test_construct_d2():
    q = F(2, 5)
    assert construct_threshold_tp(make_context((1, q)), (0,), (1,)).m == ((1 - q, 1), (q, 0))


def _admissible(ctx, d):
    for A, B in subset_pairs(d):
        for X, Y in ((A, B), (B, A)):
            if sum(ctx.weights[i] for i in X) >= sum(ctx.weights[i] for i in Y):
                yield X, Y


@pytest.mark.parametrize("weights", [(1, F(9, 10), F(7, 10), F(1, 2)),
                                     (1, F(1, 2), F(1, 4), F(1, 8)),
                                     (1, F(1, 2), F(1, 3), F(1, 5), F(1, 7))])
def test_construct_maps_supports(weights):
    ctx = make_context(weights)
    d = ctx.d
    blocked = 0
    for X, Y in _admissible(ctx, d):
        methods = ["northwest"]
        if sum(ctx.weights[i] for i in X[1:]) <= ctx.weights[Y[0]]:
            methods.append("block")
        else:
            blocked += 1
            with pytest.raises(ThermalError):
                construct_threshold_tp(ctx, X, Y)
        for method in methods:
            t = construct_threshold_tp(ctx, X, Y, method=method)
            for j in Y:
                assert all(t.m[i][j] == 0 for i in range(d) if i not in X)
    assert blocked > 0


def test_northwest_is_vertex():
    from thermoproc import is_extremal
    ctx = make_context((1, F(9, 10), F(7, 10), F(1, 2)))
    for X, Y in _admissible(ctx, 4):
        assert is_extremal(ctx, construct_threshold_tp(ctx, X, Y, method="northwest"))


def test_construct_wrong_direction(lo):
    with pytest.raises(ThermalError):
        construct_threshold_tp(lo, (1, 2), (0,))
