import random
from fractions import Fraction as F

import pytest

from thermoproc import (ThermalError, apply, build_P, enumerate_vertices, identity,
                        make_context, mix, mixture_decomposable, product_decomposable,
                        reach2_closure, transition_pair, unique_tp_for)
from thermoproc.core import random_state
from thermoproc.decompose import (approx_bound, approx_bound_terms, factor_forcing,
                                  klevel_generators, min_l1_to, two_level_extremal)
from thermoproc.thresholds import w_extr
from thermoproc.vertices import catalog3


def test_build_P_d3(lo):
    assert build_P(lo).m == ((F(1, 4), 1, 1), (F(1, 2), 0, 0), (F(1, 4), 0, 0))


def test_build_P_d2_and_d4():
    q = F(3, 5)
    assert build_P(make_context((1, q))).m == ((1 - q, 1), (q, 0))
    P4 = build_P(make_context((1, F(1, 2), F(1, 4), F(1, 8))))
    assert P4.m[0][0] == F(1, 8)


def test_build_P_high_temperature(hi):
    with pytest.raises(ThermalError):
        build_P(hi)


def test_unique_slice(lo):
    p, r = transition_pair(lo)
    res = unique_tp_for(lo, p, r)
    assert res.status == "unique"
    assert res.process.m == build_P(lo).m
    g = lo.gibbs_state()
    assert unique_tp_for(lo, g, g).status == "many"
    rng = random.Random(0)
    r = random_state(lo, rng)
    assert w_extr(lo, r) >= 0
    assert unique_tp_for(lo, g, (1, 0, 0)).status == "none"


def test_two_level_generators(lo):
    gens = klevel_generators(lo, 2)
    cat = catalog3(lo)
    got = {g.process.m for g in gens}
    assert got == {cat[n].m for n in ("A0", "A1", "A2", "A3")}
    assert {g.process.m for g in klevel_generators(lo, 3)} == enumerate_vertices(lo).matrices()
    d4 = make_context((1, F(1, 2), F(1, 3), F(1, 4)))
    assert len([g for g in klevel_generators(d4, 2) if g.levels]) == 6


def test_three_level_generators_in_d4():
    ctx = make_context((1, F(1, 2), F(1, 3), F(1, 4)))
    gens = klevel_generators(ctx, 3)
    assert all(g.process.m[i][i] == 1 for g in gens if g.levels
               for i in set(range(4)) - set(g.levels))


def test_products(lo):
    cat = catalog3(lo)
    res = product_decomposable(lo, cat["A4"], 2, 2)
    assert res.found and res.depth == 2
    gens = klevel_generators(lo, 2)
    a, b = res.sequence
    assert (gens[a].process @ gens[b].process).m == cat["A4"].m
    assert product_decomposable(lo, identity(lo), 2, 0).found
    assert not product_decomposable(lo, build_P(lo), 2, 6)
    assert not product_decomposable(lo, cat["A8"], 2, 6)


def test_product_cap(lo):
    res = product_decomposable(lo, build_P(lo), 2, 10, cap=20)
    assert res.capped and not res.found


def test_mixtures(lo):
    cat = catalog3(lo)
    m = mix([(F(1, 3), cat["A1"]), (F(2, 3), cat["A2"])])
    res = mixture_decomposable(lo, m, 2, 1)
    assert res.found
    assert sum(w for w, _, _ in res.combination) == 1
    assert not mixture_decomposable(lo, cat["A9"], 2, 6)
    assert not mixture_decomposable(lo, cat["A8"], 2, 6)


def test_factor_forcing(lo):
    res = factor_forcing(lo)
    assert res["holds"]
    P = build_P(lo).m
    facts = res["factorizations"]
    assert (P, identity(lo).m) in {(a.m, b.m) for a, b, _ in facts}
    assert all(good and P in (a.m, b.m) for a, b, good in facts)


def test_reach_trivial(lo):
    p = (F(1, 2), F(1, 3), F(1, 6))
    rs = reach2_closure(lo, p, 0)
    assert [v.p for v in rs.vertices] == [p]
    g = lo.gibbs_state()
    rs = reach2_closure(lo, g, 5)
    assert [v.p for v in rs.vertices] == [g.p] and rs.fixed_point


def test_reach_bound_low(lo):
    p, r = transition_pair(lo)
    assert r.p == (F(1, 4), F(1, 2), F(1, 4))
    rs = reach2_closure(lo, p, 8)
    b = approx_bound(lo)
    assert b > 0
    for states in rs.history:
        assert min_l1_to(states, r) >= b


def test_reach_states_are_reachable(lo):
    p, r = transition_pair(lo)
    rs = reach2_closure(lo, p, 3)
    from thermoproc import thermomajorizes
    assert all(thermomajorizes(lo, p, v) for v in rs.vertices)


def test_bound_terms(lo):
    terms = approx_bound_terms(lo)
    assert terms["q10*q20"] == F(1, 8)
    assert terms["q10^2*(1-q10)"] == F(1, 8)
    assert approx_bound(lo) == min(terms.values())
    assert approx_bound(lo, as_printed=True) == F(-1, 8)


def test_bound_vanishes_near_zero_temperature():
    vals = [approx_bound(make_context((1, q, q * q))) for q in (F(1, 10), F(1, 100), F(1, 1000))]
    assert vals[0] > vals[1] > vals[2] > 0
    assert vals[2] < F(1, 10 ** 5)


def test_bound_d4():
    assert approx_bound(make_context((1, F(1, 2), F(1, 4), F(1, 8)))) == F(1, 32)


def test_two_level_extremal(lo):
    E = two_level_extremal(lo, 0, 2)
    assert apply(E, (1, 0, 0)).p == (F(3, 4), 0, F(1, 4))
