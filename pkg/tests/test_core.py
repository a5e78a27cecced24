import math
import random
from fractions import Fraction as F

import numpy as np
import pytest

from thermoproc import (InvalidProcess, ThermalError, apply, compose, identity, make_context,
                        make_state, mix, to_transportation, validate_tp)
from thermoproc.core import random_state, rationalize
from thermoproc.decompose import build_P
from thermoproc.vertices import catalog3, catalog_matrix


def test_context_from_energies():
    ctx = make_context(energies=(0, 1, 2), beta=1)
    assert not ctx.exact
    np.testing.assert_allclose(ctx.weights, [1, math.exp(-1), math.exp(-2)], rtol=1e-12)


def test_energy_round_trip():
    rng = random.Random(3)
    for _ in range(20):
        es = [0.0] + sorted(rng.uniform(0, 5) for _ in range(3))
        beta = rng.uniform(0, 3)
        ctx = make_context(energies=es, beta=beta)
        for w, e in zip(ctx.weights, es):
            assert ctx.eq(w, math.exp(-beta * e))


def test_uniform_weights_infinite_temperature():
    ctx = make_context((1, 1, 1))
    assert ctx.gibbs_state().p == (F(1, 3),) * 3


def test_exact_ratio():
    ctx = make_context((1, F(1, 2), F(1, 4)))
    assert ctx.exact
    assert ctx.q(2, 1) == F(1, 2)
    assert ctx.partition_function == F(7, 4)


def test_weights_normalized_and_strings():
    ctx = make_context(("2", "1", "1/2"))
    assert ctx.weights == (1, F(1, 2), F(1, 4))


@pytest.mark.parametrize("weights", [(1, 0), (1, -1), (1, F(1, 4), F(1, 2)), (1,)])
def test_bad_weights(weights):
    with pytest.raises(ThermalError):
        make_context(weights)


def test_energy_preconditions():
    with pytest.raises(ThermalError):
        make_context(energies=(1, 2), beta=1)
    with pytest.raises(ThermalError):
        make_context(energies=(0, 2, 1), beta=1)
    with pytest.raises(ThermalError):
        make_context(energies=(0, 1), beta=-1)


def test_floats_refused_in_exact_mode():
    with pytest.raises(ThermalError):
        make_context((1.0, 0.5), exact=True)
    ctx = make_context((1.0, 0.3), exact=True, rationalize_floats=True)
    assert ctx.weights == (1, F(3, 10))
    assert rationalize(math.pi) == F(3126535, 995207)


def test_identity_is_valid(lo):
    assert validate_tp(lo, identity(lo).m).m == identity(lo).m


def test_two_level_vertex_valid():
    ctx = make_context((1, F(1, 2)))
    validate_tp(ctx, [[F(1, 2), 1], [F(1, 2), 0]])


def test_swap_fails_gibbs_row():
    ctx = make_context((1, F(1, 2)))
    with pytest.raises(InvalidProcess) as exc:
        validate_tp(ctx, [[0, 1], [1, 0]])
    assert exc.value.constraint == "gibbs"
    assert exc.value.index == (0,)


@pytest.mark.parametrize("m, constraint", [
    ([[1, 0], [0, 1], [0, 0]], "shape"),
    ([[F(3, 2), 1], [F(-1, 2), 0]], "nonnegative"),
    ([[1, 1], [1, 0]], "column"),
])
def test_invalid_constraints(m, constraint):
    ctx = make_context((1, F(1, 2)))
    with pytest.raises(InvalidProcess) as exc:
        validate_tp(ctx, m)
    assert exc.value.constraint == constraint


def test_apply_identity_and_gibbs(lo, rng):
    p = random_state(lo, rng)
    assert apply(identity(lo), p) == p
    for t in catalog3(lo).values():
        assert apply(t, lo.gibbs_state()) == lo.gibbs_state()


def test_apply_A8_closed_form(lo):
    a, b, c = F(1, 5), F(1, 3), F(7, 15)
    q10, q20, q21 = lo.q(1, 0), lo.q(2, 0), lo.q(2, 1)
    r = apply(catalog_matrix(lo, "A8"), (a, b, c))
    assert r.p == (a * (1 - q10 + q20) + (1 - q21) * b, a * (q10 - q20) + c, b * q21)


def test_compose_catalog_products(lo):
    A = catalog3(lo)
    assert compose(A["A2"], A["A1"]).m == A["A4"].m
    assert compose(A["A1"], A["A2"]).m == A["A6"].m
    assert compose(identity(lo), A["A9"]).m == A["A9"].m
    assert (A["A2"] @ A["A1"]).m == A["A4"].m


def test_compose_context_mismatch(lo, hi):
    with pytest.raises(ThermalError):
        compose(identity(lo), identity(hi))


def test_mix(lo):
    A = catalog3(lo)
    assert mix([(1, A["A5"])]).m == A["A5"].m
    half = mix([(F(1, 2), A["A1"]), (F(1, 2), identity(lo))])
    assert half.m[1][0] == lo.q(1, 0) / 2
    assert half.m[2][2] == 1
    uniform = mix([(F(1, len(A)), t) for t in A.values()])
    assert all(sum(col) == 1 for col in zip(*uniform.m))


def test_mix_bad_weights(lo):
    with pytest.raises(ThermalError):
        mix([(F(1, 2), identity(lo))])
    with pytest.raises(ThermalError):
        mix([(F(3, 2), identity(lo)), (F(-1, 2), identity(lo))])


def test_transportation(lo):
    assert to_transportation(identity(lo)) == tuple(
        tuple(lo.weights[i] if i == j else 0 for j in range(3)) for i in range(3))
    N = to_transportation(build_P(lo))
    assert tuple(sum(r) for r in N) == lo.weights
    assert tuple(sum(c) for c in zip(*N)) == lo.weights


def test_make_state_checks(lo):
    with pytest.raises(ThermalError):
        make_state(lo, (F(1, 2), F(1, 2)))
    with pytest.raises(ThermalError):
        make_state(lo, (F(1, 2), F(1, 2), F(1, 2)))
    with pytest.raises(ThermalError):
        make_state(lo, (F(3, 2), F(-1, 2), 0))


def test_float_tolerance():
    ctx = make_context((1.0, 0.5))
    validate_tp(ctx, [[0.5 + 1e-12, 1.0], [0.5 - 1e-12, 0.0]])
    with pytest.raises(InvalidProcess):
        validate_tp(ctx, [[0.5 + 1e-6, 1.0], [0.5 - 1e-6, 0.0]])
