import random
from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from ergopt.errors import EmptyRecurrentPart
from ergopt.generators import random_graph, random_weight
from ergopt.graph import CycleMeasure, TransitionGraph, cycle_mean
from ergopt.maxmean import beta, max_cycle_mean_howard, max_cycle_mean_karp
from oracles import brute_beta

SOLVERS = [max_cycle_mean_karp, max_cycle_mean_howard]


@pytest.mark.parametrize("solver", SOLVERS)
def test_single_loop(solver):
    res = solver(TransitionGraph(1, [(0, 0, "7/3")]))
    assert res.lam == Fraction(7, 3)
    assert res.witness_cycle == CycleMeasure((0,))


@pytest.mark.parametrize("solver", SOLVERS)
def test_two_loops(solver, two_loops):
    res = solver(two_loops)
    assert res.lam == 2
    # edges in canonical order: 0->0, 0->1, 1->0, 1->1
    assert res.witness_cycle == CycleMeasure((3,))


@pytest.mark.parametrize("solver", SOLVERS)
def test_tie_is_deterministic(solver):
    # triangle of weight-1 edges plus a chord closing a 2-cycle, all means 1
    g = TransitionGraph(3, [(0, 1, 1), (1, 2, 1), (2, 0, 1), (1, 0, 1)])
    a, b = solver(g), solver(g)
    assert a.lam == 1
    assert a == b
    assert cycle_mean(a.witness_cycle, g) == 1


@pytest.mark.parametrize("solver", SOLVERS)
def test_two_components(solver):
    g = TransitionGraph(4, [(0, 1, 1), (1, 0, 1), (1, 2, 0), (2, 3, 3), (3, 2, 3)])
    res = solver(g)
    assert res.lam == 3
    assert sorted(lam for _, lam in res.per_scc_lambda) == [1, 3]
    assert max(lam for _, lam in res.per_scc_lambda) == res.lam


@pytest.mark.parametrize("solver", SOLVERS)
def test_acyclic_raises(solver):
    with pytest.raises(EmptyRecurrentPart):
        solver(TransitionGraph(2, [(0, 1, 1)]))


def test_beta_examples(two_loops):
    assert beta(TransitionGraph(1, [(0, 0, 0)])) == 0
    assert beta(two_loops) == 2


@settings(max_examples=200, deadline=None)
@given(st.integers(0, 10**9))
def test_oracle_equivalence(seed):
    g = random_graph(random.Random(seed))
    karp, howard = max_cycle_mean_karp(g), max_cycle_mean_howard(g)
    expected = brute_beta(g)
    assert karp.lam == howard.lam == expected
    assert cycle_mean(karp.witness_cycle, g) == expected
    assert cycle_mean(howard.witness_cycle, g) == expected


@settings(max_examples=100, deadline=None)
@given(st.integers(0, 10**9), st.fractions(max_denominator=20).filter(lambda q: abs(q) < 50))
def test_shift_equivariance(seed, c):
    g = random_graph(random.Random(seed))
    shifted = g.with_weights([w + c for w in g.weights])
    assert beta(shifted) == beta(g) + c


@settings(max_examples=100, deadline=None)
@given(st.integers(0, 10**9), st.fractions(min_value=0, max_value=20, max_denominator=20))
def test_scale_equivariance(seed, c):
    g = random_graph(random.Random(seed))
    assert beta(g.with_weights([c * w for w in g.weights])) == c * beta(g)


@settings(max_examples=100, deadline=None)
@given(st.integers(0, 10**9))
def test_monotone_in_each_edge(seed):
    rng = random.Random(seed)
    g = random_graph(rng)
    ws = list(g.weights)
    i = rng.randrange(len(ws))
    ws[i] += abs(random_weight(rng))
    assert beta(g.with_weights(ws)) >= beta(g)
