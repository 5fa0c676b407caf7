"""Exact toughness values, minimizers, roulette selection, pseudo-greedy."""

import itertools
from fractions import Fraction

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from isotough.errors import CapacityError
from isotough.graphs import (
    Graph,
    clique_join_singles,
    complete,
    counterexample_family,
    empty_graph,
    extremal_family,
    from_bits,
    isolated_count,
    pair_count,
    star,
)
from isotough.rational import INFINITY
from isotough.toughness import (
    exact_isolated_toughness,
    exact_isolated_toughness_variant,
    pseudo_greedy_estimate,
    roulette_select,
)

WORKED_BITS = "1111010010"


def brute_force(g, variant):
    """Reference: direct Fraction minimization over all vertex subsets."""
    best = INFINITY
    minimizers = []
    for size in range(0, g.n - 1):
        for subset in itertools.combinations(range(g.n), size):
            iso = isolated_count(g, subset)
            if iso < 2:
                continue
            ratio = Fraction(len(subset), iso - 1 if variant else iso)
            if ratio < best:
                best, minimizers = ratio, [subset]
            elif ratio == best:
                minimizers.append(subset)
    return best, minimizers


def graphs(n_min=2, n_max=8):
    return st.integers(n_min, n_max).flatmap(
        lambda n: st.integers(0, (1 << pair_count(n)) - 1).map(
            lambda code: Graph(n, code)))


# ----- closed-form values ---------------------------------------------------

def test_complete_graphs_are_infinite():
    for n in (2, 4, 6):
        assert exact_isolated_toughness(complete(n)).value == INFINITY
        assert exact_isolated_toughness_variant(complete(n)).value == INFINITY
        assert exact_isolated_toughness(complete(n)).minimizers == ()


def test_star_extreme_values():
    assert exact_isolated_toughness(star(5)).value == Fraction(1, 4)
    assert exact_isolated_toughness_variant(star(5)).value == Fraction(1, 3)
    for n in range(4, 9):
        assert exact_isolated_toughness(star(n)).value == Fraction(1, n - 1)
        assert exact_isolated_toughness_variant(star(n)).value \
            == Fraction(1, n - 2)


def test_clique_join_singles_values():
    assert exact_isolated_toughness(clique_join_singles(3, 4)).value \
        == Fraction(3, 4)
    for c, d in [(2, 3), (2, 5), (4, 4)]:
        assert exact_isolated_toughness(clique_join_singles(c, d)).value \
            == Fraction(c, d)
        assert exact_isolated_toughness_variant(
            clique_join_singles(c, d + 1)).value == Fraction(c, d)


def test_extremal_family_values():
    assert exact_isolated_toughness(extremal_family(2, 3)).value \
        == Fraction(5, 3)
    assert exact_isolated_toughness_variant(extremal_family(2, 2)).value \
        == Fraction(3)
    for k in (2, 3):
        for l in range(2, 6):
            g = extremal_family(k, l)
            assert exact_isolated_toughness(g).value == k - Fraction(1, l)
            assert exact_isolated_toughness_variant(g).value \
                == k + Fraction(k - 1, l - 1)


def test_extremal_family_monotone_in_copies():
    for k in (2, 3):
        plain = [exact_isolated_toughness(extremal_family(k, l)).value
                 for l in range(2, 7)]
        variant = [exact_isolated_toughness_variant(
            extremal_family(k, l)).value for l in range(2, 7)]
        assert all(a < b for a, b in zip(plain, plain[1:]))
        assert all(a > b for a, b in zip(variant, variant[1:]))


def test_counterexample_family_sits_on_the_bound():
    for k in (2, 3, 4):
        for t in range(4):
            g = counterexample_family(k, t)
            assert exact_isolated_toughness_variant(g).value \
                == k + Fraction(k - 1, t + 1)


def test_empty_graph_value_zero():
    outcome = exact_isolated_toughness_variant(empty_graph(3))
    assert outcome.value == 0
    assert outcome.minimizers == ((),)
    assert outcome.witness_i == (3,)
    assert exact_isolated_toughness(empty_graph(3)).value == 0


def test_worked_example_values():
    g = from_bits(5, WORKED_BITS)
    assert exact_isolated_toughness(g).value == Fraction(3, 2)
    assert exact_isolated_toughness_variant(g).value == Fraction(3)


def test_exact_order_gate():
    with pytest.raises(CapacityError):
        exact_isolated_toughness(Graph(25, 0))
    assert exact_isolated_toughness(Graph(25, 0), limit=25).value == 0


# ----- minimizer contracts --------------------------------------------------

@given(graphs(2, 7))
@settings(max_examples=200, deadline=None)
def test_exact_matches_brute_force(g):
    for variant, compute in ((False, exact_isolated_toughness),
                             (True, exact_isolated_toughness_variant)):
        expected_value, expected_sets = brute_force(g, variant)
        outcome = compute(g)
        assert outcome.value == expected_value
        assert sorted(outcome.minimizers) == sorted(expected_sets)


@given(graphs(2, 8))
@settings(max_examples=150, deadline=None)
def test_minimizers_achieve_the_value(g):
    outcome = exact_isolated_toughness_variant(g)
    if outcome.value == INFINITY:
        assert outcome.minimizers == ()
        return
    for subset, iso in zip(outcome.minimizers, outcome.witness_i):
        assert isolated_count(g, subset) == iso
        assert iso >= 2
        assert Fraction(len(subset), iso - 1) == outcome.value


@given(graphs(3, 7))
@settings(max_examples=150, deadline=None)
def test_variant_beats_plain_on_shared_sets(g):
    # per deletion set with |S| >= 1, i >= 2: |S|/(i-1) > |S|/i
    plain = exact_isolated_toughness(g)
    for subset, iso in zip(plain.minimizers, plain.witness_i):
        if subset:
            assert Fraction(len(subset), iso - 1) \
                > Fraction(len(subset), iso)


# ----- roulette selection ---------------------------------------------------

def test_roulette_worked_examples():
    degrees = [4, 2, 2, 2, 2]
    assert roulette_select(degrees, 0.0) == 0
    assert roulette_select(degrees, 0.34) == 1
    assert roulette_select([0, 5], 0.99) == 1


def test_roulette_interval_partition():
    degrees = [4, 2, 2, 2, 2]
    total = sum(degrees)
    prefix = [0]
    for d in degrees:
        prefix.append(prefix[-1] + d)
    for j in range(len(degrees)):
        low, high = prefix[j] / total, prefix[j + 1] / total
        assert roulette_select(degrees, low) == j
        assert roulette_select(degrees, (low + high) / 2) == j


def test_roulette_rejects_bad_input():
    with pytest.raises(ValueError):
        roulette_select([1, 2], 1.0)
    with pytest.raises(ValueError):
        roulette_select([1, 2], -0.1)
    with pytest.raises(ValueError):
        roulette_select([0, 0], 0.5)


def test_roulette_never_picks_zero_degree(seeded_rng):
    degrees = [0, 3, 0, 1, 0]
    for _ in range(200):
        assert degrees[roulette_select(degrees, float(seeded_rng.random()))]


# ----- pseudo-greedy estimator ----------------------------------------------

def test_pseudo_greedy_star():
    trace = pseudo_greedy_estimate(star(5), np.random.default_rng(0))
    assert trace.estimate == Fraction(1, 3)
    assert not trace.delegated


def test_pseudo_greedy_complete_six_is_infinite():
    trace = pseudo_greedy_estimate(complete(6), np.random.default_rng(0))
    assert trace.estimate == INFINITY


def test_pseudo_greedy_small_orders_delegate_to_exact():
    g = from_bits(3, "110")
    trace = pseudo_greedy_estimate(g, np.random.default_rng(0))
    assert trace.delegated
    assert trace.estimate == exact_isolated_toughness_variant(g).value


def test_pseudo_greedy_is_seed_deterministic():
    g = from_bits(5, WORKED_BITS)
    runs = [pseudo_greedy_estimate(g, np.random.default_rng(7))
            for _ in range(3)]
    assert len({r.estimate for r in runs}) == 1
    assert len({tuple(r.deletion_sequence) for r in runs}) == 1


def test_pseudo_greedy_runs_expected_step_count():
    g = star(8)
    trace = pseudo_greedy_estimate(g, np.random.default_rng(3))
    assert len(trace.steps) == g.n - 3


@given(graphs(4, 9), st.integers(0, 2 ** 32 - 1))
@settings(max_examples=300, deadline=None)
def test_pseudo_greedy_upper_bounds_exact(g, seed):
    estimate = pseudo_greedy_estimate(g, np.random.default_rng(seed)).estimate
    exact = exact_isolated_toughness_variant(g).value
    if exact == INFINITY:
        assert estimate == INFINITY
    else:
        assert estimate >= exact


@pytest.fixture
def seeded_rng():
    return np.random.Generator(np.random.PCG64(99))
