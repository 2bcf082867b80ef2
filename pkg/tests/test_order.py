"""Strict-order construction, classification, frontier extraction, width."""

from __future__ import annotations

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from prefcompose import (
    CycleError,
    SizeLimitError,
    build_order,
    classify,
    indifferent,
    maximal_set,
    minimal_set,
    width,
)
from prefcompose.order import comparator_from

from conftest import naive_maximal, naive_minimal


def test_empty_relation_is_all_indifferent():
    order = build_order([], 3)
    assert order.edges() == []
    assert all(indifferent(order, x, y) for x in range(3) for y in range(3))


def test_single_edge_relation():
    # b > c on {a, b, c}: b and a incomparable, a and c incomparable
    order = build_order([(1, 2)], 3)
    assert order.edges() == [(1, 2)]
    assert indifferent(order, 1, 0)
    assert indifferent(order, 0, 2)
    assert not indifferent(order, 1, 2)


def test_closure_adds_implied_edge():
    order = build_order([(0, 1), (1, 2)], 3)
    assert order.dominates(0, 2)


def test_two_cycle_rejected():
    with pytest.raises(CycleError):
        build_order([(0, 1), (1, 0)], 2)


def test_out_of_range_edge_rejected():
    with pytest.raises(ValueError):
        build_order([(0, 5)], 3)


def test_two_disjoint_chains_not_interval():
    flags = classify(build_order([(0, 2), (1, 3)], 4))
    assert flags.is_partial and not flags.is_interval
    assert not flags.is_weak and not flags.is_total


def test_single_edge_interval_not_weak():
    flags = classify(build_order([(0, 1)], 3))
    assert flags.is_interval and not flags.is_weak


def test_chain_has_all_flags():
    flags = classify(build_order([(0, 1), (1, 2)], 3))
    assert flags.is_partial and flags.is_interval and flags.is_weak and flags.is_total


def test_classification_chain_is_monotone(rng):
    from prefcompose.simulator import random_order

    for kind in ("total", "partial", "interval", "weak"):
        for _ in range(40):
            n = int(rng.integers(1, 9))
            flags = classify(random_order(n, kind, rng, density=0.4))
            assert flags.is_total <= flags.is_weak <= flags.is_interval <= flags.is_partial


def test_maximal_set_empty():
    assert maximal_set([], lambda a, b: "neither") == ([], 0)


def test_maximal_set_chain_unique_top():
    order = build_order([(0, 1), (1, 2)], 3)
    kept, count = maximal_set([0, 1, 2], comparator_from(order))
    assert kept == [0]
    assert count <= 2 * 1 * 3


def test_minimal_set_chain_unique_bottom():
    order = build_order([(0, 1), (1, 2)], 3)
    kept, _ = minimal_set([0, 1, 2], comparator_from(order))
    assert kept == [2]


def test_minimal_set_matches_worst_values_example():
    # areas FM AI DB NW TH with AI>FM, AI>DB, FM>DB, TH>NW
    fm, ai, db, nw, th = range(5)
    order = build_order([(ai, fm), (ai, db), (fm, db), (th, nw)], 5)
    kept, _ = minimal_set([fm, ai, db, nw, th], comparator_from(order))
    assert sorted(kept) == [db, nw]


def _random_poset(rng, n):
    from prefcompose.simulator import random_order

    return random_order(n, "partial", rng, density=float(rng.random() * 0.6))


def test_maximal_and_minimal_match_naive_filter_on_random_posets(rng):
    for _ in range(200):
        n = int(rng.integers(1, 41))
        order = _random_poset(rng, n)
        items = [int(i) for i in rng.permutation(n)]
        cmp = comparator_from(order)
        kept, count = maximal_set(items, cmp)
        assert sorted(kept) == sorted(naive_maximal(items, cmp))
        kept_min, _ = minimal_set(items, cmp)
        assert sorted(kept_min) == sorted(naive_minimal(items, cmp))
        assert count <= 2 * width(order) * n


def test_width_of_empty_relation_is_universe():
    assert width(build_order([], 5)) == 5


def test_width_of_chain_is_one():
    assert width(build_order([(0, 1), (1, 2), (2, 3), (3, 4)], 5)) == 1


def test_width_of_two_disjoint_chains():
    # largest antichain of {0>2, 1>3} has two elements (checked by hand
    # against all 2^4 subsets)
    assert width(build_order([(0, 2), (1, 3)], 4)) == 2


def test_width_size_limit():
    with pytest.raises(SizeLimitError):
        width(build_order([], 600))
    assert width(build_order([], 600), limit=600) == 600


def test_width_matches_antichain_enumeration(rng):
    from itertools import combinations

    for _ in range(30):
        n = int(rng.integers(2, 9))
        order = _random_poset(rng, n)
        best = max(
            size
            for size in range(1, n + 1)
            for combo in combinations(range(n), size)
            if all(indifferent(order, x, y) for x in combo for y in combo if x != y)
        )
        assert width(order) == best


def test_indifference_reflexive():
    order = build_order([(1, 2)], 3)
    assert all(indifferent(order, x, x) for x in range(3))


def test_indifference_not_transitive_for_single_edge():
    # b ~ a and a ~ c, yet b > c
    order = build_order([(1, 2)], 3)
    assert indifferent(order, 1, 0) and indifferent(order, 0, 2)
    assert order.dominates(1, 2)


def test_total_order_leaves_no_indifferent_pairs():
    order = build_order([(0, 1), (1, 2)], 3)
    assert not any(indifferent(order, x, y) for x in range(3) for y in range(3) if x != y)


@settings(max_examples=60, deadline=None)
@given(
    n=st.integers(2, 8),
    pairs=st.lists(st.tuples(st.integers(0, 7), st.integers(0, 7)), max_size=12),
)
def test_closure_invariants_hold_for_arbitrary_acyclic_input(n, pairs):
    edges = [(a % n, b % n) for a, b in pairs if a % n != b % n]
    try:
        order = build_order(edges, n)
    except CycleError:
        return
    mat = order.matrix
    assert not mat.diagonal().any()
    closure_again = mat | (mat.astype(np.uint8) @ mat.astype(np.uint8) > 0)
    assert np.array_equal(closure_again, mat)  # already transitively closed
    assert not np.any(mat & mat.T)  # asymmetric
    for x in range(n):
        for y in range(n):
            assert indifferent(order, x, y) == indifferent(order, y, x)
