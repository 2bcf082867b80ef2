"""Shared helpers: tiny spec builders and naive reference filters.

The naive filters re-state the definitions directly (all-pairs scans) and are
kept independent of the package's frontier-maintenance and packed kernels.
"""

from __future__ import annotations

import numpy as np
import pytest

from prefcompose import (
    AggKind,
    AggValue,
    AttributeSchema,
    PreferenceSpec,
    SumPolarity,
    Valuation,
    build_order,
)


def naive_maximal(items, strictly_better):
    """Keep the items nothing beats: the direct all-pairs reading."""
    return [
        x
        for i, x in enumerate(items)
        if not any(strictly_better(y, x) == "first" for j, y in enumerate(items) if j != i)
    ]


def naive_minimal(items, strictly_better):
    return [
        x
        for i, x in enumerate(items)
        if not any(strictly_better(x, y) == "first" for j, y in enumerate(items) if j != i)
    ]


def frontier_spec(domains_and_edges, importance_edges):
    """Spec of worst-frontier attributes from (domain, edges) pairs."""
    attributes = []
    for i, (domain, edges) in enumerate(domains_and_edges):
        attributes.append(
            AttributeSchema(
                attr_id=i,
                name=f"x{i}",
                domain=tuple(domain),
                intra_order=build_order(edges, len(domain)),
                agg_kind=AggKind.WORST_FRONTIER,
            )
        )
    return PreferenceSpec(
        attributes=tuple(attributes),
        importance=build_order(importance_edges, len(attributes)),
    )


def singleton_valuation(*value_ids) -> Valuation:
    return Valuation(tuple(AggValue.of_frontier((v,)) for v in value_ids))


def sum_attribute(attr_id, name, numeric, polarity=SumPolarity.LOWER_IS_BETTER):
    domain = tuple(str(v) for v in numeric)
    return AttributeSchema(
        attr_id=attr_id,
        name=name,
        domain=domain,
        intra_order=build_order([], len(domain)),
        agg_kind=AggKind.SUM,
        numeric_values=tuple(float(v) for v in numeric),
        sum_polarity=polarity,
    )


@pytest.fixture
def rng():
    return np.random.default_rng(20240811)
