"""Per-attribute aggregation of component values and comparison of the results.

Frontier-aggregated attributes carry an antichain of domain values (the worst
or best frontier of the contributing values); sum-aggregated attributes carry
a scalar.  Min/max aggregation is the total-order special case of the
frontiers and also yields (singleton) frontiers.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Optional

from .order import maximal_set, minimal_set, comparator_from
from .preference import AggKind, AttributeSchema, SumPolarity

SCALAR_TOLERANCE = 1e-9


class DomainError(ValueError):
    """A value id falls outside the attribute's domain, or no values were given."""


class KindMismatch(TypeError):
    """An aggregated value of the wrong kind was passed for an attribute."""


@dataclass(frozen=True)
class AggValue:
    """Aggregated value of one attribute: a frontier antichain or a scalar."""

    frontier: Optional[frozenset[int]] = None
    scalar: Optional[float] = None

    @staticmethod
    def of_frontier(values: Iterable[int]) -> "AggValue":
        return AggValue(frontier=frozenset(values))

    @staticmethod
    def of_scalar(value: float) -> "AggValue":
        return AggValue(scalar=float(value))

    @property
    def is_frontier(self) -> bool:
        return self.frontier is not None

    def __repr__(self) -> str:
        if self.frontier is not None:
            return f"AggValue({{{', '.join(map(str, sorted(self.frontier)))}}})"
        return f"AggValue({self.scalar})"


@dataclass(frozen=True)
class Valuation:
    """Aggregated values of a composition, index-aligned with the attributes."""

    per_attribute: tuple[AggValue, ...]

    def __getitem__(self, attr_id: int) -> AggValue:
        return self.per_attribute[attr_id]

    def __len__(self) -> int:
        return len(self.per_attribute)


def _check_kind(attr: AttributeSchema, value: AggValue) -> None:
    wants_frontier = attr.agg_kind is not AggKind.SUM
    if wants_frontier != value.is_frontier:
        raise KindMismatch(
            f"attribute {attr.name} aggregates as {attr.agg_kind.value}; got "
            f"{'frontier' if value.is_frontier else 'scalar'} value"
        )


def aggregate(attr: AttributeSchema, values: Iterable[int]) -> AggValue:
    """Aggregate a multiset of domain-value ids into one AggValue.

    Frontier kinds work on the distinct values (duplicates cannot change
    minimality); sums run over the multiset, so duplicates count.
    """
    values = list(values)
    if not values:
        raise DomainError(f"attribute {attr.name}: cannot aggregate zero values")
    n = len(attr.domain)
    for v in values:
        if not (0 <= v < n):
            raise DomainError(f"attribute {attr.name}: value id {v} outside domain of size {n}")
    if attr.agg_kind is AggKind.SUM:
        assert attr.numeric_values is not None
        return AggValue.of_scalar(sum(attr.numeric_values[v] for v in values))
    distinct = sorted(set(values))
    cmp = comparator_from(attr.intra_order)
    if attr.agg_kind in (AggKind.WORST_FRONTIER, AggKind.MIN):
        kept, _ = minimal_set(distinct, cmp)
    else:
        kept, _ = maximal_set(distinct, cmp)
    if attr.agg_kind in (AggKind.MIN, AggKind.MAX) and len(kept) != 1:
        raise DomainError(
            f"attribute {attr.name}: {attr.agg_kind.value} needs a unique extreme, "
            f"got {sorted(kept)}"
        )
    return AggValue.of_frontier(kept)


def merge(attr: AttributeSchema, a: AggValue, b: AggValue) -> AggValue:
    """Combine two aggregated values as if their source multisets were joined.

    Commutative and associative; frontier kinds re-minimize (or re-maximize)
    the union, sums add.  An empty frontier is the neutral element.
    """
    _check_kind(attr, a)
    _check_kind(attr, b)
    if attr.agg_kind is AggKind.SUM:
        return AggValue.of_scalar(a.scalar + b.scalar)  # type: ignore[operator]
    union = a.frontier | b.frontier  # type: ignore[operator]
    if not union:
        return AggValue.of_frontier(())
    return aggregate(attr, sorted(union))


def strictly_preferred(attr: AttributeSchema, a: AggValue, b: AggValue) -> bool:
    """The strict comparison of aggregated values for one attribute.

    Frontiers: every element of b is strictly beaten by some element of a
    (false when b is the empty bottom placeholder).  Scalars: better per the
    attribute polarity, with ties inside the tolerance counting as equal.
    """
    _check_kind(attr, a)
    _check_kind(attr, b)
    if attr.agg_kind is AggKind.SUM:
        assert a.scalar is not None and b.scalar is not None
        if attr.sum_polarity is SumPolarity.LOWER_IS_BETTER:
            return a.scalar < b.scalar - SCALAR_TOLERANCE
        return a.scalar > b.scalar + SCALAR_TOLERANCE
    assert a.frontier is not None and b.frontier is not None
    if not b.frontier:
        return False
    mat = attr.intra_order.matrix
    return all(any(mat[x, y] for x in a.frontier) for y in b.frontier)


def at_least_as_preferred(attr: AttributeSchema, a: AggValue, b: AggValue) -> bool:
    """Equal (frontier set equality / scalar tolerance) or strictly preferred."""
    _check_kind(attr, a)
    _check_kind(attr, b)
    if attr.agg_kind is AggKind.SUM:
        assert a.scalar is not None and b.scalar is not None
        if abs(a.scalar - b.scalar) <= SCALAR_TOLERANCE:
            return True
    elif a.frontier == b.frontier:
        return True
    return strictly_preferred(attr, a, b)
