"""Global dominance between complete valuations, with witness extraction.

One valuation dominates another when some attribute strictly improves while
every attribute that is at least as important (strictly more important or
incomparable, including the witness itself) stays at least as preferred.

Two execution paths compute the same relation: a plain path built on the
public aggregation comparisons, and a packed path that encodes frontiers as
bitmasks and runs the witness scan through :mod:`prefcompose.kernels`.  The
packed path is used whenever every domain fits in a bitmask.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass
from typing import Optional, Sequence

import numpy as np

from . import kernels
from .aggregation import (
    SCALAR_TOLERANCE,
    Valuation,
    at_least_as_preferred,
    strictly_preferred,
)
from .order import FIRST, NEITHER, SECOND, Comparator, Comparison, maximal_set
from .preference import AggKind, AttributeSchema, PreferenceSpec, SumPolarity


class ShapeError(ValueError):
    """A valuation is not aligned with the spec's attribute list."""


class Relation(enum.Enum):
    FIRST_DOMINATES = "first_dominates"
    SECOND_DOMINATES = "second_dominates"
    INDIFFERENT = "indifferent"


@dataclass(frozen=True)
class DominanceOutcome:
    relation: Relation
    witness: Optional[int] = None
    asymmetry_violation: bool = False


@dataclass(frozen=True)
class PackedTables:
    """Spec constants in kernel layout; built once per spec."""

    kinds: np.ndarray
    nvals: np.ndarray
    dom_masks: np.ndarray
    imp: np.ndarray


def _kind_code(attr: AttributeSchema) -> int:
    if attr.agg_kind is not AggKind.SUM:
        return kernels.KIND_FRONTIER
    if attr.sum_polarity is SumPolarity.LOWER_IS_BETTER:
        return kernels.KIND_SCALAR_LOW
    return kernels.KIND_SCALAR_HIGH


def packed_tables(spec: PreferenceSpec) -> Optional[PackedTables]:
    """Kernel tables for the spec, or None when some domain is too large."""
    if spec._packed is not None:
        return spec._packed  # type: ignore[return-value]
    m = spec.attr_count
    sizes = [len(a.domain) for a in spec.attributes]
    if any(s > kernels.MAX_PACKED_DOMAIN for s in sizes):
        return None
    n_max = max(sizes, default=1) or 1
    kinds = np.zeros(m, dtype=np.int8)
    nvals = np.zeros(m, dtype=np.int64)
    dom_masks = np.zeros((m, n_max), dtype=np.int64)
    for i, attr in enumerate(spec.attributes):
        kinds[i] = _kind_code(attr)
        nvals[i] = len(attr.domain)
        mat = attr.intra_order.matrix
        for v in range(len(attr.domain)):
            mask = 0
            for u in range(len(attr.domain)):
                if mat[u, v]:
                    mask |= 1 << u
            dom_masks[i, v] = mask
    tables = PackedTables(kinds=kinds, nvals=nvals, dom_masks=dom_masks, imp=spec.importance.matrix)
    spec._packed = tables
    return tables


def pack_valuation(spec: PreferenceSpec, valuation: Valuation) -> tuple[np.ndarray, np.ndarray]:
    """Bitmask/scalar rows of a valuation in kernel layout."""
    m = spec.attr_count
    masks = np.zeros(m, dtype=np.int64)
    scalars = np.zeros(m, dtype=np.float64)
    for i, value in enumerate(valuation.per_attribute):
        if value.is_frontier:
            mask = 0
            for v in value.frontier:  # type: ignore[union-attr]
                mask |= 1 << v
            masks[i] = mask
        else:
            scalars[i] = value.scalar  # type: ignore[assignment]
    return masks, scalars


def _check_shape(spec: PreferenceSpec, valuation: Valuation) -> None:
    if len(valuation) != spec.attr_count:
        raise ShapeError(
            f"valuation has {len(valuation)} attributes, spec has {spec.attr_count}"
        )


def _is_witness_plain(spec: PreferenceSpec, u: Valuation, v: Valuation, i: int) -> bool:
    attrs = spec.attributes
    if not strictly_preferred(attrs[i], u[i], v[i]):
        return False
    imp = spec.importance.matrix
    for k in range(spec.attr_count):
        if imp[i, k]:
            continue
        if not at_least_as_preferred(attrs[k], u[k], v[k]):
            return False
    return True


def _dominates_plain(spec: PreferenceSpec, u: Valuation, v: Valuation) -> Optional[int]:
    for i in range(spec.attr_count):
        if _is_witness_plain(spec, u, v, i):
            return i
    return None


def dominates(spec: PreferenceSpec, u: Valuation, v: Valuation) -> Optional[int]:
    """Lowest-id witness attribute certifying that u dominates v, or None."""
    _check_shape(spec, u)
    _check_shape(spec, v)
    tables = packed_tables(spec)
    if tables is None:
        return _dominates_plain(spec, u, v)
    umask, uscal = pack_valuation(spec, u)
    vmask, vscal = pack_valuation(spec, v)
    w = int(
        kernels.dominates_witness(
            tables.kinds, tables.nvals, tables.dom_masks, tables.imp,
            umask, uscal, vmask, vscal, SCALAR_TOLERANCE,
        )
    )
    return w if w >= 0 else None


def witnesses(spec: PreferenceSpec, u: Valuation, v: Valuation) -> list[int]:
    """All attributes that certify u dominating v (empty when none)."""
    _check_shape(spec, u)
    _check_shape(spec, v)
    return [i for i in range(spec.attr_count) if _is_witness_plain(spec, u, v, i)]


def compare(spec: PreferenceSpec, u: Valuation, v: Valuation) -> DominanceOutcome:
    """Symmetrized dominance; flags the (theoretically impossible under an
    interval importance order) case where both directions hold."""
    forward = dominates(spec, u, v)
    backward = dominates(spec, v, u)
    if forward is not None and backward is not None:
        return DominanceOutcome(Relation.FIRST_DOMINATES, forward, asymmetry_violation=True)
    if forward is not None:
        return DominanceOutcome(Relation.FIRST_DOMINATES, forward)
    if backward is not None:
        return DominanceOutcome(Relation.SECOND_DOMINATES, backward)
    return DominanceOutcome(Relation.INDIFFERENT)


class PackedPool:
    """A list of valuations packed once for repeated pairwise tests."""

    def __init__(self, spec: PreferenceSpec, valuations: Sequence[Valuation]):
        self.spec = spec
        self.tables = packed_tables(spec)
        self.valuations = list(valuations)
        if self.tables is not None:
            rows = [pack_valuation(spec, v) for v in self.valuations]
            self.masks = [r[0] for r in rows]
            self.scalars = [r[1] for r in rows]

    def witness(self, a: int, b: int) -> int:
        """Witness of pool[a] dominating pool[b], or -1."""
        if self.tables is None:
            w = _dominates_plain(self.spec, self.valuations[a], self.valuations[b])
            return -1 if w is None else w
        t = self.tables
        return int(
            kernels.dominates_witness(
                t.kinds, t.nvals, t.dom_masks, t.imp,
                self.masks[a], self.scalars[a], self.masks[b], self.scalars[b],
                SCALAR_TOLERANCE,
            )
        )

    def comparator(self) -> Comparator[int]:
        def cmp(a: int, b: int) -> Comparison:
            if self.witness(a, b) >= 0:
                return FIRST
            if self.witness(b, a) >= 0:
                return SECOND
            return NEITHER

        return cmp

    def dominance_matrix(self) -> np.ndarray:
        """Boolean matrix D with D[a, b] true when pool[a] dominates pool[b].

        The diagonal is evaluated rather than assumed false, so irreflexivity
        failures would show up here.
        """
        c = len(self.valuations)
        out = np.zeros((c, c), dtype=np.bool_)
        for a in range(c):
            for b in range(c):
                if self.witness(a, b) >= 0:
                    out[a, b] = True
        return out


def nondominated(
    spec: PreferenceSpec, valuations: Sequence[tuple[object, Valuation]]
) -> set:
    """Ids of the non-dominated valuations (duplicates are all retained)."""
    for _, v in valuations:
        _check_shape(spec, v)
    pool = PackedPool(spec, [v for _, v in valuations])
    kept, _ = maximal_set(list(range(len(valuations))), pool.comparator())
    return {valuations[i][0] for i in kept}


def nondominated_with_count(
    spec: PreferenceSpec, valuations: Sequence[tuple[object, Valuation]]
) -> tuple[set, int]:
    """Like :func:`nondominated` but also reports the comparison count."""
    pool = PackedPool(spec, [v for _, v in valuations])
    kept, comparisons = maximal_set(list(range(len(valuations))), pool.comparator())
    return {valuations[i][0] for i in kept}, comparisons
