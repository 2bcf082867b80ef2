"""The four strategies for finding most-preferred feasible compositions.

* ``compose_and_filter``          -- enumerate everything, keep the
  non-dominated set (sound and complete).
* ``weakly_complete_compose``     -- per most-important attribute, keep the
  attribute-best compositions, then the non-dominated among those (sound,
  weakly complete).
* ``att_weakly_complete_compose`` -- attribute-best for one most-important
  attribute only (weakly complete, not sound).
* ``interleave_compose``          -- alternate one-step extension with
  non-dominated filtering of partial compositions; dominated partials are
  kept aside, never discarded, because a later extension of an undominated
  partial may still need to beat them.
"""

from __future__ import annotations

import random
import time
from dataclasses import dataclass, field
from typing import Optional, Sequence

from .aggregation import strictly_preferred
from .composition import Composition, FeasibilityProvider, enumerate_feasible
from .dominance import PackedPool
from .order import FIRST, NEITHER, SECOND, maximal_set
from .preference import PreferenceSpec, most_important_set


@dataclass
class RunResult:
    """What one algorithm run produced and what it cost."""

    algorithm: str
    solutions: list[Composition]
    elapsed_ms: float
    fcount: int
    config: dict = field(default_factory=dict)


def _sorted_solutions(comps: Sequence[Composition]) -> list[Composition]:
    return sorted(comps, key=lambda c: (c.members, str(c.provider_node)))


def _filter_dominance(spec: PreferenceSpec, comps: Sequence[Composition]) -> list[Composition]:
    pool = PackedPool(spec, [c.valuation for c in comps])
    kept, _ = maximal_set(list(range(len(comps))), pool.comparator())
    return [comps[i] for i in kept]


def _filter_attribute(
    spec: PreferenceSpec, comps: Sequence[Composition], attr_id: int
) -> list[Composition]:
    attr = spec.attributes[attr_id]

    def cmp(a: int, b: int):
        if strictly_preferred(attr, comps[a].valuation[attr_id], comps[b].valuation[attr_id]):
            return FIRST
        if strictly_preferred(attr, comps[b].valuation[attr_id], comps[a].valuation[attr_id]):
            return SECOND
        return NEITHER

    kept, _ = maximal_set(list(range(len(comps))), cmp)
    return [comps[i] for i in kept]


class _RunClock:
    """Elapsed time of one run: simulated provider delay by default, wall
    clock when the provider really sleeps."""

    def __init__(self, provider: FeasibilityProvider):
        self.provider = provider
        self.sim_start = provider.simulated_ms
        self.wall_start = time.perf_counter()

    def elapsed_ms(self) -> float:
        if getattr(self.provider, "real_sleep", False):
            return (time.perf_counter() - self.wall_start) * 1000.0
        return self.provider.simulated_ms - self.sim_start


def compose_and_filter(spec: PreferenceSpec, provider: FeasibilityProvider) -> RunResult:
    """Enumerate the feasible set, return its non-dominated subset."""
    clock = _RunClock(provider)
    fcount0 = provider.invocation_count
    feasible = enumerate_feasible(provider)
    solutions = _filter_dominance(spec, feasible)
    return RunResult(
        algorithm="a1",
        solutions=_sorted_solutions(solutions),
        elapsed_ms=clock.elapsed_ms(),
        fcount=provider.invocation_count - fcount0,
    )


def weakly_complete_compose(spec: PreferenceSpec, provider: FeasibilityProvider) -> RunResult:
    """Union, over the most important attributes, of the non-dominated subset
    of each attribute's best compositions.  The feasible set is enumerated
    once and reused across the attribute loop."""
    clock = _RunClock(provider)
    fcount0 = provider.invocation_count
    feasible = enumerate_feasible(provider)
    chosen: dict = {}
    for attr_id in sorted(most_important_set(spec)):
        best_for_attr = _filter_attribute(spec, feasible, attr_id)
        for comp in _filter_dominance(spec, best_for_attr):
            chosen.setdefault(comp.key(), comp)
    return RunResult(
        algorithm="a2",
        solutions=_sorted_solutions(chosen.values()),
        elapsed_ms=clock.elapsed_ms(),
        fcount=provider.invocation_count - fcount0,
    )


def att_weakly_complete_compose(
    spec: PreferenceSpec,
    provider: FeasibilityProvider,
    pick: str = "lowest",
    pick_seed: Optional[int] = None,
) -> RunResult:
    """Best compositions for a single most-important attribute.

    ``pick`` chooses that attribute: "lowest" takes the smallest id for
    reproducibility, "seeded" draws uniformly using ``pick_seed``.
    """
    clock = _RunClock(provider)
    fcount0 = provider.invocation_count
    important = sorted(most_important_set(spec))
    if pick == "lowest":
        attr_id = important[0]
    elif pick == "seeded":
        attr_id = random.Random(pick_seed).choice(important)
    else:
        raise ValueError(f"unknown pick policy {pick!r}")
    feasible = enumerate_feasible(provider)
    solutions = _filter_attribute(spec, feasible, attr_id)
    return RunResult(
        algorithm="a3",
        solutions=_sorted_solutions(solutions),
        elapsed_ms=clock.elapsed_ms(),
        fcount=provider.invocation_count - fcount0,
        config={"picked_attribute": attr_id},
    )


def interleave_compose(
    spec: PreferenceSpec,
    provider: FeasibilityProvider,
    extend_feasible: bool = False,
    initial: Optional[Sequence[Composition]] = None,
) -> RunResult:
    """Alternate non-dominated filtering of partial compositions with one-step
    extension of the infeasible ones, until the filtered set is all feasible.

    ``extend_feasible`` additionally extends feasible members once; that is
    needed when aggregation kinds allow an extension to improve (sums,
    min/max), and pointless under worst-frontier aggregation where an
    extension never dominates what it extends.
    """
    clock = _RunClock(provider)
    fcount0 = provider.invocation_count
    working = list(initial) if initial is not None else [provider.root()]
    extended: set = set()

    def result(solutions: Sequence[Composition]) -> RunResult:
        return RunResult(
            algorithm="a4",
            solutions=_sorted_solutions(solutions),
            elapsed_ms=clock.elapsed_ms(),
            fcount=provider.invocation_count - fcount0,
            config={"extend_feasible": extend_feasible},
        )

    while True:
        if not working:
            return result([])
        best = _filter_dominance(spec, working)
        best_keys = {c.key() for c in best}
        replacement: list[Composition] = []
        replacement_keys: set = set()

        def absorb(comp: Composition) -> None:
            if comp.key() not in replacement_keys:
                replacement_keys.add(comp.key())
                replacement.append(comp)

        for comp in best:
            if provider.is_feasible(comp):
                absorb(comp)
                if extend_feasible and not comp.terminal and comp.key() not in extended:
                    extended.add(comp.key())
                    for ext in provider.extensions(comp):
                        absorb(ext)
            elif not comp.terminal:
                # Dead-end partials (terminal and infeasible) extend to
                # nothing and drop out of the working list here.
                for ext in provider.extensions(comp):
                    absorb(ext)
        if replacement_keys == best_keys:
            return result(best)
        rest = [c for c in working if c.key() not in best_keys]
        rest_keys = {c.key() for c in rest}
        working = rest + [c for c in replacement if c.key() not in rest_keys]
