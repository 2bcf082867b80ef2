"""Simulation apparatus: random search trees, random preferences, batch runs.

Search spaces are uniform recursive trees: node k attaches to a parent drawn
uniformly from nodes 0..k-1, the root standing for the empty composition and
every other node for the one-step extension of its parent by one repository
component.  A chosen fraction of the leaves is marked feasible.  Preference
specs are drawn with configurable order kinds for the value orders and the
importance order.
"""

from __future__ import annotations

import csv
import math
import time
from dataclasses import dataclass
from typing import Iterable, Optional, Sequence

import numpy as np

from . import oracle
from .aggregation import AggValue, Valuation
from .algorithms import (
    RunResult,
    att_weakly_complete_compose,
    compose_and_filter,
    interleave_compose,
    weakly_complete_compose,
)
from .composition import (
    DEFAULT_BUDGET,
    BudgetExceeded,
    Composition,
    FeasibilityProvider,
    empty_composition,
    merge_valuations,
)
from .order import StrictOrder, build_order
from .preference import AggKind, AttributeSchema, PreferenceSpec

CSV_HEADER = [
    "algorithm", "seed", "feas", "n", "m", "r", "fdelay",
    "intra_kind", "imp_kind", "F", "PF", "S", "SP", "T_ms", "fcount",
    "sp_over_pf", "sp_over_s",
]

USUAL_RANGES = {
    "feas": (0.25, 0.5, 0.75, 1.0),
    "domain_size": (2, 4, 6, 8, 10),
    "attr_count": tuple(range(2, 21, 2)),
    "repo_size": tuple(range(10, 201, 10)),
    "fdelay_ms": (1, 10, 100, 1000),
}


@dataclass(frozen=True)
class SimConfig:
    feas: float = 0.5
    domain_size: int = 4
    attr_count: int = 4
    repo_size: int = 40
    fdelay_ms: float = 1.0
    intra_kind: str = "po"          # po | to
    importance_kind: str = "io"     # io | to
    valuation_mode: str = "random_per_node"  # random_per_node | aggregated
    seed: int = 0
    density: float = 0.3

    def range_warnings(self) -> list[str]:
        out = []
        for name, allowed in (
            ("feas", USUAL_RANGES["feas"]),
            ("domain_size", USUAL_RANGES["domain_size"]),
            ("attr_count", USUAL_RANGES["attr_count"]),
            ("repo_size", USUAL_RANGES["repo_size"]),
            ("fdelay_ms", USUAL_RANGES["fdelay_ms"]),
        ):
            value = getattr(self, name)
            if value not in allowed:
                out.append(f"{name}={value} outside the usual range {allowed}")
        return out


@dataclass
class RecursiveTree:
    parent: list[int]                 # parent[0] == -1
    children: list[list[int]]
    node_component: list[int]         # component id per node, -1 at the root
    node_members: list[tuple[int, ...]]
    node_valuation: list[Valuation]
    leaves: list[int]
    feasible_leaves: set[int]
    component_base: Optional[list[Valuation]] = None  # aggregated mode only

    @property
    def node_count(self) -> int:
        return len(self.parent)


@dataclass
class ExperimentRecord:
    algorithm: str
    seed: int
    config: SimConfig
    F: int
    PF: int
    S: int
    SP: int
    T_ms: float
    fcount: int

    @property
    def sp_over_pf(self) -> float:
        if self.PF == 0:
            assert self.SP == 0
            return 1.0
        return self.SP / self.PF

    @property
    def sp_over_s(self) -> float:
        if self.S == 0:
            assert self.SP == 0
            return 1.0
        return self.SP / self.S

    def csv_row(self) -> list[str]:
        c = self.config
        return [
            self.algorithm, str(self.seed), str(c.feas), str(c.domain_size),
            str(c.attr_count), str(c.repo_size), str(c.fdelay_ms),
            c.intra_kind, c.importance_kind,
            str(self.F), str(self.PF), str(self.S), str(self.SP),
            str(self.T_ms), str(self.fcount),
            str(self.sp_over_pf), str(self.sp_over_s),
        ]


def random_order(
    n: int, kind: str, rng: np.random.Generator, density: float = 0.3
) -> StrictOrder:
    """Draw a strict order of the requested kind over n elements.

    total    -- a random permutation chain.
    partial  -- edges sampled (probability ``density``) consistently with a
                random linear labeling, then closed.
    interval -- each element gets a random real interval; x beats y when x's
                left endpoint clears y's right endpoint.
    weak     -- a random surjection onto ranked levels.
    """
    if kind == "total":
        perm = rng.permutation(n)
        edges = [(int(perm[i]), int(perm[j])) for i in range(n) for j in range(i + 1, n)]
        return build_order(edges, n)
    if kind == "partial":
        perm = rng.permutation(n)
        edges = []
        for i in range(n):
            for j in range(i + 1, n):
                if rng.random() < density:
                    edges.append((int(perm[i]), int(perm[j])))
        return build_order(edges, n)
    if kind == "interval":
        a = rng.random(n)
        b = rng.random(n)
        left = np.minimum(a, b)
        right = np.maximum(a, b)
        edges = [
            (x, y)
            for x in range(n)
            for y in range(n)
            if x != y and left[x] > right[y]
        ]
        return build_order(edges, n)
    if kind == "weak":
        level_count = int(rng.integers(1, n + 1))
        levels = np.empty(n, dtype=np.int64)
        perm = rng.permutation(n)
        for pos, elem in enumerate(perm):
            levels[elem] = pos if pos < level_count else rng.integers(0, level_count)
        edges = [
            (x, y) for x in range(n) for y in range(n) if levels[x] < levels[y]
        ]
        return build_order(edges, n)
    raise ValueError(f"unknown order kind {kind!r}")


_KIND_ALIASES = {"po": "partial", "to": "total", "io": "interval", "wo": "weak"}


def _order_kind(short: str) -> str:
    return _KIND_ALIASES.get(short, short)


def random_spec(config: SimConfig, rng: np.random.Generator) -> PreferenceSpec:
    """A worst-frontier preference spec drawn per the config's order kinds."""
    attributes = []
    for i in range(config.attr_count):
        intra = random_order(
            config.domain_size, _order_kind(config.intra_kind), rng, config.density
        )
        attributes.append(
            AttributeSchema(
                attr_id=i,
                name=f"attr{i}",
                domain=tuple(f"v{j}" for j in range(config.domain_size)),
                intra_order=intra,
                agg_kind=AggKind.WORST_FRONTIER,
            )
        )
    importance = random_order(
        config.attr_count, _order_kind(config.importance_kind), rng, config.density
    )
    return PreferenceSpec(attributes=tuple(attributes), importance=importance)


def random_single_valuation(
    spec: PreferenceSpec, rng: np.random.Generator
) -> Valuation:
    """One uniform domain value per attribute, as a singleton valuation."""
    values = []
    for attr in spec.attributes:
        v = int(rng.integers(0, len(attr.domain)))
        if attr.agg_kind is AggKind.SUM:
            assert attr.numeric_values is not None
            values.append(AggValue.of_scalar(attr.numeric_values[v]))
        else:
            values.append(AggValue.of_frontier((v,)))
    return Valuation(tuple(values))


def generate_tree(
    spec: PreferenceSpec, config: SimConfig, rng: np.random.Generator
) -> RecursiveTree:
    """Uniform recursive tree over the repository, with leaf feasibility and
    node valuations drawn per the config's valuation mode."""
    r = config.repo_size
    parent = [-1] + [int(rng.integers(0, k)) for k in range(1, r + 1)]
    children: list[list[int]] = [[] for _ in range(r + 1)]
    for node in range(1, r + 1):
        children[parent[node]].append(node)
    node_component = [-1] + list(range(r))
    node_members: list[tuple[int, ...]] = [()] * (r + 1)
    for node in range(1, r + 1):
        node_members[node] = tuple(sorted(node_members[parent[node]] + (node_component[node],)))

    bottom = empty_composition(spec).valuation
    node_valuation: list[Valuation] = [bottom] * (r + 1)
    component_base: Optional[list[Valuation]] = None
    if config.valuation_mode == "aggregated":
        component_base = [random_single_valuation(spec, rng) for _ in range(r)]
        for node in range(1, r + 1):
            node_valuation[node] = merge_valuations(
                spec, node_valuation[parent[node]], component_base[node_component[node]]
            )
    elif config.valuation_mode == "random_per_node":
        for node in range(1, r + 1):
            node_valuation[node] = random_single_valuation(spec, rng)
    else:
        raise ValueError(f"unknown valuation mode {config.valuation_mode!r}")

    leaves = [node for node in range(1, r + 1) if not children[node]]
    if not leaves:  # r == 0 never happens (repo_size >= 1), root-only guard
        leaves = [0]
    count = math.floor(config.feas * len(leaves))
    picked = rng.choice(len(leaves), size=count, replace=False) if count else []
    feasible_leaves = {leaves[int(i)] for i in picked}
    return RecursiveTree(
        parent=parent,
        children=children,
        node_component=node_component,
        node_members=node_members,
        node_valuation=node_valuation,
        leaves=leaves,
        feasible_leaves=feasible_leaves,
        component_base=component_base,
    )


class TreeProvider(FeasibilityProvider):
    """Feasibility provider backed by a generated recursive tree."""

    def __init__(
        self,
        tree: RecursiveTree,
        fdelay_ms: float = 0.0,
        budget: int = DEFAULT_BUDGET,
        real_sleep: bool = False,
    ):
        super().__init__(fdelay_ms=fdelay_ms, budget=budget)
        self.tree = tree
        self.real_sleep = real_sleep

    def _composition(self, node: int) -> Composition:
        tree = self.tree
        return Composition(
            members=tree.node_members[node],
            valuation=tree.node_valuation[node],
            provider_node=node,
            terminal=not tree.children[node],
        )

    def root(self) -> Composition:
        return self._composition(0)

    def is_feasible(self, comp: Composition) -> bool:
        return comp.provider_node in self.tree.feasible_leaves

    def extensions(self, comp: Composition) -> list[Composition]:
        self._charge()
        if self.real_sleep and self.fdelay_ms > 0:
            time.sleep(self.fdelay_ms / 1000.0)
        return [self._composition(child) for child in self.tree.children[comp.provider_node]]

    def all_feasible(self) -> list[Composition]:
        return [self._composition(node) for node in sorted(self.tree.feasible_leaves)]


def tree_provider(
    tree: RecursiveTree,
    fdelay_ms: float = 0.0,
    budget: int = DEFAULT_BUDGET,
    real_sleep: bool = False,
) -> TreeProvider:
    return TreeProvider(tree, fdelay_ms=fdelay_ms, budget=budget, real_sleep=real_sleep)


_ALGORITHM_RUNNERS = {
    "a1": compose_and_filter,
    "a2": weakly_complete_compose,
    "a3": att_weakly_complete_compose,
    "a4": interleave_compose,
}


def run_instance(
    spec: PreferenceSpec,
    tree: RecursiveTree,
    config: SimConfig,
    algorithms: Sequence[str],
    seed: int,
    real_sleep: bool = False,
    budget: int = DEFAULT_BUDGET,
) -> list[ExperimentRecord]:
    """Run the chosen algorithms on one generated instance and record the
    ground-truth and per-run observables."""
    truth_provider = tree_provider(tree)
    feasible = truth_provider.all_feasible()
    truth = oracle.brute_nondominated(
        spec, [(c.provider_node, c.valuation) for c in feasible]
    )
    records = []
    for name in algorithms:
        provider = tree_provider(
            tree, fdelay_ms=config.fdelay_ms, budget=budget, real_sleep=real_sleep
        )
        try:
            result: RunResult = _ALGORITHM_RUNNERS[name](spec, provider)
        except BudgetExceeded:  # recorded as an empty run, not fatal
            records.append(
                ExperimentRecord(
                    algorithm=name, seed=seed, config=config,
                    F=len(feasible), PF=len(truth), S=0, SP=0,
                    T_ms=provider.simulated_ms, fcount=provider.invocation_count,
                )
            )
            continue
        produced = {c.key() for c in result.solutions}
        records.append(
            ExperimentRecord(
                algorithm=name,
                seed=seed,
                config=config,
                F=len(feasible),
                PF=len(truth),
                S=len(produced),
                SP=len(produced & truth),
                T_ms=result.elapsed_ms,
                fcount=result.fcount,
            )
        )
    return records


def run_experiment(
    config: SimConfig,
    algorithms: Sequence[str] = ("a1", "a3", "a4"),
    repetitions: int = 1,
    real_sleep: bool = False,
) -> list[ExperimentRecord]:
    """Generate ``repetitions`` independent instances and run every requested
    algorithm on each; instance seeds derive from the config seed and are
    recorded for exact replay."""
    for name in algorithms:
        if name not in _ALGORITHM_RUNNERS:
            raise ValueError(f"unknown algorithm {name!r}")
    root = np.random.default_rng(config.seed)
    records = []
    for _ in range(repetitions):
        child_seed = int(root.integers(0, 2**62))
        records.extend(run_seeded_instance(config, algorithms, child_seed, real_sleep))
    return records


def run_seeded_instance(
    config: SimConfig,
    algorithms: Sequence[str],
    child_seed: int,
    real_sleep: bool = False,
) -> list[ExperimentRecord]:
    """One fully reproducible instance: spec and tree derive from the seed."""
    rng = np.random.default_rng(child_seed)
    spec = random_spec(config, rng)
    tree = generate_tree(spec, config, rng)
    return run_instance(spec, tree, config, algorithms, child_seed, real_sleep)


def write_csv(records: Iterable[ExperimentRecord], path: str) -> None:
    with open(path, "w", newline="") as handle:
        writer = csv.writer(handle)
        writer.writerow(CSV_HEADER)
        for record in records:
            writer.writerow(record.csv_row())
