"""Command-line surface and the instance-file format.

Subcommands::

    solve        run one algorithm on an instance file, write a result JSON
    simulate     batch experiment runs over generated instances, write CSV
    check-orders classify a relation given in the line-oriented text format
    props        run the property-verification harness

Exit codes are stable: 0 success, 1 expectation failed, 2 input error,
3 extension budget exhausted.
"""

from __future__ import annotations

import argparse
import dataclasses
import json
import sys
from typing import Optional, Sequence

from . import fixtures, oracle, simulator
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
    Component,
    ExplicitProvider,
    FeasibilityProvider,
)
from .dominance import witnesses
from .order import CycleError, StrictOrder, build_order, classify
from .preference import (
    AggKind,
    AttributeSchema,
    PreferenceSpec,
    SumPolarity,
    validate,
)

EXIT_OK = 0
EXIT_EXPECTATION = 1
EXIT_INPUT = 2
EXIT_BUDGET = 3


class InstanceError(ValueError):
    """The instance file is malformed; the message carries the field path."""


@dataclasses.dataclass
class Instance:
    spec: PreferenceSpec
    components: list[Component]
    component_ids: dict[str, int]
    feasible_sequences: Optional[list[list[int]]]
    sim_config: Optional[simulator.SimConfig]
    raw: dict


def _require(condition: bool, message: str) -> None:
    if not condition:
        raise InstanceError(message)


def _parse_attribute(index: int, data: dict) -> AttributeSchema:
    where = f"attributes[{index}]"
    _require(isinstance(data, dict), f"{where}: expected an object")
    _require("name" in data, f"{where}: missing 'name'")
    _require("domain" in data, f"{where}: missing 'domain'")
    domain = data["domain"]
    _require(isinstance(domain, list), f"{where}.domain: expected a list of labels")
    label_ids = {label: i for i, label in enumerate(domain)}
    _require(len(label_ids) == len(domain), f"{where}.domain: duplicate labels")
    edges = []
    for j, pair in enumerate(data.get("intra_edges", [])):
        _require(
            isinstance(pair, list) and len(pair) == 2,
            f"{where}.intra_edges[{j}]: expected a [better, worse] pair",
        )
        for label in pair:
            _require(label in label_ids, f"{where}.intra_edges[{j}]: unknown label {label!r}")
        edges.append((label_ids[pair[0]], label_ids[pair[1]]))
    try:
        intra = build_order(edges, len(domain))
    except CycleError as exc:
        raise InstanceError(f"{where}.intra_edges: {exc}") from exc
    agg_name = data.get("agg", "worst_frontier")
    try:
        agg = AggKind(agg_name)
    except ValueError:
        raise InstanceError(f"{where}.agg: unknown aggregation {agg_name!r}") from None
    numeric = data.get("numeric_values")
    polarity = None
    if "sum_polarity" in data:
        try:
            polarity = SumPolarity(data["sum_polarity"])
        except ValueError:
            raise InstanceError(
                f"{where}.sum_polarity: expected 'lower' or 'higher'"
            ) from None
    return AttributeSchema(
        attr_id=index,
        name=data["name"],
        domain=tuple(domain),
        intra_order=intra,
        agg_kind=agg,
        numeric_values=tuple(numeric) if numeric is not None else None,
        sum_polarity=polarity,
    )


def _parse_component_valuation(
    spec: PreferenceSpec, name: str, data: dict
) -> Valuation:
    values = []
    for attr in spec.attributes:
        _require(
            attr.name in data,
            f"components[{name}].valuation: missing attribute {attr.name!r}",
        )
        raw = data[attr.name]
        if attr.agg_kind is AggKind.SUM:
            if isinstance(raw, (int, float)) and not isinstance(raw, bool):
                values.append(AggValue.of_scalar(float(raw)))
                continue
            _require(
                raw in attr.domain,
                f"components[{name}].valuation.{attr.name}: unknown label {raw!r}",
            )
            _require(
                attr.numeric_values is not None,
                f"attributes[{attr.attr_id}]: labels need numeric_values for sums",
            )
            values.append(AggValue.of_scalar(attr.numeric_values[attr.domain.index(raw)]))
        else:
            _require(
                raw in attr.domain,
                f"components[{name}].valuation.{attr.name}: unknown label {raw!r}",
            )
            values.append(AggValue.of_frontier((attr.domain.index(raw),)))
    return Valuation(tuple(values))


def parse_instance(raw: dict) -> Instance:
    """Validate and resolve an instance document into domain objects."""
    _require(isinstance(raw, dict), "instance: expected a JSON object")
    _require(raw.get("format") == 1, "instance: missing or unsupported 'format' (expected 1)")
    _require("attributes" in raw, "instance: missing 'attributes'")
    attributes = tuple(
        _parse_attribute(i, a) for i, a in enumerate(raw["attributes"])
    )
    attr_ids = {a.name: a.attr_id for a in attributes}
    _require(len(attr_ids) == len(attributes), "attributes: duplicate names")

    def resolve_attr(label, where: str) -> int:
        if isinstance(label, int):
            _require(0 <= label < len(attributes), f"{where}: attribute index out of range")
            return label
        _require(label in attr_ids, f"{where}: unknown attribute {label!r}")
        return attr_ids[label]

    edges = []
    for j, pair in enumerate(raw.get("importance_edges", [])):
        where = f"importance_edges[{j}]"
        _require(isinstance(pair, list) and len(pair) == 2, f"{where}: expected a pair")
        edges.append((resolve_attr(pair[0], where), resolve_attr(pair[1], where)))
    try:
        importance = build_order(edges, len(attributes))
    except CycleError as exc:
        raise InstanceError(f"importance_edges: {exc}") from exc
    spec = PreferenceSpec(attributes=attributes, importance=importance)

    components: list[Component] = []
    component_ids: dict[str, int] = {}
    for entry in raw.get("components", []):
        _require(
            isinstance(entry, dict) and "name" in entry and "valuation" in entry,
            "components: each entry needs 'name' and 'valuation'",
        )
        name = entry["name"]
        _require(name not in component_ids, f"components: duplicate name {name!r}")
        component_ids[name] = len(components)
        components.append(
            Component(
                comp_id=len(components),
                name=name,
                base_valuation=_parse_component_valuation(spec, name, entry["valuation"]),
            )
        )

    has_sets = "feasible_sets" in raw
    has_sim = "simulate" in raw
    _require(
        has_sets != has_sim,
        "instance: exactly one of 'feasible_sets' or 'simulate' must be present",
    )
    sequences = None
    sim_config = None
    if has_sets:
        sequences = []
        for j, group in enumerate(raw["feasible_sets"]):
            where = f"feasible_sets[{j}]"
            _require(isinstance(group, list), f"{where}: expected a list of component names")
            seq = []
            for name in group:
                _require(name in component_ids, f"{where}: unknown component {name!r}")
                seq.append(component_ids[name])
            sequences.append(seq)
    else:
        entry = raw["simulate"]
        _require(isinstance(entry, dict), "simulate: expected an object")
        known = {f.name for f in dataclasses.fields(simulator.SimConfig)}
        unknown = set(entry) - known
        _require(not unknown, f"simulate: unknown fields {sorted(unknown)}")
        sim_config = simulator.SimConfig(**entry)
    return Instance(
        spec=spec,
        components=components,
        component_ids=component_ids,
        feasible_sequences=sequences,
        sim_config=sim_config,
        raw=raw,
    )


def load_instance(path: str) -> Instance:
    if "/" not in path and not path.endswith(".json"):
        try:
            path = fixtures.fixture_path(path)
        except KeyError:
            pass
    try:
        with open(path) as handle:
            raw = json.load(handle)
    except OSError as exc:
        raise InstanceError(f"cannot read {path}: {exc}") from exc
    except json.JSONDecodeError as exc:
        raise InstanceError(f"{path}:{exc.lineno}:{exc.colno}: {exc.msg}") from exc
    return parse_instance(raw)


def instance_to_document(instance: Instance) -> dict:
    """Re-serialize an instance to an equivalent document (round-trip form)."""
    attributes = []
    for attr in instance.spec.attributes:
        entry: dict = {
            "name": attr.name,
            "domain": list(attr.domain),
            "intra_edges": [
                [attr.domain[x], attr.domain[y]] for x, y in attr.intra_order.edges()
            ],
            "agg": attr.agg_kind.value,
        }
        if attr.numeric_values is not None:
            entry["numeric_values"] = list(attr.numeric_values)
        if attr.sum_polarity is not None:
            entry["sum_polarity"] = attr.sum_polarity.value
        attributes.append(entry)
    doc: dict = {
        "format": 1,
        "attributes": attributes,
        "importance_edges": [
            [instance.spec.attributes[x].name, instance.spec.attributes[y].name]
            for x, y in instance.spec.importance.edges()
        ],
        "components": [
            {
                "name": comp.name,
                "valuation": {
                    attr.name: (
                        value.scalar
                        if not value.is_frontier
                        else attr.domain[next(iter(value.frontier))]
                    )
                    for attr, value in zip(instance.spec.attributes, comp.base_valuation.per_attribute)
                },
            }
            for comp in instance.components
        ],
    }
    if instance.feasible_sequences is not None:
        doc["feasible_sets"] = [
            [instance.components[i].name for i in seq]
            for seq in instance.feasible_sequences
        ]
    else:
        assert instance.sim_config is not None
        doc["simulate"] = dataclasses.asdict(instance.sim_config)
    return doc


def _provider_for(instance: Instance, fdelay_ms: float, budget: int) -> FeasibilityProvider:
    if instance.feasible_sequences is not None:
        return ExplicitProvider(
            instance.spec,
            instance.components,
            instance.feasible_sequences,
            fdelay_ms=fdelay_ms,
            budget=budget,
        )
    assert instance.sim_config is not None
    for attr in instance.spec.attributes:
        _require(
            len(attr.domain) > 0,
            f"simulate: attribute {attr.name!r} needs a nonempty domain to draw values",
        )
    import numpy as np

    config = instance.sim_config
    rng = np.random.default_rng(config.seed)
    tree = simulator.generate_tree(instance.spec, config, rng)
    return simulator.tree_provider(tree, fdelay_ms=config.fdelay_ms, budget=budget)


def _agg_value_json(value: AggValue) -> dict:
    if value.is_frontier:
        return {"frontier": sorted(value.frontier)}  # type: ignore[arg-type]
    return {"scalar": value.scalar}


def run_result_json(instance: Instance, result: RunResult) -> dict:
    names = {c.comp_id: c.name for c in instance.components}
    solutions = []
    for comp in result.solutions:
        solutions.append(
            {
                "members": sorted(names.get(m, str(m)) for m in comp.members),
                "valuation": [_agg_value_json(v) for v in comp.valuation.per_attribute],
            }
        )
    annotations = []
    for i, a in enumerate(result.solutions):
        for j, b in enumerate(result.solutions):
            if i == j:
                continue
            found = witnesses(instance.spec, a.valuation, b.valuation)
            if found:
                annotations.append({"winner": i, "loser": j, "witness": found[0]})
    return {
        "format": 1,
        "algorithm": result.algorithm,
        "config": result.config,
        "solutions": solutions,
        "dominance_among_solutions": annotations,
        "fcount": result.fcount,
        "elapsed_ms": result.elapsed_ms,
    }


def _dump_json(doc: dict, path: Optional[str]) -> None:
    text = json.dumps(doc, indent=2, sort_keys=True) + "\n"
    if path:
        with open(path, "w") as handle:
            handle.write(text)
    else:
        sys.stdout.write(text)


def cmd_solve(args: argparse.Namespace) -> int:
    try:
        instance = load_instance(args.instance)
    except InstanceError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    report = validate(instance.spec, strict_interval=args.strict)
    for warning in report.warnings:
        print(f"warning: {warning}", file=sys.stderr)
    if not report.ok:
        for problem in report.errors:
            print(f"error: {problem}", file=sys.stderr)
        return EXIT_INPUT
    try:
        provider = _provider_for(instance, fdelay_ms=0.0, budget=args.budget)
    except InstanceError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    try:
        if args.algorithm == "a1":
            result = compose_and_filter(instance.spec, provider)
        elif args.algorithm == "a2":
            result = weakly_complete_compose(instance.spec, provider)
        elif args.algorithm == "a3":
            if args.pick == "lowest":
                result = att_weakly_complete_compose(instance.spec, provider, pick="lowest")
            else:
                result = att_weakly_complete_compose(
                    instance.spec, provider, pick="seeded", pick_seed=int(args.pick)
                )
        else:
            result = interleave_compose(
                instance.spec, provider, extend_feasible=args.extend_feasible
            )
    except BudgetExceeded as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_BUDGET
    _dump_json(run_result_json(instance, result), args.out)
    return EXIT_OK


def cmd_simulate(args: argparse.Namespace) -> int:
    if args.config:
        try:
            with open(args.config) as handle:
                raw = json.load(handle)
            config = simulator.SimConfig(**raw)
        except (OSError, json.JSONDecodeError, TypeError) as exc:
            print(f"error: cannot load config: {exc}", file=sys.stderr)
            return EXIT_INPUT
    else:
        config = simulator.SimConfig(
            feas=args.feas,
            domain_size=args.n,
            attr_count=args.m,
            repo_size=args.r,
            fdelay_ms=args.fdelay,
            intra_kind=args.intra,
            importance_kind=args.imp,
            valuation_mode=args.valuation_mode,
            seed=args.seed,
        )
    if args.seed is not None:
        config = dataclasses.replace(config, seed=args.seed)
    for warning in config.range_warnings():
        print(f"warning: {warning}", file=sys.stderr)
    algorithms = [a.strip() for a in args.algorithms.split(",") if a.strip()]
    try:
        records = simulator.run_experiment(
            config, algorithms, repetitions=args.reps, real_sleep=args.real_sleep
        )
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    if args.csv:
        simulator.write_csv(records, args.csv)
    else:
        print(",".join(simulator.CSV_HEADER))
        for record in records:
            print(",".join(record.csv_row()))
    return EXIT_OK


def parse_relation_file(path: str) -> StrictOrder:
    """Line format: header ``n=<count>``, then one ``a > b`` pair per line."""
    with open(path) as handle:
        lines = [line.strip() for line in handle]
    lines = [line for line in lines if line and not line.startswith("#")]
    if not lines or not lines[0].replace(" ", "").startswith("n="):
        raise InstanceError(f"{path}: first line must be 'n=<count>'")
    try:
        n = int(lines[0].split("=", 1)[1])
    except ValueError:
        raise InstanceError(f"{path}: bad element count in header") from None
    edges = []
    for lineno, line in enumerate(lines[1:], start=2):
        parts = line.split(">")
        if len(parts) != 2:
            raise InstanceError(f"{path}:{lineno}: expected 'a > b'")
        try:
            edges.append((int(parts[0]), int(parts[1])))
        except ValueError:
            raise InstanceError(f"{path}:{lineno}: elements must be integers") from None
    return build_order(edges, n)


def cmd_check_orders(args: argparse.Namespace) -> int:
    try:
        order = parse_relation_file(args.relation)
    except InstanceError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    except CycleError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    except (OSError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    flags = classify(order)
    print(
        f"partial={flags.is_partial} interval={flags.is_interval} "
        f"weak={flags.is_weak} total={flags.is_total}"
    )
    if args.expect:
        satisfied = {
            "partial": flags.is_partial,
            "interval": flags.is_interval,
            "weak": flags.is_weak,
            "total": flags.is_total,
        }[args.expect]
        return EXIT_OK if satisfied else EXIT_EXPECTATION
    return EXIT_OK


def cmd_props(args: argparse.Namespace) -> int:
    if args.property == "all":
        names = oracle.PROPERTY_NAMES
    else:
        names = (args.property,)
    reports = []
    for name in names:
        try:
            reports.append(oracle.verify_property(name, trials=args.trials, seed=args.seed))
        except ValueError as exc:
            print(f"error: {exc}", file=sys.stderr)
            return EXIT_INPUT
    if args.json:
        _dump_json({"format": 1, "reports": [dataclasses.asdict(r) for r in reports]}, args.json)
    width_name = max(len(r.name) for r in reports)
    all_ok = True
    for report in reports:
        if report.info_only:
            status = "INFO"
        elif report.passed:
            status = "PASS"
        else:
            status = "FAIL"
            all_ok = False
        print(
            f"{report.name:<{width_name}}  {status:<4}  "
            f"checked={report.instances_checked}  violations={report.violations}"
            + (f"  (required={report.required_violations})" if report.required_violations else "")
        )
        if status == "FAIL" and report.first_violation:
            print(f"  first violation: {report.first_violation}")
        if report.info_only and report.violations and report.first_violation:
            print(f"  note: unexpected violation recorded: {report.first_violation}")
    return EXIT_OK if all_ok else EXIT_EXPECTATION


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="prefcompose",
        description="Most-preferred feasible compositions under qualitative preferences",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    solve = sub.add_parser("solve", help="run one algorithm on an instance file")
    solve.add_argument("instance", help="instance JSON path or bundled fixture name")
    solve.add_argument("--algorithm", choices=("a1", "a2", "a3", "a4"), default="a1")
    solve.add_argument(
        "--pick",
        default="lowest",
        help="a3 attribute pick: 'lowest' or an integer seed for a random pick",
    )
    solve.add_argument("--strict", action="store_true",
                       help="reject non-interval importance instead of warning")
    solve.add_argument("--extend-feasible", action="store_true",
                       help="a4: also extend feasible compositions once")
    solve.add_argument("--budget", type=int, default=DEFAULT_BUDGET)
    solve.add_argument("--out", help="write the result JSON here instead of stdout")
    solve.set_defaults(func=cmd_solve)

    sim = sub.add_parser("simulate", help="batch experiment over generated instances")
    sim.add_argument("--config", help="JSON file with generator settings")
    sim.add_argument("--feas", type=float, default=0.5)
    sim.add_argument("--n", type=int, default=4, help="domain size per attribute")
    sim.add_argument("--m", type=int, default=4, help="attribute count")
    sim.add_argument("--r", type=int, default=40, help="repository size (tree nodes)")
    sim.add_argument("--fdelay", type=float, default=1.0,
                     help="simulated cost per extension call (ms)")
    sim.add_argument("--intra", choices=("po", "to"), default="po")
    sim.add_argument("--imp", choices=("io", "to"), default="io")
    sim.add_argument("--valuation-mode", choices=("random_per_node", "aggregated"),
                     default="random_per_node")
    sim.add_argument("--algorithms", default="a1,a3,a4")
    sim.add_argument("--reps", type=int, default=1)
    sim.add_argument("--seed", type=int, default=None)
    sim.add_argument("--csv", help="write records to this CSV path")
    sim.add_argument("--real-sleep", action="store_true",
                     help="sleep for fdelay instead of simulating it")
    sim.set_defaults(func=cmd_simulate, seed_default=0)

    orders = sub.add_parser("check-orders", help="classify a relation text file")
    orders.add_argument("relation")
    orders.add_argument("--expect", choices=("partial", "interval", "weak", "total"))
    orders.set_defaults(func=cmd_check_orders)

    props = sub.add_parser("props", help="run the property-verification harness")
    props.add_argument("--property", default="all",
                       help="one of: " + ", ".join(oracle.PROPERTY_NAMES) + ", or 'all'")
    props.add_argument("--trials", type=int, default=200)
    props.add_argument("--seed", type=int, default=0)
    props.add_argument("--json", help="also write the reports as JSON to this path")
    props.set_defaults(func=cmd_props)
    return parser


def main(argv: Optional[Sequence[str]] = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    if getattr(args, "command", None) == "simulate" and args.seed is None and not args.config:
        args.seed = 0
    return args.func(args)


if __name__ == "__main__":
    sys.exit(main())
