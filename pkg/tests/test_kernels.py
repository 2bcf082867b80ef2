"""The jitted kernels agree with their plain fallbacks, and the env flag works."""

from __future__ import annotations

import os
import subprocess
import sys

import numpy as np

from prefcompose import kernels
from prefcompose.aggregation import SCALAR_TOLERANCE, aggregate, Valuation
from prefcompose.dominance import pack_valuation, packed_tables
from prefcompose.simulator import SimConfig, random_order, random_spec


def _random_closed_matrix(rng, n):
    order = random_order(n, ("partial", "total", "interval", "weak")[int(rng.integers(0, 4))], rng, density=0.4)
    return order.matrix


def test_closure_paths_agree(rng):
    for _ in range(100):
        n = int(rng.integers(1, 12))
        mat = rng.random((n, n)) < 0.2
        np.fill_diagonal(mat, False)
        jit = np.asarray(kernels.transitive_closure(mat))
        plain = kernels.transitive_closure_py(mat)
        assert np.array_equal(jit, plain)


def test_interval_predicate_paths_agree(rng):
    for _ in range(200):
        mat = _random_closed_matrix(rng, int(rng.integers(1, 10)))
        assert bool(kernels.ferrers_ok(mat)) == kernels.ferrers_ok_py(mat)


def test_negative_transitivity_paths_agree(rng):
    for _ in range(200):
        mat = _random_closed_matrix(rng, int(rng.integers(1, 10)))
        assert bool(kernels.negatively_transitive(mat)) == kernels.negatively_transitive_py(mat)


def test_known_interval_and_weak_cases():
    two_chains = np.zeros((4, 4), dtype=np.bool_)
    two_chains[0, 2] = two_chains[1, 3] = True
    assert not kernels.ferrers_ok_py(two_chains)
    assert not bool(kernels.ferrers_ok(two_chains))
    single = np.zeros((3, 3), dtype=np.bool_)
    single[0, 1] = True
    assert kernels.ferrers_ok_py(single)
    assert not kernels.negatively_transitive_py(single)


def test_witness_paths_agree_on_random_pools(rng):
    for _ in range(120):
        config = SimConfig(
            domain_size=int(rng.integers(2, 7)),
            attr_count=int(rng.integers(1, 5)),
            intra_kind="po",
            importance_kind="io",
        )
        spec = random_spec(config, rng)
        tables = packed_tables(spec)
        pool = []
        for _ in range(5):
            values = tuple(
                aggregate(attr, [int(v) for v in rng.integers(0, len(attr.domain), size=2)])
                for attr in spec.attributes
            )
            pool.append(pack_valuation(spec, Valuation(values)))
        for umask, uscal in pool:
            for vmask, vscal in pool:
                args = (
                    tables.kinds, tables.nvals, tables.dom_masks, tables.imp,
                    umask, uscal, vmask, vscal, SCALAR_TOLERANCE,
                )
                assert int(kernels.dominates_witness(*args)) == kernels.dominates_witness_py(*args)


def test_env_flag_disables_numba():
    code = (
        "from prefcompose import kernels, classify, build_order\n"
        "assert not kernels.USING_NUMBA\n"
        "flags = classify(build_order([(0, 1), (1, 2)], 3))\n"
        "assert flags.is_total\n"
        "print('fallback ok')\n"
    )
    env = dict(os.environ, PREFCOMPOSE_NUMBA="0")
    proc = subprocess.run(
        [sys.executable, "-c", code], env=env, capture_output=True, text=True
    )
    assert proc.returncode == 0, proc.stderr
    assert "fallback ok" in proc.stdout
