"""Hot numeric kernels: relation closure, order predicates, dominance witness scan.

Every kernel exists twice: a plain NumPy/Python implementation (``*_py``) and a
numba ``@njit`` version compiled from the same loop structure.  The jitted
variants are bound to the public names when numba imports cleanly and the
environment variable ``PREFCOMPOSE_NUMBA`` is not set to ``0``; otherwise the
plain path is used.  ``benchmarks/bench_dominance.py`` compares the two.

Packed-valuation conventions shared with :mod:`prefcompose.dominance`:

* ``kinds``     -- int8 per attribute: 0 = frontier, 1 = scalar where lower is
  better, 2 = scalar where higher is better.
* ``nvals``     -- int64 per attribute: domain size (frontier bit count).
* ``dom_masks`` -- int64 (m, n_max): ``dom_masks[i][v]`` is the bitmask of
  domain values strictly preferred to ``v`` under attribute ``i``.
* ``imp``       -- bool (m, m): transitively closed strict importance,
  ``imp[i, k]`` true when attribute ``i`` is strictly more important than ``k``.
* valuations    -- per attribute an int64 frontier bitmask plus a float64
  scalar (only one of the two is meaningful, per ``kinds``).

Frontier bitmasks require domains of at most 63 values; callers fall back to
the object path above that size.
"""

from __future__ import annotations

import os

import numpy as np

MAX_PACKED_DOMAIN = 63

KIND_FRONTIER = 0
KIND_SCALAR_LOW = 1
KIND_SCALAR_HIGH = 2

_flag = os.environ.get("PREFCOMPOSE_NUMBA", "1").strip().lower()
_want_numba = _flag not in {"0", "false", "no", "off"}


def transitive_closure_py(mat: np.ndarray) -> np.ndarray:
    """Warshall closure of a boolean adjacency matrix (returns a new array)."""
    out = mat.copy()
    n = out.shape[0]
    for k in range(n):
        out |= np.outer(out[:, k], out[k, :])
    return out


def ferrers_ok_py(mat: np.ndarray) -> bool:
    """True when the relation satisfies the interval-order (Ferrers) condition.

    Violation means some x>y, z>w exist with neither x>w nor z>y.  With
    N[x,z] = exists y: x>y and not z>y, that is exactly N[x,z] and N[z,x].
    """
    m = mat.astype(np.uint8)
    n = (m @ (1 - m).T) > 0
    return not bool(np.any(n & n.T))


def negatively_transitive_py(mat: np.ndarray) -> bool:
    """True when x>y implies x>z or z>y for every z."""
    notm = (~mat).astype(np.uint8)
    gap = (notm @ notm) > 0  # gap[x,y]: exists z with neither x>z nor z>y
    return not bool(np.any(mat & gap))


def _frontier_strict_py(dom_row, a_mask: int, b_mask: int, nv: int) -> bool:
    # A strictly preferred to B: B nonempty and every B element is beaten by
    # some A element.  Empty frontiers (the bottom placeholder) never compare.
    if b_mask == 0:
        return False
    for v in range(nv):
        if (b_mask >> v) & 1:
            if a_mask & int(dom_row[v]) == 0:
                return False
    return True


def dominates_witness_py(
    kinds: np.ndarray,
    nvals: np.ndarray,
    dom_masks: np.ndarray,
    imp: np.ndarray,
    umask: np.ndarray,
    uscal: np.ndarray,
    vmask: np.ndarray,
    vscal: np.ndarray,
    tol: float,
) -> int:
    """Lowest attribute id that witnesses strict dominance of U over V, or -1.

    A witness i must strictly improve U over V on attribute i while U stays at
    least as preferred on every attribute k that is not strictly less
    important than i (i.e. every k with not imp[i, k]).
    """
    m = kinds.shape[0]
    for i in range(m):
        kind = kinds[i]
        if kind == KIND_FRONTIER:
            strict = _frontier_strict_py(dom_masks[i], int(umask[i]), int(vmask[i]), int(nvals[i]))
        elif kind == KIND_SCALAR_LOW:
            strict = uscal[i] < vscal[i] - tol
        else:
            strict = uscal[i] > vscal[i] + tol
        if not strict:
            continue
        ok = True
        for k in range(m):
            if imp[i, k]:
                continue
            kk = kinds[k]
            if kk == KIND_FRONTIER:
                um = int(umask[k])
                vm = int(vmask[k])
                if um != vm and not _frontier_strict_py(dom_masks[k], um, vm, int(nvals[k])):
                    ok = False
                    break
            else:
                d = uscal[k] - vscal[k]
                if d < -tol or d > tol:
                    better = d < 0 if kk == KIND_SCALAR_LOW else d > 0
                    if not better:
                        ok = False
                        break
        if ok:
            return i
    return -1


if _want_numba:
    try:
        from numba import njit
    except ImportError:  # pragma: no cover - numba is a declared dependency
        _want_numba = False

if _want_numba:

    @njit(cache=True)
    def _closure_jit(mat):
        out = mat.copy()
        n = out.shape[0]
        for k in range(n):
            for i in range(n):
                if out[i, k]:
                    for j in range(n):
                        if out[k, j]:
                            out[i, j] = True
        return out

    @njit(cache=True)
    def _ferrers_jit(mat):
        n = mat.shape[0]
        # covers[x, z]: x beats something z does not beat
        covers = np.zeros((n, n), dtype=np.bool_)
        for x in range(n):
            for z in range(n):
                for y in range(n):
                    if mat[x, y] and not mat[z, y]:
                        covers[x, z] = True
                        break
        for x in range(n):
            for z in range(x + 1, n):
                if covers[x, z] and covers[z, x]:
                    return False
        return True

    @njit(cache=True)
    def _negtrans_jit(mat):
        n = mat.shape[0]
        for x in range(n):
            for y in range(n):
                if not mat[x, y]:
                    continue
                for z in range(n):
                    if not mat[x, z] and not mat[z, y]:
                        return False
        return True

    @njit(cache=True)
    def _frontier_strict_jit(dom_row, a_mask, b_mask, nv):
        if b_mask == 0:
            return False
        for v in range(nv):
            if (b_mask >> v) & 1:
                if a_mask & dom_row[v] == 0:
                    return False
        return True

    @njit(cache=True)
    def _witness_jit(kinds, nvals, dom_masks, imp, umask, uscal, vmask, vscal, tol):
        m = kinds.shape[0]
        for i in range(m):
            kind = kinds[i]
            if kind == KIND_FRONTIER:
                strict = _frontier_strict_jit(dom_masks[i], umask[i], vmask[i], nvals[i])
            elif kind == KIND_SCALAR_LOW:
                strict = uscal[i] < vscal[i] - tol
            else:
                strict = uscal[i] > vscal[i] + tol
            if not strict:
                continue
            ok = True
            for k in range(m):
                if imp[i, k]:
                    continue
                kk = kinds[k]
                if kk == KIND_FRONTIER:
                    if umask[k] != vmask[k] and not _frontier_strict_jit(
                        dom_masks[k], umask[k], vmask[k], nvals[k]
                    ):
                        ok = False
                        break
                else:
                    d = uscal[k] - vscal[k]
                    if d < -tol or d > tol:
                        better = d < 0 if kk == KIND_SCALAR_LOW else d > 0
                        if not better:
                            ok = False
                            break
            if ok:
                return i
        return -1

    transitive_closure = _closure_jit
    ferrers_ok = _ferrers_jit
    negatively_transitive = _negtrans_jit
    dominates_witness = _witness_jit
    USING_NUMBA = True
else:
    transitive_closure = transitive_closure_py
    ferrers_ok = ferrers_ok_py
    negatively_transitive = negatively_transitive_py
    dominates_witness = dominates_witness_py
    USING_NUMBA = False
