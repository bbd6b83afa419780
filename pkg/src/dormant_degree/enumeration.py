"""Counting balanced (p, N)-edge numberings.

Two routes are provided.  :func:`count_brute` walks every labelling and
checks each vertex.  :func:`count_dp` eliminates vertices one at a time,
keeping a table indexed by the labels of the currently open ("frontier")
edges; each vertex multiplies in its admissibility indicator and edges with
both ends processed are summed out.

Vertex indicators are never stored whole for large alphabets.  They are built
in slabs along one of the vertex's edges, and each slab is contracted into
the running table straight away.
"""

from __future__ import annotations

import itertools
import json
import time
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from typing import Mapping, Sequence

import numpy as np

from .admissibility import AdmissibilityKernel, LevelParams, is_admissible
from .graph import TrivalentGraph, validate, vertex_triple

BRUTE_GUARD = 10**8
DEFAULT_MEMCAP = 1 << 30  # bytes per DP table
SLAB_ENTRIES = 1 << 24

# float64 sums of nonnegative integers are exact below 2**53
_FLOAT_LIMIT = 1 << 53
_INT_LIMIT = (1 << 63) - 1


class GuardExceeded(RuntimeError):
    pass


class MemoryCapExceeded(MemoryError):
    def __init__(self, frontier: Sequence[str], nbytes: int, cap: int):
        super().__init__(f"frontier {list(frontier)} needs {nbytes} bytes (cap {cap})")
        self.frontier = list(frontier)
        self.nbytes = nbytes
        self.cap = cap


class MissingEdge(KeyError):
    pass


class ExtraEdge(KeyError):
    pass


@dataclass
class CountReport:
    graph: str
    p: int
    N: int
    count: int
    method: str
    order: list[str] = field(default_factory=list)
    elapsed_ms: int = 0

    def to_dict(self, stable: bool = False) -> dict:
        d = {"graph": self.graph, "p": self.p, "N": self.N, "count": str(self.count), "method": self.method}
        if not stable:
            d["elapsed_ms"] = self.elapsed_ms
        return d

    def to_json(self, stable: bool = False) -> str:
        return json.dumps(self.to_dict(stable))


def is_balanced(graph: TrivalentGraph, num: Mapping[str, int], lp: LevelParams) -> bool:
    ids = set(graph.edge_ids)
    for e in ids:
        if e not in num:
            raise MissingEdge(e)
    for e in num:
        if e not in ids:
            raise ExtraEdge(e)
    return all(is_admissible(tuple(num[e] for e in vertex_triple(graph, v)), lp) for v in graph.vertices)


def count_brute(graph: TrivalentGraph, lp: LevelParams, guard: int = BRUTE_GUARD) -> CountReport:
    validate(graph)
    start = time.perf_counter()
    L = lp.labels
    space = L ** len(graph.edges)
    if space > guard:
        raise GuardExceeded(f"{space} labellings exceed brute-force guard {guard}")
    edges = graph.edge_ids
    index = {e: i for i, e in enumerate(edges)}
    triples = [tuple(index[e] for e in vertex_triple(graph, v)) for v in graph.vertices]
    cache: dict[tuple[int, int, int], bool] = {}
    count = 0
    for labels in itertools.product(range(L), repeat=len(edges)):
        for i, j, k in triples:
            t = (labels[i], labels[j], labels[k])
            ok = cache.get(t)
            if ok is None:
                ok = cache[t] = is_admissible(t, lp)
            if not ok:
                break
        else:
            count += 1
    elapsed = int((time.perf_counter() - start) * 1000)
    return CountReport(graph.name, lp.p, lp.N, count, "brute", list(graph.vertices), elapsed)


# -- elimination order -------------------------------------------------------

def _incident(graph: TrivalentGraph) -> dict[str, tuple[str, ...]]:
    return {v: vertex_triple(graph, v) for v in graph.vertices}


def _ends(graph: TrivalentGraph) -> dict[str, set[str]]:
    return {e.id: set(e.ends) for e in graph.edges}


def _frontier_after(done: set[str], frontier: list[str], group: Sequence[str], incident, ends) -> list[str]:
    out = list(frontier)
    for v in group:
        for e in dict.fromkeys(incident[v]):
            if e not in out:
                out.append(e)
    return [e for e in out if not ends[e] <= done]


def elimination_order(graph: TrivalentGraph) -> list[str]:
    """Natural sweep for catalog chains, greedy smallest frontier otherwise."""
    if graph.name.startswith("chain:"):
        return list(graph.vertices)
    incident, ends = _incident(graph), _ends(graph)
    done: set[str] = set()
    frontier: list[str] = []
    order = []
    remaining = list(graph.vertices)
    while remaining:
        best = min(
            remaining,
            key=lambda v: len(_frontier_after(done | {v}, frontier, [v], incident, ends)),
        )
        done.add(best)
        frontier = _frontier_after(done, frontier, [best], incident, ends)
        order.append(best)
        remaining.remove(best)
    return order


# -- contraction -------------------------------------------------------------

def _dtype_for(bound: int):
    if bound < _FLOAT_LIMIT:
        return np.float64
    if bound <= _INT_LIMIT:
        return np.int64
    return object


def _indicator(kernel: AdmissibilityKernel, triple: Sequence[str], axes: Sequence[str],
               ranges: Mapping[str, range]) -> np.ndarray:
    """Admissibility of ``triple`` laid out over ``axes``; each axis spans ``ranges[var]``."""
    n = len(axes)
    idx = {}
    for k, var in enumerate(axes):
        shape = [1] * n
        r = ranges[var]
        shape[k] = len(r)
        idx[var] = np.arange(r.start, r.stop, dtype=kernel.dtype).reshape(shape)
    out = kernel.evaluate(*(idx[e] for e in triple))
    return np.broadcast_to(out, tuple(len(ranges[v]) for v in axes))


def _einsum(ops, out):
    # optimize=True caps intermediates at the largest operand, which for fused
    # vertices forces a naive loop over every variable; allow larger pairwise steps
    path, _ = np.einsum_path(*ops, out, optimize=("greedy", 4 * SLAB_ENTRIES))
    return np.einsum(*ops, out, optimize=path)


def _contract(kernel, table, axes, triples, out_axes, threads):
    """Sum over everything not in ``out_axes`` of table * prod(indicators)."""
    L = kernel.L
    variables = list(axes)
    for t in triples:
        for e in t:
            if e not in variables:
                variables.append(e)
    # slice along a variable shared by as many vertex factors as possible, preferring summed ones
    slicer = max(
        (e for t in triples for e in t),
        key=lambda e: (sum(e in t for t in triples), e not in out_axes),
    )
    for t in triples:
        if slicer not in t and L ** len(set(t)) > SLAB_ENTRIES:
            raise MemoryCapExceeded(sorted(set(t)), 8 * L ** len(set(t)), 8 * SLAB_ENTRIES)

    largest = max(len(set(t) - {slicer}) for t in triples)
    chunk = max(1, min(L, SLAB_ENTRIES // max(1, L**largest)))
    out_shape = tuple(L for _ in out_axes)
    sym = {v: i for i, v in enumerate(variables)}
    out_free = [v for v in out_axes if v != slicer]
    if len(triples) > 1:
        # fused vertices: the pairwise intermediate is about chunk * L^len(out_free);
        # keep at least two slicer values, numpy drops to a slow loop on unit axes
        chunk = max(min(2, L), min(chunk, SLAB_ENTRIES // max(1, L ** len(out_free))))

    def work(starts):
        acc = None
        for lo in starts:
            hi = min(L, lo + chunk)
            rng = {v: range(L) for v in variables}
            rng[slicer] = range(lo, hi)
            ops = []
            if axes:
                sl = tuple(slice(lo, hi) if a == slicer else slice(None) for a in axes)
                ops += [table[sl], [sym[a] for a in axes]]
            else:
                ops += [table, []]
            for t in triples:
                t_axes = list(dict.fromkeys(t))
                ind = _indicator(kernel, t, t_axes, rng).astype(table.dtype)
                ops += [ind, [sym[a] for a in t_axes]]
            if slicer in out_axes:
                part = _einsum(ops, [sym[a] for a in out_axes])
                if acc is None:
                    acc = np.zeros(out_shape, dtype=table.dtype)
                pos = out_axes.index(slicer)
                target = tuple(slice(lo, hi) if k == pos else slice(None) for k in range(len(out_axes)))
                acc[target] += part
            else:
                part = _einsum(ops, [sym[a] for a in out_free])
                acc = part if acc is None else acc + part
        if acc is None:
            acc = np.zeros(out_shape, dtype=table.dtype)
        return acc

    starts = list(range(0, L, chunk))
    if threads and threads > 1 and len(starts) > 1:
        parts = [starts[i::threads] for i in range(threads)]
        with ThreadPoolExecutor(max_workers=threads) as pool:
            results = list(pool.map(work, [p for p in parts if p]))
        total = results[0]
        for r in results[1:]:
            total = total + r
        return total
    return work(starts)


def count_dp(graph: TrivalentGraph, lp: LevelParams, order: Sequence[str] | None = None,
             memcap: int = DEFAULT_MEMCAP, threads: int = 1) -> CountReport:
    validate(graph)
    start = time.perf_counter()
    order = list(order) if order is not None else elimination_order(graph)
    if sorted(order) != sorted(graph.vertices):
        raise ValueError("elimination order must list every vertex exactly once")

    L = lp.labels
    if L == 0:
        return CountReport(graph.name, lp.p, lp.N, 0, "dp", order, 0)

    kernel = AdmissibilityKernel(lp)
    incident, ends = _incident(graph), _ends(graph)
    done: set[str] = set()
    axes: list[str] = []
    table = np.ones((), dtype=np.float64)
    peak = 1  # exact upper bound on table entries

    i = 0
    while i < len(order):
        group = [order[i]]
        new_axes = _frontier_after(done | set(group), axes, group, incident, ends)
        nbytes = 8 * L ** len(new_axes)
        if nbytes > memcap and i + 1 < len(order):
            group.append(order[i + 1])
            new_axes = _frontier_after(done | set(group), axes, group, incident, ends)
            nbytes = 8 * L ** len(new_axes)
        if nbytes > memcap:
            raise MemoryCapExceeded(new_axes, nbytes, memcap)

        triples = [incident[v] for v in group]
        involved = set(axes).union(*map(set, triples))
        summed = len(involved - set(new_axes))
        bound = peak * L**summed
        dtype = _dtype_for(bound)
        if table.dtype != dtype:
            table = table.astype(dtype) if dtype is not object else np.array(
                [int(x) for x in table.flat], dtype=object).reshape(table.shape)
        table = _contract(kernel, table, axes, triples, new_axes, threads)
        done.update(group)
        axes = new_axes
        peak = int(table.max()) if table.size else 0
        i += len(group)

    count = int(table.reshape(()).item()) if table.dtype != object else int(table.reshape(())[()])
    elapsed = int((time.perf_counter() - start) * 1000)
    return CountReport(graph.name, lp.p, lp.N, count, "dp", order, elapsed)


def count(graph: TrivalentGraph, lp: LevelParams, method: str = "auto", **kw) -> CountReport:
    """Dispatch: ``auto`` uses brute force only for search spaces up to 10**6."""
    if method == "brute" or (method == "auto" and lp.labels ** len(graph.edges) <= 10**6):
        return count_brute(graph, lp)
    return count_dp(graph, lp, **kw)
