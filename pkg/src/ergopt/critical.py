"""Critical graph, uniqueness test and directional integral intervals.

In the lifted model the maximising measures are exactly the invariant
measures carried by the critical graph: the union of all cycles whose mean
equals the maximum cycle mean.  It is found through a max-plus
sub-eigenvector ``v`` (``v[i] + w - lam <= v[j]`` on every edge): an edge is
tight when equality holds, and the cycles of the tight subgraph are precisely
the maximising cycles.
"""
from collections import deque
from dataclasses import dataclass
from fractions import Fraction
from typing import Optional

from .errors import EdgeSetMismatch, ErgoptError
from .graph import (
    CycleMeasure,
    Subgraph,
    TransitionGraph,
    induced_subgraph,
    is_cyclic_component,
    prune_to_recurrent,
    strongly_connected_components,
)
from .maxmean import MaxMeanResult, max_cycle_mean_karp


@dataclass(frozen=True)
class CriticalStructure:
    graph: TransitionGraph
    lam: Fraction
    eigenvector: tuple
    tight_edges: frozenset
    critical: Subgraph  # recurrent part of the tight subgraph, embedded in ``graph``
    base: int
    max_mean: MaxMeanResult

    @property
    def critical_graph(self) -> TransitionGraph:
        return self.critical.graph

    def slack(self, eid: int) -> Fraction:
        e = self.graph.edges[eid]
        return self.eigenvector[e.source] + e.weight - self.lam - self.eigenvector[e.target]

    def critical_edge_ids(self) -> tuple:
        """Ambient ids of the edges of the critical graph."""
        return self.critical.edge_map


@dataclass(frozen=True)
class DirectionalInterval:
    lower: Fraction
    upper: Fraction

    @property
    def diameter(self) -> Fraction:
        return self.upper - self.lower

    @property
    def degenerate(self) -> bool:
        return self.lower == self.upper


@dataclass(frozen=True)
class UniquenessCertificate:
    unique: bool
    cycles: tuple  # one cycle when unique, two distinct cycles otherwise

    def __bool__(self):
        return self.unique


def _reachable(g: TransitionGraph, src: int) -> set:
    seen = {src}
    todo = [src]
    while todo:
        v = todo.pop()
        for eid in g.out_edges(v):
            w = g.edges[eid].target
            if w not in seen:
                seen.add(w)
                todo.append(w)
    return seen


def _subeigenvector(g: TransitionGraph, lam: Fraction, base: int) -> list:
    """Longest walk values for weights ``w - lam``.

    Walks start at ``base`` with value 0; vertices that ``base`` cannot reach
    are extra sources with value 0 so the vector is finite everywhere.  With
    no positive cycle after reweighting, Bellman-Ford settles in < n rounds.
    """
    n = g.vertex_count
    reach = _reachable(g, base)
    v = [Fraction(0) if (u == base or u not in reach) else None for u in range(n)]
    reweighted = [e.weight - lam for e in g.edges]
    for _ in range(n + 1):
        changed = False
        for eid, e in enumerate(g.edges):
            if v[e.source] is None:
                continue
            cand = v[e.source] + reweighted[eid]
            if v[e.target] is None or cand > v[e.target]:
                v[e.target] = cand
                changed = True
        if not changed:
            return v
    raise AssertionError("positive cycle after reweighting; lambda is not the maximum")


def critical_structure(g_f: TransitionGraph, base: Optional[int] = None) -> CriticalStructure:
    """Max-plus eigen-data and critical graph of ``g_f``.

    ``base`` defaults to the least vertex on Karp's witness cycle; any vertex
    gives the same critical graph.
    """
    res = max_cycle_mean_karp(g_f)
    lam = res.lam
    if base is None:
        base = min(g_f.edges[e].source for e in res.witness_cycle.edges)
    elif not 0 <= base < g_f.vertex_count:
        raise ErgoptError(f"base vertex {base} outside the graph")
    v = _subeigenvector(g_f, lam, base)
    tight = frozenset(
        eid for eid, e in enumerate(g_f.edges) if v[e.source] + e.weight - lam == v[e.target]
    )
    tight_sub = induced_subgraph(g_f, range(g_f.vertex_count), edge_filter=tight)
    rec = prune_to_recurrent(tight_sub.graph)
    critical = Subgraph(
        rec.graph,
        tuple(tight_sub.vertex_map[u] for u in rec.vertex_map),
        tuple(tight_sub.edge_map[e] for e in rec.edge_map),
    )
    return CriticalStructure(g_f, lam, tuple(v), tight, critical, base, res)


def _some_cycle(g: TransitionGraph, start: int, allowed: set) -> list:
    """Follow the first allowed out-edge from ``start`` until a vertex repeats."""
    pos, eids, v = {}, [], start
    while v not in pos:
        pos[v] = len(eids)
        eid = next(e for e in g.out_edges(v) if g.edges[e].target in allowed)
        eids.append(eid)
        v = g.edges[eid].target
    return eids[pos[v]:]


def _cycle_through(g: TransitionGraph, eid: int, allowed: set) -> list:
    """Edge ``eid`` closed up by a shortest path back to its source."""
    e = g.edges[eid]
    if e.target == e.source:
        return [eid]
    prev = {e.target: None}
    queue = deque([e.target])
    while queue:
        u = queue.popleft()
        if u == e.source:
            break
        for out in g.out_edges(u):
            w = g.edges[out].target
            if w in allowed and w not in prev:
                prev[w] = out
                queue.append(w)
    path = []
    u = e.source
    while prev[u] is not None:
        path.append(prev[u])
        u = g.edges[prev[u]].source
    return [eid] + path[::-1]


def is_unique_maximising(cs: CriticalStructure) -> UniquenessCertificate:
    """Decide whether there is a single maximising measure.

    True exactly when the critical graph is one simple cycle.  The certificate
    holds that cycle, or two distinct maximising cycles otherwise (ambient ids).
    """
    cg = cs.critical_graph
    emap = cs.critical.edge_map
    comps = [c for c in strongly_connected_components(cg) if is_cyclic_component(cg, c)]
    first = set(comps[0])
    inner = [eid for eid, e in enumerate(cg.edges) if e.source in first and e.target in first]
    c1 = _some_cycle(cg, min(first), first)
    if len(comps) == 1 and len(inner) == len(first):
        return UniquenessCertificate(True, (CycleMeasure.from_edges(c1).relabel(emap),))
    if len(comps) > 1:
        other = set(comps[1])
        c2 = _some_cycle(cg, min(other), other)
    else:
        extra = next(eid for eid in inner if eid not in c1)
        c2 = _cycle_through(cg, extra, first)
    return UniquenessCertificate(
        False,
        (CycleMeasure.from_edges(c1).relabel(emap), CycleMeasure.from_edges(c2).relabel(emap)),
    )


def _direction_weights(cs: CriticalStructure, g_weights) -> list:
    if isinstance(g_weights, TransitionGraph):
        if not cs.graph.same_edge_set(g_weights):
            raise EdgeSetMismatch("direction graph has a different edge set")
        return list(g_weights.weights)
    weights = list(g_weights)
    if len(weights) != cs.graph.edge_count:
        raise EdgeSetMismatch(f"expected {cs.graph.edge_count} direction weights, got {len(weights)}")
    return [Fraction(w) for w in weights]


def directional_interval(cs: CriticalStructure, g_weights) -> DirectionalInterval:
    """Range of the integral of a direction over all maximising measures.

    ``g_weights`` is a graph on the same edge set or a per-edge weight list.
    The endpoints are the min and max cycle means of the direction restricted
    to the critical graph.
    """
    w = _direction_weights(cs, g_weights)
    cg = cs.critical_graph
    local = [w[a] for a in cs.critical.edge_map]
    upper = max_cycle_mean_karp(cg.with_weights(local)).lam
    lower = -max_cycle_mean_karp(cg.with_weights([-x for x in local])).lam
    return DirectionalInterval(lower, upper)


def diameter(cs: CriticalStructure, g_weights) -> Fraction:
    return directional_interval(cs, g_weights).diameter
