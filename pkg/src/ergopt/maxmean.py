"""Maximum cycle mean by two independent exact algorithms.

For a locally constant potential lifted to a graph, the maximum cycle mean is
the largest ergodic average over all invariant measures.  Karp's dynamic
programme is the reference; Howard's policy iteration is the second route and
the two are cross-checked in the test suite.
"""
from dataclasses import dataclass
from fractions import Fraction

from .errors import EmptyRecurrentPart
from .graph import (
    CycleMeasure,
    TransitionGraph,
    cycle_mean,
    induced_subgraph,
    is_cyclic_component,
    strongly_connected_components,
)


@dataclass(frozen=True)
class MaxMeanResult:
    lam: Fraction
    witness_cycle: CycleMeasure
    per_scc_lambda: tuple  # ((scc index, lambda), ...) for cyclic SCCs only

    @property
    def lambda_(self):
        return self.lam


def _cyclic_components(g: TransitionGraph):
    comps = strongly_connected_components(g)
    cyclic = [(ci, comp) for ci, comp in enumerate(comps) if is_cyclic_component(g, comp)]
    if not cyclic:
        raise EmptyRecurrentPart("graph has no cycle, hence no invariant measure")
    return cyclic


def _first_cycle_in_walk(vertices, edges):
    """First closed sub-walk without repeated vertices in a vertex/edge walk."""
    seen = {}
    for pos, v in enumerate(vertices):
        if v in seen:
            return edges[seen[v]:pos]
        seen[v] = pos
    raise AssertionError("walk longer than the vertex count must repeat a vertex")


def _karp_strongly_connected(g: TransitionGraph):
    """Karp on a strongly connected graph with at least one cycle, rooted at 0."""
    n = g.vertex_count
    # best[k][v]: maximum weight of a walk with exactly k edges from 0 to v
    best = [[None] * n for _ in range(n + 1)]
    parent = [[None] * n for _ in range(n + 1)]
    best[0][0] = Fraction(0)
    for k in range(1, n + 1):
        prev, cur, par = best[k - 1], best[k], parent[k]
        for eid, e in enumerate(g.edges):
            if prev[e.source] is None:
                continue
            cand = prev[e.source] + e.weight
            if cur[e.target] is None or cand > cur[e.target]:
                cur[e.target] = cand
                par[e.target] = eid

    lam, arg = None, None
    for v in range(n):
        if best[n][v] is None:
            continue
        worst = min(
            (best[n][v] - best[k][v]) / (n - k) for k in range(n) if best[k][v] is not None
        )
        if lam is None or worst > lam:
            lam, arg = worst, v

    # walk back from arg; every simple cycle inside this walk has mean lam
    verts, edges = [arg], []
    v = arg
    for k in range(n, 0, -1):
        eid = parent[k][v]
        edges.append(eid)
        v = g.edges[eid].source
        verts.append(v)
    verts.reverse()
    edges.reverse()
    # vertices[i] --edges[i]--> vertices[i+1]
    cyc = _first_cycle_in_walk(verts, edges)
    return lam, CycleMeasure.from_edges(cyc)


def _howard_strongly_connected(g: TransitionGraph, max_iter=None):
    """Policy iteration on a strongly connected graph.

    Gains and biases are exact.  A policy switches only on strict improvement
    and, when a new policy cycle appears, its bias is anchored at the previous
    bias of its least vertex, which makes (gain, bias) increase strictly.
    """
    n = g.vertex_count
    edges = g.edges
    policy = []
    for v in range(n):
        out = g.out_edges(v)
        policy.append(max(out, key=lambda eid: (edges[eid].weight, -eid)))

    bias = [Fraction(0)] * n
    limit = max_iter if max_iter is not None else 1000 + 100 * n * max(1, len(edges))
    for _ in range(limit):
        gain, bias = _evaluate_policy(g, policy, bias)
        changed = False
        new_policy = list(policy)
        for v in range(n):
            best_gain, best_eid = gain[v], None
            for eid in g.out_edges(v):
                gt = gain[edges[eid].target]
                if gt > best_gain:
                    best_gain, best_eid = gt, eid
            if best_eid is not None:
                new_policy[v] = best_eid
                changed = True
        if not changed:
            for v in range(n):
                best_val, best_eid = bias[v], None
                for eid in g.out_edges(v):
                    e = edges[eid]
                    if gain[e.target] != gain[v]:
                        continue
                    val = e.weight - gain[v] + bias[e.target]
                    if val > best_val:
                        best_val, best_eid = val, eid
                if best_eid is not None:
                    new_policy[v] = best_eid
                    changed = True
        if not changed:
            lam = max(gain)
            start = min(v for v in range(n) if gain[v] == lam)
            return lam, _policy_cycle_from(g, policy, start)
        policy = new_policy
    raise RuntimeError(f"policy iteration did not converge in {limit} steps")


def _policy_cycle_from(g, policy, start):
    verts, eids, v = [], [], start
    for _ in range(g.vertex_count + 1):
        verts.append(v)
        eids.append(policy[v])
        v = g.edges[policy[v]].target
    verts.append(v)
    return CycleMeasure.from_edges(_first_cycle_in_walk(verts, eids))


def _evaluate_policy(g, policy, old_bias):
    n = g.vertex_count
    edges = g.edges
    gain = [None] * n
    bias = [None] * n
    for v0 in range(n):
        if gain[v0] is not None:
            continue
        path, pos = [], {}
        v = v0
        while gain[v] is None and v not in pos:
            pos[v] = len(path)
            path.append(v)
            v = edges[policy[v]].target
        if gain[v] is None:
            cycle = path[pos[v]:]
            path = path[:pos[v]]
            mean = sum((edges[policy[u]].weight for u in cycle), Fraction(0)) / len(cycle)
            root = min(cycle)
            r = cycle.index(root)
            ordered = cycle[r:] + cycle[:r]
            gain[root] = mean
            bias[root] = old_bias[root]
            # bias[u] = w(u) - mean + bias[next(u)], filled backwards from the root
            for u in reversed(ordered[1:]):
                nxt = edges[policy[u]].target
                gain[u] = mean
                bias[u] = edges[policy[u]].weight - mean + bias[nxt]
        for u in reversed(path):
            nxt = edges[policy[u]].target
            gain[u] = gain[nxt]
            bias[u] = edges[policy[u]].weight - gain[u] + bias[nxt]
    return gain, bias


def _per_component(g: TransitionGraph, solver) -> MaxMeanResult:
    per_scc = []
    best = None
    for ci, comp in _cyclic_components(g):
        sub = induced_subgraph(g, comp)
        lam, cyc = solver(sub.graph)
        cyc = cyc.relabel(sub.edge_map)
        per_scc.append((ci, lam))
        if best is None or lam > best[0]:
            best = (lam, cyc)
    lam, cyc = best
    return MaxMeanResult(lam, cyc, tuple(per_scc))


def max_cycle_mean_karp(g: TransitionGraph) -> MaxMeanResult:
    """Maximum cycle mean via Karp's theorem, run per strongly connected component.

    Among components attaining the maximum, the witness comes from the first
    one in condensation order.
    """
    return _per_component(g, _karp_strongly_connected)


def max_cycle_mean_howard(g: TransitionGraph) -> MaxMeanResult:
    """Maximum cycle mean via Howard policy iteration (same contract as Karp)."""
    return _per_component(g, _howard_strongly_connected)


def beta(g_f: TransitionGraph) -> Fraction:
    """Largest ergodic average of the edge weights of ``g_f``."""
    return max_cycle_mean_karp(g_f).lam


def witness_mean(result: MaxMeanResult, g: TransitionGraph) -> Fraction:
    return cycle_mean(result.witness_cycle, g)
