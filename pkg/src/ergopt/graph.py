"""Exact weighted digraphs, strongly connected components and cycle enumeration.

All weights are :class:`fractions.Fraction`.  Edges are stored in a canonical
order (source, target, insertion index) fixed at construction, and an edge id
is simply the position in that order.  Every function here is pure.
"""
import numbers
from fractions import Fraction
from typing import NamedTuple, Optional, Sequence

from .errors import CapExceeded, EdgeMismatch, EmptyRecurrentPart, ErgoptError


def parse_rational(value) -> Fraction:
    """Parse an exact rational from an int, a Fraction or a string.

    Strings may be integers (``"3"``), fractions (``"-1/2"``) or finite decimals
    (``"0.25"``).  Floats are refused because they are rarely what was meant.
    """
    if isinstance(value, bool):
        raise ValueError(f"not a rational: {value!r}")
    if isinstance(value, numbers.Rational):
        return Fraction(value)
    if isinstance(value, str):
        try:
            return Fraction(value.strip())
        except (ValueError, ZeroDivisionError) as exc:
            raise ValueError(f"not a rational: {value!r}") from exc
    if isinstance(value, float):
        raise ValueError(f"float {value!r} is inexact; write it as a string such as \"1/3\"")
    raise ValueError(f"not a rational: {value!r}")


def format_rational(q: Fraction) -> str:
    """Machine rendering ``num/den`` (always with a denominator)."""
    q = Fraction(q)
    return f"{q.numerator}/{q.denominator}"


class Edge(NamedTuple):
    source: int
    target: int
    weight: Fraction
    label: Optional[str] = None


class TransitionGraph:
    """Finite directed multigraph with exact rational edge weights.

    Parameters
    ----------
    vertex_count : int
        Vertices are ``0 .. vertex_count - 1``.
    edges : iterable of tuples
        ``(source, target, weight)`` or ``(source, target, weight, label)``.
        Weights go through :func:`parse_rational`.
    """

    __slots__ = ("vertex_count", "edges", "_out")

    def __init__(self, vertex_count: int, edges):
        if not isinstance(vertex_count, int) or vertex_count <= 0:
            raise ErgoptError(f"vertex_count must be a positive integer, got {vertex_count!r}")
        parsed = []
        for i, e in enumerate(edges):
            s, t, w = int(e[0]), int(e[1]), parse_rational(e[2])
            label = e[3] if len(e) > 3 else None
            if not (0 <= s < vertex_count and 0 <= t < vertex_count):
                raise ErgoptError(f"edge {i} ({s}->{t}) has a vertex outside [0, {vertex_count})")
            parsed.append((s, t, i, Edge(s, t, w, label)))
        parsed.sort(key=lambda item: item[:3])
        self.vertex_count = vertex_count
        self.edges = tuple(item[3] for item in parsed)
        out = [[] for _ in range(vertex_count)]
        for eid, e in enumerate(self.edges):
            out[e.source].append(eid)
        self._out = tuple(tuple(ids) for ids in out)

    @property
    def edge_count(self) -> int:
        return len(self.edges)

    @property
    def weights(self) -> tuple:
        return tuple(e.weight for e in self.edges)

    def out_edges(self, v: int) -> tuple:
        return self._out[v]

    def with_weights(self, weights: Sequence) -> "TransitionGraph":
        """Same vertices and edges (same ids), new weights."""
        if len(weights) != len(self.edges):
            raise ErgoptError(f"expected {len(self.edges)} weights, got {len(weights)}")
        return TransitionGraph(
            self.vertex_count,
            [(e.source, e.target, w, e.label) for e, w in zip(self.edges, weights)],
        )

    def same_edge_set(self, other: "TransitionGraph") -> bool:
        return self.vertex_count == other.vertex_count and [
            (e.source, e.target) for e in self.edges
        ] == [(e.source, e.target) for e in other.edges]

    def __eq__(self, other):
        if not isinstance(other, TransitionGraph):
            return NotImplemented
        return self.vertex_count == other.vertex_count and self.edges == other.edges

    def __hash__(self):
        return hash((self.vertex_count, self.edges))

    def __repr__(self):
        return f"TransitionGraph(vertex_count={self.vertex_count}, edges={len(self.edges)})"

    def to_dict(self) -> dict:
        """Graph textual format: ``vertex_count`` plus ``[source, target, "num/den"]`` rows."""
        return {
            "vertex_count": self.vertex_count,
            "edges": [[e.source, e.target, format_rational(e.weight)] for e in self.edges],
        }

    @classmethod
    def from_dict(cls, data: dict) -> "TransitionGraph":
        try:
            n = data["vertex_count"]
            rows = data["edges"]
        except (KeyError, TypeError) as exc:
            raise ErgoptError("graph document needs 'vertex_count' and 'edges'") from exc
        edges = []
        for row in rows:
            if not isinstance(row, (list, tuple)) or len(row) != 3:
                raise ErgoptError(f"edge row must be [source, target, weight], got {row!r}")
            edges.append((row[0], row[1], parse_rational(row[2])))
        return cls(n, edges)


class CycleMeasure(NamedTuple):
    """A simple cycle given by edge ids, in canonical rotation.

    The associated invariant measure puts mass ``1/length`` on each edge.
    """

    edges: tuple

    @property
    def length(self) -> int:
        return len(self.edges)

    @classmethod
    def from_edges(cls, edge_ids) -> "CycleMeasure":
        ids = tuple(edge_ids)
        if not ids:
            raise ErgoptError("a cycle needs at least one edge")
        best = min(ids[i:] + ids[:i] for i in range(len(ids)))
        return cls(best)

    def vertices(self, g: TransitionGraph) -> tuple:
        return tuple(g.edges[e].source for e in self.edges)

    def relabel(self, edge_map: Sequence[int]) -> "CycleMeasure":
        """Translate edge ids through ``edge_map`` (sub-graph id -> ambient id)."""
        return CycleMeasure.from_edges(edge_map[e] for e in self.edges)


def check_cycle(c: CycleMeasure, g: TransitionGraph) -> None:
    """Raise :class:`EdgeMismatch` unless ``c`` is a simple cycle of ``g``."""
    m = len(g.edges)
    if any(not (0 <= e < m) for e in c.edges):
        raise EdgeMismatch(f"cycle {c.edges} references edges outside [0, {m})")
    seen = set()
    for i, e in enumerate(c.edges):
        nxt = c.edges[(i + 1) % len(c.edges)]
        if g.edges[e].target != g.edges[nxt].source:
            raise EdgeMismatch(f"edges {e} and {nxt} are not incident")
        if g.edges[e].source in seen:
            raise EdgeMismatch(f"vertex {g.edges[e].source} repeats in cycle {c.edges}")
        seen.add(g.edges[e].source)


def cycle_mean(c: CycleMeasure, g: TransitionGraph, weights: Optional[Sequence] = None) -> Fraction:
    """Average weight along ``c``; ``weights`` overrides the graph's own weights."""
    check_cycle(c, g)
    w = g.weights if weights is None else weights
    return sum((Fraction(w[e]) for e in c.edges), Fraction(0)) / len(c.edges)


def strongly_connected_components(g: TransitionGraph) -> list:
    """Tarjan's algorithm, iterative.

    Returns a list of sorted vertex tuples in reverse topological order of the
    condensation (sink components first).  Roots are tried in increasing vertex
    order and successors in canonical edge order, so output is deterministic.
    """
    n = g.vertex_count
    index = [-1] * n
    low = [0] * n
    on_stack = [False] * n
    stack = []
    result = []
    counter = 0
    for root in range(n):
        if index[root] != -1:
            continue
        work = [(root, 0)]
        index[root] = low[root] = counter
        counter += 1
        stack.append(root)
        on_stack[root] = True
        while work:
            v, pos = work[-1]
            out = g.out_edges(v)
            if pos < len(out):
                work[-1] = (v, pos + 1)
                w = g.edges[out[pos]].target
                if index[w] == -1:
                    index[w] = low[w] = counter
                    counter += 1
                    stack.append(w)
                    on_stack[w] = True
                    work.append((w, 0))
                elif on_stack[w]:
                    low[v] = min(low[v], index[w])
                continue
            work.pop()
            if work:
                parent = work[-1][0]
                low[parent] = min(low[parent], low[v])
            if low[v] == index[v]:
                comp = []
                while True:
                    w = stack.pop()
                    on_stack[w] = False
                    comp.append(w)
                    if w == v:
                        break
                result.append(tuple(sorted(comp)))
    return result


def component_index(components: Sequence[Sequence[int]], n: int) -> list:
    comp_of = [-1] * n
    for ci, comp in enumerate(components):
        for v in comp:
            comp_of[v] = ci
    return comp_of


def is_cyclic_component(g: TransitionGraph, comp: Sequence[int]) -> bool:
    if len(comp) > 1:
        return True
    v = comp[0]
    return any(g.edges[e].target == v for e in g.out_edges(v))


class Subgraph(NamedTuple):
    """A graph together with its embedding into an ambient graph."""

    graph: TransitionGraph
    vertex_map: tuple  # new vertex id -> ambient vertex id
    edge_map: tuple  # new edge id -> ambient edge id


def induced_subgraph(g: TransitionGraph, vertices, edge_filter=None) -> Subgraph:
    """Subgraph on ``vertices`` keeping edges with both ends inside.

    ``edge_filter`` (a set of ambient edge ids) restricts the edges further.
    """
    keep = sorted(set(vertices))
    if not keep:
        raise ErgoptError("induced subgraph needs at least one vertex")
    new_id = {v: i for i, v in enumerate(keep)}
    edges, emap = [], []
    for eid, e in enumerate(g.edges):
        if e.source in new_id and e.target in new_id:
            if edge_filter is not None and eid not in edge_filter:
                continue
            edges.append((new_id[e.source], new_id[e.target], e.weight, e.label))
            emap.append(eid)
    # canonical order is preserved: ambient order sorts by (source, target, index)
    # and the relabelling is monotone.
    return Subgraph(TransitionGraph(len(keep), edges), tuple(keep), tuple(emap))


def recurrent_vertices(g: TransitionGraph) -> list:
    comps = strongly_connected_components(g)
    return sorted(v for comp in comps if is_cyclic_component(g, comp) for v in comp)


def prune_to_recurrent(g: TransitionGraph) -> Subgraph:
    """Restrict ``g`` to the vertices lying on at least one cycle.

    Raises :class:`EmptyRecurrentPart` when ``g`` is acyclic.
    """
    rec = recurrent_vertices(g)
    if not rec:
        raise EmptyRecurrentPart("graph has no cycle, hence no invariant measure")
    return induced_subgraph(g, rec)


def enumerate_simple_cycles(g: TransitionGraph, cap: int) -> list:
    """All simple cycles of ``g`` in canonical rotation, sorted.

    Brute-force depth-first search from each start vertex through larger
    vertices only; intended as a test oracle on small graphs.  Raises
    :class:`CapExceeded` as soon as more than ``cap`` cycles have been found.
    """
    if cap <= 0:
        raise ValueError("cap must be positive")
    found = []
    n = g.vertex_count
    for start in range(n):
        on_path = [False] * n
        on_path[start] = True
        path = []
        # explicit stack of (vertex, position in its out-edge list)
        stack = [(start, 0)]
        while stack:
            v, pos = stack[-1]
            out = g.out_edges(v)
            if pos == len(out):
                stack.pop()
                if path:
                    on_path[g.edges[path.pop()].target] = False
                continue
            stack[-1] = (v, pos + 1)
            eid = out[pos]
            w = g.edges[eid].target
            if w == start:
                found.append(CycleMeasure.from_edges(path + [eid]))
                if len(found) > cap:
                    raise CapExceeded(len(found))
            elif w > start and not on_path[w]:
                on_path[w] = True
                path.append(eid)
                stack.append((w, 0))
    found.sort()
    return found
