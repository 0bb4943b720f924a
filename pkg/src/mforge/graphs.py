"""Directed multigraphs with labeled edges and their incidence row spaces."""
from __future__ import annotations

from collections.abc import Iterable, Mapping, Sequence
from dataclasses import dataclass

from .errors import InvariantBreach, PreconditionError
from .fields import QQ
from .labels import check_unique, fresh_map
from .vspace import VSpace, make_space, matched_compose, reorder


@dataclass(frozen=True)
class Edge:
    label: str
    tail: str
    head: str


@dataclass(frozen=True)
class Graph:
    vertices: tuple[str, ...]
    edges: tuple[Edge, ...]

    def __post_init__(self):
        check_unique(self.vertices)
        check_unique([e.label for e in self.edges])
        vs = set(self.vertices)
        for e in self.edges:
            if e.tail not in vs or e.head not in vs:
                raise PreconditionError(f"edge {e.label} uses an unknown vertex")

    @property
    def labels(self) -> tuple[str, ...]:
        return tuple(e.label for e in self.edges)

    def edge(self, label: str) -> Edge:
        for e in self.edges:
            if e.label == label:
                return e
        raise PreconditionError(f"unknown edge {label!r}")


def make_graph(vertices: Iterable[str], edges: Iterable[tuple[str, str, str]]) -> Graph:
    return Graph(tuple(vertices), tuple(Edge(*e) for e in edges))


class _Forest:
    """Union-find keyed by vertex id."""

    def __init__(self, items: Iterable[str] = ()):
        self.parent = {x: x for x in items}

    def find(self, x: str) -> str:
        self.parent.setdefault(x, x)
        root = x
        while self.parent[root] != root:
            root = self.parent[root]
        while self.parent[x] != root:
            self.parent[x], x = root, self.parent[x]
        return root

    def union(self, a: str, b: str) -> bool:
        ra, rb = self.find(a), self.find(b)
        if ra == rb:
            return False
        self.parent[rb] = ra
        return True


def component_count(graph: Graph) -> int:
    forest = _Forest(graph.vertices)
    merges = sum(forest.union(e.tail, e.head) for e in graph.edges)
    return len(graph.vertices) - merges


def is_forest(graph: Graph, labels: Iterable[str]) -> bool:
    forest = _Forest()
    for lab in labels:
        e = graph.edge(lab)
        if not forest.union(e.tail, e.head):
            return False
    return True


def incidence_space(graph: Graph) -> VSpace:
    """Row space of the vertex-edge incidence matrix over the rationals."""
    rows = []
    for v in graph.vertices:
        row = []
        for e in graph.edges:
            if e.tail == e.head:
                row.append(0)
            elif e.tail == v:
                row.append(1)
            elif e.head == v:
                row.append(-1)
            else:
                row.append(0)
        rows.append(row)
    return make_space(QQ, rows, graph.labels)


def _drop_isolated(vertices: Sequence[str], edges: Sequence[Edge]) -> Graph:
    used = {e.tail for e in edges} | {e.head for e in edges}
    return Graph(tuple(v for v in vertices if v in used), tuple(edges))


def delete_edges(graph: Graph, labels: Iterable[str]) -> Graph:
    drop = set(labels)
    unknown = drop - set(graph.labels)
    if unknown:
        raise PreconditionError(f"unknown edges {sorted(unknown)}")
    return _drop_isolated(graph.vertices, [e for e in graph.edges if e.label not in drop])


def contract_edges(graph: Graph, labels: Iterable[str]) -> Graph:
    """Fuse the endpoints of each edge in ``labels``; a fused group keeps its first vertex id."""
    fuse = set(labels)
    unknown = fuse - set(graph.labels)
    if unknown:
        raise PreconditionError(f"unknown edges {sorted(unknown)}")
    order = {v: i for i, v in enumerate(graph.vertices)}
    forest = _Forest(graph.vertices)
    for e in graph.edges:
        if e.label in fuse:
            forest.union(e.tail, e.head)
    groups: dict[str, list[str]] = {}
    for v in graph.vertices:
        groups.setdefault(forest.find(v), []).append(v)
    rep = {v: min(members, key=order.__getitem__) for members in groups.values() for v in members}
    kept = [Edge(e.label, rep[e.tail], rep[e.head]) for e in graph.edges if e.label not in fuse]
    return _drop_isolated([v for v in graph.vertices if rep[v] == v], kept)


def restrict_graph(graph: Graph, labels: Iterable[str]) -> Graph:
    keep = set(labels)
    return delete_edges(graph, [x for x in graph.labels if x not in keep])


def contract_graph(graph: Graph, labels: Iterable[str]) -> Graph:
    keep = set(labels)
    return contract_edges(graph, [x for x in graph.labels if x not in keep])


def compose_space(left: Graph, right: Graph) -> VSpace:
    """Matched composition of the incidence spaces; no graph is rebuilt."""
    return matched_compose(incidence_space(left), incidence_space(right))


def overlay_compose(left: Graph, right: Graph, vertex_map: Mapping[str, str]) -> Graph:
    """Glue ``right`` onto ``left`` along their shared edges, then delete those edges.

    ``vertex_map`` sends each vertex of the shared subgraph in ``right`` to the
    matching vertex of ``left``.  Other vertices of ``right`` are kept apart,
    renamed with primes if their ids clash with ``left``.
    """
    shared = [x for x in left.labels if x in set(right.labels)]
    if not shared:
        raise PreconditionError("overlay needs at least one shared edge")
    shared_left = restrict_graph(left, shared)
    shared_right = restrict_graph(right, shared)
    if set(vertex_map) != set(shared_right.vertices):
        raise PreconditionError("vertex map must cover exactly the shared subgraph of the right graph")
    if len(set(vertex_map.values())) != len(vertex_map):
        raise PreconditionError("vertex map is not injective")
    for lab in shared:
        a, b = shared_left.edge(lab), shared_right.edge(lab)
        if (a.tail, a.head) != (vertex_map[b.tail], vertex_map[b.head]):
            raise PreconditionError(f"shared edge {lab} differs between the two graphs")
    if set(vertex_map.values()) != set(shared_left.vertices):
        raise PreconditionError("shared subgraphs have different vertex sets")
    if component_count(shared_left) != 1:
        raise PreconditionError("shared subgraph is disconnected; use compose_space")

    rename = dict(vertex_map)
    extra = [v for v in right.vertices if v not in vertex_map]
    rename.update(fresh_map([v for v in extra if v in set(left.vertices)], avoid=set(left.vertices) | set(right.vertices)))
    for v in extra:
        rename.setdefault(v, v)
    drop = set(shared)
    edges = [e for e in left.edges if e.label not in drop]
    edges += [Edge(e.label, rename[e.tail], rename[e.head]) for e in right.edges if e.label not in drop]
    vertices = list(left.vertices) + [rename[v] for v in extra]
    result = _drop_isolated(vertices, edges)

    expected = compose_space(left, right)
    got = incidence_space(result)
    if reorder(got, expected.columns) != expected:
        raise InvariantBreach("overlay graph disagrees with the composed row space", witness=result)
    return result


def spanning_tree(graph: Graph) -> tuple[str, ...]:
    """Greedy spanning forest in edge order."""
    forest = _Forest(graph.vertices)
    return tuple(e.label for e in graph.edges if forest.union(e.tail, e.head))

