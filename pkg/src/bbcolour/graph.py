"""Undirected graphs, backbone instances, colourings and the colouring verifiers."""
from __future__ import annotations

from collections import deque
from dataclasses import dataclass, field
from typing import Iterable, Mapping

Edge = tuple[int, int]


class IncompleteColouringError(ValueError):
    """A colouring leaves some vertex of the instance uncoloured."""


def norm_edge(u: int, v: int) -> Edge:
    return (u, v) if u < v else (v, u)


@dataclass(frozen=True)
class Graph:
    """Simple undirected graph on vertices ``1..n``.

    ``adj[v]`` is the neighbourhood of ``v``; ``adj[0]`` is an unused empty slot.
    """

    n: int
    edges: frozenset[Edge]
    adj: tuple[frozenset[int], ...] = field(repr=False, compare=False)

    @classmethod
    def from_edges(cls, n: int, edges: Iterable[tuple[int, int]]) -> "Graph":
        if n < 0:
            raise ValueError("vertex count must be non-negative")
        nbrs: list[set[int]] = [set() for _ in range(n + 1)]
        normed = set()
        for u, v in edges:
            if u == v:
                raise ValueError(f"self-loop at vertex {u}")
            if not (1 <= u <= n and 1 <= v <= n):
                raise ValueError(f"edge ({u}, {v}) outside 1..{n}")
            normed.add(norm_edge(u, v))
            nbrs[u].add(v)
            nbrs[v].add(u)
        return cls(n, frozenset(normed), tuple(frozenset(s) for s in nbrs))

    @classmethod
    def empty(cls, n: int) -> "Graph":
        return cls.from_edges(n, ())

    @property
    def vertices(self) -> range:
        return range(1, self.n + 1)

    @property
    def m(self) -> int:
        return len(self.edges)

    def degree(self, v: int) -> int:
        return len(self.adj[v])

    def has_edge(self, u: int, v: int) -> bool:
        return v in self.adj[u]

    def induced(self, vertices: Iterable[int]) -> tuple["Graph", list[int]]:
        """Induced subgraph relabelled to ``1..k``; also returns new-id -> old-id."""
        labels = sorted(set(vertices))
        index = {v: i for i, v in enumerate(labels, start=1)}
        sub_edges = [
            (index[u], index[w])
            for u in labels
            for w in self.adj[u]
            if w in index and u < w
        ]
        return Graph.from_edges(len(labels), sub_edges), [0] + labels

    def remove_vertices(self, removed: Iterable[int]) -> "Graph":
        """Same vertex set, every edge touching ``removed`` dropped."""
        gone = set(removed)
        return Graph.from_edges(
            self.n, (e for e in self.edges if e[0] not in gone and e[1] not in gone)
        )


@dataclass(frozen=True)
class BackboneInstance:
    host: Graph
    backbone_edges: frozenset[Edge]
    q: int = 2
    comments: tuple[str, ...] = field(default=(), compare=False)

    def __post_init__(self):
        if self.q < 1:
            raise ValueError("gap q must be at least 1")
        stray = self.backbone_edges - self.host.edges
        if stray:
            raise ValueError(f"backbone edge {min(stray)} is not a host edge")

    @classmethod
    def build(cls, n: int, host_edges: Iterable[Edge], backbone_edges: Iterable[Edge],
              q: int = 2, comments: Iterable[str] = ()) -> "BackboneInstance":
        bb = frozenset(norm_edge(u, v) for u, v in backbone_edges)
        host = Graph.from_edges(n, set(map(lambda e: norm_edge(*e), host_edges)) | bb)
        return cls(host, bb, q, tuple(comments))

    @property
    def n(self) -> int:
        return self.host.n

    @property
    def backbone(self) -> Graph:
        return Graph.from_edges(self.host.n, self.backbone_edges)

    def with_backbone(self, edges: Iterable[Edge]) -> "BackboneInstance":
        return BackboneInstance(self.host, frozenset(norm_edge(*e) for e in edges),
                                self.q, self.comments)


@dataclass(frozen=True)
class Colouring:
    """Total map vertex -> colour in ``1..span``."""

    assignment: Mapping[int, int]

    @property
    def span(self) -> int:
        return max(self.assignment.values(), default=0)

    def __getitem__(self, v: int) -> int:
        return self.assignment[v]

    def relabel(self, labels: list[int]) -> "Colouring":
        return Colouring({labels[v]: c for v, c in self.assignment.items()})


@dataclass(frozen=True)
class Violation:
    edge: Edge
    kind: str  # "proper" | "backbone-gap" | "circular-gap"


@dataclass(frozen=True)
class VerificationReport:
    valid: bool
    span: int
    violations: tuple[Violation, ...] = ()

    def __bool__(self) -> bool:
        return self.valid


def _check_total(inst: BackboneInstance, col: Colouring) -> None:
    missing = [v for v in inst.host.vertices if v not in col.assignment]
    if missing:
        raise IncompleteColouringError(f"{len(missing)} uncoloured vertices, first {missing[0]}")
    bad = [v for v, c in col.assignment.items() if not isinstance(c, int) or c < 1]
    if bad:
        raise ValueError(f"vertex {bad[0]} has non-positive colour {col.assignment[bad[0]]}")


def verify_backbone_colouring(inst: BackboneInstance, col: Colouring) -> VerificationReport:
    _check_total(inst, col)
    c = col.assignment
    violations = []
    for u, v in sorted(inst.host.edges):
        if c[u] == c[v]:
            violations.append(Violation((u, v), "proper"))
    for u, v in sorted(inst.backbone_edges):
        if c[u] != c[v] and abs(c[u] - c[v]) < inst.q:
            violations.append(Violation((u, v), "backbone-gap"))
    return VerificationReport(not violations, col.span, tuple(violations))


def verify_circular_colouring(inst: BackboneInstance, col: Colouring, k: int) -> VerificationReport:
    _check_total(inst, col)
    c = col.assignment
    over = [v for v in inst.host.vertices if c[v] > k]
    if over:
        raise ValueError(f"vertex {over[0]} has colour {c[over[0]]} > k={k}")
    violations = []
    for u, v in sorted(inst.host.edges):
        if c[u] == c[v]:
            violations.append(Violation((u, v), "proper"))
    q = inst.q
    for u, v in sorted(inst.backbone_edges):
        d = abs(c[u] - c[v])
        if d != 0 and not (q <= d <= k - q):
            violations.append(Violation((u, v), "circular-gap"))
    return VerificationReport(not violations, k, tuple(violations))


@dataclass(frozen=True)
class BipartiteResult:
    sides: tuple[frozenset[int], frozenset[int]] | None
    odd_cycle: tuple[int, ...] | None = None

    def __bool__(self) -> bool:
        return self.sides is not None


def is_bipartite(g: Graph) -> BipartiteResult:
    """BFS 2-colouring; every component's smallest vertex lands on side A."""
    side = [-1] * (g.n + 1)
    parent = [0] * (g.n + 1)
    depth = [0] * (g.n + 1)
    for root in g.vertices:
        if side[root] >= 0:
            continue
        side[root] = 0
        queue = deque([root])
        while queue:
            x = queue.popleft()
            for y in sorted(g.adj[x]):
                if side[y] < 0:
                    side[y] = 1 - side[x]
                    parent[y] = x
                    depth[y] = depth[x] + 1
                    queue.append(y)
                elif side[y] == side[x]:
                    return BipartiteResult(None, _tree_cycle(x, y, parent, depth))
    a = frozenset(v for v in g.vertices if side[v] == 0)
    return BipartiteResult((a, frozenset(g.vertices) - a))


def _tree_cycle(x: int, y: int, parent: list[int], depth: list[int]) -> tuple[int, ...]:
    left, right = [x], [y]
    while depth[left[-1]] > depth[right[-1]]:
        left.append(parent[left[-1]])
    while depth[right[-1]] > depth[left[-1]]:
        right.append(parent[right[-1]])
    while left[-1] != right[-1]:
        left.append(parent[left[-1]])
        right.append(parent[right[-1]])
    return tuple(left + right[-2::-1])


@dataclass(frozen=True)
class C4Result:
    free: bool
    witness: tuple[int, int, int, int] | None = None

    def __bool__(self) -> bool:
        return self.free


def is_c4_free(g: Graph) -> C4Result:
    """A 4-cycle subgraph exists iff two vertices share two common neighbours."""
    for u in g.vertices:
        seen: dict[int, int] = {}
        for x in g.adj[u]:
            for w in g.adj[x]:
                if w == u:
                    continue
                if w in seen:
                    return C4Result(False, (u, seen[w], w, x))
                seen[w] = x
    return C4Result(True)


def is_forest(g: Graph) -> bool:
    return g.m == g.n - len(connected_components(g))


def connected_components(g: Graph) -> list[frozenset[int]]:
    seen = [False] * (g.n + 1)
    parts = []
    for root in g.vertices:
        if seen[root]:
            continue
        seen[root] = True
        stack, part = [root], [root]
        while stack:
            x = stack.pop()
            for y in g.adj[x]:
                if not seen[y]:
                    seen[y] = True
                    stack.append(y)
                    part.append(y)
        parts.append(frozenset(part))
    return parts
