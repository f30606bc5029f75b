"""Chordal-graph machinery: elimination orderings, maximal cliques, clique trees,
clique paths for the two-cliques-per-vertex interval class, and smooth
tree-decompositions (all bags of size omega, neighbouring bags differ by one
vertex each way).
"""
from __future__ import annotations

import heapq
from dataclasses import dataclass, field

from .graph import Colouring, Graph, connected_components


class NotChordalError(ValueError):
    def __init__(self, witness: tuple[int, int, int]):
        self.witness = witness
        v, x, y = witness
        super().__init__(f"not chordal: later neighbours {x}, {y} of {v} are non-adjacent")


class CliquePathRejected(ValueError):
    def __init__(self, condition: str):
        self.condition = condition
        super().__init__(condition)


@dataclass(frozen=True)
class EliminationOrdering:
    """``order[0]`` is eliminated first.  For chordal graphs this is a PEO."""

    order: tuple[int, ...]

    def positions(self, n: int) -> list[int]:
        pos = [-1] * (n + 1)
        for i, v in enumerate(self.order):
            pos[v] = i
        return pos


@dataclass(frozen=True)
class PeoCheck:
    ok: bool
    witness: tuple[int, int, int] | None = None  # (vertex, later nbr, later nbr)

    def __bool__(self) -> bool:
        return self.ok


def mcs_ordering(g: Graph) -> EliminationOrdering:
    """Maximum-cardinality search; returns the reversed visit order.

    Ties go to the smallest vertex id.
    """
    weight = [0] * (g.n + 1)
    visited = [False] * (g.n + 1)
    heap = [(0, v) for v in g.vertices]
    heapq.heapify(heap)
    visit = []
    while heap:
        negw, v = heapq.heappop(heap)
        if visited[v] or -negw != weight[v]:
            continue
        visited[v] = True
        visit.append(v)
        for u in g.adj[v]:
            if not visited[u]:
                weight[u] += 1
                heapq.heappush(heap, (-weight[u], u))
    visit.reverse()
    return EliminationOrdering(tuple(visit))


def _later(g: Graph, pos: list[int], v: int) -> list[int]:
    return [u for u in g.adj[v] if pos[u] > pos[v]]


def check_peo(g: Graph, ordering: EliminationOrdering) -> PeoCheck:
    if sorted(ordering.order) != list(g.vertices):
        raise ValueError("ordering is not a permutation of the vertices")
    pos = ordering.positions(g.n)
    for v in ordering.order:
        later = _later(g, pos, v)
        if len(later) < 2:
            continue
        parent = min(later, key=pos.__getitem__)
        pn = g.adj[parent]
        for u in later:
            if u != parent and u not in pn:
                return PeoCheck(False, (v, parent, u))
    return PeoCheck(True)


def peo(g: Graph) -> EliminationOrdering:
    """MCS ordering, raising :class:`NotChordalError` if it is not perfect."""
    ordering = mcs_ordering(g)
    check = check_peo(g, ordering)
    if not check:
        raise NotChordalError(check.witness)
    return ordering


def is_chordal(g: Graph) -> bool:
    return check_peo(g, mcs_ordering(g)).ok


def maximal_cliques(g: Graph, ordering: EliminationOrdering | None = None) -> list[frozenset[int]]:
    """Maximal cliques of a chordal graph, read off a perfect elimination ordering.

    ``{v} + later(v)`` is non-maximal exactly when some ``u`` whose earliest
    later neighbour is ``v`` has one more later neighbour than ``v``.
    """
    if ordering is None:
        ordering = peo(g)
    else:
        check = check_peo(g, ordering)
        if not check:
            raise NotChordalError(check.witness)
    pos = ordering.positions(g.n)
    later = {v: _later(g, pos, v) for v in ordering.order}
    absorbed = set()
    for u in ordering.order:
        lu = later[u]
        if lu:
            p = min(lu, key=pos.__getitem__)
            if len(lu) == len(later[p]) + 1:
                absorbed.add(p)
    cliques = [frozenset([v, *later[v]]) for v in ordering.order if v not in absorbed]
    return sorted(cliques, key=lambda c: (-len(c), sorted(c)))


def clique_number(g: Graph) -> int:
    if g.n == 0:
        return 0
    return max(len(c) for c in maximal_cliques(g))


def greedy_omega_colouring(g: Graph, ordering: EliminationOrdering | None = None) -> Colouring:
    """First-fit along the reverse of a PEO; uses exactly omega colours."""
    if ordering is None:
        ordering = peo(g)
    elif not check_peo(g, ordering):
        raise NotChordalError(check_peo(g, ordering).witness)
    colour: dict[int, int] = {}
    for v in reversed(ordering.order):
        used = {colour[u] for u in g.adj[v] if u in colour}
        c = 1
        while c in used:
            c += 1
        colour[v] = c
    return Colouring(colour)


def transversal_independent_set(g: Graph) -> frozenset[int]:
    """Colour class 1 of the greedy omega-colouring: meets every maximum clique."""
    col = greedy_omega_colouring(g)
    return frozenset(v for v, c in col.assignment.items() if c == 1)


# --- tree decompositions -------------------------------------------------


def validate_tree_decomposition(
    g: Graph, bags: list[frozenset[int]], tree_edges: list[tuple[int, int]]
) -> list[str]:
    """Return the list of violated conditions (empty when valid)."""
    problems = []
    k = len(bags)
    if g.n and not k:
        return ["no bags"]
    if len(tree_edges) != max(k - 1, 0):
        problems.append(f"{len(tree_edges)} tree edges for {k} nodes")
    nbrs: list[list[int]] = [[] for _ in range(k)]
    for a, b in tree_edges:
        nbrs[a].append(b)
        nbrs[b].append(a)
    seen = {0} if k else set()
    stack = [0] if k else []
    while stack:
        for b in nbrs[stack.pop()]:
            if b not in seen:
                seen.add(b)
                stack.append(b)
    if len(seen) != k:
        problems.append("tree is not connected")
    where: dict[int, list[int]] = {}
    for i, bag in enumerate(bags):
        for v in bag:
            where.setdefault(v, []).append(i)
    for v in g.vertices:
        if v not in where:
            problems.append(f"vertex {v} in no bag")
    stray = set(where) - set(g.vertices)
    if stray:
        problems.append(f"bags mention non-vertices {sorted(stray)[:5]}")
    for u, v in g.edges:
        if not any(v in bags[i] for i in where.get(u, ())):
            problems.append(f"edge ({u}, {v}) in no bag")
    for v, nodes in where.items():
        node_set = set(nodes)
        reach = {nodes[0]}
        stack = [nodes[0]]
        while stack:
            for b in nbrs[stack.pop()]:
                if b in node_set and b not in reach:
                    reach.add(b)
                    stack.append(b)
        if reach != node_set:
            problems.append(f"bags of vertex {v} are not a subtree")
    return problems


@dataclass(frozen=True)
class CliqueTree:
    nodes: list[frozenset[int]]
    tree_edges: list[tuple[int, int]]


def build_clique_tree(g: Graph) -> CliqueTree:
    """Maximum-weight spanning tree of the clique intersection graph.

    Components are chained with zero-weight edges, so disconnected input still
    yields a (valid) tree.
    """
    cliques = maximal_cliques(g)
    k = len(cliques)
    containing: dict[int, list[int]] = {}
    for i, c in enumerate(cliques):
        for v in c:
            containing.setdefault(v, []).append(i)
    weight: dict[tuple[int, int], int] = {}
    for ids in containing.values():
        for a in range(len(ids)):
            for b in range(a + 1, len(ids)):
                key = (ids[a], ids[b])
                weight[key] = weight.get(key, 0) + 1
    parent = list(range(k))

    def find(x: int) -> int:
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    edges = []
    for (a, b), _w in sorted(weight.items(), key=lambda kv: (-kv[1], kv[0])):
        ra, rb = find(a), find(b)
        if ra != rb:
            parent[ra] = rb
            edges.append((a, b))
    for i in range(1, k):
        ra, r0 = find(i), find(0)
        if ra != r0:
            parent[ra] = r0
            edges.append((0, i))
    return CliqueTree(cliques, edges)


# --- clique paths --------------------------------------------------------


@dataclass(frozen=True)
class CliquePath:
    bags: list[frozenset[int]]
    padded_bags: list[frozenset[int]]
    synthetic_vertices: frozenset[int] = frozenset()

    @property
    def omega(self) -> int:
        return max((len(b) for b in self.bags), default=0)


def clique_path_restricted(g: Graph, first_synthetic: int | None = None) -> CliquePath:
    """Order the maximal cliques of a connected chordal graph along a path.

    Only graphs where each vertex lies in at most two maximal cliques are
    handled.  Bags are then padded to size omega with fresh vertices numbered
    from ``first_synthetic`` (default ``n + 1``), each living in a single bag.
    """
    if g.n == 0:
        return CliquePath([], [])
    if len(connected_components(g)) > 1:
        raise CliquePathRejected("graph is not connected")
    try:
        cliques = maximal_cliques(g)
    except NotChordalError as exc:
        raise CliquePathRejected(f"not chordal ({exc})") from None
    containing: dict[int, list[int]] = {}
    for i, c in enumerate(cliques):
        for v in c:
            containing.setdefault(v, []).append(i)
    nbrs: list[set[int]] = [set() for _ in cliques]
    for v, ids in containing.items():
        if len(ids) >= 3:
            raise CliquePathRejected(f"vertex {v} lies in {len(ids)} maximal cliques")
        if len(ids) == 2:
            a, b = ids
            nbrs[a].add(b)
            nbrs[b].add(a)
    k = len(cliques)
    if any(len(s) > 2 for s in nbrs) or sum(map(len, nbrs)) // 2 != k - 1:
        raise CliquePathRejected("clique intersection graph not a path")
    ends = [i for i in range(k) if len(nbrs[i]) <= 1]
    start = min(ends, key=lambda i: min(cliques[i]))
    order, prev = [start], None
    while len(order) < k:
        nxt = [j for j in nbrs[order[-1]] if j != prev]
        if not nxt:
            raise CliquePathRejected("clique intersection graph not a path")
        prev = order[-1]
        order.append(nxt[0])
    bags = [cliques[i] for i in order]
    problems = validate_tree_decomposition(g, bags, [(i, i + 1) for i in range(k - 1)])
    for i in range(1, k - 1):
        if bags[i - 1] & bags[i + 1]:
            problems.append(f"bags {i - 1} and {i + 1} intersect")
    if problems:
        raise CliquePathRejected("path-decomposition validation failed: " + problems[0])
    omega = max(len(b) for b in bags)
    nxt_id = g.n + 1 if first_synthetic is None else first_synthetic
    padded, synthetic = [], set()
    for bag in bags:
        extra = list(range(nxt_id, nxt_id + omega - len(bag)))
        nxt_id += len(extra)
        synthetic.update(extra)
        padded.append(bag | frozenset(extra))
    return CliquePath(bags, padded, frozenset(synthetic))


# --- smooth tree-decompositions -----------------------------------------


@dataclass
class SmoothTreeDecomposition:
    """Rooted decomposition; node 0 is the root and nodes are in preorder."""

    bags: list[frozenset[int]]
    parent: list[int]
    entering: list[int | None] = field(default_factory=list)
    leaving: list[int | None] = field(default_factory=list)

    @property
    def width(self) -> int:
        return max((len(b) for b in self.bags), default=0)

    @property
    def tree_edges(self) -> list[tuple[int, int]]:
        return [(p, v) for v, p in enumerate(self.parent) if p >= 0]

    def children(self) -> list[list[int]]:
        out: list[list[int]] = [[] for _ in self.bags]
        for v, p in enumerate(self.parent):
            if p >= 0:
                out[p].append(v)
        return out

    def dump(self) -> str:
        lines = []
        for i, bag in enumerate(self.bags):
            p = "-" if self.parent[i] < 0 else str(self.parent[i])
            lines.append(f"t {i} {p} : " + " ".join(map(str, sorted(bag))))
        return "\n".join(lines) + "\n"


def check_smooth(g: Graph, std: SmoothTreeDecomposition, omega: int) -> list[str]:
    problems = validate_tree_decomposition(g, std.bags, std.tree_edges)
    for i, bag in enumerate(std.bags):
        if len(bag) != omega:
            problems.append(f"bag {i} has size {len(bag)} != {omega}")
        p = std.parent[i]
        if p >= 0:
            gained, lost = bag - std.bags[p], std.bags[p] - bag
            if len(gained) != 1 or len(lost) != 1:
                problems.append(f"bag {i} differs from parent by +{len(gained)}/-{len(lost)}")
            elif (std.entering[i], std.leaving[i]) != (next(iter(gained)), next(iter(lost))):
                problems.append(f"bag {i} has wrong entering/leaving record")
    return problems


def smooth_tree_decomposition(g: Graph) -> SmoothTreeDecomposition:
    """Clique tree rooted at a maximum clique, bags padded top-down from the
    parent bag, long edges subdivided one swap at a time, equal bags merged."""
    if g.n == 0:
        return SmoothTreeDecomposition([], [], [], [])
    tree = build_clique_tree(g)
    cliques = tree.nodes
    omega = max(len(c) for c in cliques)
    root = next(i for i, c in enumerate(cliques) if len(c) == omega)
    nbrs: list[list[int]] = [[] for _ in cliques]
    for a, b in tree.tree_edges:
        nbrs[a].append(b)
        nbrs[b].append(a)

    bags: list[frozenset[int]] = [cliques[root]]
    parent = [-1]
    entering: list[int | None] = [None]
    leaving: list[int | None] = [None]
    # (clique index, clique-tree parent index, output node holding the parent bag)
    stack = [(c, root, 0) for c in sorted(nbrs[root], reverse=True)]
    while stack:
        c, cp, out_parent = stack.pop()
        top = bags[out_parent]
        own = cliques[c]
        pool = sorted(top - own)
        padded = own | frozenset(pool[: omega - len(own)])
        gained = sorted(padded - top)
        lost = sorted(top - padded)
        node = out_parent
        current = top
        for add, drop in zip(gained, lost):
            current = (current - {drop}) | {add}
            bags.append(current)
            parent.append(node)
            entering.append(add)
            leaving.append(drop)
            node = len(bags) - 1
        for child in sorted(nbrs[c], reverse=True):
            if child != cp:
                stack.append((child, c, node))
    return SmoothTreeDecomposition(bags, parent, entering, leaving)
