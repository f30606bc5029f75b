"""2-backbone colouring for chordal hosts with a C4-free backbone: span at most
``(3*omega + 7) / 2`` for odd omega and ``(3*omega + 8) / 2`` for even omega.

Vertices are split into ``(omega + 3) / 2`` classes so that every bag of a
smooth tree-decomposition holds at most two vertices of each class and no
backbone edge stays inside a class.  Bags of size two per class make each
class a graph of treewidth one, i.e. a forest, which is then 2-coloured with
its own pair of colours ``3i - 2, 3i - 1``.
"""
from __future__ import annotations

from dataclasses import dataclass

from ..chordal import (
    SmoothTreeDecomposition,
    smooth_tree_decomposition,
    transversal_independent_set,
)
from ..graph import BackboneInstance, Colouring, Edge, Graph, is_bipartite, is_c4_free, is_forest
from .base import (
    AlgorithmReport,
    ConstructionError,
    PreconditionError,
    chordal_omega_colouring,
    double_spaced_colouring,
    gate,
    require_q2,
    timed,
)

BACKTRACK_BAGS = 8
STEP_BUDGET = 20000


class PartitionDeadlock(RuntimeError):
    """No class fits some entering vertex, even after repair and backtracking."""

    def __init__(self, vertex: int, node: int):
        super().__init__(f"no class available for vertex {vertex} entering bag {node}")
        self.vertex = vertex
        self.node = node


@dataclass(frozen=True)
class ForestPartition:
    classes: list[frozenset[int]]

    @property
    def k(self) -> int:
        return len(self.classes)

    def class_of(self) -> dict[int, int]:
        return {v: i for i, cls in enumerate(self.classes) for v in cls}


def check_partition(g: Graph, std: SmoothTreeDecomposition, backbone: frozenset[Edge],
                    part: ForestPartition) -> list[str]:
    """Independent recheck of the three partition properties."""
    problems = []
    where = part.class_of()
    if set(where) != set(g.vertices):
        problems.append("classes do not cover the vertex set exactly")
    for i, cls in enumerate(part.classes):
        sub, _ = g.induced(cls)
        if not is_forest(sub):
            problems.append(f"class {i + 1} does not induce a forest")
    for u, v in backbone:
        if where.get(u) == where.get(v):
            problems.append(f"backbone edge {u}-{v} inside class {where.get(u) + 1}")
    for t, bag in enumerate(std.bags):
        counts: dict[int, int] = {}
        for v in bag:
            if v in where:
                counts[where[v]] = counts.get(where[v], 0) + 1
        if any(c > 2 for c in counts.values()):
            problems.append(f"bag {t} holds three vertices of one class")
    return problems


def partition_into_forests(g: Graph, std: SmoothTreeDecomposition, backbone: frozenset[Edge],
                           backtrack: int = BACKTRACK_BAGS, budget: int = STEP_BUDGET
                           ) -> ForestPartition:
    omega = std.width
    if omega % 2 == 0:
        raise PreconditionError(f"omega must be odd (got {omega})")
    k = (omega + 3) // 2
    hadj: dict[int, set[int]] = {v: set() for v in g.vertices}
    for u, v in backbone:
        hadj[u].add(v)
        hadj[v].add(u)

    # one item per vertex: the root bag first (high backbone degree first),
    # then entering vertices in preorder; each item is checked against the
    # bag it enters
    root = std.bags[0] if std.bags else frozenset()
    inside_root = {v: len(hadj[v] & root) for v in root}
    items = [(v, 0) for v in sorted(root, key=lambda v: (-inside_root[v], v))]
    items += [(std.entering[t], t) for t in range(1, len(std.bags))]
    occurs: dict[int, list[int]] = {}
    for t, bag in enumerate(std.bags):
        for v in bag:
            occurs.setdefault(v, []).append(t)

    cls: dict[int, int] = {}
    log: list[tuple[int, int | None]] = []

    def set_class(v, j):
        log.append((v, cls.get(v)))
        cls[v] = j

    def members(t, j, skip=()):
        return [x for x in std.bags[t] if cls.get(x) == j and x not in skip]

    def candidates(u, t):
        out = []
        for j in range(k):
            m = members(t, j, (u,))
            if len(m) <= 1 and not any(x in hadj[u] for x in m):
                out.append((-len(m), j))
        return [j for _, j in sorted(out)]

    def can_move(x, j, limit):
        """x may join class j in every bag already processed."""
        if any(cls.get(y) == j for y in hadj[x]):
            return False
        for t in occurs[x]:
            if t <= limit and len(members(t, j, (x,))) >= 2:
                return False
        return True

    def repair(u, t):
        for j in range(k):
            blockers = members(t, j, (u,))
            for x in blockers:
                rest = [y for y in blockers if y != x]
                if len(rest) > 1 or any(y in hadj[u] for y in rest):
                    continue
                for j2 in range(k):
                    if j2 != j and can_move(x, j2, t):
                        set_class(x, j2)
                        set_class(u, j)
                        return True
        return False

    marks: list[int] = [0] * len(items)
    options: list[list[int] | None] = [None] * len(items)
    i = frontier = steps = 0
    while i < len(items):
        u, t = items[i]
        if options[i] is None:
            marks[i] = len(log)
            options[i] = candidates(u, t)
            if not options[i] and repair(u, t):
                i += 1
                frontier = max(frontier, i)
                continue
        if options[i]:
            set_class(u, options[i].pop(0))
            i += 1
            frontier = max(frontier, i)
            continue
        steps += 1
        if steps > budget or i == 0 or i - 1 < frontier - backtrack:
            raise PartitionDeadlock(u, t)
        options[i] = None
        i -= 1
        while len(log) > marks[i]:
            v, old = log.pop()
            if old is None:
                del cls[v]
            else:
                cls[v] = old
    classes = [frozenset(v for v, j in cls.items() if j == c) for c in range(k)]
    return ForestPartition(classes)


def _forest_colouring(g: Graph, part: ForestPartition) -> dict[int, int]:
    colour = {}
    for i, members in enumerate(part.classes, start=1):
        sub, labels = g.induced(members)
        bip = is_bipartite(sub)
        if not is_forest(sub) or not bip:
            raise ConstructionError(f"class {i} does not induce a forest")
        side_a = bip.sides[0]
        for v in range(1, sub.n + 1):
            colour[labels[v]] = 3 * i - 2 if v in side_a else 3 * i - 1
    return colour


def _odd_case(g: Graph, backbone: frozenset[Edge], backtrack: int) -> dict[int, int]:
    std = smooth_tree_decomposition(g)
    part = partition_into_forests(g, std, backbone, backtrack)
    problems = check_partition(g, std, backbone, part)
    if problems:
        raise ConstructionError(problems[0])
    return _forest_colouring(g, part)


def forest_bound(omega: int) -> int:
    return (3 * omega + 7) // 2 if omega % 2 else (3 * omega + 8) // 2


def colour_forest_partition(inst: BackboneInstance, fallback: bool = True,
                            backtrack: int = BACKTRACK_BAGS) -> tuple[Colouring, AlgorithmReport]:
    """With ``fallback`` a deadlocked partition yields the double-spaced
    colouring, reported as not certified against the forest bound."""
    require_q2(inst)
    omega = chordal_omega_colouring(inst).span
    report = AlgorithmReport("c4free", inst.n, omega)
    c4 = is_c4_free(inst.backbone)
    if not c4:
        raise PreconditionError(f"backbone contains C4 {c4.witness}")
    bound = forest_bound(omega)
    g = inst.host
    with timed(report):
        try:
            if omega % 2:
                colour = _odd_case(g, inst.backbone_edges, backtrack)
            else:
                independent = transversal_independent_set(g)
                rest = [v for v in g.vertices if v not in independent]
                sub, labels = g.induced(rest)
                index = {old: new for new, old in enumerate(labels) if new}
                sub_backbone = frozenset(
                    (index[u], index[v]) for u, v in inst.backbone_edges
                    if u in index and v in index
                )
                local = _odd_case(sub, sub_backbone, backtrack) if sub.n else {}
                colour = {labels[v]: c for v, c in local.items()}
                for v in independent:
                    colour[v] = bound
                report.note = f"removed independent set of size {len(independent)}"
        except PartitionDeadlock as exc:
            if not fallback:
                raise
            col, _ = double_spaced_colouring(inst)
            gate(inst, col, report, None)
            report.bound = bound
            report.certified = False
            report.note = f"fallback to double spacing: {exc}"
            return col, report
        col = Colouring(colour)
        gate(inst, col, report, bound)
    return col, report
