"""2-backbone colouring of interval graphs whose vertices lie in at most two
maximal cliques, with a bipartite backbone.  Span at most ``omega + 3``.

The host is coloured along its clique path with ``omega`` colours arranged on a
circle so that, in every bag, the A-side and the B-side of the backbone
bipartition occupy two complementary circular intervals.  Only the two
A-vertices at the ends of each bag's A-interval can sit next to a B-colour;
those are lifted to two fresh colours above ``omega``.
"""
from __future__ import annotations

from collections import deque
from dataclasses import dataclass

from ..chordal import CliquePath, CliquePathRejected, clique_path_restricted
from ..graph import BackboneInstance, Colouring, connected_components, is_bipartite
from .base import (
    AlgorithmReport,
    ConstructionError,
    PreconditionError,
    chordal_omega_colouring,
    gate,
    require_q2,
    timed,
)


@dataclass(frozen=True)
class CircularIntervalState:
    """Bookkeeping for one bag of the clique path (colours are 0-based, mod omega).

    ``x..y`` is the inherited interval of colours on ``X_{i-1} & X_i``, split at
    ``c``; ``orientation`` says whether its A-part ("AB") or B-part ("BA")
    comes first.  ``alpha..beta`` is the A-interval of the bag, carried by
    ``v`` and ``v_prime``.
    """

    bag: int
    x: int | None
    y: int | None
    c: int | None
    orientation: str
    alpha: int | None
    beta: int | None
    v: int | None
    v_prime: int | None


def is_circular_interval(colours: set[int], w: int) -> bool:
    if len(colours) in (0, w):
        return True
    return sum(1 for c in colours if (c - 1) % w not in colours) == 1


def _bag_parts(bags, j, side_a):
    bag = bags[j]
    before = bags[j - 1] & bag if j > 0 else frozenset()
    after = bags[j + 1] & bag if j + 1 < len(bags) else frozenset()
    a_in, a_out = before & side_a, after & side_a
    b_in, b_out = before - side_a, after - side_a
    a_priv = (bag & side_a) - before - after
    b_priv = bag - side_a - before - after
    return a_in, b_in, a_priv, b_priv, a_out, b_out


def circular_phi(path: CliquePath, side_a: frozenset[int]) -> tuple[dict[int, int], list[CircularIntervalState]]:
    """Proper ``omega``-colouring of the padded clique path with circular A/B intervals."""
    bags = path.padded_bags
    w = len(bags[0]) if bags else 0
    phi: dict[int, int] = {}
    states: list[CircularIntervalState] = []

    def paint(start, groups):
        pos = start
        for group in groups:
            for u in sorted(group):
                phi[u] = pos % w
                pos += 1
        return pos

    nxt_x, nxt_orient = 0, "AB"
    for j, bag in enumerate(bags):
        a_in, b_in, a_priv, b_priv, a_out, b_out = _bag_parts(bags, j, side_a)
        n_a = len(bag & side_a)
        if j == 0:
            x = y = c = None
            orient = "AB"
            if n_a == 0:
                paint(0, [b_priv, b_out])
                nxt_x = len(b_priv)
            else:
                paint(0, [a_priv, a_out, b_out, b_priv])
                nxt_x = len(a_priv)
            alpha = 0
            nxt_orient = "AB"
        else:
            x, orient = nxt_x % w, nxt_orient
            first, second = (a_in, b_in) if orient == "AB" else (b_in, a_in)
            expect_first = {(x + t) % w for t in range(len(first))}
            expect_second = {(x + len(first) + t) % w for t in range(len(second))}
            if {phi[u] for u in first} != expect_first or {phi[u] for u in second} != expect_second:
                raise ConstructionError(f"bag {j}: inherited colours are not the interval [x, y]")
            y = (x + len(a_in) + len(b_in) - 1) % w
            c = (x + len(a_in) - 1) % w if orient == "AB" else (x + len(b_in)) % w
            start = x + len(a_in) + len(b_in)
            if orient == "AB":
                paint(start, [b_priv, b_out, a_out, a_priv])
                alpha = start + len(b_priv) + len(b_out)
                nxt_x, nxt_orient = start + len(b_priv), "BA"
            else:
                paint(start, [a_priv, a_out, b_out, b_priv])
                alpha = x + len(b_in)
                nxt_x, nxt_orient = start + len(a_priv), "AB"

        colours_a = {phi[u] for u in bag & side_a}
        colours_b = {phi[u] for u in bag - side_a}
        if len(colours_a) + len(colours_b) != w or colours_a & colours_b:
            raise ConstructionError(f"bag {j}: colours do not cover 0..{w - 1} exactly once")
        if not (is_circular_interval(colours_a, w) and is_circular_interval(colours_b, w)):
            raise ConstructionError(f"bag {j}: A/B colours are not complementary circular intervals")
        if n_a:
            alpha %= w
            beta = (alpha + n_a - 1) % w
            by_colour = {phi[u]: u for u in bag & side_a}
            if alpha not in by_colour or beta not in by_colour:
                raise ConstructionError(f"bag {j}: A-interval endpoints misplaced")
            v, v_prime = by_colour[alpha], by_colour[beta]
        else:
            alpha = beta = v = v_prime = None
        states.append(CircularIntervalState(j, x, y, c, orient, alpha, beta, v, v_prime))
    return phi, states


def _co_bag_graph(bags, vertices):
    """Adjacency among ``vertices`` in the padded host (every bag is a clique)."""
    adj = {u: set() for u in vertices}
    for bag in bags:
        inside = [u for u in bag if u in adj]
        for u in inside:
            adj[u].update(x for x in inside if x != u)
    return adj


def _two_colour(adj) -> dict[int, int] | None:
    side: dict[int, int] = {}
    for root in sorted(adj):
        if root in side:
            continue
        side[root] = 0
        queue = deque([root])
        while queue:
            u = queue.popleft()
            for x in adj[u]:
                if x not in side:
                    side[x] = 1 - side[u]
                    queue.append(x)
                elif side[x] == side[u]:
                    return None
    return side


def _is_linear_forest(adj) -> bool:
    if any(len(s) > 2 for s in adj.values()):
        return False
    seen = set()
    for root in adj:
        if root in seen:
            continue
        comp, stack = {root}, [root]
        while stack:
            for x in adj[stack.pop()]:
                if x not in comp:
                    comp.add(x)
                    stack.append(x)
        seen |= comp
        if sum(len(adj[u]) for u in comp) // 2 != len(comp) - 1:
            return False
    return True


def gapped_layout(path: CliquePath, side_a: frozenset[int]) -> dict[int, int]:
    """Colours 0..omega+1 on a circle of length omega+2 where, in every bag, the
    A-run and the B-run are separated by an empty colour on both sides."""
    bags = path.padded_bags
    size = len(bags[0]) + 2
    col: dict[int, int] = {}

    def paint(start, groups):
        pos = start
        for group in groups:
            for u in sorted(group):
                col[u] = pos % size
                pos += 1
        return pos

    x, p_is_a = 0, True
    for j, bag in enumerate(bags):
        a_in, b_in, a_priv, b_priv, a_out, b_out = _bag_parts(bags, j, side_a)
        if j == 0:
            pos = paint(0, [a_priv, a_out])
            paint(pos + 1, [b_out, b_priv])
            x, p_is_a = len(a_priv), True
        else:
            p_in, q_in = (a_in, b_in) if p_is_a else (b_in, a_in)
            q_priv, q_out, p_out, p_priv = (
                (b_priv, b_out, a_out, a_priv) if p_is_a else (a_priv, a_out, b_out, b_priv)
            )
            start = x + len(p_in) + len(q_in) + 1
            pos = paint(start, [q_priv, q_out])
            paint(pos + 1, [p_out, p_priv])
            x, p_is_a = start + len(q_priv), not p_is_a
        if len({col[u] for u in bag}) != len(bag):
            raise ConstructionError(f"gapped layout: colour clash in bag {j}")
    return col


def _colour_component(path: CliquePath, side_a: frozenset[int], backbone_adj) -> tuple[dict[int, int], str]:
    bags = path.padded_bags
    w = len(bags[0])
    phi, states = circular_phi(path, side_a)
    lifted = {u for s in states for u in (s.v, s.v_prime) if u is not None}
    adj = _co_bag_graph(bags, lifted)
    route = "endpoints"
    if not _is_linear_forest(adj):
        # some bags hold three or more interval endpoints; lift only the
        # endpoints that actually sit next to a backbone neighbour's colour
        lifted = {
            u for u in lifted
            if any(abs(phi[u] - phi[x]) == 1 for x in backbone_adj.get(u, ()))
        }
        adj = _co_bag_graph(bags, lifted)
        route = "conflicts"
    sides = _two_colour(adj)
    if sides is None:
        return gapped_layout(path, side_a), "gapped"
    out = dict(phi)
    for u, s in sides.items():
        out[u] = w + 1 + s
    return out, route


def colour_interval_bipartite(inst: BackboneInstance) -> tuple[Colouring, AlgorithmReport]:
    require_q2(inst)
    omega = chordal_omega_colouring(inst).span
    report = AlgorithmReport("interval2", inst.n, omega)
    with timed(report):
        bip = is_bipartite(inst.backbone)
        if not bip:
            raise PreconditionError(f"backbone is not bipartite (odd cycle {bip.odd_cycle})")
        side_a_global = bip.sides[0]
        g = inst.host
        colour: dict[int, int] = {}
        routes: dict[str, int] = {}
        for comp in connected_components(g):
            sub, labels = g.induced(comp)
            try:
                path = clique_path_restricted(sub)
            except CliquePathRejected as exc:
                raise PreconditionError(exc.condition) from None
            index = {old: new for new, old in enumerate(labels) if new}
            side_a = frozenset(index[u] for u in comp if u in side_a_global) | path.synthetic_vertices
            backbone_adj: dict[int, list[int]] = {}
            for u, v in inst.backbone_edges:
                if u in index and v in index:
                    backbone_adj.setdefault(index[u], []).append(index[v])
                    backbone_adj.setdefault(index[v], []).append(index[u])
            local, route = _colour_component(path, side_a, backbone_adj)
            routes[route] = routes.get(route, 0) + 1
            for new in range(1, sub.n + 1):
                colour[labels[new]] = local[new] + 1
        report.note = ",".join(f"{k}:{v}" for k, v in sorted(routes.items()))
        col = Colouring(colour)
        gate(inst, col, report, omega + 3)
    return col, report
