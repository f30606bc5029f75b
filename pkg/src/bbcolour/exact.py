"""Exact backbone chromatic numbers, brute-force oracles, and exact Mad."""
from __future__ import annotations

import itertools
import time
from dataclasses import dataclass
from fractions import Fraction

from .chordal import check_peo, clique_number, mcs_ordering
from .flow import FlowNetwork
from .graph import BackboneInstance, Colouring, Graph, is_bipartite

BRUTE_FORCE_BBC_CAP = 8
BRUTE_FORCE_MAD_CAP = 15


@dataclass(frozen=True)
class ExactResult:
    optimum: int | None  # None when the budget ran out before closing the gap
    lower_bound: int
    upper_bound: int
    witness: Colouring
    exact: bool
    nodes: int
    seconds: float
    circular: bool = False

    def serialize(self) -> str:
        tag = "cbc" if self.circular else "bbc"
        lines = []
        if self.exact:
            lines.append(f"x {tag} {self.optimum}")
        else:
            lines.append(f"c inexact {tag}: {self.lower_bound} <= k <= {self.upper_bound}")
        lines.append(f"s {tag} {self.upper_bound}")
        lines += [f"v {v} {c}" for v, c in sorted(self.witness.assignment.items())]
        return "\n".join(lines) + "\n"


class _Timeout(Exception):
    pass


def _static_order(g: Graph) -> list[int]:
    """Reverse PEO for chordal graphs, otherwise smallest-last degeneracy order."""
    ordering = mcs_ordering(g)
    if check_peo(g, ordering):
        return list(reversed(ordering.order))
    deg = {v: g.degree(v) for v in g.vertices}
    alive = set(g.vertices)
    last = []
    while alive:
        v = min(alive, key=lambda u: (deg[u], u))
        alive.remove(v)
        last.append(v)
        for u in g.adj[v]:
            if u in alive:
                deg[u] -= 1
    return last[::-1]


def _dsatur_colouring(g: Graph) -> dict[int, int]:
    colour: dict[int, int] = {}
    sat: dict[int, set[int]] = {v: set() for v in g.vertices}
    for _ in range(g.n):
        v = max((u for u in g.vertices if u not in colour),
                key=lambda u: (len(sat[u]), g.degree(u), -u))
        c = 1
        while c in sat[v]:
            c += 1
        colour[v] = c
        for u in g.adj[v]:
            sat[u].add(c)
    return colour


def _max_clique_size(g: Graph) -> int:
    if g.n == 0:
        return 0
    ordering = mcs_ordering(g)
    if check_peo(g, ordering):
        return clique_number(g)
    best = 1

    def expand(size: int, cand: set[int]) -> None:
        nonlocal best
        best = max(best, size)
        for v in sorted(cand):
            if size + len(cand) <= best:
                return
            expand(size + 1, cand & g.adj[v])
            cand = cand - {v}

    expand(0, set(g.vertices))
    return best


class _Search:
    def __init__(self, inst: BackboneInstance, k: int, circular: bool, deadline: float | None):
        g = inst.host
        self.n = g.n
        self.k = k
        self.deadline = deadline
        self.nodes = 0
        self.adj_g = [sorted(s) for s in g.adj]
        hadj: list[list[int]] = [[] for _ in range(g.n + 1)]
        for u, v in inst.backbone_edges:
            hadj[u].append(v)
            hadj[v].append(u)
        self.adj_h = hadj
        q = inst.q
        self.gap = [0] * (k + 1)
        for c in range(1, k + 1):
            mask = 0
            for c2 in range(1, k + 1):
                d = abs(c - c2)
                if circular:
                    d = min(d, k - d)
                if d < q:
                    mask |= 1 << (c2 - 1)
            self.gap[c] = mask
        order = _static_order(g)
        self.rank = {v: i for i, v in enumerate(order)}
        self.circular = circular

    def run(self) -> dict[int, int] | None:
        k = self.k
        self.domain = [(1 << k) - 1] * (self.n + 1)
        self.colour = [0] * (self.n + 1)
        if self.n == 0:
            return {}
        return self._extend(self.n, first=True)

    def _pick(self) -> int:
        best, best_key = 0, None
        dom, colour, rank = self.domain, self.colour, self.rank
        for v in range(1, self.n + 1):
            if colour[v]:
                continue
            key = (dom[v].bit_count(), -len(self.adj_g[v]) - len(self.adj_h[v]), rank[v])
            if best_key is None or key < best_key:
                best, best_key = v, key
        return best

    def _extend(self, left: int, first: bool = False) -> dict[int, int] | None:
        if left == 0:
            return {v: self.colour[v] for v in range(1, self.n + 1)}
        self.nodes += 1
        if self.deadline is not None and self.nodes % 512 == 0 and time.perf_counter() > self.deadline:
            raise _Timeout
        v = self._pick()
        options = self.domain[v]
        if first:
            # c -> k+1-c preserves both constraints; rotations additionally
            # preserve circular ones
            limit = 1 if self.circular else (self.k + 1) // 2
            options &= (1 << limit) - 1
        dom, colour = self.domain, self.colour
        while options:
            low = options & -options
            options ^= low
            c = low.bit_length()
            colour[v] = c
            saved = []
            ok = True
            for u in self.adj_g[v]:
                if not colour[u] and dom[u] & low:
                    saved.append((u, dom[u]))
                    dom[u] &= ~low
                    if not dom[u]:
                        ok = False
            if ok:
                gap = self.gap[c]
                for u in self.adj_h[v]:
                    if not colour[u] and dom[u] & gap:
                        saved.append((u, dom[u]))
                        dom[u] &= ~gap
                        if not dom[u]:
                            ok = False
            if ok:
                found = self._extend(left - 1)
                if found is not None:
                    return found
            for u, d in reversed(saved):
                dom[u] = d
            colour[v] = 0
        return None


def _bounds(inst: BackboneInstance, circular: bool) -> tuple[int, int, Colouring]:
    """Lower bound, upper bound and a witness achieving the upper bound."""
    if inst.n == 0:
        return 0, 0, Colouring({})
    q, g, h = inst.q, inst.host, inst.backbone
    f = _dsatur_colouring(g)
    chi_g = max(f.values())
    if h.m == 0:
        return _max_clique_size(g), chi_g, Colouring(dict(f))
    chi_h = 2 if is_bipartite(h) else 3  # lower bound on chi(H)
    lower = max(q * chi_h - q + 1, _max_clique_size(g))
    witness = Colouring({v: q * c - q + 1 for v, c in f.items()})
    if circular:
        return max(lower, 2 * q), q * chi_g, witness
    return lower, q * chi_g - q + 1, witness


def _solve(inst: BackboneInstance, budget: float | None, circular: bool) -> ExactResult:
    start = time.perf_counter()
    deadline = None if budget is None else start + budget
    lower, upper, witness = _bounds(inst, circular)
    nodes = 0
    k = lower
    try:
        while k < upper:
            search = _Search(inst, k, circular, deadline)
            try:
                found = search.run()
            finally:
                nodes += search.nodes
            if found is not None:
                upper, witness = k, Colouring(found)
                break
            k += 1
            lower = k
    except _Timeout:
        return ExactResult(None, lower, upper, witness, False, nodes,
                           time.perf_counter() - start, circular)
    return ExactResult(upper, upper, upper, witness, True, nodes,
                       time.perf_counter() - start, circular)


def exact_bbc(inst: BackboneInstance, budget: float | None = None) -> ExactResult:
    """BBC_q by increasing ``k`` from a lower bound, DSATUR branching with
    forward checking.  ``budget`` is in seconds; on expiry the result carries
    the bounds reached and ``exact=False``."""
    return _solve(inst, budget, circular=False)


def exact_cbc(inst: BackboneInstance, budget: float | None = None) -> ExactResult:
    return _solve(inst, budget, circular=True)


def chromatic_number(g: Graph, budget: float | None = None) -> int:
    result = exact_bbc(BackboneInstance(g, frozenset(), 1), budget)
    if not result.exact:
        raise TimeoutError("chromatic number not settled within budget")
    return result.optimum


def brute_force_bbc(inst: BackboneInstance, circular: bool = False) -> int:
    """Smallest ``k`` admitting a valid assignment, by exhaustive enumeration
    in vertex order 1..n (prefixes that already break a constraint are cut)."""
    n = inst.n
    if n > BRUTE_FORCE_BBC_CAP:
        raise ValueError(f"brute force limited to n <= {BRUTE_FORCE_BBC_CAP}")
    if n == 0:
        return 0
    q = inst.q
    earlier = {v: [u for u in inst.host.adj[v] if u < v] for v in inst.host.vertices}
    backbone = inst.backbone_edges

    def ok(c: list[int], v: int, k: int) -> bool:
        for u in earlier[v]:
            if c[u] == c[v]:
                return False
            if (min(u, v), max(u, v)) in backbone:
                d = abs(c[u] - c[v])
                if d < q or (circular and d > k - q):
                    return False
        return True

    for k in itertools.count(1):
        c = [0] * (n + 1)
        v = 1
        while v >= 1:
            c[v] += 1
            if c[v] > k:
                c[v] = 0
                v -= 1
                continue
            if ok(c, v, k):
                if v == n:
                    return k
                v += 1
    raise AssertionError("unreachable")


# --- maximum average degree --------------------------------------------


@dataclass(frozen=True)
class MadResult:
    value: Fraction
    witness: frozenset[int]


def _average_degree(h: Graph, s: frozenset[int]) -> Fraction:
    if not s:
        return Fraction(0)
    inside = sum(1 for u, v in h.edges if u in s and v in s)
    return Fraction(2 * inside, len(s))


def _denser_than(h: Graph, density: Fraction) -> frozenset[int]:
    """Vertex set S maximising ``|E(S)| - density*|S|``; empty if that max is 0."""
    a, b = density.numerator, density.denominator
    edges = sorted(h.edges)
    m = len(edges)
    s, t = 0, 1
    net = FlowNetwork(2 + h.n + m)
    big = b * m + 1
    for i, (u, v) in enumerate(edges):
        node = 2 + h.n + i
        net.add_edge(s, node, b)
        net.add_edge(node, 1 + u, big)
        net.add_edge(node, 1 + v, big)
    for v in h.vertices:
        net.add_edge(1 + v, t, a)
    net.max_flow(s, t)
    side = net.source_side(s)
    return frozenset(v for v in h.vertices if 1 + v in side)


def exact_mad(h: Graph) -> MadResult:
    """Exact Mad via repeated min-cut tests, each jumping to the density of
    the denser subgraph it certifies; stops when no denser subgraph exists."""
    if h.n == 0:
        return MadResult(Fraction(0), frozenset())
    if h.m == 0:
        return MadResult(Fraction(0), frozenset({1}))
    best = frozenset(h.vertices)
    density = Fraction(h.m, h.n)
    while True:
        s = _denser_than(h, density)
        if not s:
            break
        d = _average_degree(h, s) / 2
        if d <= density:
            break
        best, density = s, d
    return MadResult(2 * density, best)


def mad_exceeds(h: Graph, d: Fraction) -> frozenset[int] | None:
    """A subgraph with average degree above ``d``, or None if Mad(h) <= d."""
    if h.m == 0:
        return None
    s = _denser_than(h, Fraction(d) / 2)
    return s if s and _average_degree(h, s) > d else None


def brute_force_mad(h: Graph) -> MadResult:
    if h.n > BRUTE_FORCE_MAD_CAP:
        raise ValueError(f"brute force limited to n <= {BRUTE_FORCE_MAD_CAP}")
    if h.n == 0:
        return MadResult(Fraction(0), frozenset())
    best, witness = Fraction(-1), frozenset()
    for mask in range(1, 1 << h.n):
        members = [v for v in h.vertices if mask >> (v - 1) & 1]
        inside = sum(1 for u, v in h.edges if mask >> (u - 1) & 1 and mask >> (v - 1) & 1)
        value = Fraction(2 * inside, len(members))
        if value > best:
            best, witness = value, frozenset(members)
    return MadResult(best, witness)
