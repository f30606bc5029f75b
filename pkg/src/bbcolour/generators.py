"""Seeded instance generators and backbone extractors.

All randomness comes from numpy's PCG64 seeded through ``SeedSequence``; a
spec's host and backbone draw from two independent children of its seed, so
the same spec always yields the same instance, byte for byte.
"""
from __future__ import annotations

import itertools
from dataclasses import dataclass, fields
from math import comb

import numpy as np

from .graph import BackboneInstance, Edge, Graph, norm_edge

LOWER_BOUND_CAP = 5
KINDS = ("lower-bound", "chordal", "interval2")
BACKBONES = ("none", "full", "forest", "bipartite", "c4free")


def rng_for(seed: int | np.random.SeedSequence) -> np.random.Generator:
    if not isinstance(seed, np.random.SeedSequence):
        seed = np.random.SeedSequence(seed)
    return np.random.Generator(np.random.PCG64(seed))


def _relabel(n: int, edges, rng) -> list[Edge]:
    perm = rng.permutation(n) + 1
    return sorted(norm_edge(int(perm[u - 1]), int(perm[v - 1])) for u, v in edges)


def _clique_edges(members) -> list[Edge]:
    return [norm_edge(u, v) for u, v in itertools.combinations(members, 2)]


def gen_lower_bound_family(r: int, cap: int = LOWER_BOUND_CAP) -> BackboneInstance:
    """Core clique K on 3r vertices; for every r-subset X of K a fresh clique
    on 2r vertices joined completely to X.  The backbone is the K-to-K_X join."""
    if r < 1:
        raise ValueError("r must be at least 1")
    if r > cap:
        raise ValueError(f"r = {r} above the cap {cap} ({comb(3 * r, r)} attached cliques)")
    core = list(range(1, 3 * r + 1))
    host = _clique_edges(core)
    backbone = []
    nxt = 3 * r + 1
    for x in itertools.combinations(core, r):
        fresh = list(range(nxt, nxt + 2 * r))
        nxt += 2 * r
        host += _clique_edges(fresh)
        backbone += [(u, v) for u in x for v in fresh]
    return BackboneInstance.build(nxt - 1, host, backbone, 2)


def gen_random_chordal(n: int, omega: int, seed) -> Graph:
    """Each new vertex is attached to a random subset of a random earlier
    clique; the first clique has size ``omega`` and no later one exceeds it."""
    if not 2 <= omega <= n:
        raise ValueError(f"need 2 <= omega <= n (got omega={omega}, n={n})")
    rng = rng_for(seed)
    cliques = [list(range(1, omega + 1))]
    edges = _clique_edges(cliques[0])
    for v in range(omega + 1, n + 1):
        base = cliques[int(rng.integers(len(cliques)))]
        size = int(rng.integers(1, min(len(base), omega - 1) + 1))
        picked = [int(x) for x in rng.choice(base, size=size, replace=False)]
        edges += [norm_edge(u, v) for u in picked]
        cliques.append(picked + [v])
    return Graph.from_edges(n, _relabel(n, edges, rng))


def gen_random_interval_two_clique(l: int, omega: int, seed) -> Graph:
    """Clique path X_1..X_l built directly: consecutive bags overlap in at
    least one vertex and the two overlaps of a bag are disjoint, so every
    vertex lies in at most two maximal cliques.  One bag has size ``omega``,
    the others between ``max(2, omega // 2)`` and ``omega``."""
    if l < 1 or omega < 2:
        raise ValueError("need l >= 1 and omega >= 2")
    rng = rng_for(seed)
    low = max(2, omega // 2)
    sizes = [int(s) for s in rng.integers(low, omega + 1, size=l)]
    sizes[int(rng.integers(l))] = omega
    overlaps = []
    prev = 0
    for i in range(l - 1):
        top = min(sizes[i] - max(prev, 1), sizes[i + 1] - 1)
        prev = int(rng.integers(1, top + 1))
        overlaps.append(prev)
    edges = []
    nxt = 1
    carried: list[int] = []
    for i, s in enumerate(sizes):
        bag = carried + list(range(nxt, nxt + s - len(carried)))
        nxt += s - len(carried)
        edges += _clique_edges(bag)
        carried = bag[len(bag) - overlaps[i]:] if i < l - 1 else []
    n = nxt - 1
    return Graph.from_edges(n, _relabel(n, edges, rng))


def extract_spanning_forest(g: Graph, seed) -> frozenset[Edge]:
    rng = rng_for(seed)
    edges = sorted(g.edges)
    parent = list(range(g.n + 1))

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    kept = []
    for i in rng.permutation(len(edges)):
        u, v = edges[i]
        ru, rv = find(u), find(v)
        if ru != rv:
            parent[ru] = rv
            kept.append((u, v))
    return frozenset(kept)


def extract_bipartite_backbone(g: Graph, seed) -> frozenset[Edge]:
    side = rng_for(seed).integers(0, 2, size=g.n + 1)
    return frozenset((u, v) for u, v in g.edges if side[u] != side[v])


def extract_c4free_backbone(g: Graph, seed) -> frozenset[Edge]:
    """Random greedy: an edge uv joins unless the partial backbone already
    has a path u-x-y-v, which would close a 4-cycle."""
    rng = rng_for(seed)
    edges = sorted(g.edges)
    nbrs: list[set[int]] = [set() for _ in range(g.n + 1)]
    kept = []
    for i in rng.permutation(len(edges)):
        u, v = edges[i]
        closes = any(y != u and x != y and y in nbrs[x]
                     for x in nbrs[u] if x != v for y in nbrs[v])
        if not closes:
            nbrs[u].add(v)
            nbrs[v].add(u)
            kept.append((u, v))
    return frozenset(kept)


EXTRACTORS = {
    "forest": extract_spanning_forest,
    "bipartite": extract_bipartite_backbone,
    "c4free": extract_c4free_backbone,
}


@dataclass(frozen=True)
class GeneratorSpec:
    """``kind`` is one of lower-bound (uses r), chordal (n, omega) or
    interval2 (l, omega); ``backbone`` picks the extractor applied to the host."""

    kind: str
    n: int = 0
    omega: int = 0
    l: int = 0
    r: int = 0
    seed: int = 0
    backbone: str = "forest"

    def __post_init__(self):
        if self.kind not in KINDS:
            raise ValueError(f"unknown generator kind {self.kind!r}")
        if self.backbone not in BACKBONES:
            raise ValueError(f"unknown backbone kind {self.backbone!r}")

    def __str__(self) -> str:
        return " ".join(f"{f.name}={getattr(self, f.name)}" for f in fields(self))

    @classmethod
    def parse(cls, text: str) -> "GeneratorSpec":
        values: dict = {}
        for token in text.split():
            key, _, value = token.partition("=")
            values[key] = value if key in ("kind", "backbone") else int(value)
        return cls(**values)

    def build(self) -> BackboneInstance:
        if self.kind == "lower-bound":
            inst = gen_lower_bound_family(self.r)
            return BackboneInstance(inst.host, inst.backbone_edges, 2,
                                    comments=(f"generator: {self}",))
        host_seed, backbone_seed = np.random.SeedSequence(self.seed).spawn(2)
        if self.kind == "chordal":
            g = gen_random_chordal(self.n, self.omega, host_seed)
        else:
            g = gen_random_interval_two_clique(self.l, self.omega, host_seed)
        if self.backbone == "none":
            backbone = frozenset()
        elif self.backbone == "full":
            backbone = g.edges
        else:
            backbone = EXTRACTORS[self.backbone](g, backbone_seed)
        return BackboneInstance(g, frozenset(backbone), 2, comments=(f"generator: {self}",))
