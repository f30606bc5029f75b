"""Independent reference implementations used to check the package.

Nothing here imports the package's algorithms: plain enumeration over
``itertools`` plus networkx for structural questions.
"""
from __future__ import annotations

import itertools
from fractions import Fraction

import networkx as nx


def nx_graph(n, edges):
    g = nx.Graph()
    g.add_nodes_from(range(1, n + 1))
    g.add_edges_from(edges)
    return g


def valid_assignment(n, host, backbone, q, colours, circular_k=None):
    """``colours`` is indexed by vertex - 1."""
    for u, v in host:
        if colours[u - 1] == colours[v - 1]:
            return False
    for u, v in backbone:
        d = abs(colours[u - 1] - colours[v - 1])
        if d < q:
            return False
        if circular_k is not None and d > circular_k - q:
            return False
    return True


def enumerate_bbc(n, host, backbone, q, circular=False):
    """Smallest k with a valid assignment, trying every one of the k^n maps."""
    if n == 0:
        return 0
    k = 1
    while True:
        for colours in itertools.product(range(1, k + 1), repeat=n):
            if valid_assignment(n, host, backbone, q, colours, k if circular else None):
                return k
        k += 1


def chromatic_number(n, edges):
    if n == 0:
        return 0
    if not edges:
        return 1
    for k in range(1, n + 1):
        for colours in itertools.product(range(k), repeat=n):
            if all(colours[u - 1] != colours[v - 1] for u, v in edges):
                return k
    return n


def clique_number(n, edges):
    g = nx_graph(n, edges)
    return max((len(c) for c in nx.find_cliques(g)), default=0)


def maximal_cliques(n, edges):
    return {frozenset(c) for c in nx.find_cliques(nx_graph(n, edges))}


def is_chordal(n, edges):
    return nx.is_chordal(nx_graph(n, edges))


def is_forest(n, edges):
    return nx.is_forest(nx_graph(n, edges)) if n else True


def has_c4_subgraph(n, edges):
    adj = {v: set() for v in range(1, n + 1)}
    for u, v in edges:
        adj[u].add(v)
        adj[v].add(u)
    for a, b, c, d in itertools.permutations(range(1, n + 1), 4):
        if b in adj[a] and c in adj[b] and d in adj[c] and a in adj[d]:
            return True
    return False


def mad(n, edges):
    """Maximum over non-empty vertex subsets of 2|E(S)|/|S|."""
    best = Fraction(0)
    for size in range(1, n + 1):
        for s in itertools.combinations(range(1, n + 1), size):
            inside = set(s)
            m = sum(1 for u, v in edges if u in inside and v in inside)
            best = max(best, Fraction(2 * m, size))
    return best
