import itertools
import sys
from pathlib import Path

import pytest
from hypothesis import settings, strategies as st

sys.path.insert(0, str(Path(__file__).parent))

from bbcolour.graph import BackboneInstance, Graph  # noqa: E402

settings.register_profile("default", deadline=None, max_examples=60)
settings.load_profile("default")


def complete(n):
    return list(itertools.combinations(range(1, n + 1), 2))


def path(n):
    return [(i, i + 1) for i in range(1, n)]


def cycle(n):
    return path(n) + [(1, n)]


def instance(n, host, backbone=None, q=2):
    """Backbone defaults to the whole host."""
    backbone = host if backbone is None else backbone
    return BackboneInstance.build(n, host, backbone, q)


@st.composite
def graphs(draw, min_n=0, max_n=7):
    n = draw(st.integers(min_n, max_n))
    pairs = list(itertools.combinations(range(1, n + 1), 2))
    chosen = draw(st.lists(st.sampled_from(pairs), unique=True)) if pairs else []
    return Graph.from_edges(n, chosen)


@st.composite
def chordal_graphs(draw, min_n=1, max_n=9):
    """Every new vertex joins a clique of earlier vertices (so it is simplicial)."""
    n = draw(st.integers(min_n, max_n))
    cliques = [[1]]
    edges = []
    for v in range(2, n + 1):
        base = draw(st.sampled_from(cliques))
        picked = draw(st.lists(st.sampled_from(base), unique=True))
        edges += [(u, v) for u in picked]
        cliques.append(picked + [v])
    return Graph.from_edges(n, edges)


@st.composite
def instances(draw, graph_strategy=None, qs=(2,)):
    g = draw(graph_strategy if graph_strategy is not None else graphs())
    edges = sorted(g.edges)
    backbone = [e for e in edges if draw(st.booleans())]
    q = draw(st.sampled_from(qs))
    return BackboneInstance(g, frozenset(backbone), q)


@pytest.fixture
def k2():
    return instance(2, [(1, 2)])


@pytest.fixture
def p3():
    return instance(3, path(3))
