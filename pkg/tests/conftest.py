import itertools
import random

import networkx as nx
import pytest
from hypothesis import strategies as st

from cyclex.convexity import hull, is_hull_set, redundant_vertices
from cyclex.graph import Graph, connected_components, is_connected
from cyclex.independence import is_C_independent, valid_pivots, validate_certificate


def from_nx(G: nx.Graph) -> Graph:
    mapping = {v: i for i, v in enumerate(sorted(G.nodes()))}
    return Graph.from_edges(len(mapping), [(mapping[u], mapping[v]) for u, v in G.edges()])


def to_nx(g: Graph) -> nx.Graph:
    G = nx.Graph()
    G.add_nodes_from(range(g.n))
    G.add_edges_from(g.edges)
    return G


def atlas(max_n: int, connected: bool = True) -> list[Graph]:
    out = []
    for G in nx.graph_atlas_g()[1:]:
        if G.number_of_nodes() > max_n:
            continue
        if connected and not nx.is_connected(G):
            continue
        out.append(from_nx(G))
    return out


def random_connected(n: int, rng: random.Random, p: float | None = None) -> Graph:
    """Random spanning tree plus independent extra edges."""
    p = rng.uniform(0.1, 0.7) if p is None else p
    order = list(range(n))
    rng.shuffle(order)
    edges = {tuple(sorted((order[i], order[rng.randrange(i)]))) for i in range(1, n)}
    for u, v in itertools.combinations(range(n), 2):
        if rng.random() < p:
            edges.add((u, v))
    return Graph.from_edges(n, sorted(edges))


@st.composite
def graphs(draw, min_n: int = 1, max_n: int = 10, connected: bool = True):
    n = draw(st.integers(min_n, max_n))
    pairs = list(itertools.combinations(range(n), 2))
    edges = set()
    if connected:
        for v in range(1, n):
            edges.add((draw(st.integers(0, v - 1)), v))
    chosen = draw(st.lists(st.booleans(), min_size=len(pairs), max_size=len(pairs)))
    edges |= {e for e, c in zip(pairs, chosen) if c}
    g = Graph.from_edges(n, sorted(edges))
    assert not connected or is_connected(g)
    return g


@st.composite
def graph_and_subset(draw, min_n: int = 1, max_n: int = 10, nonempty: bool = False):
    g = draw(graphs(min_n=min_n, max_n=max_n))
    picks = draw(st.lists(st.booleans(), min_size=g.n, max_size=g.n))
    s = frozenset(v for v, b in zip(range(g.n), picks) if b)
    if nonempty and not s:
        s = frozenset({draw(st.integers(0, g.n - 1))})
    return g, s


def _on_cycle(g):
    """Vertices with two neighbours still joined after the vertex is removed."""
    out = set()
    for v in range(g.n):
        rest = set(range(g.n)) - {v}
        comps = connected_components(g, rest)
        if any(len(c & g.adjacency[v]) >= 2 for c in comps):
            out.add(v)
    return out


def check_large_set_structure(g, s, cert):
    """Everything an E-independent set with at least three members must
    satisfy, phrased against the definitions directly."""
    assert validate_certificate(g, cert)
    pivots = valid_pivots(g, s)
    assert cert.pivot == min(pivots)
    # at most one redundant vertex, and it is then the only pivot
    red = redundant_vertices(g, s)
    assert len(red) <= 1
    if red:
        assert pivots == sorted(red)
    for p in pivots:
        # removing a pivot leaves a C-independent set with a connected hull
        assert is_C_independent(g, s - {p})[0]
        assert len(connected_components(g, hull(g, s - {p}).final)) == 1
        if is_hull_set(g, s - {p}):
            assert pivots == [p]
    for u, v in itertools.combinations(s, 2):
        assert not is_hull_set(g, s - {u, v})
    # G[S] has an edge but no induced cycle on all of any subset
    assert g.induced_edges(s)
    for k in range(3, len(s) + 1):
        for sub in itertools.combinations(sorted(s), k):
            sub_g = g.subgraph(sub)[0]
            is_cycle = sub_g.num_edges == k and all(sub_g.degree(v) == 2 for v in range(k)) \
                and len(connected_components(sub_g, range(k))) == 1
            assert not is_cycle
    comps = connected_components(g, hull(g, s).final)
    assert len(comps) == 1 or sorted(len(c) == 1 for c in comps) == [False, True]
    assert len(s - _on_cycle(g)) <= 1


@pytest.fixture(scope="session")
def small_atlas():
    return atlas(6)
