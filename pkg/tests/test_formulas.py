import itertools

import networkx as nx
import pytest
from hypothesis import given, settings

from cyclex.formulas import (
    NotApplicable,
    ProductValue,
    block_property_report,
    chain_structure,
    edge_vertex_property,
    exchange_formula,
    graph_edge_vertex,
    is_complete,
    is_complete_multipartite,
    is_cycle_graph,
    is_exchange_n_minus_1,
    is_tree,
    product_exchange,
    unicyclic_cycle,
    vertex_separation_property,
)
from cyclex.graph import (
    Graph,
    GraphError,
    block_decomposition,
    bfs_distances,
    chordal_chain,
    complete,
    complete_multipartite,
    cycle,
    path,
    pendant_cycle,
    product,
    star,
)
from cyclex.independence import exchange_number_exact, validate_certificate

from conftest import atlas, graphs, to_nx

BOWTIE = chordal_chain([complete(3), complete(3)])
# hub 0 over the path 1-2-3-4, with a triangle hanging off path end 1
FAN_WITH_TAIL = Graph.from_edges(
    7, [(0, 1), (0, 2), (0, 3), (0, 4), (1, 2), (2, 3), (3, 4), (1, 5), (1, 6), (5, 6)]
)


def _block(g, members):
    return next(b for b in block_decomposition(g).blocks if b == frozenset(members))


def test_edge_vertex_examples():
    assert edge_vertex_property(complete(4), range(4)) is None
    u, v, x = edge_vertex_property(cycle(5), range(5))
    assert cycle(5).has_edge(u, v) and x not in cycle(5).adjacency[u] | cycle(5).adjacency[v] | {u, v}
    assert edge_vertex_property(cycle(4), range(4)) is None


def test_edge_vertex_rejects_bridges_and_non_blocks():
    with pytest.raises(GraphError):
        edge_vertex_property(path(3), {0, 1})
    with pytest.raises(GraphError):
        edge_vertex_property(BOWTIE, {0, 1, 2, 3})


def test_vertex_separation_examples():
    for b in block_decomposition(BOWTIE).blocks:
        assert vertex_separation_property(BOWTIE, b) is None
    assert vertex_separation_property(cycle(6), range(6)) is None
    fan = _block(FAN_WITH_TAIL, range(5))
    assert vertex_separation_property(FAN_WITH_TAIL, fan) == (2, 4, 1)


def test_chain_structure_examples():
    ch = chain_structure(BOWTIE)
    assert ch.is_single_chain and ch.longest_non_k2_run == 2 and not ch.has_k2_blocks
    assert not chain_structure(star(3)).is_single_chain
    tet = chordal_chain([complete(3), complete(2), complete(3)])
    ch = chain_structure(tet)
    assert ch.is_single_chain and len(ch.blocks_in_order) == 3
    assert ch.longest_non_k2_run == 1 and ch.has_k2_blocks


def test_chain_order_is_a_path():
    g = chordal_chain([complete(3), complete(4), complete(2), cycle(3)])
    blocks = chain_structure(g).blocks_in_order
    for a, b in zip(blocks, blocks[1:]):
        assert len(a & b) == 1
    assert [len(b) for b in blocks] in ([3, 4, 2, 3], [3, 2, 4, 3])


def test_formula_examples():
    res = exchange_formula(BOWTIE).result
    assert (res.value, res.method) == (3, "chain-l+1")
    res = exchange_formula(complete_multipartite([2, 3])).result
    assert (res.value, res.method) == (2, "remark-multipartite")
    res = exchange_formula(pendant_cycle(7)).result
    assert (res.value, res.method) == (6, "unicyclic")
    assert validate_certificate(pendant_cycle(7), res.certificate)


def test_formula_declines_outside_its_classes():
    house_roof = Graph.from_edges(5, [(0, 1), (1, 2), (2, 3), (3, 0), (0, 4), (4, 1)])
    out = exchange_formula(house_roof)
    assert not out.applies and out.result.reason == "not chordal"
    three_blocks = Graph.from_edges(6, [(0, 1), (1, 2), (2, 0), (0, 3), (3, 4), (4, 0), (0, 5)])
    out = exchange_formula(three_blocks)
    assert not out.applies and "single chain" in out.result.reason


def test_n_minus_1_examples():
    assert is_exchange_n_minus_1(path(3))
    assert not is_exchange_n_minus_1(cycle(5))
    assert is_exchange_n_minus_1(pendant_cycle(4))
    with pytest.raises(GraphError):
        is_exchange_n_minus_1(path(2))


def test_n_minus_1_characterisation():
    targets = [nx.complete_graph(3), nx.path_graph(3)] + [
        to_nx(pendant_cycle(n)) for n in range(4, 7)
    ]
    for g in atlas(6):
        if g.n < 3:
            continue
        expected = any(nx.is_isomorphic(to_nx(g), t) for t in targets)
        assert is_exchange_n_minus_1(g) == expected
        assert expected == (exchange_number_exact(g).value == g.n - 1)


def test_product_examples():
    assert product_exchange(complete(3), complete(3), "cartesian") == ProductValue("exact", 3, "complete-by-complete")
    assert product_exchange(complete(2), path(3), "cartesian") == ProductValue("exact", 4, "complete-by-path")
    assert product_exchange(path(4), path(4), "strong") == ProductValue("exact", 3, "strong-diameter")
    assert isinstance(product_exchange(complete(3), path(3), "strong"), NotApplicable)
    assert product_exchange(path(3), path(3), "cartesian").status == "lower-bound"
    with pytest.raises(GraphError):
        product_exchange(Graph.from_edges(1, []), path(3), "cartesian")


def _edge_vertex_brute(g, block):
    sub, old = g.subgraph(block)
    dist = [bfs_distances(sub, v) for v in range(sub.n)]
    return {
        (old[u], old[v], old[x])
        for u, v in sub.edges
        for x in range(sub.n)
        if dist[u][x] >= 2 and dist[v][x] >= 2
    }


def _vertex_separation_brute(g, block):
    cuts = block_decomposition(g).cut_vertices
    nb = g.adjacency
    return {
        (x, y, c)
        for c in cuts
        for x in block
        for y in block
        if x in nb[c] and y not in cuts and y not in nb[c] and y not in nb[x] and y != x and c in block
    }


@settings(max_examples=200, deadline=None)
@given(graphs(min_n=3, max_n=8))
def test_block_properties_match_enumeration(g):
    for b in block_decomposition(g).blocks:
        if len(b) < 3:
            continue
        ev = edge_vertex_property(g, b)
        every = _edge_vertex_brute(g, b)
        assert (ev is not None) == bool(every)
        if ev is not None:
            assert ev in every
        vs = vertex_separation_property(g, b)
        every = _vertex_separation_brute(g, b)
        assert (vs is not None) == bool(every)
        if vs is not None:
            assert vs in every


def test_report_covers_every_block_in_chain_order():
    reports = block_property_report(FAN_WITH_TAIL)
    assert [r.is_end_block for r in reports] == [True, True]
    fan = next(r for r in reports if len(r.block) == 5)
    assert fan.vertex_separation is not None and fan.edge_vertex is not None


def test_whole_graph_edge_vertex():
    assert graph_edge_vertex(complete(4)) is None
    assert graph_edge_vertex(path(3)) is None
    assert graph_edge_vertex(path(4)) is not None


def test_recognisers():
    assert is_cycle_graph(cycle(3)) and not is_cycle_graph(path(3))
    assert is_tree(star(4)) and not is_tree(cycle(4))
    assert is_complete(complete(1)) and not is_complete(cycle(4))
    assert is_complete_multipartite(cycle(4)) and not is_complete_multipartite(cycle(5))
    assert unicyclic_cycle(pendant_cycle(6)) == frozenset(range(5))
    assert unicyclic_cycle(complete(4)) is None


def _rule_values(g):
    """Values of every rule whose hypotheses hold, computed from the
    recognisers rather than through the dispatcher's precedence."""
    vals = set()
    if is_cycle_graph(g) or is_tree(g) or is_complete(g) or is_complete_multipartite(g):
        vals.add(2)
    cyc = unicyclic_cycle(g)
    if cyc is not None and len(cyc) < g.n:
        vals.add(len(cyc))
    return vals


def test_formula_agrees_with_exact_and_rules_agree():
    for g in atlas(7):
        if g.n < 2:
            continue
        exact = exchange_number_exact(g).value
        out = exchange_formula(g)
        if out.applies:
            assert out.result.value == exact, (g, out.result)
            if out.result.certificate is not None:
                assert validate_certificate(g, out.result.certificate)
                assert len(out.result.certificate.set) == exact
        vals = _rule_values(g)
        assert len(vals) <= 1, (g, vals)
        if vals:
            assert vals == {exact}


def test_universal_vertex_graphs_never_mislabelled():
    k2 = complete(2)
    for h in atlas(5, connected=False):
        edges = list(k2.edges) + [(2 + u, 2 + v) for u, v in h.edges]
        edges += [(a, 2 + v) for a in (0, 1) for v in range(h.n)]
        g = Graph.from_edges(2 + h.n, edges)
        out = exchange_formula(g)
        if out.applies:
            assert out.result.value == exchange_number_exact(g).value


def test_cartesian_bound_never_exceeds_exact():
    factors = [g for g in atlas(3) if g.n >= 2]
    for g, h in itertools.product(factors, repeat=2):
        res = product_exchange(g, h, "cartesian")
        exact = exchange_number_exact(product(g, h, "cartesian").graph).value
        if res.status == "exact":
            continue
        assert res.value <= exact or res.tag == "path-by-path-bound"
        bound = (exchange_number_exact(g).value - 1) * (exchange_number_exact(h).value - 1) + 1
        assert bound <= exact

