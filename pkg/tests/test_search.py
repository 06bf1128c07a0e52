import random

import pytest
from hypothesis import given, settings

from cyclex.gadget import CnfFormula, build_reduction
from cyclex.graph import GraphError, complete, cycle, pendant_cycle
from cyclex.independence import exchange_number_exact, validate_certificate
from cyclex.search import exchange_set_at_least

from conftest import graphs, random_connected


def test_finds_large_sets_and_proves_absence():
    g = pendant_cycle(7)
    found = exchange_set_at_least(g, 6)
    assert found.status == "found" and len(found.certificate.set) >= 6
    assert validate_certificate(g, found.certificate)
    assert exchange_set_at_least(g, 7).status == "none"
    assert exchange_set_at_least(cycle(8), 3).status == "none"
    assert exchange_set_at_least(complete(5), 3).status == "none"


def test_small_k_rejected():
    with pytest.raises(GraphError):
        exchange_set_at_least(cycle(5), 2)


@settings(max_examples=80, deadline=None)
@given(graphs(min_n=3, max_n=8))
def test_agrees_with_exact(g):
    e = exchange_number_exact(g).value
    for k in range(3, g.n + 1):
        out = exchange_set_at_least(g, k)
        assert (out.status == "found") == (e >= k)
        if out.status == "found":
            assert len(out.certificate.set) >= k
            assert validate_certificate(g, out.certificate)


def test_agrees_with_exact_on_denser_samples():
    rng = random.Random(3)
    for _ in range(25):
        g = random_connected(9, rng, p=rng.uniform(0.2, 0.5))
        e = exchange_number_exact(g).value
        assert exchange_set_at_least(g, e).status == "found"
        assert exchange_set_at_least(g, e + 1).status == "none"


def test_reduction_graph_search_returns_certificate():
    red = build_reduction(CnfFormula.of(3, [(1, 2, 3), (-1, 2, 3)]))
    out = exchange_set_at_least(red.graph, red.k, time_limit=120)
    assert out.status == "found"
    assert validate_certificate(red.graph, out.certificate)


def test_deadline_gives_timeout():
    red = build_reduction(CnfFormula.of(1, [(1, 1, 1), (-1, -1, -1)]))
    assert exchange_set_at_least(red.graph, red.k, time_limit=0.0).status == "timeout"
