import itertools
import random

import pytest
from hypothesis import given, settings

from cyclex.convexity import hull
from cyclex.graph import (
    Graph,
    GraphError,
    complete,
    cycle,
    path,
    pendant_cycle,
)
from cyclex.independence import (
    ExchangeCertificate,
    exchange_number_brute,
    exchange_number_exact,
    is_C_independent,
    is_E_independent,
    valid_pivots,
    validate_certificate,
)

from conftest import atlas, check_large_set_structure, graphs, random_connected

C41 = Graph.from_edges(5, [(0, 1), (1, 2), (2, 3), (3, 0), (0, 4)])


def test_c_independent_examples():
    assert is_C_independent(complete(3), {0, 1}) == (True, 2)
    assert is_C_independent(cycle(4), {0, 2}) == (False, None)
    assert is_C_independent(path(4), {3}) == (True, 3)


def test_e_independent_examples():
    g = cycle(6)
    for u, v in itertools.combinations(range(6), 2):
        cert = is_E_independent(g, {u, v})
        assert cert == ExchangeCertificate(frozenset({u, v}), u, v)
    assert is_E_independent(complete(3), {0, 1, 2}) is None
    cert = is_E_independent(C41, {0, 1, 2, 4})
    assert (cert.pivot, cert.anti_pivot) == (4, 3)


def test_singleton_certificate_has_no_pivot():
    cert = is_E_independent(path(3), {1})
    assert cert.pivot is None and cert.anti_pivot is None
    assert validate_certificate(path(3), cert)


def test_empty_sets_rejected():
    with pytest.raises(GraphError):
        is_E_independent(path(3), set())
    with pytest.raises(GraphError):
        is_C_independent(path(3), set())


def test_exact_examples():
    assert exchange_number_exact(cycle(7)).value == 2
    tri_pendant = Graph.from_edges(4, [(0, 1), (1, 2), (2, 0), (0, 3)])
    res = exchange_number_exact(tri_pendant)
    assert res.value == 3 and validate_certificate(tri_pendant, res.certificate)
    assert exchange_number_exact(Graph.from_edges(1, [])).value == 1


def test_brute_examples():
    assert exchange_number_brute(path(5)) == 2
    assert exchange_number_brute(complete(4)) == 2
    assert exchange_number_brute(pendant_cycle(5)) == 4


def test_brute_cap():
    with pytest.raises(GraphError):
        exchange_number_brute(cycle(13))


def test_disconnected_rejected():
    with pytest.raises(GraphError):
        exchange_number_exact(Graph.from_edges(2, []))


def test_exact_matches_brute_on_sampled_graphs():
    rng = random.Random(11)
    for _ in range(60):
        g = random_connected(rng.randint(2, 8), rng)
        res = exchange_number_exact(g)
        assert res.value == exchange_number_brute(g)
        assert len(res.certificate.set) == res.value
        assert validate_certificate(g, res.certificate)


def _e_independent_sets(g, min_size=3):
    for k in range(min_size, g.n + 1):
        for s in itertools.combinations(range(g.n), k):
            cert = is_E_independent(g, s)
            if cert is not None:
                yield frozenset(s), cert


@settings(max_examples=120, deadline=None)
@given(graphs(min_n=3, max_n=8))
def test_structure_of_every_large_set(g):
    for s, cert in _e_independent_sets(g):
        check_large_set_structure(g, s, cert)


@settings(max_examples=120, deadline=None)
@given(graphs(min_n=2, max_n=9))
def test_exact_certificate_is_valid(g):
    res = exchange_number_exact(g)
    assert len(res.certificate.set) == res.value
    assert validate_certificate(g, res.certificate)
    if res.value >= 3:
        check_large_set_structure(g, res.certificate.set, res.certificate)


def test_independent_vertex_sets_are_dependent():
    for g in atlas(7):
        for k in range(3, g.n + 1):
            for s in itertools.combinations(range(g.n), k):
                if not g.induced_edges(s):
                    assert is_E_independent(g, s) is None


def test_independent_pairs_are_independent():
    g = cycle(5)
    assert is_E_independent(g, {0, 2}) is not None


def test_lowest_pivot_and_anti_pivot_reported():
    g = C41
    cert = is_E_independent(g, {1, 2, 3, 4})
    assert cert.pivot == min(valid_pivots(g, {1, 2, 3, 4}))
    rest = set(hull(g, cert.set - {cert.pivot}).final)
    for a in cert.set - {cert.pivot}:
        rest -= hull(g, cert.set - {a}).final
    assert cert.anti_pivot == min(rest)
