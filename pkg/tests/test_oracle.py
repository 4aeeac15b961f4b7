import pytest
from hypothesis import given, settings

from kleaf.corpus import small_connected_graphs
from kleaf.graph import Graph, complete_graph, cycle_graph, path_graph, petersen_graph, star_graph
from kleaf.instance import leaf_count
from kleaf.oracle import (
    MAX_ORACLE_VERTICES,
    is_connected_dominating,
    max_leaf_bruteforce,
    min_cds_bruteforce,
)

from oracles import connected_graphs, is_spanning_tree, max_leaf_by_subsets


@pytest.mark.parametrize("g,expected", [
    (cycle_graph(6), 2),
    (complete_graph(4), 3),
    (petersen_graph(), 6),
    (star_graph(5), 5),
    (path_graph(2), 2),
    (Graph(1), 1),
])
def test_max_leaf_examples(g, expected):
    res = max_leaf_bruteforce(g)
    assert res.max_leaves == expected
    assert res.trees_enumerated >= 1


@pytest.mark.parametrize("g,expected", [
    (complete_graph(4), 1),
    (cycle_graph(6), 4),
    (path_graph(5), 3),
    (petersen_graph(), 4),
])
def test_min_cds_examples(g, expected):
    assert min_cds_bruteforce(g) == expected


def test_connected_dominating_predicate():
    g = path_graph(5)
    assert is_connected_dominating(g, {1, 2, 3})
    assert not is_connected_dominating(g, {1, 3})  # dominating, not connected
    assert not is_connected_dominating(g, {0, 1})
    assert not is_connected_dominating(g, set())


def test_duality_exhaustive_small():
    for g in small_connected_graphs(max_n=7, min_n=3):
        assert max_leaf_bruteforce(g).max_leaves + min_cds_bruteforce(g) == g.n


@settings(max_examples=60, deadline=None)
@given(connected_graphs(min_n=3, max_n=9))
def test_duality_random(g):
    assert max_leaf_bruteforce(g).max_leaves + min_cds_bruteforce(g) == g.n


@settings(max_examples=80, deadline=None)
@given(connected_graphs(min_n=2, max_n=10))
def test_witness_attains_maximum(g):
    res = max_leaf_bruteforce(g)
    assert is_spanning_tree(g.n, res.witness_tree)
    assert leaf_count(g.n, res.witness_tree) == res.max_leaves


@settings(max_examples=80, deadline=None)
@given(connected_graphs(min_n=1, max_n=6))
def test_matches_edge_subset_enumeration(g):
    assert max_leaf_bruteforce(g).max_leaves == max_leaf_by_subsets(g)


def test_guards():
    with pytest.raises(ValueError):
        max_leaf_bruteforce(complete_graph(MAX_ORACLE_VERTICES + 1))
    with pytest.raises(ValueError):
        max_leaf_bruteforce(Graph(3, [(0, 1)]))
    with pytest.raises(ValueError):
        max_leaf_bruteforce(Graph(0))
    with pytest.raises(ValueError):
        min_cds_bruteforce(path_graph(2))
