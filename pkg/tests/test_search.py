from collections import defaultdict

import pytest
from hypothesis import given, settings

import kleaf.search as search
from kleaf.graph import Graph, complete_graph, cycle_graph, path_graph, petersen_graph, star_graph
from kleaf.instance import complies, initial_instances, leaf_count
from kleaf.search import ProgressError, SearchStats, find_max_leaf, run_node, solve

from oracles import connected_graphs, is_spanning_tree


@pytest.mark.parametrize("g,k,expected", [
    (star_graph(4), 4, True),
    (cycle_graph(5), 3, False),
    (cycle_graph(5), 2, True),
    (petersen_graph(), 6, True),
    (petersen_graph(), 7, False),
    (path_graph(4), 3, False),
    (complete_graph(5), 4, True),
    (complete_graph(5), 5, False),
])
def test_solve_examples(g, k, expected):
    assert solve(g, k).decision is expected


def test_degenerate_inputs():
    assert solve(Graph(0), 0).decision
    assert not solve(Graph(0), 1).decision
    assert solve(Graph(1), 1).decision
    assert not solve(Graph(1), 2).decision
    assert not solve(Graph(4, [(0, 1), (2, 3)]), 2).decision
    assert solve(Graph(2, [(0, 1)]), 2).decision


def test_stats_populated():
    v = solve(petersen_graph(), 7)
    st = v.stats
    assert st.initial_measure_quarters == 57
    assert st.nodes_visited == sum(st.per_rule_firings.values()) > 0
    assert 0 < st.max_depth <= search.search_depth_limit(petersen_graph(), 7)
    assert st.elapsed > 0


def test_children_built_lazily_and_stop_after_accept(monkeypatch):
    built = defaultdict(list)
    real = search.select_and_apply

    def spy(inst):
        out = real(inst)
        key = id(out)
        for i, child in enumerate(out.children):
            def build(b=child.build, i=i):
                built[key].append(i)
                return b()
            child.build = build
        spy.outcomes.append(out)
        return out

    spy.outcomes = []
    monkeypatch.setattr(search, "select_and_apply", spy)
    g = petersen_graph()
    v = solve(g, 6)
    assert v.decision
    for idxs in built.values():
        assert idxs == list(range(len(idxs)))
    roots_tried = len(spy.outcomes) - sum(len(x) for x in built.values())
    assert 1 <= roots_tried <= g.n
    assert v.stats.nodes_visited == len(spy.outcomes)


@pytest.mark.parametrize("g,expected", [
    (path_graph(5), 2),
    (complete_graph(6), 5),
    (star_graph(7), 7),
    (petersen_graph(), 6),
    (cycle_graph(7), 2),
    (Graph(1), 1),
])
def test_find_max_leaf(g, expected):
    assert find_max_leaf(g) == expected


def test_find_max_leaf_requires_connected():
    with pytest.raises(ValueError):
        find_max_leaf(Graph(3, [(0, 1)]))


@settings(max_examples=60, deadline=None)
@given(connected_graphs(min_n=2, max_n=9))
def test_answers_monotone_in_k(g):
    answers = [solve(g, k).decision for k in range(0, g.n + 2)]
    first_no = answers.index(False)
    assert not any(answers[first_no:])


@settings(max_examples=60, deadline=None)
@given(connected_graphs(min_n=3, max_n=9))
def test_witness_is_valid(g):
    best = find_max_leaf(g)
    v = solve(g, best, witness=True)
    assert v.decision
    assert is_spanning_tree(g.n, v.witness)
    assert leaf_count(g.n, v.witness) >= best == v.witness_leaf_count


@settings(max_examples=40, deadline=None)
@given(connected_graphs(min_n=3, max_n=8))
def test_verify_mode_reports_nothing(g):
    for k in range(3, g.n + 1):
        st = solve(g, k, verify=True).stats
        assert st.violations == []


def test_verify_mode_petersen():
    v = solve(petersen_graph(), 7, verify=True)
    assert not v.decision
    assert v.stats.violations == []
    assert v.stats.children_checked > 0 and v.stats.dependency_checks == v.stats.nodes_visited


def test_parallel_matches_sequential():
    for g, k in [(petersen_graph(), 6), (petersen_graph(), 7), (cycle_graph(6), 3)]:
        seq = solve(g, k)
        par = solve(g, k, parallel=True, workers=2, witness=True)
        assert par.decision == seq.decision
        if par.decision:
            assert leaf_count(g.n, par.witness) >= k


def test_depth_limit_enforced():
    (inst, *_) = initial_instances(petersen_graph(), 6)
    with pytest.raises(ProgressError):
        run_node(inst, 0, SearchStats(), limit=0)


def test_witness_respects_root_instance():
    g = petersen_graph()
    inst = initial_instances(g, 6)[0]
    ok, w = run_node(inst, 0, SearchStats(), want_witness=True)
    assert ok and complies(g, w, inst.tree, inst.L | inst.F)


def test_stats_merge_and_dict():
    a, b = SearchStats(), SearchStats()
    a.record(8, 1)
    b.record(8, 3)
    b.record(2, 2)
    a.merge(b)
    d = a.as_dict()
    assert d["nodes_visited"] == 3 and d["max_depth"] == 3
    assert d["per_rule_firings"] == {"2": 1, "8": 2}


def test_kernelize_is_identity():
    g = petersen_graph()
    assert search.kernelize(g, 6) == (g, 6)
