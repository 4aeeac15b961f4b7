import random
from types import MappingProxyType

import networkx as nx
import pytest
from hypothesis import given, settings

from kleaf.graph import Graph, path_graph, star_graph
from kleaf.instance import (
    Instance,
    InvariantError,
    RootedTree,
    attach_children,
    check_invariants,
    children_deficit,
    complete_witness,
    complies,
    initial_instances,
    leaf_count,
    measure,
)
from kleaf.rules import rule_1, select_and_apply

from oracles import connected_graphs, is_spanning_tree


def make(g, root, parent, L=(), M=(), F=(), k=3):
    return Instance(g, RootedTree.from_parent_map(root, parent),
                    frozenset(L), frozenset(M), frozenset(F), k)


def test_initial_measure_k3():
    (inst, *_) = initial_instances(path_graph(3), 3)
    assert measure(inst) == 25


def test_measure_all_fixed():
    g = Graph(5, [(0, i) for i in range(1, 5)])
    inst = make(g, 0, {1: 0}, L={1}, F={2, 3, 4}, k=2)
    assert measure(inst) == 0


def test_measure_star_root():
    g = star_graph(4)
    inst = make(g, 0, {i: 0 for i in range(1, 5)}, k=2)
    assert measure(inst) == 4


def test_children_deficit_single_vertex():
    assert children_deficit(RootedTree.single(0)) == 0


def test_children_deficit_path_from_end():
    t = RootedTree.from_parent_map(0, {1: 0, 2: 1})
    assert children_deficit(t) == 0 == len(t.leaves) - 1


def test_children_deficit_identity_exhaustive():
    for n in range(2, 8):
        for tree in nx.nonisomorphic_trees(n):
            for root in tree.nodes:
                parent = {v: p for p, v in nx.bfs_edges(tree, root)}
                t = RootedTree.from_parent_map(root, parent)
                assert children_deficit(t) == len(t.leaves) - 1
                # the same count through degree-one vertices, which include a one-child root
                deg_one = sum(1 for v in tree.nodes if tree.degree(v) == 1)
                delta = 1 if len(t.children[root]) >= 2 else 0
                assert children_deficit(t) == deg_one - 2 + delta


def test_attach_two_children():
    inst = initial_instances(star_graph(2), 3)[0]
    child = attach_children(inst, 0, {1, 2})
    assert child.leaves == {1, 2}
    assert inst.VT == {0}  # input untouched


def test_attach_single_child_keeps_tree_term():
    inst = initial_instances(path_graph(3), 3)[0]
    child = attach_children(inst, 0, {1})
    assert children_deficit(child.tree) == children_deficit(inst.tree) == 0


def test_attach_three_children_grows_tree_term():
    inst = initial_instances(star_graph(3), 3)[0]
    child = attach_children(inst, 0, {1, 2, 3})
    assert children_deficit(child.tree) == 2


def test_attach_rejects_non_leaf_and_bad_sets():
    inst = initial_instances(star_graph(3), 3)[0]
    child = attach_children(inst, 0, {1, 2})
    with pytest.raises(InvariantError):
        attach_children(child, 0, {3})
    with pytest.raises(InvariantError):
        attach_children(inst, 0, set())
    with pytest.raises(InvariantError):
        attach_children(child, 1, {0})


def test_initial_instances():
    g = Graph(5, [(i, i + 1) for i in range(4)])
    insts = initial_instances(g, 4)
    assert len(insts) == 5
    for r, inst in enumerate(insts):
        assert inst.VT == {r} and inst.M == {r} and not inst.L and not inst.F
        assert measure(inst) == 8 * 4 + 1
        check_invariants(inst)
    assert initial_instances(Graph(0), 3) == []


def test_invariants_catch_bad_sets():
    g = star_graph(3)
    bad = make(g, 0, {1: 0, 2: 0}, L={1}, M={1})
    with pytest.raises(InvariantError):
        check_invariants(bad)
    bad_f = make(g, 0, {1: 0, 2: 0}, F={0})
    with pytest.raises(InvariantError):
        check_invariants(bad_f)


def test_complies_vacuous():
    g = path_graph(3)
    assert complies(g, [(0, 1), (1, 2)], RootedTree.single(1), set())


def test_complies_lf_not_leaf():
    g = path_graph(3)
    assert not complies(g, [(0, 1), (1, 2)], RootedTree.single(0), {1})


def test_complies_internal_gains_neighbor():
    g = Graph(4, [(0, 1), (0, 2), (1, 3), (2, 3)])
    t = RootedTree.from_parent_map(0, {1: 0})
    # 0 is internal with tree neighbor 1 only, but the spanning tree also uses 0-2
    assert not complies(g, [(0, 1), (0, 2), (1, 3)], t, set())
    assert complies(g, [(0, 1), (1, 3), (2, 3)], t, set())


def test_complete_witness_spanning_tree_already():
    g = path_graph(3)
    inst = make(g, 0, {1: 0, 2: 1})
    assert complete_witness(inst) == [(0, 1), (1, 2)]


def test_complete_witness_star():
    inst = initial_instances(star_graph(4), 4)[0]
    w = complete_witness(inst)
    assert leaf_count(5, w) == 4


def _random_descent(inst, rng):
    """Follow random branches of the search; yield every instance on the way."""
    while True:
        yield inst
        out = select_and_apply(inst)
        if not out.children:
            return
        inst = rng.choice(out.children).build()


@settings(max_examples=80, deadline=None)
@given(connected_graphs(min_n=8, max_n=8))
def test_complete_witness_property(g):
    rng = random.Random(g.m)
    for k in (4, 5, 6):
        start = rng.choice(initial_instances(g, k))
        for inst in _random_descent(start, rng):
            if rule_1(inst) is not None:
                continue
            w = complete_witness(inst)
            assert w is not None and is_spanning_tree(g.n, w)
            assert complies(g, w, inst.tree, inst.L | inst.F)
            assert leaf_count(g.n, w) >= max(len(inst.leaves), len(inst.L | inst.F))


@settings(max_examples=60, deadline=None)
@given(connected_graphs(min_n=3, max_n=9))
def test_every_reached_instance_is_valid(g):
    rng = random.Random(g.n * 131 + g.m)
    for k in range(3, g.n + 1):
        start = rng.choice(initial_instances(g, k))
        for inst in _random_descent(start, rng):
            check_invariants(inst)


def test_snapshot_recorded_when_tracking():
    g = star_graph(3)
    inst = initial_instances(g, 3, track_snapshots=True)[0]
    child = inst.derive(attach=[(0, {1, 2, 3})])
    assert isinstance(child.snapshots, MappingProxyType) and 0 in child.snapshots
    assert initial_instances(g, 3)[0].derive(attach=[(0, {1})]).snapshots is None
