"""Intermediate search instances: a rooted subtree plus fixed, marked and floating leaf sets.

The measure is kept in integer quarter units so every rule's decrease can be
compared exactly.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass, field
from functools import cached_property
from types import MappingProxyType

from .graph import Graph, reach

QUARTER = 4


class InvariantError(AssertionError):
    """An instance violated a structural invariant (signals a rule-engine bug)."""


@dataclass(frozen=True)
class RootedTree:
    root: int
    parent: MappingProxyType
    children: MappingProxyType

    @classmethod
    def single(cls, r: int) -> RootedTree:
        return cls(r, MappingProxyType({}), MappingProxyType({r: ()}))

    @classmethod
    def from_parent_map(cls, root: int, parent: dict[int, int]) -> RootedTree:
        kids: dict[int, list[int]] = {root: []}
        for v in parent:
            kids.setdefault(v, [])
        for v, p in sorted(parent.items()):
            kids.setdefault(p, []).append(v)
        return cls(root, MappingProxyType(dict(parent)),
                   MappingProxyType({v: tuple(c) for v, c in kids.items()}))

    @cached_property
    def vertices(self) -> frozenset[int]:
        return frozenset(self.children)

    @cached_property
    def leaves(self) -> frozenset[int]:
        return frozenset(v for v, c in self.children.items() if not c)

    @cached_property
    def internal(self) -> frozenset[int]:
        return frozenset(v for v, c in self.children.items() if c)

    def children_count(self, v: int) -> int:
        return len(self.children[v])

    def siblings(self, v: int) -> tuple[int, ...]:
        p = self.parent.get(v)
        if p is None:
            return ()
        return tuple(c for c in self.children[p] if c != v)

    def edges(self) -> list[tuple[int, int]]:
        return sorted(self.parent.items(), key=lambda e: (e[1], e[0]))

    def attach(self, v: int, xs) -> RootedTree:
        """New tree with ``xs`` hung below the leaf ``v``."""
        xs = tuple(sorted(xs))
        if v not in self.children:
            raise InvariantError(f"attach point {v} is not in the tree")
        if self.children[v]:
            raise InvariantError(f"attach point {v} is not a leaf")
        if not xs:
            raise InvariantError(f"empty attachment below {v}")
        parent = dict(self.parent)
        children = dict(self.children)
        for x in xs:
            if x in children:
                raise InvariantError(f"vertex {x} is already in the tree")
            parent[x] = v
            children[x] = ()
        children[v] = xs
        return RootedTree(self.root, MappingProxyType(parent), MappingProxyType(children))


def children_deficit(t: RootedTree) -> int:
    """Sum over vertices with i >= 2 children of (i - 1)."""
    return sum(len(c) - 1 for c in t.children.values() if len(c) >= 2)


@dataclass(frozen=True)
class Snapshot:
    """Proof data recorded when a vertex becomes internal.

    ``sources`` is leaves(T~) minus (L' | F' | {p}); ``allowed`` is V minus (V_T~ | L' | F').
    """
    sources: frozenset[int]
    allowed: frozenset[int]


@dataclass(frozen=True)
class Instance:
    g: Graph
    tree: RootedTree
    L: frozenset[int]
    M: frozenset[int]
    F: frozenset[int]
    k: int
    snapshots: MappingProxyType | None = field(default=None, compare=False)

    # -- derived sets ------------------------------------------------------

    @cached_property
    def VT(self) -> frozenset[int]:
        return self.tree.vertices

    @cached_property
    def leaves(self) -> frozenset[int]:
        return self.tree.leaves

    @cached_property
    def internal(self) -> frozenset[int]:
        return self.tree.internal

    @cached_property
    def N(self) -> frozenset[int]:
        return self.leaves - self.L - self.M

    @cached_property
    def MN(self) -> frozenset[int]:
        return self.leaves - self.L

    @cached_property
    def outside(self) -> frozenset[int]:
        return self.g.vertices - self.VT

    @cached_property
    def _out(self) -> dict[int, frozenset[int]]:
        vt = self.VT
        return {v: a - vt for v, a in enumerate(self.g.adj)}

    def out(self, v: int) -> frozenset[int]:
        """Neighbors of ``v`` outside the tree."""
        return self._out[v]

    def siblings(self, v: int) -> tuple[int, ...]:
        return self.tree.siblings(v)

    def sibling_in_N(self, v: int) -> frozenset[int]:
        return frozenset(self.tree.siblings(v)) & self.N

    def reach(self, sources, allowed) -> set[int]:
        return reach(self.g, sources, allowed)

    def paths(self, sources, target: int, allowed) -> bool:
        return target in reach(self.g, sources, allowed)

    @cached_property
    def measure(self) -> int:
        return measure(self)

    # -- transitions -------------------------------------------------------

    def derive(self, attach=(), L=None, M=None, F=None) -> Instance:
        """Copy with vertices attached below leaves and leaf sets replaced.

        ``attach`` is a sequence of ``(p, children)``; ``p`` may be a vertex hung
        earlier in the same sequence. The input instance is left untouched.
        """
        tree = self.tree
        snaps = self.snapshots
        new_internal = []
        for p, xs in attach:
            tree = tree.attach(p, xs)
            new_internal.append(p)
        if snaps is not None and new_internal:
            snaps = dict(snaps)
            sources = self.leaves - self.L - self.F
            allowed = self.g.vertices - self.VT - self.L - self.F
            for p in new_internal:
                snaps[p] = Snapshot(sources - {p}, allowed)
            snaps = MappingProxyType(snaps)
        return Instance(
            self.g, tree,
            self.L if L is None else frozenset(L),
            self.M if M is None else frozenset(M),
            self.F if F is None else frozenset(F),
            self.k, snaps,
        )

    def describe(self) -> str:
        lab = self.g.labels

        def fmt(s):
            return "{" + ",".join(lab[v] for v in sorted(s)) + "}"

        edges = ",".join(f"{lab[p]}-{lab[c]}" for c, p in self.tree.edges())
        return (f"T(root={lab[self.tree.root]}; {edges}) L={fmt(self.L)} M={fmt(self.M)} "
                f"F={fmt(self.F)} k={self.k}")


def measure(inst: Instance) -> int:
    """2k + |M|/4 - (|L| + |F| + sum_{i>=2} (i-1)|children_i(T)|), in quarters."""
    return (QUARTER * 2 * inst.k + len(inst.M)
            - QUARTER * (len(inst.L) + len(inst.F) + children_deficit(inst.tree)))


def attach_children(inst: Instance, v: int, xs) -> Instance:
    """Hang ``xs`` (outside neighbors of the leaf ``v``) below ``v``; leaf sets are untouched."""
    xs = frozenset(xs)
    if v not in inst.leaves:
        raise InvariantError(f"{v} is not a leaf of the tree")
    if not xs or not xs <= inst.out(v):
        raise InvariantError(f"{sorted(xs)} is not a nonempty subset of N({v}) \\ V_T")
    return inst.derive(attach=[(v, xs)])


def initial_instances(g: Graph, k: int, track_snapshots: bool = False) -> list[Instance]:
    snaps = MappingProxyType({}) if track_snapshots else None
    return [Instance(g, RootedTree.single(r), frozenset(), frozenset({r}), frozenset(), k, snaps)
            for r in range(g.n)]


def check_invariants(inst: Instance) -> None:
    """Raise InvariantError unless the instance is well formed."""
    g, t = inst.g, inst.tree
    for c, p in t.parent.items():
        if c not in g.adj[p]:
            raise InvariantError(f"tree edge {p}-{c} is not a graph edge")
    # connectivity/acyclicity: walk up from every vertex to the root
    for v in t.vertices:
        seen = set()
        x = v
        while x != t.root:
            if x in seen or x not in t.parent:
                raise InvariantError(f"vertex {v} does not reach the root")
            seen.add(x)
            x = t.parent[x]
    if t.root in t.parent:
        raise InvariantError("root has a parent")
    if not inst.L <= inst.leaves or not inst.M <= inst.leaves:
        raise InvariantError("L and M must be leaves of T")
    if inst.L & inst.M:
        raise InvariantError(f"L and M intersect in {sorted(inst.L & inst.M)}")
    if not inst.F <= (inst.leaves - inst.L) | inst.outside:
        bad = inst.F - ((inst.leaves - inst.L) | inst.outside)
        raise InvariantError(f"floating leaves {sorted(bad)} are internal or fixed")


def complies(g: Graph, s_edges, t: RootedTree, lf) -> bool:
    """Does the spanning tree with edge list ``s_edges`` comply with (t, lf)?"""
    nbr: dict[int, set[int]] = {v: set() for v in range(g.n)}
    for u, v in s_edges:
        nbr[u].add(v)
        nbr[v].add(u)
    for c, p in t.parent.items():
        if c not in nbr[p]:
            return False
    if any(len(nbr[v]) != 1 for v in lf):
        return False
    # internal vertices of t gain no further neighbors in s
    for v in t.internal:
        tn = set(t.children[v])
        if v in t.parent:
            tn.add(t.parent[v])
        if nbr[v] != tn:
            return False
    return True


def complete_witness(inst: Instance) -> list[tuple[int, int]] | None:
    """Extend T to a spanning tree keeping L and F as leaves; None if impossible.

    Breadth-first attachment from the undetermined leaves through vertices that
    are neither in T nor floating; floating vertices are hung as leaves only.
    """
    g = inst.g
    parent = dict(inst.tree.parent)
    in_tree = set(inst.VT)
    queue = deque(sorted(inst.MN - inst.F))
    while queue:
        x = queue.popleft()
        for y in sorted(g.adj[x]):
            if y in in_tree:
                continue
            parent[y] = x
            in_tree.add(y)
            if y not in inst.F:
                queue.append(y)
    if len(in_tree) != g.n:
        return None
    return sorted((min(c, p), max(c, p)) for c, p in parent.items())


def leaf_count(n: int, edges) -> int:
    """Number of vertices of degree <= 1 (the lone vertex of K_1 counts)."""
    deg = [0] * n
    for u, v in edges:
        deg[u] += 1
        deg[v] += 1
    return sum(1 for d in deg if d <= 1)
