"""Exhaustive ground truth for small graphs: max-leaf spanning trees and minimum connected dominating sets."""

from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations

from .graph import Graph, component
from .instance import leaf_count

MAX_ORACLE_VERTICES = 12


@dataclass(frozen=True)
class OracleResult:
    max_leaves: int
    witness_tree: tuple[tuple[int, int], ...]
    trees_enumerated: int


def _guard(g: Graph, low: int = 1) -> None:
    if g.n > MAX_ORACLE_VERTICES:
        raise ValueError(f"oracle refuses graphs with more than {MAX_ORACLE_VERTICES} vertices (n={g.n})")
    if g.n < low:
        raise ValueError(f"oracle needs at least {low} vertices (n={g.n})")
    if not g.is_connected():
        raise ValueError("graph is disconnected")


def _articulation_points(n: int, adj: list[set[int]]) -> set[int]:
    disc = [-1] * n
    low = [0] * n
    cut: set[int] = set()
    timer = 0
    for root in range(n):
        if disc[root] != -1:
            continue
        disc[root] = low[root] = timer
        timer += 1
        stack = [(root, -1, iter(adj[root]))]
        root_children = 0
        while stack:
            v, parent, it = stack[-1]
            advanced = False
            for w in it:
                if disc[w] == -1:
                    disc[w] = low[w] = timer
                    timer += 1
                    if v == root:
                        root_children += 1
                    stack.append((w, v, iter(adj[w])))
                    advanced = True
                    break
                if w != parent:
                    low[v] = min(low[v], disc[w])
            if advanced:
                continue
            stack.pop()
            if stack:
                u = stack[-1][0]
                low[u] = min(low[u], low[v])
                if u != root and low[v] >= disc[u]:
                    cut.add(u)
        if root_children >= 2:
            cut.add(root)
    return cut


def max_leaf_bruteforce(g: Graph) -> OracleResult:
    """Maximum number of degree-1 vertices over all spanning trees.

    Edge inclusion/exclusion with connectivity pruning and a leaf upper bound:
    a vertex is certainly internal once it has two chosen edges or is a cut
    vertex of the graph still available.
    """
    _guard(g)
    n = g.n
    if n == 1:
        return OracleResult(1, (), 1)
    deg = [len(a) for a in g.adj]
    order = sorted(range(n), key=lambda v: (-deg[v], v))
    edges: list[tuple[int, int]] = []
    seen = set()
    for v in order:
        for w in sorted(g.adj[v], key=lambda w: (-deg[w], w)):
            e = (min(v, w), max(v, w))
            if e not in seen:
                seen.add(e)
                edges.append(e)

    avail = [set(a) for a in g.adj]
    chosen_deg = [0] * n
    chosen: list[tuple[int, int]] = []
    uf = list(range(n))
    size = [1] * n
    best = [0, ()]
    count = [0]

    def find(x):
        while uf[x] != x:
            x = uf[x]
        return x

    def connected_avail() -> bool:
        return len(_component_sets(avail)) == n

    def bound() -> int:
        forced = _articulation_points(n, avail)
        internal = sum(1 for v in range(n) if chosen_deg[v] >= 2 or v in forced)
        return n - internal

    def rec(i: int) -> None:
        if len(chosen) == n - 1:
            count[0] += 1
            leaves = leaf_count(n, chosen)
            if leaves > best[0]:
                best[0], best[1] = leaves, tuple(sorted(chosen))
            return
        if i == len(edges) or bound() <= best[0]:
            return
        u, v = edges[i]
        ru, rv = find(u), find(v)
        if ru != rv:
            # include
            if size[ru] < size[rv]:
                ru, rv = rv, ru
            uf[rv] = ru
            size[ru] += size[rv]
            chosen.append((u, v))
            chosen_deg[u] += 1
            chosen_deg[v] += 1
            rec(i + 1)
            chosen_deg[u] -= 1
            chosen_deg[v] -= 1
            chosen.pop()
            size[ru] -= size[rv]
            uf[rv] = rv
        # exclude
        avail[u].discard(v)
        avail[v].discard(u)
        if connected_avail():
            rec(i + 1)
        avail[u].add(v)
        avail[v].add(u)

    rec(0)
    return OracleResult(best[0], best[1], count[0])


def _component_sets(adj: list[set[int]]) -> set[int]:
    seen = {0}
    stack = [0]
    while stack:
        x = stack.pop()
        for y in adj[x]:
            if y not in seen:
                seen.add(y)
                stack.append(y)
    return seen


def is_connected_dominating(g: Graph, U) -> bool:
    U = set(U)
    if not U:
        return False
    dominated = set(U)
    for u in U:
        dominated |= g.adj[u]
    if len(dominated) != g.n:
        return False
    sub = Graph(g.n, [(a, b) for a, b in g.edges() if a in U and b in U])
    return U <= component(sub, next(iter(U)))


def min_cds_bruteforce(g: Graph) -> int:
    """Size of a smallest connected dominating set, by subsets of increasing size."""
    _guard(g, low=3)
    for size in range(1, g.n + 1):
        for U in combinations(range(g.n), size):
            if is_connected_dominating(g, U):
                return size
    raise AssertionError("V itself is a connected dominating set of a connected graph")
