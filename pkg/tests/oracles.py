"""Independent reference implementations used only by the tests."""

from __future__ import annotations

from itertools import combinations

from hypothesis import strategies as st

from kleaf.graph import Graph


def simple_path_targets(g: Graph, sources, allowed) -> set[int]:
    """Endpoints of simple paths (length >= 1) from ``sources`` whose internal vertices lie in ``allowed``."""
    hits: set[int] = set()

    def dfs(x, visited):
        for y in g.adj[x]:
            if y in visited:
                continue
            hits.add(y)
            if y in allowed:
                visited.add(y)
                dfs(y, visited)
                visited.discard(y)

    for s in sources:
        dfs(s, {s})
    return hits


def max_leaf_by_subsets(g: Graph) -> int:
    """Maximum leaf count over all (n-1)-edge subsets that form a spanning tree."""
    n = g.n
    if n == 1:
        return 1
    best = -1
    for sub in combinations(g.edges(), n - 1):
        parent = list(range(n))

        def find(x):
            while parent[x] != x:
                parent[x] = parent[parent[x]]
                x = parent[x]
            return x

        ok = True
        for u, v in sub:
            ru, rv = find(u), find(v)
            if ru == rv:
                ok = False
                break
            parent[ru] = rv
        if not ok:
            continue
        deg = [0] * n
        for u, v in sub:
            deg[u] += 1
            deg[v] += 1
        best = max(best, sum(1 for d in deg if d == 1))
    return best


def is_spanning_tree(n: int, edges) -> bool:
    if len(edges) != n - 1:
        return False
    parent = list(range(n))

    def find(x):
        while parent[x] != x:
            x = parent[x]
        return x

    for u, v in edges:
        ru, rv = find(u), find(v)
        if ru == rv:
            return False
        parent[ru] = rv
    return True


@st.composite
def connected_graphs(draw, min_n=1, max_n=8):
    """A random spanning tree plus a random subset of the remaining pairs."""
    n = draw(st.integers(min_n, max_n))
    edges = {(draw(st.integers(0, i - 1)), i) for i in range(1, n)}
    others = [(u, v) for u in range(n) for v in range(u + 1, n) if (u, v) not in edges]
    if others:
        extra = draw(st.lists(st.sampled_from(others), unique=True, max_size=len(others)))
        edges |= set(extra)
    return Graph(n, sorted(edges))
