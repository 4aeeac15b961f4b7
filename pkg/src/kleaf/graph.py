"""Immutable undirected graphs on dense 0-based vertex ids."""

from __future__ import annotations

from collections import deque
from collections.abc import Iterable


class Graph:
    """Simple undirected graph. Vertices are ``0..n-1``; adjacency is a tuple of frozensets.

    ``labels`` maps dense ids back to the names used in the input file and is
    only consulted for I/O.
    """

    __slots__ = ("n", "adj", "labels", "_edges")

    def __init__(self, n: int, edges: Iterable[tuple[int, int]] = (), labels=None):
        if n < 0:
            raise ValueError("vertex count must be non-negative")
        nbrs: list[set[int]] = [set() for _ in range(n)]
        for u, v in edges:
            if not (0 <= u < n and 0 <= v < n):
                raise ValueError(f"edge ({u}, {v}) out of range for n={n}")
            if u == v:
                raise ValueError(f"self-loop at vertex {u}")
            nbrs[u].add(v)
            nbrs[v].add(u)
        self.n = n
        self.adj: tuple[frozenset[int], ...] = tuple(frozenset(s) for s in nbrs)
        self.labels: tuple[str, ...] = (
            tuple(str(x) for x in labels) if labels is not None else tuple(str(i + 1) for i in range(n))
        )
        if len(self.labels) != n:
            raise ValueError("label table length must equal vertex count")
        self._edges = None

    @property
    def vertices(self) -> frozenset[int]:
        return frozenset(range(self.n))

    def edges(self) -> list[tuple[int, int]]:
        if self._edges is None:
            self._edges = [(u, v) for u in range(self.n) for v in sorted(self.adj[u]) if u < v]
        return list(self._edges)

    @property
    def m(self) -> int:
        return sum(len(a) for a in self.adj) // 2

    def neighbors(self, v: int) -> frozenset[int]:
        if not 0 <= v < self.n:
            raise IndexError(f"vertex {v} out of range for n={self.n}")
        return self.adj[v]

    def has_edge(self, u: int, v: int) -> bool:
        return v in self.adj[u]

    def is_connected(self) -> bool:
        if self.n == 0:
            return True
        return len(component(self, 0)) == self.n

    def __eq__(self, other):
        return isinstance(other, Graph) and self.n == other.n and self.adj == other.adj

    def __hash__(self):
        return hash((self.n, self.adj))

    def __repr__(self):
        return f"Graph(n={self.n}, m={self.m})"


def component(g: Graph, start: int) -> set[int]:
    seen = {start}
    queue = deque([start])
    while queue:
        x = queue.popleft()
        for y in g.adj[x]:
            if y not in seen:
                seen.add(y)
                queue.append(y)
    return seen


def reach(g: Graph, sources: Iterable[int], allowed_internal) -> set[int]:
    """All vertices t admitting a path from ``sources`` to t whose internal vertices lie in ``allowed_internal``.

    A direct edge from a source counts. Whether a source itself appears in
    the result is unspecified; callers only ask about non-source targets.
    """
    adj = g.adj
    expanded = set()
    queue = deque()
    for s in sources:
        if s not in expanded:
            expanded.add(s)
            queue.append(s)
    hit: set[int] = set()
    while queue:
        x = queue.popleft()
        for y in adj[x]:
            hit.add(y)
            if y in allowed_internal and y not in expanded:
                expanded.add(y)
                queue.append(y)
    return hit


def paths_nonempty(g: Graph, sources, target: int, allowed_internal) -> bool:
    """True iff some path starts in ``sources``, ends at ``target`` and has all internal vertices in ``allowed_internal``."""
    if not 0 <= target < g.n:
        raise IndexError(f"vertex {target} out of range for n={g.n}")
    if target in sources:
        raise ValueError("target must not be a source")
    return target in reach(g, sources, allowed_internal)


# -- named graphs -----------------------------------------------------------

def path_graph(n: int) -> Graph:
    return Graph(n, [(i, i + 1) for i in range(n - 1)])


def cycle_graph(n: int) -> Graph:
    if n < 3:
        raise ValueError("a cycle needs at least 3 vertices")
    return Graph(n, [(i, (i + 1) % n) for i in range(n)])


def complete_graph(n: int) -> Graph:
    return Graph(n, [(i, j) for i in range(n) for j in range(i + 1, n)])


def star_graph(t: int) -> Graph:
    """K_{1,t} with the center at vertex 0."""
    return Graph(t + 1, [(0, i) for i in range(1, t + 1)])


def petersen_graph() -> Graph:
    outer = [(i, (i + 1) % 5) for i in range(5)]
    spokes = [(i, i + 5) for i in range(5)]
    inner = [(5 + i, 5 + (i + 2) % 5) for i in range(5)]
    return Graph(10, outer + spokes + inner)


def from_networkx(nxg) -> Graph:
    nodes = sorted(nxg.nodes())
    index = {v: i for i, v in enumerate(nodes)}
    return Graph(len(nodes), [(index[u], index[v]) for u, v in nxg.edges()], labels=nodes)
