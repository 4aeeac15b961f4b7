"""Reading and writing graphs: DIMACS edge format and plain edge lists."""

from __future__ import annotations

import re
from pathlib import Path

from .graph import Graph, complete_graph, cycle_graph, path_graph, petersen_graph, star_graph


class GraphParseError(ValueError):
    def __init__(self, lineno: int | None, msg: str):
        self.lineno = lineno
        super().__init__(f"line {lineno}: {msg}" if lineno is not None else msg)


def _is_dimacs(lines) -> bool:
    for raw in lines:
        tok = raw.split()
        if not tok or tok[0].startswith("#"):
            continue
        return tok[0] in ("c", "p")
    return False


def parse_dimacs(text: str) -> Graph:
    n = m = None
    edges: list[tuple[int, int]] = []
    seen: set[tuple[int, int]] = set()
    for lineno, raw in enumerate(text.splitlines(), 1):
        tok = raw.split()
        if not tok or tok[0] == "c":
            continue
        if tok[0] == "p":
            if n is not None:
                raise GraphParseError(lineno, "second problem line")
            if len(tok) != 4 or tok[1] not in ("edge", "col"):
                raise GraphParseError(lineno, f"malformed header {raw.strip()!r}, expected 'p edge N M'")
            try:
                n, m = int(tok[2]), int(tok[3])
            except ValueError:
                raise GraphParseError(lineno, "vertex and edge counts must be integers") from None
            if n < 0 or m < 0:
                raise GraphParseError(lineno, "counts must be non-negative")
        elif tok[0] == "e":
            if n is None:
                raise GraphParseError(lineno, "edge line before the 'p edge' header")
            if len(tok) != 3:
                raise GraphParseError(lineno, f"malformed edge line {raw.strip()!r}")
            try:
                u, v = int(tok[1]), int(tok[2])
            except ValueError:
                raise GraphParseError(lineno, "edge endpoints must be integers") from None
            for x in (u, v):
                if not 1 <= x <= n:
                    raise GraphParseError(lineno, f"endpoint {x} outside 1..{n}")
            if u == v:
                raise GraphParseError(lineno, f"self-loop at {u}")
            key = (min(u, v), max(u, v))
            if key in seen:
                raise GraphParseError(lineno, f"duplicate edge {u} {v}")
            seen.add(key)
            edges.append((u - 1, v - 1))
        else:
            raise GraphParseError(lineno, f"unknown line type {tok[0]!r}")
    if n is None:
        raise GraphParseError(None, "missing 'p edge N M' header")
    if len(edges) != m:
        raise GraphParseError(None, f"header declares {m} edges but {len(edges)} were given")
    return Graph(n, edges)


def parse_edge_list(text: str) -> Graph:
    """Whitespace-separated label pairs, one edge per line; a lone label declares a vertex."""
    index: dict[str, int] = {}
    edges: list[tuple[int, int]] = []
    seen: set[tuple[int, int]] = set()

    def vid(label):
        if label not in index:
            index[label] = len(index)
        return index[label]

    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0]
        tok = line.split()
        if not tok:
            continue
        if len(tok) == 1:
            vid(tok[0])
            continue
        if len(tok) != 2:
            raise GraphParseError(lineno, f"expected two labels, got {len(tok)} tokens")
        a, b = tok
        if a == b:
            raise GraphParseError(lineno, f"self-loop at {a}")
        u, v = vid(a), vid(b)
        key = (min(u, v), max(u, v))
        if key in seen:
            raise GraphParseError(lineno, f"duplicate edge {a} {b}")
        seen.add(key)
        edges.append((u, v))
    return Graph(len(index), edges, labels=list(index))


def parse_graph(text: str) -> Graph:
    lines = text.splitlines()
    return parse_dimacs(text) if _is_dimacs(lines) else parse_edge_list(text)


def serialize(g: Graph, fmt: str = "dimacs") -> str:
    if fmt == "dimacs":
        out = [f"p edge {g.n} {g.m}"]
        out += [f"e {u + 1} {v + 1}" for u, v in g.edges()]
    elif fmt == "edgelist":
        lab = g.labels
        out = [lab[v] for v in range(g.n)]
        out += [f"{lab[u]} {lab[v]}" for u, v in g.edges()]
    else:
        raise ValueError(f"unknown format {fmt!r}")
    return "\n".join(out) + "\n"


_NAMED = re.compile(r"^(petersen|k(\d+)|c(\d+)|p(\d+)|star(\d+))$", re.IGNORECASE)


def named_graph(name: str) -> Graph | None:
    """``petersen``, ``K<n>``, ``C<n>``, ``P<n>`` or ``star<t>``; None for anything else."""
    mt = _NAMED.match(name)
    if not mt:
        return None
    if mt.group(1).lower() == "petersen":
        return petersen_graph()
    kn, cn, pn, st = mt.group(2, 3, 4, 5)
    if kn:
        return complete_graph(int(kn))
    if cn:
        return cycle_graph(int(cn))
    if pn:
        return path_graph(int(pn))
    return star_graph(int(st))


def load_graph(source: str) -> Graph:
    """Read a graph file, falling back to a named graph when no such file exists."""
    path = Path(source)
    if path.exists():
        return parse_graph(path.read_text())
    g = named_graph(path.name)
    if g is None:
        raise FileNotFoundError(f"no such file or named graph: {source}")
    return g
