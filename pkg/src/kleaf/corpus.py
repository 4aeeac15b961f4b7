"""Test corpora: every small connected graph plus seeded random connected graphs."""

from __future__ import annotations

import random

import networkx as nx

from .graph import Graph, from_networkx


def small_connected_graphs(max_n: int = 7, min_n: int = 1) -> list[Graph]:
    """All connected graphs on ``min_n..max_n`` vertices, one per isomorphism class (max_n <= 7)."""
    if max_n > 7:
        raise ValueError("the graph atlas stops at 7 vertices")
    return [from_networkx(G) for G in nx.graph_atlas_g()
            if min_n <= G.number_of_nodes() <= max_n and nx.is_connected(G)]


def random_connected_graphs(count: int, sizes=(8, 9, 10), probs=(0.2, 0.4, 0.7),
                            seed: int = 7919) -> list[Graph]:
    """``count`` connected G(n, p) samples, cycling over ``probs``; disconnected draws are redrawn."""
    rng = random.Random(seed)
    out = []
    while len(out) < count:
        p = probs[len(out) % len(probs)]
        n = rng.choice(sizes)
        G = nx.gnp_random_graph(n, p, seed=rng.randrange(2 ** 32))
        if nx.is_connected(G):
            out.append(from_networkx(G))
    return out
