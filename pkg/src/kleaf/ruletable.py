"""Static metadata for the 39 rules: kind, a short label and the worst-case branching vector.

Vectors are in quarter units. A component is either an integer or a pair
``(base, inner)`` standing for ``base + inner`` distributed over ``inner``'s
components, i.e. the composition ``(a, b + (c, d)) = (a, b + c, b + d)``.
"""

from __future__ import annotations

import json
from dataclasses import asdict, dataclass


@dataclass(frozen=True)
class RuleInfo:
    id: int
    kind: str  # terminal | reduction | branching
    summary: str
    anchor: str
    vector: tuple | None = None


_T, _R, _B = "terminal", "reduction", "branching"

RULE_TABLE: tuple[RuleInfo, ...] = (
    RuleInfo(1, _T, "some outside vertex is unreachable from open tree leaves", "unreachable outside vertex"),
    RuleInfo(2, _T, "k <= max(|leaves(T)|, |L u F|)", "enough leaves"),
    RuleInfo(3, _T, "T spans V", "spanning tree too small"),
    RuleInfo(4, _R, "a tree leaf is floating", "fix floating tree leaf"),
    RuleInfo(5, _R, "undetermined vertex without outside neighbors", "float isolated vertex"),
    RuleInfo(6, _R, "outside neighbors of v covered by an open leaf u", "float dominated vertex"),
    RuleInfo(7, _R, "open leaf u whose outside neighbors are floating and adjacent to v", "float dominated leaf"),
    RuleInfo(8, _R, "open leaf v is the only access to some outside vertex", "forced internal leaf"),
    RuleInfo(9, _R, "open leaf v with single outside neighbor u that has a single outside neighbor", "fix leaf before path"),
    RuleInfo(10, _B, "open leaf with exactly two outside neighbors, both floating", "two floating neighbors", (4, 11)),
    RuleInfo(11, _B, "marked leaf with >= 3 outside neighbors", "marked, three neighbors", (5, 6)),
    RuleInfo(12, _B, "marked leaf with exactly 2 outside neighbors", "marked, two neighbors", (5, 5)),
    RuleInfo(13, _B, "marked leaf whose single outside neighbor u has >= 3", "marked chain, wide", (5, 6)),
    RuleInfo(14, _B, "marked chain with |X| = 2, both reachable avoiding u", "marked chain, both reachable", (5, 5)),
    RuleInfo(15, _B, "marked chain where both children reduce in turn", "marked chain, probe", (5, 5)),
    RuleInfo(16, _B, "marked chain, reachable x with >= 2 further neighbors", "marked chain, wide x", (5, (5, (8, 3)))),
    RuleInfo(17, _B, "marked chain, x with single further neighbor y, Z wide or reachable", "marked chain, y reachable",
             (5, (5, (8, 4)))),
    RuleInfo(18, _B, "remaining marked chain", "marked chain, remainder", (5, (5, (8, 3)))),
    RuleInfo(19, _B, "lone N leaf with >= 3 outside neighbors", "lone leaf, three neighbors", (4, 8)),
    RuleInfo(20, _B, "lone N leaf with 2 outside neighbors", "lone leaf, two neighbors", (8, 4)),
    RuleInfo(21, _B, "lone N chain with |X| >= 3", "lone chain, wide", (8, 5)),
    RuleInfo(22, _B, "lone N chain, X reachable avoiding u", "lone chain, reachable", (8, 4)),
    RuleInfo(23, _R, "remaining lone N chain", "lone chain, forced"),
    RuleInfo(24, _B, "N leaf with thin N-sibling, >= 3 outside neighbors", "thin sibling, three neighbors", (4, 7)),
    RuleInfo(25, _B, "N leaf with thin N-sibling, 2 outside neighbors", "thin sibling, two neighbors", (8, 3)),
    RuleInfo(26, _B, "thin-sibling chain with |X| >= 3", "thin sibling chain, wide", (8, 4)),
    RuleInfo(27, _B, "thin-sibling chain, X reachable avoiding u", "thin sibling chain, reachable", (8, 3)),
    RuleInfo(28, _R, "remaining thin-sibling chain", "thin sibling chain, forced"),
    RuleInfo(29, _B, "sibling pair is the only access to u, |X| >= 3", "pair gateway, wide", (6, 4)),
    RuleInfo(30, _B, "sibling pair is the only access to u", "pair gateway",
             ((6, (6, (5, (5, 5)))), (3, (5, 5)))),
    RuleInfo(31, _B, "sibling pair shares a non-floating outside neighbor", "shared neighbor", (8, 3)),
    RuleInfo(32, _B, "v has >= 3 outside neighbors, >= 2 floating", "mostly floating", (4, 6)),
    RuleInfo(33, _B, "v has >= 3 outside neighbors", "pair, wide side", (20, 8, 8, 8)),
    RuleInfo(34, _B, "shared floating neighbor, wide fork, all reachable", "shared floating, fork", (16, 8, 8, 9)),
    RuleInfo(35, _B, "shared floating neighbor, wide fork, some unreachable", "shared floating, blocked fork",
             (8, 8, 8)),
    RuleInfo(36, _B, "shared floating neighbor, narrow fork", "shared floating, narrow", (16, 8, 8)),
    RuleInfo(37, _B, "disjoint outside pairs, at most one floating", "four options", (20, 8, 8, 8)),
    RuleInfo(38, _B, "disjoint pairs each with one floating, still reachable", "split pairs",
             (16, (8, (4, 8)), (8, (4, 8)), 8)),
    RuleInfo(39, _B, "disjoint pairs each with one floating", "split pairs, remainder", (8, 8, 8)),
)

RULES_BY_ID = {r.id: r for r in RULE_TABLE}


def branching_rules() -> list[RuleInfo]:
    return [r for r in RULE_TABLE if r.kind == _B]


def table_json(indent: int | None = 2) -> str:
    def enc(r: RuleInfo):
        d = asdict(r)
        d["vector"] = _listify(r.vector)
        return d

    return json.dumps([enc(r) for r in RULE_TABLE], indent=indent)


def _listify(x):
    if isinstance(x, tuple):
        return [_listify(y) for y in x]
    return x
