"""Top-level decision procedure: run the rule-driven search from every root."""

from __future__ import annotations

import sys
import time
from collections import Counter, deque
from concurrent.futures import FIRST_COMPLETED, ProcessPoolExecutor, wait
from dataclasses import dataclass, field

from .graph import Graph
from .instance import (
    Instance,
    InvariantError,
    check_invariants,
    complete_witness,
    complies,
    initial_instances,
    leaf_count,
)
from .rules import select_and_apply


class ProgressError(RuntimeError):
    """The search went deeper than the measure allows."""


@dataclass
class SearchStats:
    nodes_visited: int = 0
    per_rule_firings: Counter = field(default_factory=Counter)
    max_depth: int = 0
    initial_measure_quarters: int = 0
    elapsed: float = 0.0
    # verify-mode bookkeeping
    children_checked: int = 0
    dependency_checks: int = 0
    violations: list = field(default_factory=list)

    def record(self, rule: int, depth: int) -> None:
        self.nodes_visited += 1
        self.per_rule_firings[rule] += 1
        if depth > self.max_depth:
            self.max_depth = depth

    def merge(self, other: SearchStats) -> None:
        self.nodes_visited += other.nodes_visited
        self.per_rule_firings.update(other.per_rule_firings)
        self.max_depth = max(self.max_depth, other.max_depth)
        self.children_checked += other.children_checked
        self.dependency_checks += other.dependency_checks
        self.violations.extend(other.violations)

    def as_dict(self) -> dict:
        return {
            "nodes_visited": self.nodes_visited,
            "per_rule_firings": {str(i): self.per_rule_firings[i] for i in sorted(self.per_rule_firings)},
            "max_depth": self.max_depth,
            "initial_measure_quarters": self.initial_measure_quarters,
            "elapsed_ms": round(self.elapsed * 1000, 3),
        }


@dataclass
class Verdict:
    decision: bool
    k: int
    n: int
    witness: list[tuple[int, int]] | None = None
    stats: SearchStats = field(default_factory=SearchStats)

    @property
    def witness_leaf_count(self) -> int | None:
        if self.witness is None:
            return None
        return leaf_count(self.n, self.witness)


# ---------------------------------------------------------------------------
# verification helpers
# ---------------------------------------------------------------------------

MAX_VIOLATIONS = 50


def _violation(stats: SearchStats, msg: str) -> None:
    if len(stats.violations) < MAX_VIOLATIONS:
        stats.violations.append(msg)


def check_dependency_claim(inst: Instance) -> list[str]:
    """Items 1, 2(b)i and 2(b)ii of the sibling bookkeeping for every v in N.

    Only meaningful once no tree leaf is floating; such leaves are fixed by the
    next reduction and are skipped here.
    """
    out = []
    if inst.leaves & inst.F:
        return out
    tree = inst.tree
    for v in sorted(inst.N):
        p = tree.parent.get(v)
        if p is None:
            continue
        sib = tree.siblings(v)
        if len(sib) > 1:
            out.append(f"vertex {v} has {len(sib)} siblings")
            continue
        if not sib:
            continue
        (s,) = sib
        if s in inst.M or tree.children_count(s) >= 2:
            out.append(f"sibling {s} of {v} is marked or has >= 2 children")
        if inst.snapshots is None:
            continue
        snap = inst.snapshots.get(p)
        if snap is None:
            out.append(f"no snapshot for parent {p} of {v}")
        elif s not in inst.reach(snap.sources, snap.allowed):
            out.append(f"sibling {s} of {v} was reachable only through {p}")
    return out


def check_ladder(inst: Instance, rule: int) -> list[str]:
    """Structural facts that hold once all rules before ``rule`` are inapplicable."""
    out = []
    if rule >= 19 and inst.M:
        out.append(f"M nonempty at rule {rule}")
    if rule < 24:
        return out
    N = inst.N
    outside_free = inst.outside - inst.F
    for v in sorted(N):
        sib = inst.sibling_in_N(v)
        if len(sib) != 1:
            out.append(f"rule {rule}: {v} has {len(sib)} N-siblings")
            continue
        (s,) = sib
        if rule >= 29 and (len(inst.out(v)) < 2 or len(inst.out(s)) < 2):
            out.append(f"rule {rule}: pair {v},{s} has a thin side")
        if rule >= 31:
            lonely = inst.outside - inst.reach(N - {v, s}, outside_free)
            if lonely:
                out.append(f"rule {rule}: pair {v},{s} is the only route to {min(lonely)}")
        if rule >= 32 and not (inst.out(v) & inst.out(s)) <= inst.F:
            out.append(f"rule {rule}: pair {v},{s} shares a non-floating outside neighbor")
        if rule >= 34 and len(inst.out(v)) != 2:
            out.append(f"rule {rule}: {v} has {len(inst.out(v))} outside neighbors")
    return out


# ---------------------------------------------------------------------------
# search
# ---------------------------------------------------------------------------

def run_node(inst: Instance, depth: int, stats: SearchStats, verify: bool = False,
             limit: int | None = None, want_witness: bool = False):
    """Explore the search tree below ``inst``.

    Returns ``(True, witness_or_None)`` on acceptance, ``(False, None)`` otherwise.
    """
    if limit is not None and depth > limit:
        raise ProgressError(f"depth {depth} exceeds the measure-derived bound {limit}")
    if verify:
        try:
            check_invariants(inst)
        except InvariantError as exc:
            _violation(stats, f"invariant: {exc}")
        stats.dependency_checks += 1
        for msg in check_dependency_claim(inst):
            _violation(stats, f"dependency: {msg} at {inst.describe()}")
    outcome = select_and_apply(inst)
    stats.record(outcome.rule, depth)
    if verify:
        for msg in check_ladder(inst, outcome.rule):
            _violation(stats, f"ladder: {msg} at {inst.describe()}")

    if outcome.kind == "accept":
        witness = None
        if want_witness or verify:
            witness = complete_witness(inst)
            if verify:
                g = inst.g
                if witness is None or leaf_count(g.n, witness) < inst.k \
                        or not complies(g, witness, inst.tree, inst.L | inst.F):
                    _violation(stats, f"witness: accepting node has no valid completion {inst.describe()}")
            if not want_witness:
                witness = None
        return True, witness
    if outcome.kind == "reject":
        return False, None

    before = inst.measure
    for child in outcome.children:
        sub = child.build()
        if verify:
            stats.children_checked += 1
            drop = before - sub.measure
            if drop != child.delta:
                _violation(stats, f"delta: rule {outcome.rule} child drop {drop} != formula {child.delta}"
                                  f" at {inst.describe()}")
            if drop < child.min_delta:
                _violation(stats, f"delta: rule {outcome.rule} child drop {drop} < declared {child.min_delta}"
                                  f" at {inst.describe()}")
        ok, witness = run_node(sub, depth + 1, stats, verify, limit, want_witness)
        if ok:
            return True, witness
    return False, None


def _spanning_tree(g: Graph) -> list[tuple[int, int]]:
    parent = {0: None}
    queue = deque([0])
    while queue:
        x = queue.popleft()
        for y in sorted(g.adj[x]):
            if y not in parent:
                parent[y] = x
                queue.append(y)
    return sorted((min(c, p), max(c, p)) for c, p in parent.items() if p is not None)


def _precheck(g: Graph, k: int):
    """Closed-form answer for tiny or degenerate inputs, else None."""
    if k <= 0:
        return True
    if g.n == 0:
        return False
    if g.n == 1:
        return k <= 1
    if not g.is_connected():
        return False
    if k <= 2:
        return True
    return None


def kernelize(g: Graph, k: int) -> tuple[Graph, int]:
    """Preprocessing hook run before the search. Currently the identity."""
    return g, k


def search_depth_limit(g: Graph, k: int) -> int:
    return 4 * (8 * k + 1) + g.n


def _solve_root(g: Graph, k: int, r: int, verify: bool, want_witness: bool):
    inst = initial_instances(g, k, track_snapshots=verify)[r]
    stats = SearchStats()
    ok, witness = run_node(inst, 0, stats, verify, search_depth_limit(g, k), want_witness)
    return ok, witness, stats


def solve(g: Graph, k: int, *, witness: bool = False, verify: bool = False,
          parallel: bool = False, workers: int | None = None) -> Verdict:
    """Decide whether ``g`` has a spanning tree with at least ``k`` leaves."""
    start = time.perf_counter()
    g, k = kernelize(g, k)
    stats = SearchStats(initial_measure_quarters=8 * k + 1)
    verdict = Verdict(False, k, g.n, stats=stats)
    pre = _precheck(g, k)
    if pre is not None:
        verdict.decision = pre
        if pre and witness and g.n >= 1 and g.is_connected():
            verdict.witness = _spanning_tree(g)
    elif parallel:
        _solve_parallel(g, k, verdict, verify, witness, workers)
    else:
        old = sys.getrecursionlimit()
        sys.setrecursionlimit(max(old, 4 * search_depth_limit(g, k) + 1000))
        try:
            for r in range(g.n):
                ok, wit, sub = _solve_root(g, k, r, verify, witness)
                stats.merge(sub)
                if ok:
                    verdict.decision = True
                    verdict.witness = wit
                    break
        finally:
            sys.setrecursionlimit(old)
    stats.elapsed = time.perf_counter() - start
    return verdict


def _solve_parallel(g, k, verdict, verify, want_witness, workers):
    """Roots in worker processes; the first accepting root wins and pending roots are cancelled."""
    with ProcessPoolExecutor(max_workers=workers) as pool:
        pending = {pool.submit(_solve_root, g, k, r, verify, want_witness) for r in range(g.n)}
        while pending:
            done, pending = wait(pending, return_when=FIRST_COMPLETED)
            for fut in done:
                ok, wit, sub = fut.result()
                verdict.stats.merge(sub)
                if ok and not verdict.decision:
                    verdict.decision = True
                    verdict.witness = wit
            if verdict.decision:
                for fut in pending:
                    fut.cancel()
                break


def find_max_leaf(g: Graph, **opts) -> int:
    """Largest k with a yes answer, found by ascending search from k = 2."""
    if g.n == 0 or not g.is_connected():
        raise ValueError("graph has no spanning tree")
    if g.n == 1:
        return 1
    k = 2
    while k < g.n and solve(g, k + 1, **opts).decision:
        k += 1
    return k
