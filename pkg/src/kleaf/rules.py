"""The ordered rule system of the k-leaf search.

Each ``rule_<i>`` inspects an instance and returns an :class:`Outcome` when its
condition holds, else ``None``. Existential choices are resolved by smallest
vertex id first. Branch children are built lazily; each carries the quarter
drop predicted by the rule's own formula and the declared lower bound for
that branch, so the driver can check both against the realized measure.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Callable

from .instance import Instance


class ExhaustivenessError(RuntimeError):
    """No rule matched an instance."""


@dataclass
class Child:
    build: Callable[[], Instance]
    delta: int
    min_delta: int


@dataclass
class Outcome:
    rule: int
    kind: str  # accept | reject | reduce | branch
    children: list[Child] = field(default_factory=list)
    binding: dict = field(default_factory=dict)


def _accept(rule, **binding):
    return Outcome(rule, "accept", binding=binding)


def _reject(rule, **binding):
    return Outcome(rule, "reject", binding=binding)


def _reduce(rule, child, **binding):
    return Outcome(rule, "reduce", [child], binding)


def _branch(rule, children, **binding):
    return Outcome(rule, "branch", list(children), binding)


def _m(inst: Instance, v: int) -> int:
    return 1 if v in inst.M else 0


def _sorted(s):
    return sorted(s)


# ---------------------------------------------------------------------------
# Rules 1-3: decided in polynomial time
# ---------------------------------------------------------------------------

def rule_1(inst: Instance):
    if not inst.outside:
        return None
    # a floating tree leaf can never become a parent, so it is no source
    hit = inst.reach(inst.MN - inst.F, inst.outside - inst.F)
    missing = inst.outside - hit
    if missing:
        return _reject(1, v=min(missing))
    return None


def rule_2(inst: Instance):
    if inst.k <= max(len(inst.leaves), len(inst.L | inst.F)):
        return _accept(2)
    return None


def rule_3(inst: Instance):
    if not inst.outside:
        return _reject(3)
    return None


# ---------------------------------------------------------------------------
# Rules 4-9: reductions
# ---------------------------------------------------------------------------

def _undetermined(inst: Instance):
    return inst.g.vertices - inst.internal - inst.L - inst.F


def rule_4(inst: Instance, only=None):
    cands = inst.leaves & inst.F
    for v in _sorted(cands if only is None else cands & {only}):
        return _reduce(4, Child(
            lambda v=v: inst.derive(L=inst.L | {v}, M=inst.M - {v}, F=inst.F - {v}),
            _m(inst, v), 0), v=v)
    return None


def _float(inst, rule, w, **binding):
    """Turn ``w`` into a floating leaf."""
    return _reduce(rule, Child(
        lambda: inst.derive(M=inst.M - {w}, F=inst.F | {w}), 4 + _m(inst, w), 4), **binding)


def rule_5(inst: Instance, only=None):
    und = _undetermined(inst)
    for v in _sorted(und if only is None else und & {only}):
        if not inst.out(v):
            return _float(inst, 5, v, v=v)
    return None


def rule_6(inst: Instance, only=None):
    und = _undetermined(inst)
    mn = _sorted(inst.MN)
    for v in _sorted(und if only is None else und & {only}):
        ov = inst.out(v)
        for u in mn:
            if u != v and ov <= inst.g.adj[u]:
                return _float(inst, 6, v, v=v, u=u)
    return None


def rule_7(inst: Instance, only=None):
    und = _undetermined(inst)
    mn = _sorted(inst.MN)
    for v in _sorted(und if only is None else und & {only}):
        av = inst.g.adj[v]
        for u in mn:
            ou = inst.out(u)
            if u != v and ou <= av and ou <= inst.F:
                return _float(inst, 7, u, v=v, u=u)
    return None


def rule_8(inst: Instance, only=None):
    mn = inst.MN
    allowed = inst.outside - inst.F
    for v in _sorted(mn if only is None else mn & {only}):
        hit = inst.reach(mn - {v}, allowed)
        lonely = inst.outside - hit
        if not lonely:
            continue
        X = inst.out(v)
        if len(X) == 1:
            child = Child(lambda: inst.derive(attach=[(v, X)], M=inst.M - {v}), _m(inst, v), 0)
        else:
            sib = inst.sibling_in_N(v)
            child = Child(
                lambda: inst.derive(attach=[(v, X)], M=(inst.M - {v}) | sib | X),
                4 * (len(X) - 1) + _m(inst, v) - len(sib) - len(X), 1)
        return _reduce(8, child, v=v, u=min(lonely))
    return None


def rule_9(inst: Instance, only=None):
    mn = inst.MN
    for v in _sorted(mn if only is None else mn & {only}):
        ov = inst.out(v)
        if len(ov) == 1:
            (u,) = ov
            if len(inst.out(u)) == 1:
                return _reduce(9, Child(
                    lambda v=v: inst.derive(L=inst.L | {v}, M=inst.M - {v}),
                    4 + _m(inst, v), 4), v=v, u=u)
    return None


# ---------------------------------------------------------------------------
# Rule 10: a leaf whose two outside neighbors are floating
# ---------------------------------------------------------------------------

def _leaf_branch(inst, v, min_delta):
    """First branch shared by Rules 10-18: fix v as a leaf."""
    return Child(lambda: inst.derive(L=inst.L | {v}, M=inst.M - {v}),
                 4 + _m(inst, v), min_delta)


def rule_10(inst: Instance):
    g = inst.g
    for v in _sorted(inst.MN):
        X = inst.out(v)
        if len(X) != 2 or not X <= inst.F:
            continue
        NX = frozenset().union(*(g.adj[x] for x in X)) - X
        Z = NX - inst.internal - inst.L - inst.F - {v}
        sib = inst.sibling_in_N(v)
        second = Child(
            lambda: inst.derive(attach=[(v, X)], M=(inst.M - {v}) | sib, F=inst.F | Z),
            4 + _m(inst, v) + 4 * len(Z) - len(sib), 11)
        return _branch(10, [_leaf_branch(inst, v, 4), second], v=v)
    return None


# ---------------------------------------------------------------------------
# Rules 11-18: marked vertices
# ---------------------------------------------------------------------------

def rule_11(inst: Instance):
    for v in _sorted(inst.M):
        X = inst.out(v)
        if len(X) >= 3:
            Xn = X - inst.F
            second = Child(lambda: inst.derive(attach=[(v, X)], M=(inst.M - {v}) | Xn),
                           1 + 4 * (len(X) - 1) - len(Xn), 6)
            return _branch(11, [_leaf_branch(inst, v, 5), second], v=v)
    return None


def rule_12(inst: Instance):
    for v in _sorted(inst.M):
        X = inst.out(v)
        if len(X) == 2:
            second = Child(lambda: inst.derive(attach=[(v, X)], M=inst.M - {v}), 5, 5)
            return _branch(12, [_leaf_branch(inst, v, 5), second], v=v)
    return None


def _marked_chain(inst: Instance):
    """Yield (v, u, X) for v in M with a single outside neighbor u; X = outside neighbors of u."""
    for v in _sorted(inst.M):
        ov = inst.out(v)
        if len(ov) == 1:
            (u,) = ov
            yield v, u, inst.out(u)


def rule_13(inst: Instance):
    for v, u, X in _marked_chain(inst):
        if len(X) >= 3:
            second = Child(
                lambda: inst.derive(attach=[(v, [u]), (u, X)], M=(inst.M - {v}) | X),
                1 + 4 * (len(X) - 1) - len(X), 6)
            return _branch(13, [_leaf_branch(inst, v, 5), second], v=v, u=u)
    return None


def rule_14(inst: Instance):
    for v, u, X in _marked_chain(inst):
        if len(X) != 2:
            continue
        hit = inst.reach(inst.MN - {v}, inst.outside - inst.F - {u})
        if X <= hit:
            second = Child(lambda: inst.derive(attach=[(v, [u]), (u, X)], M=inst.M - {v}), 5, 5)
            return _branch(14, [_leaf_branch(inst, v, 5), second], v=v, u=u)
    return None


_PROBE_RULES = None


def _probe(inst: Instance, x: int):
    """Apply the first of Rules 4-9 that fires with its vertex v bound to x."""
    for fn in _PROBE_RULES:
        out = fn(inst, only=x)
        if out is not None:
            return out.children[0].build()
    return None


def rule_15(inst: Instance):
    for v, u, X in _marked_chain(inst):
        if len(X) != 2:
            continue

        def second_instance(v=v, u=u, X=X):
            return inst.derive(attach=[(v, [u]), (u, X)], M=(inst.M - {v}) | X)

        probe = second_instance()
        x1, x2 = sorted(X)
        for a, b in ((x1, x2), (x2, x1)):
            after = _probe(probe, a)
            if after is not None and _probe(after, b) is not None:
                second = Child(second_instance, 3, 3)
                return _branch(15, [_leaf_branch(inst, v, 5), second], v=v, u=u, x1=a, x2=b)
    return None


def _chain_x(inst: Instance, v, u, X):
    """Candidates x in X reachable from M|N avoiding T, F and u; with Y = N(x) - V_T - {u}."""
    hit = inst.reach(inst.MN, inst.outside - inst.F - {u})
    out = []
    for x in _sorted(X):
        if x in hit:
            out.append((x, inst.g.adj[x] - inst.VT - {u}))
    return out


def rule_16(inst: Instance):
    for v, u, X in _marked_chain(inst):
        if len(X) != 2:
            continue
        cands = [(x, Y) for x, Y in _chain_x(inst, v, u, X) if len(Y) >= 1]
        if not cands:
            continue
        x, Y = cands[0]
        if len(Y) < 2:
            continue
        (xo,) = X - {x}
        Yt = inst.g.adj[x] - inst.internal - {u} - inst.L
        Ynew = Yt - inst.F
        b2 = Child(
            lambda: inst.derive(attach=[(v, [u]), (u, X)], L=inst.L | {x},
                                M=(inst.M | X) - {v, x}, F=inst.F | Yt),
            1 + 4 + 4 - (0 if xo in inst.M else 1) + 4 * len(Ynew), 12)
        M3 = (inst.M | X | Y) - {v, x} - inst.F
        b3 = Child(
            lambda: inst.derive(attach=[(v, [u]), (u, X), (x, Y)], M=M3),
            1 + 4 + 4 * (len(Y) - 1) - len(M3 - inst.M), 6)
        return _branch(16, [_leaf_branch(inst, v, 5), b2, b3], v=v, u=u, x=x)
    return None


def _chain_xy(inst: Instance, v, u, X):
    """The x of Rules 17-18 with its single further outside neighbor y, or None."""
    cands = [(x, Y) for x, Y in _chain_x(inst, v, u, X) if len(Y) >= 1]
    if not cands:
        return None
    x, Y = cands[0]
    if len(Y) != 1:
        return None
    (y,) = Y
    return x, y


def _chain_branches(inst, rule, v, u, X, x, y, Z, Zmark, min3):
    (xo,) = X - {x}
    b2 = Child(
        lambda: inst.derive(attach=[(v, [u]), (u, X)], L=inst.L | {x},
                            M=(inst.M | X) - {v, x}, F=inst.F | {y}),
        1 + 4 + 4 - (0 if xo in inst.M else 1) + (0 if y in inst.F else 4), 12)
    M3 = (inst.M | X | Zmark) - {v, x}
    b3 = Child(
        lambda: inst.derive(attach=[(v, [u]), (u, X), (x, [y]), (y, Z)], M=M3),
        1 + 4 + 4 * (len(Z) - 1) - len(M3 - inst.M), min3)
    return _branch(rule, [_leaf_branch(inst, v, 5), b2, b3], v=v, u=u, x=x, y=y)


def rule_17(inst: Instance):
    for v, u, X in _marked_chain(inst):
        if len(X) != 2:
            continue
        xy = _chain_xy(inst, v, u, X)
        if xy is None:
            continue
        x, y = xy
        Z = inst.g.adj[y] - inst.VT - {x}
        if len(Z) >= 3:
            Zt = Z - inst.F
        else:
            hit = inst.reach(inst.MN, inst.outside - inst.F - {u, x, y})
            if not Z <= hit:
                continue
            Zt = frozenset()
        return _chain_branches(inst, 17, v, u, X, x, y, Z, Zt, 8)
    return None


def rule_18(inst: Instance):
    for v, u, X in _marked_chain(inst):
        if len(X) != 2:
            continue
        xy = _chain_xy(inst, v, u, X)
        if xy is None:
            raise ExhaustivenessError(f"rule 18: no vertex x with a single further neighbor ({inst.describe()})")
        x, y = xy
        Z = inst.g.adj[y] - inst.VT - {x}
        return _chain_branches(inst, 18, v, u, X, x, y, Z, Z, 6)
    return None


# ---------------------------------------------------------------------------
# Rules 19-23: vertices of N without a sibling in N
# ---------------------------------------------------------------------------

def _lone(inst: Instance):
    for v in _sorted(inst.N):
        if not inst.sibling_in_N(v):
            yield v


def _fix_with_float(inst, v, extra_f, min_delta, extra_l=()):
    newf = frozenset(extra_f) - inst.F
    return Child(lambda: inst.derive(L=inst.L | {v} | set(extra_l), F=inst.F | newf),
                 4 * (1 + len(extra_l)) + 4 * len(newf), min_delta)


def rule_19(inst: Instance):
    for v in _lone(inst):
        X = inst.out(v)
        if len(X) >= 3:
            Xn = X - inst.F
            b2 = Child(lambda: inst.derive(attach=[(v, X)], M=inst.M | Xn),
                       4 * (len(X) - 1) - len(Xn), 5)
            return _branch(19, [_fix_with_float(inst, v, X, 4), b2], v=v)
    return None


def rule_20(inst: Instance):
    for v in _lone(inst):
        X = inst.out(v)
        if len(X) == 2:
            b2 = Child(lambda: inst.derive(attach=[(v, X)]), 4, 4)
            return _branch(20, [_fix_with_float(inst, v, X, 8), b2], v=v)
    return None


def _lone_chain(inst: Instance):
    for v in _lone(inst):
        ov = inst.out(v)
        if len(ov) == 1:
            (u,) = ov
            yield v, u, inst.out(u)


def rule_21(inst: Instance):
    for v, u, X in _lone_chain(inst):
        if len(X) >= 3:
            b2 = Child(lambda: inst.derive(attach=[(v, [u]), (u, X)], M=inst.M | X),
                       4 * (len(X) - 1) - len(X), 5)
            return _branch(21, [_fix_with_float(inst, v, {u}, 8), b2], v=v, u=u)
    return None


def rule_22(inst: Instance):
    for v, u, X in _lone_chain(inst):
        hit = inst.reach(inst.N, inst.outside - inst.F - {u})
        if X <= hit:
            b2 = Child(lambda: inst.derive(attach=[(v, [u]), (u, X)]), 4 * (len(X) - 1), 4)
            return _branch(22, [_fix_with_float(inst, v, {u}, 8), b2], v=v, u=u)
    return None


def rule_23(inst: Instance):
    for v, u, X in _lone_chain(inst):
        return _reduce(23, Child(lambda: inst.derive(attach=[(v, [u]), (u, X)], M=inst.M | X),
                                 4 * (len(X) - 1) - len(X), 2), v=v, u=u)
    return None


# ---------------------------------------------------------------------------
# Rules 24-28: vertices of N whose N-sibling has one outside neighbor
# ---------------------------------------------------------------------------

def _pairs(inst: Instance):
    """Ordered pairs (v, s) of N-siblings."""
    for v in _sorted(inst.N):
        for s in _sorted(inst.sibling_in_N(v)):
            yield v, s


def _thin_pairs(inst: Instance):
    for v, s in _pairs(inst):
        if len(inst.out(s)) == 1:
            yield v, s


def rule_24(inst: Instance):
    for v, s in _thin_pairs(inst):
        X = inst.out(v)
        if len(X) >= 3:
            Xn = X - inst.F
            b2 = Child(lambda: inst.derive(attach=[(v, X)], M=inst.M | Xn | {s}),
                       4 * (len(X) - 1) - len(Xn) - 1, 4)
            return _branch(24, [_fix_with_float(inst, v, X, 4), b2], v=v, s=s)
    return None


def rule_25(inst: Instance):
    for v, s in _thin_pairs(inst):
        X = inst.out(v)
        if len(X) == 2:
            b2 = Child(lambda: inst.derive(attach=[(v, X)], M=inst.M | {s}), 3, 3)
            return _branch(25, [_fix_with_float(inst, v, X, 8), b2], v=v, s=s)
    return None


def _thin_chain(inst: Instance):
    for v, s in _thin_pairs(inst):
        ov = inst.out(v)
        if len(ov) == 1:
            (u,) = ov
            yield v, s, u, inst.out(u)


def rule_26(inst: Instance):
    for v, s, u, X in _thin_chain(inst):
        if len(X) >= 3:
            b2 = Child(lambda: inst.derive(attach=[(v, [u]), (u, X)], M=inst.M | X | {s}),
                       4 * (len(X) - 1) - len(X) - 1, 4)
            return _branch(26, [_fix_with_float(inst, v, {u}, 8), b2], v=v, s=s, u=u)
    return None


def rule_27(inst: Instance):
    for v, s, u, X in _thin_chain(inst):
        hit = inst.reach(inst.N, inst.outside - inst.F - {u})
        if X <= hit:
            b2 = Child(lambda: inst.derive(attach=[(v, [u]), (u, X)], M=inst.M | {s}),
                       4 * (len(X) - 1) - 1, 3)
            return _branch(27, [_fix_with_float(inst, v, {u}, 8), b2], v=v, s=s, u=u)
    return None


def rule_28(inst: Instance):
    for v, s, u, X in _thin_chain(inst):
        return _reduce(28, Child(
            lambda: inst.derive(attach=[(v, [u]), (u, X)], M=inst.M | X | {s}),
            4 * (len(X) - 1) - len(X) - 1, 1), v=v, s=s, u=u)
    return None


# ---------------------------------------------------------------------------
# Rules 29-30: a vertex reachable only through the sibling pair
# ---------------------------------------------------------------------------

def _pair_lonely(inst: Instance, v, s, extra_blocked=frozenset()):
    hit = inst.reach(inst.N - {v, s}, inst.outside - inst.F - extra_blocked)
    return inst.outside - hit


def _sibling_takes_over(inst, v, s, Y, mark_y, min_delta):
    """Fix v as a leaf and make s internal with children Y."""
    return Child(lambda: inst.derive(attach=[(s, Y)], L=inst.L | {v}, M=inst.M | mark_y),
                 4 + 4 * (len(Y) - 1) - len(mark_y - inst.M), min_delta)


def _pair_expand(inst, v, X, mark, min_delta):
    """Make v internal with children X and mark ``mark``."""
    return Child(lambda: inst.derive(attach=[(v, X)], M=inst.M | mark),
                 4 * (len(X) - 1) - len(mark - inst.M), min_delta)


def rule_29(inst: Instance):
    for v, s in _pairs(inst):
        X = inst.out(v)
        if len(X) < 3:
            continue
        lonely = _pair_lonely(inst, v, s)
        if lonely:
            Y = inst.out(s)
            return _branch(29, [_sibling_takes_over(inst, v, s, Y, Y, 6),
                                _pair_expand(inst, v, X, X | {s}, 4)],
                           v=v, s=s, u=min(lonely))
    return None


def rule_30(inst: Instance):
    for v, s in _pairs(inst):
        lonely = _pair_lonely(inst, v, s)
        if lonely:
            X, Y = inst.out(v), inst.out(s)
            return _branch(30, [_sibling_takes_over(inst, v, s, Y, Y, 6),
                                _pair_expand(inst, v, X, frozenset({s}), 3)],
                           v=v, s=s, u=min(lonely))
    return None


# ---------------------------------------------------------------------------
# Rules 31-33
# ---------------------------------------------------------------------------

def rule_31(inst: Instance):
    for v, s in _pairs(inst):
        X, Y = inst.out(v), inst.out(s)
        common = (X & Y) - inst.F
        if common:
            Xt = X - inst.F if len(X) >= 3 else frozenset()
            Yt = Y - inst.F if len(Y) >= 3 else frozenset()
            return _branch(31, [_sibling_takes_over(inst, v, s, Y, Yt, 8),
                                _pair_expand(inst, v, X, Xt | {s}, 3)],
                           v=v, s=s, u=min(common))
    return None


def rule_32(inst: Instance):
    for v, s in _pairs(inst):
        X = inst.out(v)
        if len(X) >= 3 and len(X & inst.F) >= 2:
            b1 = Child(lambda: inst.derive(L=inst.L | {v}), 4, 4)
            return _branch(32, [b1, _pair_expand(inst, v, X, (X - inst.F) | {s}, 6)], v=v, s=s)
    return None


def _both_leaves(inst, v, s, float_also, min_delta):
    newf = frozenset(float_also) - inst.F
    return Child(lambda: inst.derive(L=inst.L | {v, s}, F=inst.F | newf),
                 8 + 4 * len(newf), min_delta)


def _one_internal(inst, v, X, leaf, mark=frozenset(), extra_l=(), drop_f=(), min_delta=8):
    """Make v internal with children X, fix ``leaf`` (and ``extra_l``) as leaves."""
    newl = {leaf} | set(extra_l)
    drop = frozenset(drop_f)
    return Child(lambda: inst.derive(attach=[(v, X)], L=inst.L | newl, M=inst.M | mark,
                                     F=inst.F - drop),
                 4 * (len(X) - 1) + 4 * len(newl) - 4 * len(drop) - len(mark - inst.M), min_delta)


def rule_33(inst: Instance):
    for v, s in _pairs(inst):
        X = inst.out(v)
        if len(X) < 3:
            continue
        Y = inst.out(s)
        Z = X - Y
        Xt = X - inst.F
        Yt = Y - inst.F if len(Y) >= 3 else frozenset()
        Zt = Z - inst.F if len(Z) >= 3 else frozenset()
        mark4 = Zt | Yt
        b4 = Child(lambda: inst.derive(attach=[(v, Z), (s, Y)], M=inst.M | mark4),
                   4 * (len(Z) - 1) + 4 * (len(Y) - 1) - len(mark4 - inst.M), 8)
        return _branch(33, [
            _both_leaves(inst, v, s, X | Y, 20),
            _one_internal(inst, v, X, s, mark=Xt, min_delta=8),
            _one_internal(inst, s, Y, v, mark=Yt, min_delta=8),
            b4,
        ], v=v, s=s)
    return None


# ---------------------------------------------------------------------------
# Rules 34-36: sibling pair sharing a floating outside neighbor
# ---------------------------------------------------------------------------

def _shared_floating(inst: Instance):
    """Yield (v, s, u, a, b, X, Y, Z) for the configuration of Rules 34-36."""
    g = inst.g
    for v, s in _pairs(inst):
        ov, os_ = inst.out(v), inst.out(s)
        if len(ov) != 2 or len(os_) != 2:
            continue
        common = ov & os_
        if len(common) != 1:
            continue
        (u,) = common
        if u not in inst.F:
            continue
        (a,) = ov - {u}
        (b,) = os_ - {u}
        X = g.adj[a] - inst.VT - {v, u, b}
        Y = g.adj[b] - inst.VT - {s, u, a}
        yield v, s, u, a, b, X, Y, Y - X


def _fork_children(inst, v, s, u, a, b, X, Z, mark, min_delta):
    return Child(
        lambda: inst.derive(attach=[(v, [a, u]), (s, [b]), (a, X), (b, Z)], M=mark),
        4 + 4 * (len(X) - 1) + 4 * max(len(Z) - 1, 0) - len(mark - inst.M), min_delta)


def _big_fork(X, Y, Z):
    return len(X | Y) >= 4 and len(X) >= 2 and len(Z) >= 1


def _fork_blocked(inst, v, s, b, X, Z):
    hit = inst.reach((inst.N - {v, s}) | (X - inst.F), inst.outside - inst.F - {v, s, b})
    return Z - hit


def rule_34(inst: Instance):
    for v, s, u, a, b, X, Y, Z in _shared_floating(inst):
        if not _big_fork(X, Y, Z) or _fork_blocked(inst, v, s, b, X, Z):
            continue
        Zt = Z - inst.F if len(Z) >= 3 else frozenset()
        mark = (inst.M | X | Zt) - inst.F
        return _branch(34, [
            _both_leaves(inst, v, s, {a, b}, 16),
            _one_internal(inst, v, {a, u}, s),
            _one_internal(inst, s, {u, b}, v),
            _fork_children(inst, v, s, u, a, b, X, Z, mark, 9),
        ], v=v, s=s, u=u, a=a, b=b)
    return None


def rule_35(inst: Instance):
    for v, s, u, a, b, X, Y, Z in _shared_floating(inst):
        if not _big_fork(X, Y, Z) or not _fork_blocked(inst, v, s, b, X, Z):
            continue
        mark = (inst.M | X | Y) - inst.F
        return _branch(35, [
            _one_internal(inst, v, {a, u}, s),
            _one_internal(inst, s, {u, b}, v),
            _fork_children(inst, v, s, u, a, b, X, Z, mark, 8),
        ], v=v, s=s, u=u, a=a, b=b)
    return None


def rule_36(inst: Instance):
    for v, s, u, a, b, X, Y, Z in _shared_floating(inst):
        if _big_fork(X, Y, Z):
            continue
        return _branch(36, [
            _both_leaves(inst, v, s, {a, b}, 16),
            _one_internal(inst, v, {a, u}, s),
            _one_internal(inst, s, {u, b}, v),
        ], v=v, s=s, u=u, a=a, b=b)
    return None


# ---------------------------------------------------------------------------
# Rules 37-39: sibling pair with disjoint outside neighborhoods
# ---------------------------------------------------------------------------

def rule_37(inst: Instance):
    for v, s in _pairs(inst):
        X, Y = inst.out(v), inst.out(s)
        if len(X) != 2 or len(Y) != 2 or X & Y or len((X | Y) & inst.F) > 1:
            continue
        if _pair_lonely(inst, v, s):
            continue
        b4 = Child(lambda: inst.derive(attach=[(v, X), (s, Y)]), 8, 8)
        return _branch(37, [
            _both_leaves(inst, v, s, X | Y, 20),
            _one_internal(inst, v, X, s),
            _one_internal(inst, s, Y, v),
            b4,
        ], v=v, s=s)
    return None


def _split_pairs(inst: Instance):
    """Yield (v, s, a, b, c, d) with {a,b}, {c,d} the disjoint outside pairs and a, c floating."""
    F = inst.F
    for v, s in _pairs(inst):
        X, Y = inst.out(v), inst.out(s)
        if len(X) != 2 or len(Y) != 2 or X & Y:
            continue
        XF, YF = X & F, Y & F
        if len(XF) != 1 or len(YF) != 1:
            continue
        (a,), (b,) = XF, X - F
        (c,), (d,) = YF, Y - F
        yield v, s, a, b, c, d


def _split_tail(inst, v, s, a, b, c, d):
    return [
        _one_internal(inst, v, {a, b}, s, extra_l=(a,), drop_f=(a,)),
        _one_internal(inst, s, {c, d}, v, extra_l=(c,), drop_f=(c,)),
        Child(lambda: inst.derive(attach=[(v, {a, b}), (s, {c, d})]), 8, 8),
    ]


def rule_38(inst: Instance):
    for v, s, a, b, c, d in _split_pairs(inst):
        if _pair_lonely(inst, v, s, frozenset({b})) or _pair_lonely(inst, v, s, frozenset({d})):
            continue
        return _branch(38, [_both_leaves(inst, v, s, {b, d}, 16)] + _split_tail(inst, v, s, a, b, c, d),
                       v=v, s=s, a=a, b=b, c=c, d=d)
    return None


def rule_39(inst: Instance):
    for v, s, a, b, c, d in _split_pairs(inst):
        return _branch(39, _split_tail(inst, v, s, a, b, c, d), v=v, s=s, a=a, b=b, c=c, d=d)
    return None


RULES: dict[int, Callable] = {i: globals()[f"rule_{i}"] for i in range(1, 40)}
_PROBE_RULES = tuple(RULES[i] for i in range(4, 10))


def select_and_apply(inst: Instance) -> Outcome:
    """Outcome of the first rule whose condition holds."""
    for i in range(1, 40):
        out = RULES[i](inst)
        if out is not None:
            return out
    raise ExhaustivenessError(f"no rule applies to {inst.describe()}")


def select_rule(inst: Instance) -> int:
    return select_and_apply(inst).rule


def apply_rule(inst: Instance, rule_id: int) -> Outcome:
    """Apply ``rule_id``; it must be the first applicable rule."""
    out = select_and_apply(inst)
    if out.rule != rule_id:
        raise ValueError(f"rule {rule_id} is not the first applicable rule (rule {out.rule} is)")
    return out
