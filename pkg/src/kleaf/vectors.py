"""Branching-vector arithmetic: composition, roots, klam values and the per-rule root report."""

from __future__ import annotations

import json
import math
from dataclasses import dataclass
from fractions import Fraction

from .ruletable import RuleInfo, branching_rules

QUARTER = 4
TARGET_BASE = 3.188
BOUND = TARGET_BASE ** 0.5
KLAM_LIMIT = 10 ** 20


@dataclass(frozen=True)
class BranchingVector:
    """Positive measure drops per branch, in quarter units."""

    components: tuple[int, ...]
    provenance: str = "flat"

    def __post_init__(self):
        if not self.components:
            raise ValueError("a branching vector needs at least one component")
        if any(not isinstance(c, int) or c <= 0 for c in self.components):
            raise ValueError(f"components must be positive integers, got {self.components}")

    @classmethod
    def from_units(cls, *values) -> BranchingVector:
        """Build from whole-unit drops such as ``1.25`` or ``Fraction(5, 4)``."""
        comps = []
        for v in values:
            q = Fraction(v) * QUARTER
            if q.denominator != 1:
                raise ValueError(f"{v} is not a multiple of 1/4")
            comps.append(int(q))
        return cls(tuple(comps))

    @property
    def units(self) -> tuple[float, ...]:
        return tuple(c / QUARTER for c in self.components)

    def root(self, tol: float = 1e-12) -> float:
        return root(self, tol)

    def __len__(self):
        return len(self.components)


def _f(alpha: float, comps) -> float:
    return sum(alpha ** (-c / QUARTER) for c in comps) - 1.0


def root(v: BranchingVector, tol: float = 1e-12) -> float:
    """Unique alpha > 1 with sum(alpha ** -b_i) = 1, b_i in whole units, by bisection."""
    if tol <= 0:
        raise ValueError("tolerance must be positive")
    comps = v.components
    ell = len(comps)
    if ell < 2:
        raise ValueError("a single-branch vector is not branching")
    lo = 1.0
    # sum <= ell * hi ** -min(b) = 1 at this point
    hi = ell ** (QUARTER / min(comps))
    while hi - lo > tol:
        mid = (lo + hi) / 2
        if _f(mid, comps) > 0:
            lo = mid
        else:
            hi = mid
    return hi


def compose(outer: BranchingVector, index: int, inner: BranchingVector) -> BranchingVector:
    """Replace component ``index`` of ``outer`` by itself plus each component of ``inner``."""
    if not 0 <= index < len(outer.components):
        raise IndexError(f"component {index} out of range")
    b = outer.components[index]
    comps = outer.components[:index] + tuple(b + c for c in inner.components) + outer.components[index + 1:]
    return BranchingVector(comps, "composed")


def from_nested(nested) -> BranchingVector:
    """Flatten a nested vector description; see :mod:`kleaf.ruletable`."""
    flat = tuple(c if isinstance(c, int) else c[0] for c in nested)
    vec = BranchingVector(flat)
    # compose from the back so earlier indices stay valid
    for i in reversed(range(len(nested))):
        item = nested[i]
        if not isinstance(item, int):
            vec = compose(vec, i, from_nested(item[1]))
    return vec


def klam(base: float) -> int:
    """Largest k with base ** k < 10 ** 20."""
    if base <= 1:
        raise ValueError("klam needs a base greater than 1")
    k = int(math.floor(20 / math.log10(base)))
    exact = Fraction(str(base)) if isinstance(base, float) else Fraction(base)
    # logarithms can be off by one near the boundary; settle it exactly
    while exact ** (k + 1) < KLAM_LIMIT:
        k += 1
    while k > 0 and exact ** k >= KLAM_LIMIT:
        k -= 1
    return k


TABLE_BASES = (14.23, 9.49, 8.12, 6.75, 4, 3.72, 3.46, 3.188)


@dataclass(frozen=True)
class RuleRoot:
    rule: int
    label: str
    vector: BranchingVector
    root: float

    @property
    def margin(self) -> float:
        return BOUND - self.root

    @property
    def ok(self) -> bool:
        return self.margin > 1e-6


@dataclass(frozen=True)
class RootReport:
    rows: tuple[RuleRoot, ...]
    klams: tuple[tuple[float, int], ...]

    @property
    def passed(self) -> bool:
        return all(r.ok for r in self.rows)

    def worst(self) -> RuleRoot:
        return max(self.rows, key=lambda r: r.root)

    def to_text(self) -> str:
        lines = [f"{'rule':>4}  {'vector (units)':<34} {'root':>10}  {'margin':>10}  status"]
        for r in self.rows:
            vec = "(" + ", ".join(_fmt_units(c) for c in r.vector.components) + ")"
            lines.append(f"{r.rule:>4}  {vec:<34} {r.root:>10.6f}  {r.margin:>10.6f}  "
                         f"{'ok' if r.ok else 'FAIL'}")
        w = self.worst()
        lines.append(f"bound {BOUND:.6f}; worst rule {w.rule} root {w.root:.6f}; "
                     f"overall {'PASS' if self.passed else 'FAIL'}")
        lines.append("")
        lines.append(f"{'base':>8}  klam")
        for base, kv in self.klams:
            lines.append(f"{base:>8}  {kv}")
        lines.append(f"klam({TARGET_BASE}) = {klam(TARGET_BASE)}")
        return "\n".join(lines)

    def to_dict(self) -> dict:
        return {
            "bound": BOUND,
            "passed": self.passed,
            "rules": [
                {"rule": r.rule, "label": r.label, "vector_quarters": list(r.vector.components),
                 "root": r.root, "margin": r.margin, "ok": r.ok}
                for r in self.rows
            ],
            "klam": [{"base": b, "klam": kv} for b, kv in self.klams],
            "klam_target": klam(TARGET_BASE),
        }

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), indent=2)

    def to_csv_rows(self) -> list[list]:
        rows = [["rule", "label", "vector_quarters", "root", "margin", "ok"]]
        for r in self.rows:
            rows.append([r.rule, r.label, " ".join(map(str, r.vector.components)),
                         f"{r.root:.9f}", f"{r.margin:.9f}", r.ok])
        return rows


def _fmt_units(q: int) -> str:
    whole, rest = divmod(q, QUARTER)
    frac = {0: "", 1: "¼", 2: "½", 3: "¾"}[rest]
    if whole == 0 and frac:
        return frac
    return f"{whole}{frac}"


def rule_root(info: RuleInfo, tol: float = 1e-12) -> RuleRoot:
    vec = from_nested(info.vector)
    return RuleRoot(info.id, info.anchor, vec, root(vec, tol))


def verify_all_rules(tol: float = 1e-12) -> RootReport:
    rows = tuple(rule_root(r, tol) for r in branching_rules())
    return RootReport(rows, tuple((b, klam(b)) for b in TABLE_BASES))
