"""Exact checking of assignments against instances.

Prefix sets only grow and stop growing at the stabilization column, so
"for every column j" in the pairwise rule reduces to a finite scan.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from itertools import combinations

from .model import TAIL, Assignment, DimensionError, Instance, prefix_set, stabilization_column

RULE_ORDER = {"1": 0, "2a": 1, "2b": 2, "3": 3}


@dataclass(frozen=True)
class Violation:
    rule: str
    rows: tuple[int, ...]
    col: int | str
    message: str

    def sort_key(self):
        col = self.col if isinstance(self.col, int) else float("inf")
        return (RULE_ORDER[self.rule], self.rows, col)

    def render(self) -> str:
        rows = ",".join(map(str, self.rows))
        return f"RULE {self.rule} rows={rows} col={self.col} : {self.message}"


@dataclass
class VerificationReport:
    violations: list[Violation] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not self.violations

    def render(self) -> str:
        if self.ok:
            return "OK"
        return "\n".join(v.render() for v in self.violations)


def _check_dims(inst: Instance, a: Assignment):
    if inst.n != a.n or inst.k != a.k:
        raise DimensionError(
            f"instance has n={inst.n} k={inst.k}, assignment has n={a.n} k={a.k}"
        )


def _check_pair(a: Assignment, i1: int, i2: int):
    for i in (i1, i2):
        if not 1 <= i <= a.k:
            raise IndexError(f"row {i} out of range 1..{a.k}")
    if i1 == i2:
        raise ValueError("rows must differ")


def check_rule1(inst: Instance, a: Assignment) -> list[Violation]:
    _check_dims(inst, a)
    out = []
    # Columns between J_out and J hold the tail value but are governed by S_ij.
    last = max(a.out_horizon, inst.horizon)
    for i in range(1, a.k + 1):
        for j in range(1, last + 1):
            v = a.value(i, j)
            if v not in inst.cell(i, j):
                out.append(Violation("1", (i,), j, f"value {v} not in candidate set"))
        t = a.tail_values[i - 1]
        if t not in inst.tails[i - 1]:
            out.append(Violation("1", (i,), TAIL, f"tail value {t} not in tail set"))
    return out


def check_rule2(inst: Instance, a: Assignment) -> list[Violation]:
    _check_dims(inst, a)
    n = a.n
    out = []
    for i, row in enumerate(a.entries, 1):
        for j in range(2, n + 1):
            if row[j - 1] in row[: j - 1]:
                out.append(Violation("2a", (i,), j, f"value {row[j - 1]} repeats inside the first {n} entries"))
        head = set(row[: n - 1])
        for j in range(n, a.out_horizon + 1):
            if row[j - 1] in head:
                out.append(Violation("2b", (i,), j, f"value {row[j - 1]} repeats one of the first {n - 1} entries"))
        t = a.tail_values[i - 1]
        if t in head:
            out.append(Violation("2b", (i,), TAIL, f"tail value {t} repeats one of the first {n - 1} entries"))
    return out


def p_holds(a: Assignment, i1: int, i2: int, j: int) -> bool:
    """True when rows i1 and i2 have different prefix sets at column j."""
    _check_pair(a, i1, i2)
    return prefix_set(a, i1, j) != prefix_set(a, i2, j)


def first_equal_column(a: Assignment, i1: int, i2: int) -> int | None:
    """Smallest column where the two prefix sets coincide, or None if never."""
    _check_pair(a, i1, i2)
    m1: set[int] = set()
    m2: set[int] = set()
    for j in range(1, stabilization_column(a) + 1):
        m1.add(a.value(i1, j))
        m2.add(a.value(i2, j))
        if m1 == m2:
            return j
    return None


def q_holds(a: Assignment, i1: int, i2: int) -> bool:
    return first_equal_column(a, i1, i2) is None


def check_rule3(inst: Instance, a: Assignment) -> list[Violation]:
    _check_dims(inst, a)
    out = []
    for i1, i2 in combinations(range(1, a.k + 1), 2):
        j = first_equal_column(a, i1, i2)
        if j is not None:
            out.append(Violation("3", (i1, i2), j, "rows have equal prefix sets"))
    return out


def verify(inst: Instance, a: Assignment) -> VerificationReport:
    violations = check_rule1(inst, a) + check_rule2(inst, a) + check_rule3(inst, a)
    violations.sort(key=Violation.sort_key)
    return VerificationReport(violations)


@dataclass(frozen=True)
class WitnessSegment:
    """``value`` lies in M(owner, j) and not in the other row's M for start <= j <= end."""

    start: int
    end: int | None  # None: unbounded
    value: int
    owner: int


@dataclass(frozen=True)
class PairExplanation:
    rows: tuple[int, int]
    segments: tuple[WitnessSegment, ...]
    failure_column: int | None

    @property
    def holds(self) -> bool:
        return self.failure_column is None


def _first_occurrence(a: Assignment, i: int) -> dict[int, int]:
    first: dict[int, int] = {}
    for j in range(1, stabilization_column(a) + 1):
        first.setdefault(a.value(i, j), j)
    return first


def explain_pair(a: Assignment, i1: int, i2: int) -> PairExplanation:
    """Cover every column with values separating the two rows' prefix sets.

    Greedy: at each uncovered column pick the separating value whose
    separation lasts longest (smallest value on ties).
    """
    _check_pair(a, i1, i2)
    first = {i1: _first_occurrence(a, i1), i2: _first_occurrence(a, i2)}
    segments = []
    j = 1
    while True:
        best = None
        for owner, other in ((i1, i2), (i2, i1)):
            for x, at in first[owner].items():
                if at > j:
                    continue
                seen_other = first[other].get(x)
                if seen_other is not None and seen_other <= j:
                    continue
                end = None if seen_other is None else seen_other - 1
                key = (float("inf") if end is None else end, -x)
                if best is None or key > best[0]:
                    best = (key, WitnessSegment(j, end, x, owner))
        if best is None:
            return PairExplanation((i1, i2), tuple(segments), j)
        seg = best[1]
        segments.append(seg)
        if seg.end is None:
            return PairExplanation((i1, i2), tuple(segments), None)
        j = seg.end + 1
