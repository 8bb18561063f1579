"""Constructive solvers.

Every free choice is resolved by taking the smallest eligible value, so the
solvers are deterministic functions of the instance.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Mapping, Sequence

from .model import Assignment, Instance
from .verifier import verify

ROUTES = ("equal", "wide", "n3k4", "oracle")


class FillError(ValueError):
    """No value is left for some position of a row."""

    def __init__(self, column, message="no eligible value"):
        self.column = column
        super().__init__(f"{message} at column {column}")


class InternalContradiction(RuntimeError):
    """A choice point the construction proves non-empty came up empty."""


class SelfCheckError(AssertionError):
    """A solver produced an assignment that fails verification."""


# -- building blocks ----------------------------------------------------------

def distinct_representatives(sets: Sequence[Iterable[int]]) -> list[int] | None:
    """Pick c_i from sets[i] with all c_i distinct, or None if impossible.

    Each set first takes its smallest free value; only when none is free does
    it look for an augmenting path (values scanned in ascending order).
    """
    sets = [sorted(s) for s in sets]
    owner: dict[int, int] = {}

    def augment(row: int, seen: set[int]) -> bool:
        for v in sets[row]:
            if v in seen:
                continue
            seen.add(v)
            if v not in owner or augment(owner[v], seen):
                owner[v] = row
                return True
        return False

    for row, s in enumerate(sets):
        free = next((v for v in s if v not in owner), None)
        if free is not None:
            owner[free] = row
        elif not augment(row, set()):
            return None
    chosen = [0] * len(sets)
    for v, row in owner.items():
        chosen[row] = v
    return chosen


def sdr_first_column(inst: Instance) -> list[int]:
    """Distinct first-column values c_i in S_i1, one per row."""
    sets = [inst.cell(i, 1) for i in range(1, inst.k + 1)]
    if any(len(s) != inst.k for s in sets):
        raise ValueError("first-column sets must all have k elements")
    chosen = distinct_representatives(sets)
    if chosen is None:
        raise InternalContradiction("no system of distinct representatives")
    return chosen


def fill_row(sets: Sequence[Iterable[int]], tail_set: Iterable[int], n: int,
             preplaced: Mapping[int, int] | None = None,
             forbidden: Iterable[int] = ()) -> tuple[list[int], int]:
    """Complete one row so that it obeys the distinctness and avoidance rules.

    ``sets`` gives the candidate sets of columns 1..len(sets). Columns are
    filled left to right with the smallest value that lies in the column's
    set, is not ``forbidden`` and keeps the row legal; the tail value comes
    last. Preplaced positions are taken as given.
    """
    preplaced = dict(preplaced or {})
    forbidden = set(forbidden)
    width = len(sets)
    if width < n:
        raise ValueError("row shorter than the distinct block")
    for j, v in preplaced.items():
        if not 1 <= j <= width:
            raise ValueError(f"preplaced column {j} outside 1..{width}")
        if v not in set(sets[j - 1]):
            raise ValueError(f"preplaced value {v} not in the set of column {j}")
    late = {v for j, v in preplaced.items() if j > n}
    row: list[int | None] = [preplaced.get(j) for j in range(1, width + 1)]
    for j in range(1, width + 1):
        if row[j - 1] is not None:
            continue
        if j <= n:
            taken = {v for c, v in enumerate(row[:n], 1) if v is not None and c != j}
            if j < n:
                taken |= late
        else:
            taken = set(row[: n - 1])
        v = next((x for x in sorted(sets[j - 1]) if x not in forbidden and x not in taken), None)
        if v is None:
            raise FillError(j)
        row[j - 1] = v
    head = set(row[: n - 1])
    tail = next((x for x in sorted(tail_set) if x not in forbidden and x not in head), None)
    if tail is None:
        raise FillError("tail")
    entries = [int(v) for v in row]
    if len(set(entries[:n])) != n or any(v in head for v in entries[n - 1:]):
        raise ValueError("preplaced values break row distinctness")
    return entries, tail


def find_min_r(inst: Instance, v1: int) -> tuple[int, int, int] | None:
    """Earliest column r >= 2 of row 1 sharing a value other than v1 with some S_i1.

    The tail counts as column J + 1. Returns (r, i0, v2) with the smallest
    such row i0 in {2, 3, 4} and v2 the smallest shared value, or None.
    """
    for j in range(2, inst.horizon + 2):
        row1 = set(inst.cell(1, j))
        for i in range(2, min(inst.k, 4) + 1):
            common = (row1 & set(inst.cell(i, 1))) - {v1}
            if common:
                return j, i, min(common)
    return None


def find_min_s(row2: Sequence[int], tail: int,
               first_sets: Sequence[Iterable[int]]) -> tuple[int, int, int] | None:
    """Earliest column s >= 2 whose row-2 entry lies in S_31 or S_41.

    ``first_sets`` is (S_31, S_41); the tail counts as column len(row2) + 1.
    Returns (s, i, v3) with i = 3 preferred over 4, or None.
    """
    s3, s4 = (set(s) for s in first_sets)
    values = list(row2[1:]) + [tail]
    for s, v in enumerate(values, 2):
        if v in s3:
            return s, 3, v
        if v in s4:
            return s, 4, v
    return None


# -- constructions --------------------------------------------------------------

def solve_equal_sets(n: int, k: int, values: Iterable[int]) -> Assignment:
    """Cyclic shifts of the sorted common set: row i starts at its i-th element."""
    s = sorted(set(values))
    if k != n + 1:
        raise ValueError(f"equal-sets construction needs k = n + 1 (got n={n}, k={k})")
    if len(s) != k:
        raise ValueError(f"common set must have k={k} elements")
    rows = [[s[(i + j) % k] for j in range(n)] for i in range(k)]
    return Assignment(n, k, n, tuple(map(tuple, rows)), tuple(r[-1] for r in rows))


def wide_forbidden_sets(first: Sequence[int], n: int) -> list[frozenset[int]]:
    """F_i: first-column values of the rows at circular offsets n .. k-1 from row i."""
    k = len(first)
    return [frozenset(first[m] for m in range(k) if n <= (m - i) % k <= k - 1)
            for i in range(k)]


def wide_coverage_holds(first: Sequence[int], forbidden: Sequence[frozenset[int]]) -> bool:
    k = len(first)
    return all(first[a] in forbidden[b] or first[b] in forbidden[a]
               for a in range(k) for b in range(a + 1, k))


def solve_wide(inst: Instance) -> Assignment:
    n, k = inst.n, inst.k
    if k < 2 * n - 1:
        raise ValueError(f"wide construction needs k >= 2n - 1 (got n={n}, k={k})")
    first = sdr_first_column(inst)
    forbidden = wide_forbidden_sets(first, n)
    if not wide_coverage_holds(first, forbidden):
        raise InternalContradiction("forbidden windows do not separate every row pair")
    rows, tails = [], []
    for i in range(1, k + 1):
        entries, tail = fill_row(inst.row_sets(i, inst.horizon), inst.tails[i - 1], n,
                                 {1: first[i - 1]}, forbidden[i - 1])
        rows.append(tuple(entries))
        tails.append(tail)
    return Assignment(n, k, inst.horizon, tuple(rows), tuple(tails))


@dataclass(frozen=True)
class CaseTrace:
    """Branches taken by the n=3, k=4 construction.

    ``i0`` is the original row index matched in the first case split; ``i``
    is the label (3 or 4) hit in the second one. ``perm[p]`` is the original
    row that plays the role of row p + 1.
    """

    case2: str
    r: int | None
    i0: int | None
    case4: str
    s: int | None
    i: int | None
    values: tuple[int, int, int, int]
    perm: tuple[int, int, int, int]

    def render(self) -> str:
        v1, v2, v3, v4 = self.values
        c2 = "2a" if self.case2 == "2a" else f"2b r={self.r} i0={self.i0} v2={v2}"
        c4 = "4a" if self.case4 == "4a" else f"4b s={self.s} i={self.i} v3={v3}"
        vals = ",".join(map(str, self.values))
        perm = ",".join(map(str, self.perm))
        return f"case2={c2} case4={c4} v=[{vals}] perm=[{perm}]"


def witness_invariant_failures(a: Assignment, trace: CaseTrace) -> list[str]:
    """Separating-value facts the n=3, k=4 construction must guarantee."""
    v1, v2, v3, v4 = trace.values

    def row(p: int) -> list[int]:
        orig = trace.perm[p - 1]
        return list(a.entries[orig - 1]) + [a.tail_values[orig - 1]]

    failures = []
    for p, v, label in ((2, v1, "v1"), (3, v2, "v2"), (4, v3, "v3")):
        if v in row(p):
            failures.append(f"{label} occurs in row {p}")
    if trace.case2 == "2b":
        if v4 in row(1):
            failures.append("v4 occurs in row 1")
        if v3 in row(1)[1: trace.r - 1]:
            failures.append("v3 occurs in row 1 before column r")
    if trace.case4 == "4b" and v4 in row(2)[1: trace.s - 1]:
        failures.append("v4 occurs in row 2 before column s")
    return failures


def solve_n3k4(inst: Instance) -> tuple[Assignment, CaseTrace]:
    if inst.n != 3 or inst.k != 4:
        raise ValueError(f"this construction needs n=3, k=4 (got n={inst.n}, k={inst.k})")
    width = inst.horizon
    perm = [1, 2, 3, 4]
    rows: dict[int, list[int]] = {}
    tails: dict[int, int] = {}

    def sets_of(p: int) -> list[tuple[int, ...]]:
        return inst.row_sets(perm[p - 1], width)

    def fill(p: int, preplaced: dict[int, int], forbidden: set[int]):
        try:
            rows[p], tails[p] = fill_row(sets_of(p), inst.tails[perm[p - 1] - 1], 3,
                                         preplaced, forbidden)
        except FillError as exc:
            raise InternalContradiction(f"row {p}: {exc}") from exc

    def smallest(p: int, exclude: set[int]) -> int:
        v = next((x for x in inst.cell(perm[p - 1], 1) if x not in exclude), None)
        if v is None:
            raise InternalContradiction(f"row {p}: first column exhausted")
        return v

    v1 = inst.cell(1, 1)[0]
    hit_r = find_min_r(inst, v1)
    if hit_r is None:
        case2, r, i0 = "2a", None, None
        fill(1, {1: v1}, set())
        v2 = smallest(2, {v1})
    else:
        case2 = "2b"
        r, i0, v2 = hit_r
        perm[1], perm[i0 - 1] = perm[i0 - 1], perm[1]
        width = max(width, r)

    fill(2, {1: v2}, {v1})

    hit_s = find_min_s(rows[2], tails[2], (inst.cell(perm[2], 1), inst.cell(perm[3], 1)))
    if hit_s is None:
        case4, s, i_hit = "4a", None, None
        v3 = smallest(3, {v1, v2})
    else:
        case4 = "4b"
        s, i_hit, v3 = hit_s
        if i_hit == 4:
            perm[2], perm[3] = perm[3], perm[2]
        if s > width:
            width = s
            for p in rows:
                rows[p].append(tails[p])

    fill(3, {1: v3}, {v2})
    v4 = smallest(4, {v1, v2, v3})
    fill(4, {1: v4}, {v3})
    if case2 == "2b":
        fill(1, {1: v1, r: v2}, {v4})

    out_rows: list[tuple[int, ...]] = [()] * 4
    out_tails = [0] * 4
    for p in range(1, 5):
        out_rows[perm[p - 1] - 1] = tuple(rows[p])
        out_tails[perm[p - 1] - 1] = tails[p]
    a = Assignment(3, 4, width, tuple(out_rows), tuple(out_tails))
    trace = CaseTrace(case2, r, i0, case4, s, i_hit, (v1, v2, v3, v4), tuple(perm))
    failures = witness_invariant_failures(a, trace)
    if failures:
        raise InternalContradiction("; ".join(failures))
    return a, trace


# -- dispatcher -------------------------------------------------------------------

@dataclass(frozen=True)
class SolveOutcome:
    status: str  # solved | unsupported | infeasible | unknown
    route: str | None = None
    assignment: Assignment | None = None
    trace: CaseTrace | None = None
    column: int | None = None
    reason: str = ""

    @property
    def solved(self) -> bool:
        return self.status == "solved"

    def describe(self) -> str:
        if self.status == "solved":
            return self.trace.render() if self.trace else f"route={self.route}"
        if self.status == "infeasible":
            return f"infeasible(column {self.column})"
        return f"{self.status}({self.reason})"


def pick_route(inst: Instance) -> str | None:
    n, k = inst.n, inst.k
    if k == n + 1 and inst.all_sets_equal():
        return "equal"
    if k >= 2 * n - 1:
        return "wide"
    if n == 3 and k == 4:
        return "n3k4"
    return None


def solve(inst: Instance, route: str | None = None, oracle_config=None) -> SolveOutcome:
    """Solve with the construction that applies, or the bounded oracle.

    Every solved outcome has been verified against the instance.
    """
    from .oracle import OracleConfig, brute_force

    if route is not None and route not in ROUTES:
        raise ValueError(f"unknown route {route!r}")
    chosen = route or pick_route(inst) or "oracle"
    trace = None
    try:
        if chosen == "equal":
            if not inst.all_sets_equal():
                return SolveOutcome("unsupported", chosen, reason="candidate sets are not all equal")
            a = solve_equal_sets(inst.n, inst.k, inst.tails[0])
        elif chosen == "wide":
            a = solve_wide(inst)
        elif chosen == "n3k4":
            a, trace = solve_n3k4(inst)
        else:
            res = brute_force(inst, oracle_config or OracleConfig(horizon=inst.horizon))
            if res.status != "solution":
                return SolveOutcome(res.status, chosen, column=res.column, reason=res.reason)
            a = res.assignment
    except ValueError as exc:
        return SolveOutcome("unsupported", chosen, reason=str(exc))
    report = verify(inst, a)
    if not report.ok:
        raise SelfCheckError(f"route {chosen} produced an invalid assignment:\n{report.render()}")
    return SolveOutcome("solved", chosen, a, trace)
