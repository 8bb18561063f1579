"""Instances, assignments and their text formats.

Grids have infinitely many columns. An instance lists the candidate sets of
the first ``J`` columns explicitly and gives one constant tail set per row for
every later column; an assignment likewise lists ``J_out`` explicit columns
followed by one constant tail value per row.

Rows and columns are 1-based throughout the public API.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Sequence

TAIL = "tail"


class FormatError(ValueError):
    """Malformed instance or assignment text."""

    def __init__(self, message: str, line: int | None = None):
        self.line = line
        if line is not None:
            message = f"line {line}: {message}"
        super().__init__(message)


class DimensionError(ValueError):
    """An instance and an assignment disagree on n or k."""


def _canonical_set(values: Iterable[int]) -> tuple[int, ...]:
    return tuple(sorted(values))


@dataclass(frozen=True)
class Instance:
    n: int
    k: int
    horizon: int
    sets: tuple[tuple[tuple[int, ...], ...], ...]
    tails: tuple[tuple[int, ...], ...]

    def __post_init__(self):
        if self.n < 1 or self.k < 1:
            raise ValueError("n and k must be positive")
        if self.horizon < self.n:
            raise ValueError(f"horizon below n ({self.horizon} < {self.n})")
        if len(self.sets) != self.k or len(self.tails) != self.k:
            raise ValueError("need exactly k rows of sets and k tail sets")
        rows = []
        for i, row in enumerate(self.sets, 1):
            if len(row) != self.horizon:
                raise ValueError(f"row {i} has {len(row)} columns, expected {self.horizon}")
            rows.append(tuple(_checked_set(s, self.k, f"S[{i},{j}]") for j, s in enumerate(row, 1)))
        tails = tuple(_checked_set(t, self.k, f"T[{i}]") for i, t in enumerate(self.tails, 1))
        object.__setattr__(self, "sets", tuple(rows))
        object.__setattr__(self, "tails", tails)

    @classmethod
    def build(cls, n: int, k: int, sets: Sequence[Sequence[Iterable[int]]],
              tails: Sequence[Iterable[int]]) -> "Instance":
        horizon = len(sets[0]) if sets else 0
        return cls(n, k, horizon, tuple(tuple(tuple(s) for s in row) for row in sets),
                   tuple(tuple(t) for t in tails))

    @classmethod
    def uniform(cls, n: int, k: int, horizon: int, values: Iterable[int]) -> "Instance":
        """Every S_ij and T_i equal to ``values``."""
        s = _canonical_set(values)
        return cls(n, k, horizon, tuple((s,) * horizon for _ in range(k)), (s,) * k)

    def cell(self, i: int, j: int) -> tuple[int, ...]:
        """Candidate set S_ij; the tail set T_i for j beyond the horizon."""
        if not 1 <= i <= self.k:
            raise IndexError(f"row {i} out of range 1..{self.k}")
        if j < 1:
            raise IndexError(f"column {j} out of range")
        if j > self.horizon:
            return self.tails[i - 1]
        return self.sets[i - 1][j - 1]

    def row_sets(self, i: int, width: int) -> list[tuple[int, ...]]:
        return [self.cell(i, j) for j in range(1, width + 1)]

    def universe(self) -> frozenset[int]:
        vals: set[int] = set()
        for row in self.sets:
            for s in row:
                vals.update(s)
        for t in self.tails:
            vals.update(t)
        return frozenset(vals)

    def all_sets_equal(self) -> bool:
        first = self.tails[0]
        return all(t == first for t in self.tails) and all(
            s == first for row in self.sets for s in row
        )


def _checked_set(values: Sequence[int], k: int, label: str) -> tuple[int, ...]:
    if any(v < 1 for v in values):
        raise ValueError(f"{label}: non-positive value")
    s = _canonical_set(values)
    if len(set(s)) != len(s):
        raise ValueError(f"{label}: duplicate element")
    if len(s) != k:
        raise ValueError(f"{label}: wrong set cardinality {len(s)}, expected {k}")
    return s


@dataclass(frozen=True)
class Assignment:
    n: int
    k: int
    out_horizon: int
    entries: tuple[tuple[int, ...], ...]
    tail_values: tuple[int, ...]

    def __post_init__(self):
        if self.n < 1 or self.k < 1:
            raise ValueError("n and k must be positive")
        if self.out_horizon < self.n:
            raise ValueError(f"horizon below n ({self.out_horizon} < {self.n})")
        if len(self.entries) != self.k or len(self.tail_values) != self.k:
            raise ValueError("need exactly k rows and k tail values")
        rows = tuple(tuple(r) for r in self.entries)
        for i, row in enumerate(rows, 1):
            if len(row) != self.out_horizon:
                raise ValueError(f"row {i} has {len(row)} entries, expected {self.out_horizon}")
            if any(v < 1 for v in row):
                raise ValueError(f"row {i}: non-positive value")
        if any(v < 1 for v in self.tail_values):
            raise ValueError("non-positive tail value")
        object.__setattr__(self, "entries", rows)
        object.__setattr__(self, "tail_values", tuple(self.tail_values))

    @classmethod
    def build(cls, n: int, rows: Sequence[Sequence[int]], tails: Sequence[int]) -> "Assignment":
        return cls(n, len(rows), len(rows[0]), tuple(tuple(r) for r in rows), tuple(tails))

    def value(self, i: int, j: int) -> int:
        if not 1 <= i <= self.k:
            raise IndexError(f"row {i} out of range 1..{self.k}")
        if j < 1:
            raise IndexError(f"column {j} out of range")
        if j > self.out_horizon:
            return self.tail_values[i - 1]
        return self.entries[i - 1][j - 1]

    def row(self, i: int) -> tuple[int, ...]:
        return self.entries[i - 1]


def prefix_set(a: Assignment, i: int, j: int) -> frozenset[int]:
    """M(i, j): the set of the first ``j`` entries of row ``i``."""
    if not 1 <= i <= a.k:
        raise IndexError(f"row {i} out of range 1..{a.k}")
    if j < 1:
        raise IndexError(f"column {j} out of range")
    row = a.entries[i - 1]
    vals = set(row[:j])
    if j > a.out_horizon:
        vals.add(a.tail_values[i - 1])
    return frozenset(vals)


def stabilization_column(a: Assignment) -> int:
    """First column past which no prefix set grows any more."""
    return a.out_horizon + 1


# -- text formats -----------------------------------------------------------

def _content_lines(text: bytes | str) -> list[tuple[int, list[str]]]:
    if isinstance(text, bytes):
        text = text.decode("ascii")
    lines = []
    for lineno, raw in enumerate(text.splitlines(), 1):
        stripped = raw.strip()
        if not stripped or stripped.startswith("#"):
            continue
        lines.append((lineno, stripped.split()))
    return lines


def _ints(tokens: list[str], lineno: int) -> list[int]:
    try:
        vals = [int(t) for t in tokens]
    except ValueError:
        raise FormatError(f"non-integer token in {' '.join(tokens)!r}", lineno) from None
    if any(v < 1 for v in vals):
        raise FormatError("non-positive value", lineno)
    return vals


def _header(lines: list[tuple[int, list[str]]]) -> tuple[int, int, int]:
    if not lines:
        raise FormatError("malformed header: empty file", 1)
    lineno, tokens = lines[0]
    if len(tokens) != 3:
        raise FormatError("malformed header: expected 'n k J'", lineno)
    try:
        n, k, horizon = (int(t) for t in tokens)
    except ValueError:
        raise FormatError("malformed header: expected integers", lineno) from None
    if n < 1 or k < 1 or horizon < 1:
        raise FormatError("malformed header: values must be positive", lineno)
    if horizon < n:
        raise FormatError(f"horizon below n ({horizon} < {n})", lineno)
    return n, k, horizon


def _set_line(lineno: int, tokens: list[str], k: int) -> tuple[int, ...]:
    vals = _ints(tokens, lineno)
    if len(set(vals)) != len(vals):
        raise FormatError("duplicate element", lineno)
    if len(vals) != k:
        raise FormatError(f"wrong set cardinality {len(vals)}, expected {k}", lineno)
    return tuple(sorted(vals))


def _expect_lines(lines, count: int, last_lineno: int):
    if len(lines) < count:
        raise FormatError(f"unexpected end of file: expected {count} data lines, got {len(lines)}",
                          last_lineno)
    if len(lines) > count:
        raise FormatError("trailing data", lines[count][0])


def parse_instance(text: bytes | str) -> Instance:
    lines = _content_lines(text)
    n, k, horizon = _header(lines)
    body = lines[1:]
    _expect_lines(body, k * (horizon + 1), lines[-1][0])
    sets, tails = [], []
    it = iter(body)
    for _ in range(k):
        sets.append(tuple(_set_line(ln, tok, k) for ln, tok in (next(it) for _ in range(horizon))))
        ln, tok = next(it)
        tails.append(_set_line(ln, tok, k))
    return Instance(n, k, horizon, tuple(sets), tuple(tails))


def serialize_instance(inst: Instance) -> bytes:
    out = [f"{inst.n} {inst.k} {inst.horizon}"]
    for row, tail in zip(inst.sets, inst.tails):
        out.extend(" ".join(map(str, s)) for s in row)
        out.append(" ".join(map(str, tail)))
    return ("\n".join(out) + "\n").encode("ascii")


def parse_assignment(text: bytes | str) -> Assignment:
    lines = _content_lines(text)
    n, k, out_horizon = _header(lines)
    body = lines[1:]
    _expect_lines(body, k + 1, lines[-1][0])
    rows = []
    for ln, tok in body[:k]:
        vals = _ints(tok, ln)
        if len(vals) != out_horizon:
            raise FormatError(f"row has {len(vals)} entries, expected {out_horizon}", ln)
        rows.append(tuple(vals))
    ln, tok = body[k]
    tails = _ints(tok, ln)
    if len(tails) != k:
        raise FormatError(f"expected {k} tail values, got {len(tails)}", ln)
    return Assignment(n, k, out_horizon, tuple(rows), tuple(tails))


def serialize_assignment(a: Assignment) -> bytes:
    out = [f"{a.n} {a.k} {a.out_horizon}"]
    out.extend(" ".join(map(str, row)) for row in a.entries)
    out.append(" ".join(map(str, a.tail_values)))
    return ("\n".join(out) + "\n").encode("ascii")
