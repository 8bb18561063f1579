"""Exhaustive search over eventually-constant assignments.

The search fills columns 1..H left to right (rows in index order, values
ascending) and prunes a partial grid as soon as a row repeats inside its
distinct block, hits one of its first n-1 values later on, or two rows end
up with equal prefix sets. After column H it looks for constant tail values.

A prefix that breaks a rule cannot be repaired by adding columns, so when no
prefix of length c survives the instance is infeasible outright. Running out
of tail values at column H only means no solution stabilizes that early.
"""

from __future__ import annotations

import os
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field

from .model import Assignment, Instance, serialize_instance
from .rng import SplitMix64


@dataclass(frozen=True)
class OracleConfig:
    horizon: int | None = None  # None: the instance horizon
    budget: int = 0  # nodes; 0 means unlimited
    universe: frozenset[int] | None = None  # None: union of the instance's sets


@dataclass(frozen=True)
class OracleOutcome:
    status: str  # solution | infeasible | unknown
    assignment: Assignment | None = None
    column: int | None = None
    reason: str = ""
    nodes: int = 0

    def describe(self) -> str:
        if self.status == "solution":
            return f"solution(horizon {self.assignment.out_horizon})"
        if self.status == "infeasible":
            return f"infeasible(column {self.column})"
        return f"unknown({self.reason})"


class _BudgetExhausted(Exception):
    pass


def brute_force(inst: Instance, cfg: OracleConfig | None = None) -> OracleOutcome:
    cfg = cfg or OracleConfig()
    H = inst.horizon if cfg.horizon is None else cfg.horizon
    if H < inst.horizon:
        raise ValueError(f"search horizon {H} below instance horizon {inst.horizon}")
    n, k = inst.n, inst.k
    allowed = inst.universe() if cfg.universe is None else inst.universe() & cfg.universe
    order = sorted(allowed)
    bit = {v: 1 << b for b, v in enumerate(order)}

    def options(values):
        return [(v, bit[v]) for v in values if v in bit]

    cand = [[options(inst.cell(i, j)) for j in range(1, H + 1)] for i in range(1, k + 1)]
    tail_cand = [options(t) for t in inst.tails]

    entries = [[0] * H for _ in range(k)]
    masks = [0] * k
    heads = [0] * k
    tails = [0] * k
    finals = [0] * k
    deepest = 0
    nodes = 0

    def tick():
        nonlocal nodes
        nodes += 1
        if cfg.budget and nodes > cfg.budget:
            raise _BudgetExhausted

    def place_tails(i: int) -> bool:
        if i == k:
            return True
        for v, b in tail_cand[i]:
            tick()
            if b & heads[i]:
                continue
            f = masks[i] | b
            if any(finals[p] == f for p in range(i)):
                continue
            tails[i], finals[i] = v, f
            if place_tails(i + 1):
                return True
        return False

    def place(j: int, i: int) -> bool:
        nonlocal deepest
        if i == k:
            deepest = max(deepest, j + 1)
            if j + 1 == H:
                return place_tails(0)
            return place(j + 1, 0)
        old_mask, old_head = masks[i], heads[i]
        block = old_mask if j < n else old_head
        for v, b in cand[i][j]:
            tick()
            if b & block:
                continue
            m = old_mask | b
            if any(masks[p] == m for p in range(i)):
                continue
            entries[i][j] = v
            masks[i] = m
            if j < n - 1:
                heads[i] = m
            if place(j, i + 1):
                return True
        masks[i], heads[i] = old_mask, old_head
        return False

    try:
        found = place(0, 0)
    except _BudgetExhausted:
        return OracleOutcome("unknown", reason=f"node budget {cfg.budget} exhausted", nodes=nodes)
    if found:
        a = Assignment(n, k, H, tuple(map(tuple, entries)), tuple(tails))
        return OracleOutcome("solution", a, nodes=nodes)
    if deepest < H:
        return OracleOutcome("infeasible", column=deepest + 1, nodes=nodes)
    return OracleOutcome("unknown", reason=f"no completion stabilizing at column {H + 1}",
                         nodes=nodes)


def hard_instance(n: int, k: int) -> Instance:
    """All candidate sets equal to {1..k}; unsolvable whenever k <= n."""
    if k > n:
        raise ValueError(f"hard instances need k <= n (got n={n}, k={k})")
    return Instance.uniform(n, k, n, range(1, k + 1))


@dataclass(frozen=True)
class GenConfig:
    seed: int
    n: int
    k: int
    horizon: int
    universe: int

    def __post_init__(self):
        if not 0 <= self.seed < 1 << 64:
            raise ValueError("seed must be an unsigned 64-bit integer")
        if self.universe < self.k:
            raise ValueError(f"universe {self.universe} smaller than k={self.k}")
        if self.horizon < self.n:
            raise ValueError(f"horizon below n ({self.horizon} < {self.n})")


def gen_instance(cfg: GenConfig) -> Instance:
    """Random instance; sets drawn row by row, columns 1..J then the tail."""
    rng = SplitMix64(cfg.seed)
    sets, tails = [], []
    for _ in range(cfg.k):
        sets.append(tuple(tuple(rng.subset(cfg.universe, cfg.k)) for _ in range(cfg.horizon)))
        tails.append(tuple(rng.subset(cfg.universe, cfg.k)))
    return Instance(cfg.n, cfg.k, cfg.horizon, tuple(sets), tuple(tails))


@dataclass
class SearchSummary:
    searched: int = 0
    solved: int = 0
    unknown: int = 0
    infeasible: int = 0
    infeasible_seeds: list[int] = field(default_factory=list)
    dumped: list[str] = field(default_factory=list)

    def render(self) -> str:
        lines = [f"searched={self.searched} solved={self.solved} "
                 f"unknown={self.unknown} infeasible={self.infeasible}"]
        lines.extend(self.dumped)
        return "\n".join(lines)


def conjecture_search(n: int, k: int, count: int, seed: int, universe: int,
                      horizon: int | None = None, budget: int = 0, threads: int = 1,
                      dump_dir: str | None = None) -> SearchSummary:
    """Run the oracle on ``count`` random instances with consecutive seeds.

    Instances use J = horizon (default n) and are searched up to that same
    horizon. Infeasible ones are written to ``dump_dir`` when given.
    """
    J = horizon or n
    cfg = OracleConfig(horizon=J, budget=budget)
    seeds = range(seed, seed + count)

    def run(s: int):
        inst = gen_instance(GenConfig(s, n, k, J, universe))
        return s, inst, brute_force(inst, cfg)

    if threads > 1:
        with ThreadPoolExecutor(max_workers=threads) as pool:
            results = list(pool.map(run, seeds))
    else:
        results = [run(s) for s in seeds]

    summary = SearchSummary()
    for s, inst, res in results:
        summary.searched += 1
        if res.status == "solution":
            summary.solved += 1
        elif res.status == "unknown":
            summary.unknown += 1
        else:
            summary.infeasible += 1
            summary.infeasible_seeds.append(s)
            if dump_dir is not None:
                path = os.path.join(dump_dir, f"counterexample_n{n}_k{k}_seed{s}.txt")
                with open(path, "wb") as fh:
                    fh.write(serialize_instance(inst))
                summary.dumped.append(path)
    return summary
