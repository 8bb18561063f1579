import itertools
from collections import Counter

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from gridfill.model import Assignment, Instance, parse_instance, serialize_instance
from gridfill.oracle import (GenConfig, OracleConfig, brute_force, conjecture_search,
                             gen_instance, hard_instance)
from gridfill.rng import SplitMix64
from gridfill.solvers import solve_n3k4
from gridfill.verifier import verify


def prefix_valid(inst, rows, c):
    """Rules (1), (2a), (2b) and (3) restricted to the first c columns."""
    n = inst.n
    for i, row in enumerate(rows, 1):
        if any(row[j - 1] not in inst.cell(i, j) for j in range(1, c + 1)):
            return False
        if len(set(row[:min(n, c)])) != min(n, c):
            return False
        if any(v in row[: n - 1] for v in row[n - 1: c]):
            return False
    for j in range(1, c + 1):
        sets = [frozenset(row[:j]) for row in rows]
        if len(set(sets)) != len(sets):
            return False
    return True


def enumerate_outcome(inst, H):
    """Plain enumeration: (solution exists at horizon H, minimal dead column or None)."""
    k = inst.k
    dead = None
    for c in range(1, H + 1):
        cells = [inst.cell(i, j) for i in range(1, k + 1) for j in range(1, c + 1)]
        if not any(prefix_valid(inst, [pick[i * c:(i + 1) * c] for i in range(k)], c)
                   for pick in itertools.product(*cells)):
            dead = c
            break
    found = False
    if dead is None:
        cells = [inst.cell(i, j) for i in range(1, k + 1) for j in range(1, H + 1)]
        for pick in itertools.product(*cells, *inst.tails):
            rows = [pick[i * H:(i + 1) * H] for i in range(k)]
            if verify(inst, Assignment.build(inst.n, rows, pick[k * H:])).ok:
                found = True
                break
    return found, dead


# -- hard instances ---------------------------------------------------------------

def test_hard_instance_shape():
    inst = hard_instance(3, 3)
    assert inst.horizon == 3
    assert inst.all_sets_equal() and inst.tails[0] == (1, 2, 3)
    assert hard_instance(3, 2).tails[0] == (1, 2)
    with pytest.raises(ValueError):
        hard_instance(3, 4)


@pytest.mark.parametrize("n, k, column", [(2, 2, 2), (3, 2, 2), (3, 3, 3), (4, 4, 4), (5, 3, 3)])
def test_hard_instances_are_infeasible(n, k, column):
    # k rows from k values: rows fill up to {1..k} by column k and collide
    # (with k=2 the two distinct 2-element blocks already coincide at column 2)
    res = brute_force(hard_instance(n, k))
    assert (res.status, res.column) == ("infeasible", column)
    deeper = brute_force(hard_instance(n, k), OracleConfig(horizon=n + 2))
    assert (deeper.status, deeper.column) == ("infeasible", column)


def test_equal_sets_instance_has_solution():
    inst = Instance.uniform(3, 4, 3, [1, 2, 3, 4])
    res = brute_force(inst, OracleConfig(horizon=3))
    assert res.status == "solution"
    assert res.assignment.out_horizon == 3
    assert verify(inst, res.assignment).ok


@settings(max_examples=120, deadline=None)
@given(st.integers(0, 2**64 - 1), st.data())
def test_oracle_agrees_with_enumeration(seed, data):
    k = data.draw(st.integers(1, 3))
    H = data.draw(st.integers(1, 3 if k <= 2 else 2))
    n = data.draw(st.integers(1, H))
    U = data.draw(st.integers(k, k + 2))
    inst = gen_instance(GenConfig(seed, n, k, H, U))
    found, dead = enumerate_outcome(inst, H)
    res = brute_force(inst, OracleConfig(horizon=H))
    if res.status == "solution":
        assert found and verify(inst, res.assignment).ok
    elif res.status == "infeasible":
        assert res.column == dead
    else:
        assert not found and dead is None


@settings(max_examples=60, deadline=None)
@given(st.integers(0, 2**64 - 1), st.integers(1, 3), st.integers(2, 3))
def test_infeasibility_survives_more_columns(seed, n, k):
    inst = gen_instance(GenConfig(seed, n, k, n, k))
    res = brute_force(inst)
    if res.status != "infeasible":
        return
    sets = [row + (t,) * 2 for row, t in zip(inst.sets, inst.tails)]
    wider = Instance(n, k, n + 2, tuple(sets), inst.tails)
    again = brute_force(wider)
    assert (again.status, again.column) == ("infeasible", res.column)


def test_budget_exhaustion_is_unknown():
    res = brute_force(hard_instance(4, 4), OracleConfig(budget=10))
    assert res.status == "unknown" and "budget" in res.reason


def test_horizon_below_instance_rejected():
    with pytest.raises(ValueError):
        brute_force(Instance.uniform(3, 4, 4, [1, 2, 3, 4]), OracleConfig(horizon=3))


def test_universe_restriction():
    inst = Instance.uniform(1, 2, 1, [1, 2])
    assert brute_force(inst, OracleConfig(universe=frozenset({1}))).status == "infeasible"


@settings(max_examples=100, deadline=None)
@given(st.integers(0, 2**64 - 1))
def test_oracle_never_refutes_theorem_instances(seed):
    inst = gen_instance(GenConfig(seed, 3, 4, 3, 5))
    solve_n3k4(inst)
    assert brute_force(inst).status != "infeasible"


# -- random generation --------------------------------------------------------------

def test_splitmix64_reference_vector():
    rng = SplitMix64(1234567)
    assert [rng.next_u64() for _ in range(5)] == [
        6457827717110365317, 3203168211198807973, 9817491932198370423,
        4593380528125082431, 16408922859458223821,
    ]


def test_bounded_draw_rejects_top_range():
    class Fixed(SplitMix64):
        def __init__(self, draws):
            super().__init__(0)
            self.draws = iter(draws)

        def next_u64(self):
            return next(self.draws)

    m = 3
    limit = m * (2**64 // m)
    # 2**64 - 1 lies in the rejected zone for m = 3
    assert limit == 2**64 - 1
    assert Fixed([2**64 - 1, 7]).below(3) == 1
    assert Fixed([limit - 1]).below(3) == (limit - 1) % 3


def test_subset_is_roughly_uniform():
    rng = SplitMix64(99)
    counts = Counter(tuple(rng.subset(5, 2)) for _ in range(10000))
    assert len(counts) == 10
    assert all(800 < c < 1200 for c in counts.values())


def test_gen_is_deterministic():
    cfg = GenConfig(1, 3, 4, 4, 8)
    assert serialize_instance(gen_instance(cfg)) == serialize_instance(gen_instance(cfg))
    assert gen_instance(cfg) != gen_instance(GenConfig(2, 3, 4, 4, 8))


def test_gen_first_set_from_stream():
    # first set drawn by partial Fisher-Yates over 1..8 from the seed-1 stream
    rng = SplitMix64(1)
    pool = list(range(1, 9))
    for t in range(4):
        x = rng.next_u64()
        m = 8 - t
        assert x < m * (2**64 // m)
        u = t + x % m
        pool[t], pool[u] = pool[u], pool[t]
    assert gen_instance(GenConfig(1, 3, 4, 4, 8)).sets[0][0] == tuple(sorted(pool[:4]))


def test_gen_forced_universe():
    inst = gen_instance(GenConfig(5, 2, 3, 3, 3))
    assert inst.all_sets_equal() and inst.tails[0] == (1, 2, 3)


def test_gen_rejects_small_universe():
    with pytest.raises(ValueError):
        GenConfig(1, 3, 4, 4, 3)


# -- conjecture search ---------------------------------------------------------------

def test_search_n3_k4_finds_no_counterexample():
    summary = conjecture_search(3, 4, 100, 1, 5, horizon=3)
    assert (summary.searched, summary.infeasible) == (100, 0)
    assert summary.render().startswith("searched=100 ")


def test_search_wide_regime():
    summary = conjecture_search(2, 3, 50, 1, 6)
    assert summary.infeasible == 0 and summary.solved == 50


def test_search_all_equal_k_equals_n(tmp_path):
    summary = conjecture_search(3, 3, 5, 1, 3, dump_dir=str(tmp_path))
    assert summary.infeasible == 5
    assert len(summary.dumped) == 5
    dumped = parse_instance((tmp_path / "counterexample_n3_k3_seed1.txt").read_bytes())
    assert dumped == hard_instance(3, 3)


def test_search_threads_preserve_results():
    assert conjecture_search(3, 4, 30, 7, 6, threads=4) == conjecture_search(3, 4, 30, 7, 6)
