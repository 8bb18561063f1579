from hypothesis import strategies as st

from gridfill.model import Assignment, Instance
from gridfill.oracle import GenConfig, gen_instance
from gridfill.rng import SplitMix64


def theorem_corpus_instance(seed: int) -> Instance:
    """Random n=3, k=4 instance with J in 3..5 and universe size U in 4..12.

    Every tenth seed draws from a separated family: the first-column sets of
    rows 2-4 come from {1..m} and the later sets of row 1 from {m+1..U}, so
    row 1 never meets them. Uniform draws essentially never do that.
    """
    rng = SplitMix64(seed ^ 0x5EED)
    J = 3 + rng.below(3)
    U = 4 + rng.below(9)
    if seed % 10 != 0 or U < 8:
        return gen_instance(GenConfig(seed, 3, 4, J, U))
    m = 4 + rng.below(U - 7)
    high = U - m

    def low_set():
        return rng.subset(m, 4)

    def high_set():
        return [m + v for v in rng.subset(high, 4)]

    def any_set():
        return rng.subset(U, 4)

    sets = [[any_set()] + [high_set() for _ in range(J - 1)]]
    tails = [high_set()]
    for _ in range(3):
        sets.append([low_set()] + [any_set() for _ in range(J - 1)])
        tails.append(any_set())
    return Instance.build(3, 4, sets, tails)


@st.composite
def assignments(draw, max_k=5, max_n=4, max_cols=7, max_value=6):
    """Arbitrary eventually-constant assignments (not necessarily valid)."""
    n = draw(st.integers(1, max_n))
    k = draw(st.integers(2, max_k))
    width = draw(st.integers(n, max_cols))
    value = st.integers(1, max_value)
    rows = [draw(st.lists(value, min_size=width, max_size=width)) for _ in range(k)]
    tails = draw(st.lists(value, min_size=k, max_size=k))
    return Assignment.build(n, rows, tails)


def brute_prefix(a: Assignment, i: int, j: int) -> frozenset:
    """Prefix set by literally listing the first j entries of the infinite row."""
    row = list(a.entries[i - 1]) + [a.tail_values[i - 1]] * max(0, j - a.out_horizon)
    return frozenset(row[:j])
