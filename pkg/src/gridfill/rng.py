"""Portable seeded randomness: splitmix64 with unbiased bounded draws."""

MASK64 = (1 << 64) - 1


class SplitMix64:
    def __init__(self, seed: int):
        self.state = seed & MASK64

    def next_u64(self) -> int:
        self.state = (self.state + 0x9E3779B97F4A7C15) & MASK64
        z = self.state
        z = ((z ^ (z >> 30)) * 0xBF58476D1CE4E5B9) & MASK64
        z = ((z ^ (z >> 27)) * 0x94D049BB133111EB) & MASK64
        return z ^ (z >> 31)

    def below(self, m: int) -> int:
        """Uniform integer in [0, m), rejecting draws >= m * floor(2**64 / m)."""
        if m < 1:
            raise ValueError("bound must be positive")
        limit = m * ((1 << 64) // m)
        while True:
            x = self.next_u64()
            if x < limit:
                return x % m

    def subset(self, universe: int, size: int) -> list[int]:
        """Uniform ``size``-subset of 1..universe by partial Fisher-Yates, sorted."""
        if size > universe:
            raise ValueError("subset larger than universe")
        pool = list(range(1, universe + 1))
        for t in range(size):
            u = t + self.below(universe - t)
            pool[t], pool[u] = pool[u], pool[t]
        return sorted(pool[:size])
