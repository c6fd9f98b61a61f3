"""
Seeded, splittable randomness.

Every RandomSource is a Philox (counter-based) generator keyed by a
``SeedSequence(seed, spawn_key=key)``. ``spawn(i)`` derives an independent
child stream from the key path alone, so a shot's randomness depends only on
(seed, shot index) and never on the order in which shots are executed.
"""
from __future__ import annotations

import numpy as np

SEED_BITS = 64


class RandomSource:
    __slots__ = ("seed", "key", "_gen")

    def __init__(self, seed: int, key: tuple[int, ...] = ()):
        seed = int(seed)
        if not 0 <= seed < 2**SEED_BITS:
            raise ValueError(f"seed must be an unsigned {SEED_BITS}-bit integer, got {seed}")
        self.seed = seed
        self.key = tuple(int(k) for k in key)
        seq = np.random.SeedSequence(seed, spawn_key=self.key)
        self._gen = np.random.Generator(np.random.Philox(seq))

    def spawn(self, *key: int) -> "RandomSource":
        """Child stream identified by `key` below this stream's key."""
        return RandomSource(self.seed, self.key + key)

    def random(self) -> float:
        """Uniform float in [0, 1)."""
        return float(self._gen.random())

    def integers(self, high: int) -> int:
        """Uniform integer in [0, high)."""
        return int(self._gen.integers(high))

    def __repr__(self) -> str:
        return f"RandomSource(seed={self.seed}, key={self.key})"
