# counter_rng.py
from __future__ import annotations

import numpy as np

_U64 = (1 << 64) - 1


class CounterRng:
    """
    Seeded generator on numpy's counter-based Philox bit generator.

    The 128-bit Philox key is ``(stream << 64) | seed``, so every (seed, stream) pair names an
    independent, reproducible stream. Streams can be split deterministically with :meth:`spawn`.
    """

    def __init__(self, seed: int, stream: int = 0):
        self.seed = int(seed)
        self.stream = int(stream)
        self._bits = np.random.Philox(key=((self.stream & _U64) << 64) | (self.seed & _U64))
        self._gen = np.random.Generator(self._bits)

    def spawn(self, stream: int) -> "CounterRng":
        return CounterRng(self.seed, stream=(self.stream * 1_000_003 + stream + 1) & _U64)

    def next_u64(self) -> int:
        return int(self._bits.random_raw())

    def uniform(self, low: float = 0.0, high: float = 1.0) -> float:
        return float(self._gen.uniform(low, high))

    def normal(self) -> float:
        return float(self._gen.standard_normal())

    def normals(self, shape: int | tuple[int, ...]) -> np.ndarray:
        return self._gen.standard_normal(shape)

    def unit_vector3(self) -> tuple[float, float, float]:
        # normalised Gaussian triples are uniform on the 2-sphere
        while True:
            v = self._gen.standard_normal(3)
            n = float(np.linalg.norm(v))
            if n > 1e-12:
                x, y, z = v / n
                return float(x), float(y), float(z)

    def integer(self, low: int, high: int) -> int:
        """Uniform integer in [low, high]."""
        return int(self._gen.integers(low, high, endpoint=True))
