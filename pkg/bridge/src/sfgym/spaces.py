"""Observation/action space descriptors.

Uses gymnasium's spaces when that package is installed so bridge envs plug
into existing agent code; otherwise falls back to small local equivalents
with the same core surface (shape/dtype/n, contains, sample).
"""

from __future__ import annotations

import numpy as np

try:
    from gymnasium.spaces import Box, Discrete  # type: ignore

    HAVE_GYMNASIUM = True
except ImportError:
    HAVE_GYMNASIUM = False

    class Discrete:
        def __init__(self, n: int, seed: int | None = None):
            self.n = int(n)
            self._rng = np.random.default_rng(seed)

        def contains(self, x) -> bool:
            return isinstance(x, (int, np.integer)) and 0 <= int(x) < self.n

        def sample(self) -> int:
            return int(self._rng.integers(0, self.n))

        def __repr__(self):
            return f"Discrete({self.n})"

        def __eq__(self, other):
            return isinstance(other, Discrete) and other.n == self.n

    class Box:
        def __init__(self, low, high, shape=None, dtype=np.float32,
                     seed: int | None = None):
            self.dtype = np.dtype(dtype)
            if shape is None:
                shape = np.broadcast(np.asarray(low), np.asarray(high)).shape
            self.shape = tuple(shape)
            self.low = np.broadcast_to(np.asarray(low, dtype=self.dtype),
                                       self.shape)
            self.high = np.broadcast_to(np.asarray(high, dtype=self.dtype),
                                        self.shape)
            self._rng = np.random.default_rng(seed)

        def contains(self, x) -> bool:
            arr = np.asarray(x)
            return (arr.shape == self.shape
                    and bool(np.all(arr >= self.low))
                    and bool(np.all(arr <= self.high)))

        def sample(self):
            u = self._rng.random(self.shape)
            return (self.low + u * (self.high - self.low)).astype(self.dtype)

        def __repr__(self):
            return f"Box(shape={self.shape}, dtype={self.dtype})"
