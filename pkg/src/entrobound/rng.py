"""Splittable counter-based 64-bit generator.

The generator is fully specified here so that any implementation can
reproduce the same streams bit for bit. All arithmetic is modulo 2**64.

    GAMMA = 0x9E3779B97F4A7C15

    mix(z):
        z = (z xor (z >> 30)) * 0xBF58476D1CE4E5B9
        z = (z xor (z >> 27)) * 0x94D049BB133111EB
        return z xor (z >> 31)

    word(key, i)      = mix(key + (i + 1) * GAMMA)        # i-th output, i >= 0
    child(key, j)     = mix(mix(key) xor ((j + 1) * GAMMA)) # key of sub-stream j
    uniform(key, i)   = (word(key, i) >> 11) * 2**-53        # in [0, 1)

A stream keeps a counter that starts at 0 and advances by one per word.
Derived variates consume words in order:

    exponential  = -log(1 - u)
    normal pair  = sqrt(-2 log(1 - u1)) * (cos(2 pi u2), sin(2 pi u2))
    integer in [lo, hi) = lo + floor(u * (hi - lo))

The master key of a run is the user seed; trial ``t`` uses ``child(seed, t)``.
"""

from __future__ import annotations

import numpy as np

GAMMA = np.uint64(0x9E3779B97F4A7C15)
_M1 = np.uint64(0xBF58476D1CE4E5B9)
_M2 = np.uint64(0x94D049BB133111EB)
_MASK = (1 << 64) - 1


def mix(z: np.ndarray) -> np.ndarray:
    z = np.asarray(z, dtype=np.uint64)
    z = (z ^ (z >> np.uint64(30))) * _M1
    z = (z ^ (z >> np.uint64(27))) * _M2
    return z ^ (z >> np.uint64(31))


def child_key(key: int, index: int) -> int:
    k = mix(np.array([key & _MASK], dtype=np.uint64))
    j = np.array([(index + 1) & _MASK], dtype=np.uint64) * GAMMA
    return int(mix(k ^ j)[0])


class CounterRNG:
    """One stream of the generator; cheap to create, cheap to split."""

    def __init__(self, key: int, counter: int = 0):
        self.key = int(key) & _MASK
        self.counter = int(counter)

    def spawn(self, index: int) -> "CounterRNG":
        return CounterRNG(child_key(self.key, index))

    def words(self, n: int) -> np.ndarray:
        idx = np.arange(self.counter + 1, self.counter + n + 1, dtype=np.uint64)
        self.counter += n
        return mix(np.uint64(self.key) + idx * GAMMA)

    def uniform(self, n: int) -> np.ndarray:
        return (self.words(n) >> np.uint64(11)).astype(np.float64) * 2.0**-53

    def exponential(self, n: int) -> np.ndarray:
        return -np.log1p(-self.uniform(n))

    def normal(self, n: int) -> np.ndarray:
        m = (n + 1) // 2
        u = self.uniform(2 * m).reshape(m, 2)
        r = np.sqrt(-2.0 * np.log1p(-u[:, 0]))
        t = 2.0 * np.pi * u[:, 1]
        return np.column_stack((r * np.cos(t), r * np.sin(t))).ravel()[:n]

    def integers(self, lo: int, hi: int, n: int | None = None):
        u = self.uniform(1 if n is None else n)
        out = lo + np.floor(u * (hi - lo)).astype(np.int64)
        return int(out[0]) if n is None else out

    def scalar(self) -> float:
        return float(self.uniform(1)[0])

    def between(self, lo: float, hi: float) -> float:
        return lo + (hi - lo) * self.scalar()
