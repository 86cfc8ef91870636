"""Deterministic instance generators.

Random tables come from SplitMix64 (Steele, Lea and Flood, 2014) used in
counter mode: output ``k`` of a stream with seed ``s`` is
``mix(s + k * 0x9E3779B97F4A7C15)`` with the standard finalizer constants.
Bounded draws use Lemire's multiply-shift on the high 32 bits with
rejection, so they are exactly uniform. Everything is plain 64-bit integer
arithmetic and therefore bit-identical across platforms and numpy
versions.
"""

from __future__ import annotations

import numpy as np

from .core import FunctionTable, PermutationWitness, as_permutation, descent_bound

__all__ = [
    "SplitMix64",
    "anti_chain_function",
    "chain_function",
    "derive_seed",
    "random_function",
    "random_permutation",
    "staircase_function",
]

MASK64 = (1 << 64) - 1
GAMMA = 0x9E3779B97F4A7C15
_MUL1 = 0xBF58476D1CE4E5B9
_MUL2 = 0x94D049BB133111EB


def _mix(z: int) -> int:
    z = ((z ^ (z >> 30)) * _MUL1) & MASK64
    z = ((z ^ (z >> 27)) * _MUL2) & MASK64
    return z ^ (z >> 31)


def derive_seed(seed: int, *keys: int) -> int:
    """Fold ``keys`` into ``seed``; distinct key tuples give unrelated streams."""
    s = seed & MASK64
    for k in keys:
        s = _mix((s + GAMMA * ((k & MASK64) + 1)) & MASK64)
    return s


class SplitMix64:
    """Counter-mode SplitMix64 stream producing numpy ``uint64`` blocks."""

    def __init__(self, seed: int):
        self.seed = seed & MASK64
        self.counter = 0

    def next_u64(self, count: int) -> np.ndarray:
        k = np.arange(self.counter + 1, self.counter + 1 + count, dtype=np.uint64)
        self.counter += count
        z = np.uint64(self.seed) + k * np.uint64(GAMMA)
        z = (z ^ (z >> np.uint64(30))) * np.uint64(_MUL1)
        z = (z ^ (z >> np.uint64(27))) * np.uint64(_MUL2)
        return z ^ (z >> np.uint64(31))

    def bounded(self, bounds) -> np.ndarray:
        """One uniform draw from ``range(b)`` per entry of ``bounds`` (each ``1 <= b <= 2**32``)."""
        bounds = np.asarray(bounds, dtype=np.uint64)
        if bounds.size and (bounds.min() < 1 or bounds.max() > 1 << 32):
            raise ValueError("bounds must lie in [1, 2**32]")
        out = np.empty(bounds.shape, dtype=np.uint64)
        todo = np.arange(bounds.size)
        flat = bounds.ravel()
        threshold = (np.uint64(1 << 32) - flat) % flat
        low = np.uint64(0xFFFFFFFF)
        while todo.size:
            hi = self.next_u64(todo.size) >> np.uint64(32)
            prod = hi * flat[todo]
            ok = (prod & low) >= threshold[todo]
            out.flat[todo[ok]] = prod[ok] >> np.uint64(32)
            todo = todo[~ok]
        return out.astype(np.int64)


def random_function(n: int, seed: int, stream: int = 0) -> FunctionTable:
    """Uniform random function on ``range(n)``; identical output for identical arguments."""
    if n < 1:
        raise ValueError("n must be at least 1")
    rng = SplitMix64(derive_seed(seed, n, stream))
    values = rng.bounded(np.full(n, n, dtype=np.uint64))
    return FunctionTable(n, tuple(values.tolist()))


def random_permutation(n: int, seed: int, stream: int = 0) -> PermutationWitness:
    """Uniform random permutation by a Fisher-Yates shuffle of the identity."""
    if n < 1:
        raise ValueError("n must be at least 1")
    rng = SplitMix64(derive_seed(seed, n, stream, 1))
    # draw j_i uniform in [0, i] for i = n-1 .. 1
    picks = rng.bounded(np.arange(n, 1, -1, dtype=np.uint64)).tolist()
    values = list(range(n))
    for k, j in enumerate(picks):
        i = n - 1 - k
        values[i], values[j] = values[j], values[i]
    return as_permutation(FunctionTable(n, tuple(values)))


def chain_function(n: int) -> FunctionTable:
    """``k -> max(0, k - 1)``: every vertex slides down to the fixed point 0."""
    if n < 1:
        raise ValueError("n must be at least 1")
    return FunctionTable(n, tuple(max(0, k - 1) for k in range(n)))


def anti_chain_function(n: int) -> FunctionTable:
    """``k -> min(k + 1, n - 1)``."""
    if n < 1:
        raise ValueError("n must be at least 1")
    return FunctionTable(n, tuple(min(k + 1, n - 1) for k in range(n)))


def staircase_function(n: int) -> tuple[FunctionTable, int, int]:
    """Worst case for greedy decompositions; returns ``(table, d, M)``.

    On the first ``M = (d+1)(d+2)/2`` points the components have sizes
    ``d+1, d, ..., 1``; each runs to its end and the end of component
    ``j >= 1`` jumps to the end of component ``j - 1``, whose end is a fixed
    point for ``j = 1``. Points ``M .. n-1`` form a chain into vertex 0.
    """
    d = descent_bound(n)
    size_m = (d + 1) * (d + 2) // 2
    values = [0] * n
    start = 0
    prev_last = None
    for size in range(d + 1, 0, -1):
        last = start + size - 1
        for v in range(start, last):
            values[v] = v + 1
        values[last] = last if prev_last is None else prev_last
        prev_last = last
        start += size
    for v in range(size_m, n):
        values[v] = v + 1 if v + 1 < n else 0
    return FunctionTable(n, tuple(values)), d, size_m
