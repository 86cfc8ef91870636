"""Orbit decompositions of functional graphs.

Three layouts are supported: the ordered cycle decomposition of a
permutation, the ordered orbit decomposition (components seeded from the
least unused vertex) and the greedy orbit decomposition (longest orbit
first, ties to the least starting vertex). All of them return an
:class:`~ffiter.core.OrbitDecomposition`.
"""

from __future__ import annotations

import bisect
import heapq
from dataclasses import dataclass
from typing import Collection, Iterable

from .core import (
    DecompositionStrategy,
    FunctionTable,
    OrbitDecomposition,
    PermutationWitness,
    XOutOfRange,
    as_permutation,
)

__all__ = [
    "OrbitLengths",
    "component_depths",
    "decompose",
    "greedy_orbit_decomposition",
    "orbit_lengths",
    "orbit_of",
    "ordered_cycle_decomposition",
    "ordered_orbit_decomposition",
]


@dataclass(frozen=True)
class OrbitLengths:
    remaining: frozenset[int]
    length: dict[int, int]


def _mask(n: int, live: Iterable[int] | None) -> bytearray:
    if live is None:
        return bytearray(b"\x01") * n
    alive = bytearray(n)
    for v in live:
        alive[v] = 1
    return alive


def orbit_of(t: FunctionTable, v: int, live: Collection[int] | None = None) -> tuple[tuple[int, ...], bool]:
    """Maximal simple tour from ``v`` in the subgraph induced on ``live``.

    Returns ``(tour, is_rho)``. ``is_rho`` is true when the walk stopped
    because the successor of the last vertex is already on the tour, and
    false when that successor is outside ``live``. ``live=None`` means all
    vertices.
    """
    if not 0 <= v < t.n:
        raise XOutOfRange(v, t.n)
    alive = _mask(t.n, live)
    if not alive[v]:
        raise ValueError(f"vertex {v} is not live")
    f = t.values
    on_tour = set()
    tour = []
    u = v
    while True:
        tour.append(u)
        on_tour.add(u)
        w = f[u]
        if not alive[w]:
            return tuple(tour), False
        if w in on_tour:
            return tuple(tour), True
        u = w


def _lengths(f: tuple[int, ...], alive: bytearray) -> list[int]:
    # Iterative functional-graph traversal: every live vertex is pushed on a
    # path once and assigned once, so the pass is linear.
    n = len(f)
    length = [0] * n
    state = bytearray(n)  # 0 new, 1 on current path, 2 done
    where = [0] * n
    for v in range(n):
        if not alive[v] or state[v]:
            continue
        path = []
        u = v
        while True:
            if state[u] == 2:
                base = length[u]
                break
            if state[u] == 1:
                cycle = path[where[u]:]
                c = len(cycle)
                for w in cycle:
                    length[w] = c
                    state[w] = 2
                del path[where[u]:]
                base = c
                break
            state[u] = 1
            where[u] = len(path)
            path.append(u)
            w = f[u]
            if not alive[w]:
                path.pop()
                length[u] = 1
                state[u] = 2
                base = 1
                break
            u = w
        for w in reversed(path):
            base += 1
            length[w] = base
            state[w] = 2
    return length


def orbit_lengths(t: FunctionTable, live: Iterable[int] | None = None) -> OrbitLengths:
    """Orbit length of every live vertex in the subgraph induced on ``live``."""
    alive = _mask(t.n, live)
    length = _lengths(t.values, alive)
    remaining = frozenset(v for v in range(t.n) if alive[v])
    return OrbitLengths(remaining, {v: length[v] for v in sorted(remaining)})


class _Layout:
    """Accumulates components into the concatenated sequence."""

    def __init__(self, f: tuple[int, ...]):
        self.f = f
        n = len(f)
        self.alive = bytearray(b"\x01") * n
        self.pos = [-1] * n
        self.concat: list[int] = []
        self.starts = [0]

    def take_orbit(self, v: int) -> list[int]:
        f, alive, pos, concat = self.f, self.alive, self.pos, self.concat
        first = len(concat)
        u = v
        while True:
            pos[u] = len(concat)
            concat.append(u)
            alive[u] = 0
            w = f[u]
            if not alive[w]:
                break
            u = w
        self.starts.append(len(concat))
        return concat[first:]

    def finish(self) -> OrbitDecomposition:
        f, pos, starts, concat = self.f, self.pos, self.starts, self.concat
        aux = tuple(pos[f[concat[s - 1]]] for s in starts[1:])
        structure = tuple(b - a for a, b in zip(starts, starts[1:]))
        return OrbitDecomposition(len(f), tuple(concat), structure, tuple(starts), aux)


def ordered_orbit_decomposition(t: FunctionTable) -> OrbitDecomposition:
    layout = _Layout(t.values)
    alive = layout.alive
    for v in range(t.n):
        if alive[v]:
            layout.take_orbit(v)
    return layout.finish()


def ordered_cycle_decomposition(p: PermutationWitness) -> OrbitDecomposition:
    """Cycles of a permutation, listed by increasing least element.

    Every component is a cycle entered at its minimum, so ``aux == starts[:-1]``.
    """
    d = ordered_orbit_decomposition(p.table)
    assert d.aux == d.starts[:-1], "a permutation produced a non-cycle component"
    return d


def greedy_orbit_decomposition(t: FunctionTable, recompute: str = "incremental") -> OrbitDecomposition:
    """Repeatedly remove a longest orbit, ties going to the least start vertex.

    ``recompute="incremental"`` only refreshes the orbit lengths of vertices
    whose path ran into the removed orbit (reverse reachability over the
    predecessor lists). ``recompute="full"`` recomputes every length after
    each removal; it is quadratic and exists for cross-checking.
    """
    if recompute == "full":
        return _greedy_full(t)
    if recompute != "incremental":
        raise ValueError(f"recompute must be 'incremental' or 'full', got {recompute!r}")

    f = t.values
    n = t.n
    layout = _Layout(f)
    alive = layout.alive
    length = _lengths(f, alive)
    preds: list[list[int]] = [[] for _ in range(n)]
    for x, y in enumerate(f):
        if x != y:
            preds[y].append(x)
    heap = [(-length[v], v) for v in range(n)]
    heapq.heapify(heap)
    heappop, heappush = heapq.heappop, heapq.heappush
    left = n
    while left:
        neg, v = heappop(heap)
        if not alive[v] or -neg != length[v]:
            continue
        tour = layout.take_orbit(v)
        left -= len(tour)
        # Live vertices draining into the tour now stop just before it.
        frontier = []
        for u in tour:
            for p in preds[u]:
                if alive[p]:
                    length[p] = 1
                    heappush(heap, (-1, p))
                    frontier.append(p)
        for q in frontier:
            lq = length[q] + 1
            for p in preds[q]:
                if alive[p]:
                    length[p] = lq
                    heappush(heap, (-lq, p))
                    frontier.append(p)
    return layout.finish()


def _greedy_full(t: FunctionTable) -> OrbitDecomposition:
    f = t.values
    layout = _Layout(f)
    alive = layout.alive
    left = t.n
    while left:
        length = _lengths(f, alive)
        best = max(range(t.n), key=lambda v: (length[v], -v))
        left -= len(layout.take_orbit(best))
    return layout.finish()


def decompose(t: FunctionTable | PermutationWitness, strategy: str | DecompositionStrategy) -> OrbitDecomposition:
    strategy = DecompositionStrategy.parse(strategy)
    if strategy is DecompositionStrategy.ORDERED_CYCLE:
        p = t if isinstance(t, PermutationWitness) else as_permutation(t)
        return ordered_cycle_decomposition(p)
    table = t.table if isinstance(t, PermutationWitness) else t
    if strategy is DecompositionStrategy.ORDERED_ORBIT:
        return ordered_orbit_decomposition(table)
    return greedy_orbit_decomposition(table)


def component_depths(starts: tuple[int, ...], aux: tuple[int, ...]) -> list[int]:
    """Number of descents from any point of each component once ``m`` is large.

    A descent target always lies in an earlier component, so one forward
    pass suffices.
    """
    depth = [0] * len(aux)
    for i, p in enumerate(aux):
        if p < starts[i]:
            depth[i] = depth[bisect.bisect_right(starts, p) - 1] + 1
    return depth
