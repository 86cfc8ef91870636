"""Brute-force reference semantics, independent of the codec."""

from __future__ import annotations

from .core import FunctionTable, OrbitDecomposition, XOutOfRange

__all__ = ["naive_iterate", "oracle_descents", "oracle_iterate", "oracle_iterate_many", "rho_walk"]


def _check(t: FunctionTable, x: int, m: int) -> None:
    if not 0 <= x < t.n:
        raise XOutOfRange(x, t.n)
    if m < 0:
        raise ValueError("m must be non-negative")


def naive_iterate(t: FunctionTable, x: int, m: int) -> int:
    """Apply the table ``m`` times. ``O(m)``; only sensible for small ``m``."""
    _check(t, x, m)
    f = t.values
    for _ in range(m):
        x = f[x]
    return x


def rho_walk(t: FunctionTable, x: int, limit: int | None = None) -> tuple[list[int], int, int]:
    """Walk ``x, f(x), ...`` until a vertex repeats or ``limit`` steps are taken.

    Returns ``(path, tail, cycle)``: ``path[tail:tail + cycle]`` is the cycle
    reached from ``x``. If the walk was cut short by ``limit`` the cycle
    length is reported as 0.
    """
    f = t.values
    seen: dict[int, int] = {}
    path: list[int] = []
    u = x
    while u not in seen:
        if limit is not None and len(path) > limit:
            return path, len(path), 0
        seen[u] = len(path)
        path.append(u)
        u = f[u]
    tail = seen[u]
    return path, tail, len(path) - tail


def oracle_iterate(t: FunctionTable, x: int, m: int) -> int:
    """``f^m(x)`` in ``O(min(m, n))`` time and memory."""
    _check(t, x, m)
    path, tail, cycle = rho_walk(t, x, limit=m)
    if m < len(path):
        return path[m]
    return path[tail + (m - tail) % cycle]


def oracle_iterate_many(t: FunctionTable, x: int, ms) -> list[int]:
    """``[f^m(x) for m in ms]`` sharing one walk from ``x``."""
    if not 0 <= x < t.n:
        raise XOutOfRange(x, t.n)
    path, tail, cycle = rho_walk(t, x)
    out = []
    for m in ms:
        if m < 0:
            raise ValueError("m must be non-negative")
        out.append(path[m] if m < len(path) else path[tail + (m - tail) % cycle])
    return out


def oracle_descents(t: FunctionTable, d: OrbitDecomposition, x: int) -> int:
    """Length of the chain of earlier components below ``x``'s component.

    Replays the decomposition itself: from the component of ``x`` follow
    the image of each component's last vertex while it lands in an earlier
    component.
    """
    if not 0 <= x < t.n:
        raise XOutOfRange(x, t.n)
    owner = [0] * t.n
    for i, comp in enumerate(d.components):
        for v in comp:
            owner[v] = i
    comps = d.components
    i = owner[x]
    count = 0
    while True:
        j = owner[t.values[comps[i][-1]]]
        if j >= i:
            return count
        i = j
        count += 1
