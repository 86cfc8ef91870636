"""Fast-forward codes: build them from a table and evaluate ``f^m(x)``.

A code stores a relabelling ``sigma`` (position -> vertex) under which ``f``
becomes a canonical function ``pi`` on positions whose components are
consecutive runs. ``f^m(x) = sigma[pi^m(sigma_inv[x])]`` and ``pi^m`` is
evaluated by walking at most one component per descent, never ``m`` steps.
"""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property

import numpy as np

from .core import (
    CodeKind,
    DecompositionStrategy,
    EvalResult,
    FunctionTable,
    IndexMode,
    InvariantViolation,
    OrbitDecomposition,
    PermutationWitness,
    ValidationError,
    XOutOfRange,
    _check_layout,
)
from .decompose import component_depths, decompose

__all__ = [
    "FastForwardCode",
    "build_code",
    "code_from_layout",
    "component_of",
    "describe_code",
    "iterate",
    "iterate_many",
    "mean_plateau_descents",
    "pi_iterate",
    "pi_iterate_many",
    "plateau_descents",
]

M_MAX = 2**64 - 1


def _readonly(values) -> np.ndarray:
    a = np.asarray(values, dtype=np.uint64)
    a.flags.writeable = False
    return a


@dataclass(frozen=True, eq=False)
class FastForwardCode:
    """Lookup tables that make ``f^m(x)`` cheap for every ``m``.

    ``starts`` has one more entry than ``aux``; component ``i`` covers
    positions ``starts[i] <= y < starts[i + 1]``. ``component_index`` is the
    dense ``y -> i`` table, or ``None`` when the index is found by binary
    search over ``starts``. ``loop_len[i] = starts[i+1] - aux[i]`` is only
    stored for permutations and for codes built with ``hot=True``.
    """

    n: int
    sigma: tuple[int, ...]
    sigma_inv: tuple[int, ...]
    starts: tuple[int, ...]
    aux: tuple[int, ...]
    kind: CodeKind
    index_mode: IndexMode
    component_index: tuple[int, ...] | None
    loop_len: tuple[int, ...] | None

    @property
    def n_components(self) -> int:
        return len(self.aux)

    @property
    def structure(self) -> tuple[int, ...]:
        s = self.starts
        return tuple(s[i + 1] - s[i] for i in range(len(self.aux)))

    @property
    def hot(self) -> bool:
        return self.loop_len is not None

    def __eq__(self, other):
        if not isinstance(other, FastForwardCode):
            return NotImplemented
        return (self.n, self.sigma, self.starts, self.aux, self.kind) == (
            other.n,
            other.sigma,
            other.starts,
            other.aux,
            other.kind,
        )

    __hash__ = None

    def validate(self) -> "FastForwardCode":
        _check_layout(self.n, self.sigma, self.starts, self.aux)
        if len(self.sigma_inv) != self.n or any(self.sigma_inv[v] != y for y, v in enumerate(self.sigma)):
            raise InvariantViolation("sigma_inv inverse of sigma")
        if self.component_index is not None:
            s = self.starts
            for y, i in enumerate(self.component_index):
                if not (0 <= i < len(self.aux) and s[i] <= y < s[i + 1]):
                    raise InvariantViolation("component_index", f"position {y} mapped to component {i}")
        if self.kind is CodeKind.PERMUTATION and self.aux != self.starts[:-1]:
            raise InvariantViolation("permutation aux", "aux[i] must equal starts[i] for a permutation code")
        return self

    @cached_property
    def _arrays(self):
        comp = self.component_index
        return {
            "sigma": _readonly(self.sigma),
            "sigma_inv": _readonly(self.sigma_inv),
            "starts": _readonly(self.starts),
            "aux": _readonly(self.aux),
            "comp": None if comp is None else _readonly(comp),
        }


def code_from_layout(
    n: int,
    sigma,
    starts,
    aux,
    kind: CodeKind | str = CodeKind.GENERAL,
    index_mode: IndexMode | str = IndexMode.DENSE,
    hot: bool = False,
) -> FastForwardCode:
    """Assemble and validate a code from its serialized tables.

    ``sigma_inv`` and the dense component index are rebuilt in ``O(n)``.
    """
    kind = CodeKind(kind)
    index_mode = IndexMode.parse(index_mode)
    sigma, starts, aux = tuple(sigma), tuple(starts), tuple(aux)
    _check_layout(n, sigma, starts, aux)
    sigma_inv = [0] * n
    for y, v in enumerate(sigma):
        sigma_inv[v] = y
    comp = None
    if index_mode is IndexMode.DENSE:
        comp = []
        for i in range(len(aux)):
            comp.extend([i] * (starts[i + 1] - starts[i]))
        comp = tuple(comp)
    loop_len = None
    if hot or kind is CodeKind.PERMUTATION:
        loop_len = tuple(starts[i + 1] - p for i, p in enumerate(aux))
    code = FastForwardCode(n, sigma, tuple(sigma_inv), starts, aux, kind, index_mode, comp, loop_len)
    if kind is CodeKind.PERMUTATION and aux != starts[:-1]:
        raise InvariantViolation("permutation aux", "aux[i] must equal starts[i] for a permutation code")
    return code


def build_code(
    t: FunctionTable | PermutationWitness,
    strategy: str | DecompositionStrategy = DecompositionStrategy.GREEDY_ORBIT,
    index_mode: str | IndexMode = IndexMode.DENSE,
    hot: bool = False,
    decomposition: OrbitDecomposition | None = None,
) -> FastForwardCode:
    """Decompose ``t`` and store the resulting tables.

    ``strategy="cycle"`` requires a bijection and raises
    :class:`~ffiter.core.NotInjective` otherwise. A precomputed
    ``decomposition`` of ``t`` may be passed to skip the decomposition step.
    """
    strategy = DecompositionStrategy.parse(strategy)
    d = decomposition if decomposition is not None else decompose(t, strategy)
    kind = CodeKind.PERMUTATION if strategy is DecompositionStrategy.ORDERED_CYCLE else CodeKind.GENERAL
    return code_from_layout(d.n, d.concat, d.starts, d.aux, kind, index_mode, hot)


def _check_query(code: FastForwardCode, x, m) -> tuple[int, int]:
    if type(x) is int and type(m) is int and 0 <= x < code.n and m >= 0:
        return x, m
    if isinstance(x, bool) or not isinstance(x, (int, np.integer)):
        raise ValidationError(f"vertex must be an integer, got {x!r}")
    if isinstance(m, bool) or not isinstance(m, (int, np.integer)):
        raise ValidationError(f"iterate count must be an integer, got {m!r}")
    x, m = int(x), int(m)
    if not 0 <= x < code.n:
        raise XOutOfRange(x, code.n)
    if m < 0:
        raise ValidationError(f"iterate count must be non-negative, got {m}")
    return x, m


def _search(starts: tuple[int, ...], y: int) -> tuple[int, int]:
    # Largest i with starts[i] <= y; returns (i, number of probes into starts).
    lo, hi = 0, len(starts) - 1
    probes = 0
    while hi - lo > 1:
        mid = (lo + hi) >> 1
        probes += 1
        if starts[mid] <= y:
            lo = mid
        else:
            hi = mid
    return lo, probes


def component_of(code: FastForwardCode, y: int) -> int:
    """Index of the component holding position ``y``."""
    if not 0 <= y < code.n:
        raise XOutOfRange(y, code.n)
    if code.component_index is not None:
        return code.component_index[y]
    return _search(code.starts, y)[0]


def pi_iterate(code: FastForwardCode, x: int, m: int, trace: list | None = None) -> EvalResult:
    """``pi^m(x)`` on positions, counting descents, table reads and arithmetic.

    When ``trace`` is a list, one ``(component, r)`` pair is appended per
    descent.
    """
    x, m = _check_query(code, x, m)
    return _pi(code, x, m, trace)


def _pi(code: FastForwardCode, x: int, m: int, trace: list | None) -> EvalResult:
    starts, aux, comp, loop_len = code.starts, code.aux, code.component_index, code.loop_len
    descents = reads = ops = 0
    while True:
        if comp is not None:
            i = comp[x]
            reads += 1
        else:
            i, probes = _search(starts, x)
            reads += probes
        end = starts[i + 1]
        span = end - x
        reads += 1
        ops += 1
        if m < span:
            return EvalResult(x + m, descents, reads, ops + 1)
        r = m - span
        p = aux[i]
        s = starts[i]
        reads += 2
        ops += 1
        if p >= s:
            if loop_len is not None:
                length = loop_len[i]
                reads += 1
            else:
                length = end - p
                ops += 1
            return EvalResult(p + r % length, descents, reads, ops + 2)
        if trace is not None:
            trace.append((i, r))
        x, m = p, r
        descents += 1


def iterate(code: FastForwardCode, x: int, m: int, trace: list | None = None) -> EvalResult:
    """``f^m(x)`` for the original table the code was built from.

    For a permutation code with a dense index this is five table reads
    (``sigma_inv``, component index, cycle start, cycle length, ``sigma``)
    and four additions, subtractions or reductions.
    """
    x, m = _check_query(code, x, m)
    if code.kind is CodeKind.PERMUTATION:
        y = code.sigma_inv[x]
        if code.component_index is not None:
            i = code.component_index[y]
            reads = 5
        else:
            i, probes = _search(code.starts, y)
            reads = 4 + probes
        s = code.starts[i]
        return EvalResult(code.sigma[s + (y - s + m) % code.loop_len[i]], 0, reads, 4)
    res = _pi(code, code.sigma_inv[x], m, trace)
    return EvalResult(code.sigma[res.value], res.descents, res.table_reads + 2, res.arith_ops)


def _as_m_array(m, shape) -> np.ndarray:
    if isinstance(m, (int, np.integer)) and not isinstance(m, bool):
        if not 0 <= int(m) <= M_MAX:
            raise ValidationError(f"iterate count must lie in [0, 2**64), got {m}")
        return np.full(shape, int(m), dtype=np.uint64)
    ms = np.asarray(m)
    if ms.dtype.kind == "O":
        if any(not 0 <= int(v) <= M_MAX for v in ms.ravel()):
            raise ValidationError("iterate counts must lie in [0, 2**64)")
        ms = ms.astype(np.uint64)
    elif ms.dtype.kind == "i":
        if ms.size and ms.min() < 0:
            raise ValidationError("iterate counts must be non-negative")
        ms = ms.astype(np.uint64)
    elif ms.dtype.kind != "u":
        raise ValidationError(f"iterate counts must be integers, got dtype {ms.dtype}")
    return np.broadcast_to(ms.astype(np.uint64, copy=False), shape).copy()


def pi_iterate_many(code: FastForwardCode, xs, ms) -> tuple[np.ndarray, np.ndarray]:
    """Vectorized :func:`pi_iterate`; returns ``(values, descents)`` arrays.

    ``xs`` and ``ms`` broadcast against each other. All arithmetic is done
    in ``uint64`` with compare-before-subtract, so any ``m < 2**64`` works.
    """
    xs = np.asarray(xs)
    if xs.dtype.kind not in "iu":
        raise ValidationError(f"vertices must be integers, got dtype {xs.dtype}")
    if xs.size and (xs.min() < 0 or xs.max() >= code.n):
        bad = xs[(xs < 0) | (xs >= code.n)].flat[0]
        raise XOutOfRange(int(bad), code.n)
    shape = np.broadcast_shapes(xs.shape, np.shape(ms))
    x = np.broadcast_to(xs, shape).astype(np.uint64).ravel()
    m = _as_m_array(ms, shape).ravel()
    arr = code._arrays
    starts, aux, comp = arr["starts"], arr["aux"], arr["comp"]
    out = np.empty(x.shape, dtype=np.uint64)
    descents = np.zeros(x.shape, dtype=np.int64)
    idx = np.arange(x.size)
    while idx.size:
        if comp is not None:
            i = comp[x]
        else:
            i = np.searchsorted(starts, x, side="right") - 1
        end = starts[i + 1]
        span = end - x
        short = m < span
        out[idx[short]] = x[short] + m[short]
        keep = ~short
        idx, x, m, i, end, span = idx[keep], x[keep], m[keep], i[keep], end[keep], span[keep]
        r = m - span
        p = aux[i]
        rho = p >= starts[i]
        out[idx[rho]] = p[rho] + r[rho] % (end[rho] - p[rho])
        down = ~rho
        idx, x, m = idx[down], p[down], r[down]
        descents[idx] += 1
    return out.reshape(shape).astype(np.int64), descents.reshape(shape)


def iterate_many(code: FastForwardCode, xs, ms) -> tuple[np.ndarray, np.ndarray]:
    """Vectorized :func:`iterate`; returns ``(values, descents)`` arrays."""
    xs = np.asarray(xs)
    if xs.dtype.kind not in "iu":
        raise ValidationError(f"vertices must be integers, got dtype {xs.dtype}")
    if xs.size and (xs.min() < 0 or xs.max() >= code.n):
        bad = xs[(xs < 0) | (xs >= code.n)].flat[0]
        raise XOutOfRange(int(bad), code.n)
    arr = code._arrays
    y = arr["sigma_inv"][xs].astype(np.int64)
    values, descents = pi_iterate_many(code, y, ms)
    return arr["sigma"][values].astype(np.int64), descents


def plateau_descents(code: FastForwardCode) -> np.ndarray:
    """Descents of ``f^m(x)`` for every vertex ``x`` once ``m >= n`` (evaluated at ``m = 2n``)."""
    _, descents = iterate_many(code, np.arange(code.n), 2 * code.n)
    return descents


def mean_plateau_descents(code: FastForwardCode) -> Fraction:
    return Fraction(int(plateau_descents(code).sum()), code.n)


def describe_code(code: FastForwardCode) -> dict:
    """Shape of a code: component sizes, rho/descent split and descent depths."""
    depths = component_depths(code.starts, code.aux)
    rho = sum(1 for i, p in enumerate(code.aux) if p >= code.starts[i])
    return {
        "n": code.n,
        "kind": code.kind.value,
        "components": code.n_components,
        "structure_histogram": dict(sorted(Counter(code.structure).items())),
        "rho_orbits": rho,
        "descent_orbits": code.n_components - rho,
        "depths": depths,
        "max_depth": max(depths),
    }
