"""Domain types and validation for lookup-table functions on ``{0, ..., n-1}``."""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass
from functools import cached_property
from typing import NamedTuple, Sequence

import numpy as np


class FFIterError(Exception):
    """Base class for all errors raised by this package."""


class ValidationError(FFIterError, ValueError):
    """Input does not describe a valid table, code or query."""


class OutOfRange(ValidationError):
    def __init__(self, index: int, value: int):
        self.index = index
        self.value = value
        super().__init__(f"entry {index} has value {value} outside [0, n)")


class LengthMismatch(ValidationError):
    def __init__(self, expected: int, actual: int):
        self.expected = expected
        self.actual = actual
        super().__init__(f"expected {expected} entries, got {actual}")


class NotInjective(ValidationError):
    def __init__(self, value: int, first: int, second: int):
        self.value = value
        self.first = first
        self.second = second
        super().__init__(f"value {value} is hit by both {first} and {second}")


class XOutOfRange(ValidationError):
    def __init__(self, x: int, n: int):
        self.x = x
        self.n = n
        super().__init__(f"vertex {x} outside [0, {n})")


class InvariantViolation(ValidationError):
    def __init__(self, invariant: str, detail: str = ""):
        self.invariant = invariant
        msg = invariant if not detail else f"{invariant}: {detail}"
        super().__init__(msg)


@dataclass(frozen=True)
class FunctionTable:
    """A total function ``f`` on ``range(n)`` stored as its value table.

    Build instances through :func:`validate_table`; the constructor trusts
    its arguments.
    """

    n: int
    values: tuple[int, ...]

    def __len__(self) -> int:
        return self.n

    def __getitem__(self, x: int) -> int:
        return self.values[x]

    @cached_property
    def array(self) -> np.ndarray:
        a = np.asarray(self.values, dtype=np.int64)
        a.flags.writeable = False
        return a

    def successors(self):
        """Edges ``(x, f(x))`` of the functional graph."""
        return enumerate(self.values)


@dataclass(frozen=True)
class PermutationWitness:
    table: FunctionTable
    inverse: tuple[int, ...]

    @property
    def n(self) -> int:
        return self.table.n


class DecompositionStrategy(str, enum.Enum):
    ORDERED_CYCLE = "cycle"
    ORDERED_ORBIT = "ordered"
    GREEDY_ORBIT = "greedy"

    @classmethod
    def parse(cls, value: "str | DecompositionStrategy") -> "DecompositionStrategy":
        if isinstance(value, cls):
            return value
        try:
            return cls(value)
        except ValueError:
            names = ", ".join(s.value for s in cls)
            raise ValueError(f"unknown strategy {value!r}; expected one of {names}") from None


class IndexMode(str, enum.Enum):
    """How ``x -> i(x)`` is resolved: a dense table or a search in ``starts``."""

    DENSE = "dense"
    BSEARCH = "bsearch"

    @classmethod
    def parse(cls, value: "str | IndexMode") -> "IndexMode":
        if isinstance(value, cls):
            return value
        try:
            return cls(value)
        except ValueError:
            raise ValueError(f"unknown index mode {value!r}; expected 'dense' or 'bsearch'") from None


class CodeKind(str, enum.Enum):
    PERMUTATION = "perm"
    GENERAL = "func"


@dataclass(frozen=True)
class OrbitDecomposition:
    """Components ``C_0 .. C_{l-1}`` laid out as one concatenated sequence.

    Component ``i`` occupies ``concat[starts[i]:starts[i + 1]]`` and
    ``aux[i]`` is the position in ``concat`` of ``f(concat[starts[i+1]-1])``.
    Component ``i`` is a rho-orbit exactly when ``aux[i] >= starts[i]``.
    """

    n: int
    concat: tuple[int, ...]
    structure: tuple[int, ...]
    starts: tuple[int, ...]
    aux: tuple[int, ...]

    @property
    def n_components(self) -> int:
        return len(self.structure)

    @property
    def components(self) -> list[tuple[int, ...]]:
        s = self.starts
        return [self.concat[s[i]:s[i + 1]] for i in range(len(self.structure))]

    def is_rho(self, i: int) -> bool:
        return self.aux[i] >= self.starts[i]

    def validate(self) -> "OrbitDecomposition":
        """Check the structural invariants; raise :class:`InvariantViolation`."""
        _check_layout(self.n, self.concat, self.starts, self.aux)
        if len(self.structure) != len(self.aux):
            raise InvariantViolation("structure length", "structure and aux differ in length")
        for i, size in enumerate(self.structure):
            if self.starts[i + 1] - self.starts[i] != size:
                raise InvariantViolation("starts", f"component {i} size disagrees with structure")
        return self


def _check_layout(n: int, sigma: Sequence[int], starts: Sequence[int], aux: Sequence[int]) -> None:
    if n < 1:
        raise InvariantViolation("n >= 1")
    if len(sigma) != n:
        raise InvariantViolation("sigma length", f"expected {n}, got {len(sigma)}")
    seen = bytearray(n)
    for v in sigma:
        if not 0 <= v < n or seen[v]:
            raise InvariantViolation("sigma bijective", f"value {v} repeated or out of range")
        seen[v] = 1
    if len(starts) < 2 or starts[0] != 0 or starts[-1] != n:
        raise InvariantViolation("starts bounds", "need starts[0] == 0 and starts[-1] == n")
    for a, b in zip(starts, starts[1:]):
        if b <= a:
            raise InvariantViolation("starts increasing", f"{a} followed by {b}")
    if len(aux) != len(starts) - 1:
        raise InvariantViolation("aux length", f"expected {len(starts) - 1}, got {len(aux)}")
    for i, p in enumerate(aux):
        if not 0 <= p < starts[i + 1]:
            raise InvariantViolation("aux range", f"aux[{i}] = {p} not in [0, {starts[i + 1]})")


class EvalResult(NamedTuple):
    """An iterate together with the work spent computing it."""

    value: int
    descents: int
    table_reads: int
    arith_ops: int


def validate_table(raw: Sequence[int], n: int | None = None) -> FunctionTable:
    """Check that ``raw`` is a total function on ``range(n)``.

    ``n`` defaults to ``len(raw)``. Raises :class:`LengthMismatch` or
    :class:`OutOfRange` (for the first offending index).
    """
    if isinstance(raw, FunctionTable):
        raw = raw.values
    if isinstance(raw, np.ndarray):
        if raw.ndim != 1:
            raise ValidationError(f"table must be one-dimensional, got shape {raw.shape}")
        if raw.size and not np.issubdtype(raw.dtype, np.integer):
            raise ValidationError(f"table must hold integers, got dtype {raw.dtype}")
        values = tuple(int(v) for v in raw.tolist())
    else:
        values = tuple(raw)
        for v in values:
            if isinstance(v, bool) or not isinstance(v, (int, np.integer)):
                raise ValidationError(f"table entries must be integers, got {v!r}")
        values = tuple(int(v) for v in values)
    if n is None:
        n = len(values)
    if n < 1:
        raise ValidationError("n must be at least 1")
    if len(values) != n:
        raise LengthMismatch(n, len(values))
    for x, v in enumerate(values):
        if not 0 <= v < n:
            raise OutOfRange(x, v)
    return FunctionTable(n, values)


def as_permutation(t: FunctionTable) -> PermutationWitness:
    inverse = [-1] * t.n
    for x, y in enumerate(t.values):
        if inverse[y] != -1:
            raise NotInjective(y, inverse[y], x)
        inverse[y] = x
    return PermutationWitness(t, tuple(inverse))


def descent_bound(n: int) -> int:
    """Largest possible greedy descent depth on ``n`` points: ``floor((sqrt(1+8n)-3)/2)``."""
    if n < 1:
        raise ValueError("n must be at least 1")
    # floor((isqrt(k) - 3) / 2) == floor((sqrt(k) - 3) / 2) for integer k
    return (math.isqrt(1 + 8 * n) - 3) // 2
