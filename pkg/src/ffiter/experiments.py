"""Descent statistics of fast-forward codes for random functions.

For each ``n = 2**k`` a batch of seeded random tables is coded and the
plateau descent count of every vertex is measured by evaluating the code
at ``m = 2n``. Averages are uniform over vertices, then over samples.
"""

from __future__ import annotations

import csv
import math
import os
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from fractions import Fraction
from typing import IO, Iterable, Sequence

from .codec import build_code, plateau_descents
from .core import DecompositionStrategy, descent_bound
from .generators import derive_seed, random_function, random_permutation

__all__ = [
    "DEFAULT_SEED",
    "DescentStats",
    "SampleStats",
    "emit_csv",
    "emit_detail_csv",
    "measure_sample",
    "run_experiment",
]

DEFAULT_SEED = 20100405
CSV_HEADER = ["n", "samples", "seed", "max_descents", "avg_descents", "log2n", "ratio", "bound", "elapsed_ms"]
DETAIL_HEADER = ["n", "sample", "max_descents", "avg_descents"]


@dataclass(frozen=True)
class SampleStats:
    sample: int
    max_descents: int
    avg_descents: Fraction


@dataclass(frozen=True)
class DescentStats:
    n: int
    samples: int
    max_descents: int
    avg_descents: Fraction
    bound: int
    seed: int
    elapsed_ms: float = field(compare=False)
    per_sample: tuple[SampleStats, ...] = field(default=(), repr=False, compare=False)

    @property
    def log2n(self) -> float:
        return math.log2(self.n)

    @property
    def ratio(self) -> float:
        """``log2(n) / avg_descents``; infinite when nothing ever descends."""
        if self.avg_descents == 0:
            return math.inf
        return self.log2n / float(self.avg_descents)


def measure_sample(n: int, sample: int, seed: int, strategy: str | DecompositionStrategy) -> SampleStats:
    """Plateau descent statistics of one seeded table."""
    strategy = DecompositionStrategy.parse(strategy)
    stream_seed = derive_seed(seed, n, sample)
    if strategy is DecompositionStrategy.ORDERED_CYCLE:
        table = random_permutation(n, stream_seed)
    else:
        table = random_function(n, stream_seed)
    descents = plateau_descents(build_code(table, strategy))
    return SampleStats(sample, int(descents.max()), Fraction(int(descents.sum()), n))


def _worker_count(n_jobs: int | None) -> int:
    if n_jobs is None:
        env = os.environ.get("FFITER_THREADS")
        n_jobs = int(env) if env else 1
    return max(1, n_jobs)


def run_experiment(
    exp_min: int,
    exp_max: int,
    samples: int,
    seed: int = DEFAULT_SEED,
    strategy: str | DecompositionStrategy = DecompositionStrategy.GREEDY_ORBIT,
    n_jobs: int | None = None,
) -> list[DescentStats]:
    """One :class:`DescentStats` row per ``n = 2**exp_min .. 2**exp_max``.

    ``strategy="cycle"`` draws random permutations instead of random
    functions. Results depend only on the arguments, never on ``n_jobs``
    (which defaults to ``$FFITER_THREADS`` or 1).
    """
    if not 1 <= exp_min <= exp_max:
        raise ValueError("need 1 <= exp_min <= exp_max")
    if samples < 1:
        raise ValueError("samples must be at least 1")
    strategy = DecompositionStrategy.parse(strategy)
    workers = _worker_count(n_jobs)
    rows = []
    pool = ProcessPoolExecutor(workers) if workers > 1 else None
    try:
        for k in range(exp_min, exp_max + 1):
            n = 1 << k
            t0 = time.perf_counter()
            args = [(n, s, seed, strategy) for s in range(samples)]
            if pool is None:
                per = [measure_sample(*a) for a in args]
            else:
                per = list(pool.map(measure_sample, *zip(*args)))
            elapsed = (time.perf_counter() - t0) * 1000.0
            rows.append(
                DescentStats(
                    n=n,
                    samples=samples,
                    max_descents=max(p.max_descents for p in per),
                    avg_descents=sum((p.avg_descents for p in per), Fraction(0)) / samples,
                    bound=descent_bound(n),
                    seed=seed,
                    elapsed_ms=elapsed,
                    per_sample=tuple(per),
                )
            )
    finally:
        if pool is not None:
            pool.shutdown()
    return rows


def _fmt(x: float | Fraction) -> str:
    x = float(x)
    return "inf" if math.isinf(x) else f"{x:.6f}"


def emit_csv(stats: Iterable[DescentStats], destination: IO[str] | str | os.PathLike) -> None:
    if not hasattr(destination, "write"):
        with open(destination, "w", newline="", encoding="ascii") as fh:
            return emit_csv(stats, fh)
    w = csv.writer(destination, lineterminator="\n")
    w.writerow(CSV_HEADER)
    for s in stats:
        w.writerow(
            [
                s.n,
                s.samples,
                s.seed,
                s.max_descents,
                _fmt(s.avg_descents),
                _fmt(s.log2n),
                _fmt(s.ratio),
                s.bound,
                _fmt(s.elapsed_ms),
            ]
        )


def emit_detail_csv(stats: Sequence[DescentStats], destination: IO[str] | str | os.PathLike) -> None:
    if not hasattr(destination, "write"):
        with open(destination, "w", newline="", encoding="ascii") as fh:
            return emit_detail_csv(stats, fh)
    w = csv.writer(destination, lineterminator="\n")
    w.writerow(DETAIL_HEADER)
    for s in stats:
        for p in s.per_sample:
            w.writerow([s.n, p.sample, p.max_descents, _fmt(p.avg_descents)])
