"""Uniform random colorings and monochromatic statistics.

``simulate`` draws colorings with a counter-based generator keyed by
(seed, sample index, vertex index): results are bit-identical however the
sample range is chunked or distributed over workers. ``exact_distribution``
is the brute-force oracle: it enumerates every coloring in base-c order and
returns exact rational probabilities with denominator c**n.
"""
from __future__ import annotations

import math
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from fractions import Fraction
from typing import Union

import numpy as np

from . import census, rng
from .errors import BadColorVectorError, EnumerationGateExceededError
from .graph import Graph

__all__ = [
    "MonoEdges",
    "MonoStars",
    "MonoCycles",
    "Statistic",
    "mono_count",
    "simulate",
    "SimulationRun",
    "exact_distribution",
    "EXACT_ENUMERATION_GATE",
]

EXACT_ENUMERATION_GATE = 10**7
_CHUNK_TARGET = 2_000_000  # matrix entries per enumeration/simulation chunk


@dataclass(frozen=True)
class MonoEdges:
    """Number of edges whose endpoints share a color."""


@dataclass(frozen=True)
class MonoStars:
    """Number of monochromatic r-stars: sum_v C(#same-colored neighbors of v, r)."""

    r: int

    def __post_init__(self):
        if self.r < 1:
            raise ValueError(f"star order must be >= 1, got {self.r}")


@dataclass(frozen=True)
class MonoCycles:
    """Number of g-cycles whose vertices all share one color."""

    g: int

    def __post_init__(self):
        if not 3 <= self.g <= 8:
            raise ValueError(f"cycle length must be in [3, 8], got {self.g}")


Statistic = Union[MonoEdges, MonoStars, MonoCycles]


def _comb_array(values: np.ndarray, r: int) -> np.ndarray:
    """Elementwise C(value, r), exact, via the few unique values present."""
    uniq, inverse = np.unique(values, return_inverse=True)
    table = np.array([math.comb(int(x), r) if x >= r else 0 for x in uniq], dtype=np.int64)
    return table[inverse].reshape(values.shape)


def _counts_for_colors(g: Graph, stat: Statistic, colors: np.ndarray) -> np.ndarray:
    """Statistic per row of a (batch, n) color matrix."""
    if isinstance(stat, MonoEdges):
        if g.m == 0:
            return np.zeros(colors.shape[0], dtype=np.int64)
        u, v = g.edge_arrays()
        return (colors[:, u] == colors[:, v]).sum(axis=1).astype(np.int64)
    if isinstance(stat, MonoStars):
        if g.m == 0:
            return np.zeros(colors.shape[0], dtype=np.int64)
        u, v = g.edge_arrays()
        eq = colors[:, u] == colors[:, v]
        rows, cols = np.nonzero(eq)
        batch, n = colors.shape
        flat = np.concatenate((rows * n + u[cols], rows * n + v[cols]))
        mono_deg = np.bincount(flat, minlength=batch * n).reshape(batch, n)
        return _comb_array(mono_deg, stat.r).sum(axis=1)
    if isinstance(stat, MonoCycles):
        cycles = census.cycle_list(g, stat.g)
        if not cycles:
            return np.zeros(colors.shape[0], dtype=np.int64)
        cyc = np.asarray(cycles, dtype=np.int64)
        cc = colors[:, cyc]
        mono = (cc == cc[:, :, :1]).all(axis=2)
        return mono.sum(axis=1).astype(np.int64)
    raise TypeError(f"unknown statistic {stat!r}")


def mono_count(g: Graph, colors, stat: Statistic) -> int:
    """Evaluate one statistic on one explicit coloring."""
    arr = np.asarray(colors, dtype=np.int64)
    if arr.shape != (g.n,):
        raise BadColorVectorError(f"expected {g.n} colors, got shape {arr.shape}")
    if g.n and arr.min() < 0:
        raise BadColorVectorError("colors must be nonnegative integers")
    return int(_counts_for_colors(g, stat, arr[None, :])[0])


@dataclass(frozen=True, eq=False)
class SimulationRun:
    """Raw per-sample statistics of one reproducible simulation."""

    seed: int
    colors: int
    stat: Statistic
    sample_count: int
    counts: np.ndarray

    def counts_by_value(self) -> dict[int, int]:
        values, freq = np.unique(self.counts, return_counts=True)
        return {int(v): int(f) for v, f in zip(values, freq)}

    def pmf(self) -> dict[int, float]:
        """Empirical pmf; frequencies sum to 1 exactly."""
        return {v: f / self.sample_count for v, f in self.counts_by_value().items()}

    def standardized(self, center: float, scale: float) -> np.ndarray:
        """(counts - center) / scale under a caller-chosen normalization."""
        if scale <= 0:
            raise ValueError("scale must be positive")
        return (self.counts.astype(np.float64) - center) / scale

    def mean(self) -> float:
        return float(self.counts.mean())


def _color_matrix(seed: int, sample_indices: np.ndarray, n: int, c: int) -> np.ndarray:
    return rng.uniform_ints(
        seed, c, rng.STREAM_COLORS, sample_indices[:, None], np.arange(n, dtype=np.int64)[None, :]
    )


def _row_cost(g: Graph, stat: Statistic) -> int:
    """Per-sample memory footprint driving the chunk size."""
    cost = g.n + g.m
    if isinstance(stat, MonoCycles):
        cost += stat.g * len(census.cycle_list(g, stat.g))
    return max(1, cost)


def _simulate_range(g: Graph, c: int, stat: Statistic, seed: int, lo: int, hi: int) -> np.ndarray:
    step = max(1, _CHUNK_TARGET // _row_cost(g, stat))
    parts = []
    for start in range(lo, hi, step):
        idx = np.arange(start, min(start + step, hi), dtype=np.int64)
        colors = _color_matrix(seed, idx, g.n, c)
        parts.append(_counts_for_colors(g, stat, colors))
    return np.concatenate(parts) if parts else np.zeros(0, dtype=np.int64)


def _simulate_range_star(args) -> np.ndarray:
    return _simulate_range(*args)


def simulate(
    g: Graph,
    c: int,
    stat: Statistic,
    samples: int,
    seed: int,
    workers: int | None = None,
) -> SimulationRun:
    """Draw ``samples`` independent uniform c-colorings and evaluate ``stat``.

    Sample i is a pure function of (seed, i), so the result is identical for
    any ``workers`` value; workers only bound process parallelism.
    """
    if c < 2:
        raise ValueError(f"need at least 2 colors, got {c}")
    if samples < 1:
        raise ValueError(f"need at least 1 sample, got {samples}")
    if isinstance(stat, MonoCycles):
        census.cycle_list(g, stat.g)  # warm the shared cycle cache once
    if workers and workers > 1:
        bounds = np.linspace(0, samples, workers + 1).astype(int)
        jobs = [
            (g, c, stat, seed, int(lo), int(hi))
            for lo, hi in zip(bounds[:-1], bounds[1:])
            if hi > lo
        ]
        with ProcessPoolExecutor(max_workers=workers) as pool:
            parts = list(pool.map(_simulate_range_star, jobs))
        counts = np.concatenate(parts)
    else:
        counts = _simulate_range(g, c, stat, seed, 0, samples)
    counts.setflags(write=False)
    return SimulationRun(seed=seed, colors=c, stat=stat, sample_count=samples, counts=counts)


def exact_distribution(g: Graph, c: int, stat: Statistic) -> dict[int, Fraction]:
    """Exact law of the statistic under uniform c-coloring, by full enumeration.

    Probabilities are exact rationals with denominator c**n. Gated at
    c**n <= 10^7 enumerated colorings.
    """
    if c < 2:
        raise ValueError(f"need at least 2 colors, got {c}")
    total = c**g.n
    if total > EXACT_ENUMERATION_GATE:
        raise EnumerationGateExceededError(
            f"c^n = {total} exceeds the enumeration gate {EXACT_ENUMERATION_GATE}",
            total=total,
        )
    # vertex 0 is the most significant digit of the coloring index
    powers = c ** np.arange(g.n - 1, -1, -1, dtype=np.int64) if g.n else np.zeros(0, np.int64)
    counter: dict[int, int] = {}
    step = max(1, _CHUNK_TARGET // _row_cost(g, stat))
    for start in range(0, total, step):
        idx = np.arange(start, min(start + step, total), dtype=np.int64)
        colors = (idx[:, None] // powers[None, :]) % c if g.n else np.zeros((idx.size, 0), np.int64)
        values = _counts_for_colors(g, stat, colors)
        uniq, freq = np.unique(values, return_counts=True)
        for v, f in zip(uniq.tolist(), freq.tolist()):
            counter[v] = counter.get(v, 0) + f
    return {v: Fraction(f, total) for v, f in sorted(counter.items())}
