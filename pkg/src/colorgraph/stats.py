"""Statistical distances and empirical summaries used by the test suites."""
from __future__ import annotations

from dataclasses import dataclass
from typing import Callable, Mapping

import numpy as np

__all__ = [
    "validate_pmf",
    "tv_distance",
    "ks_statistic",
    "two_sample_ks",
    "ecdf",
    "empirical_moments",
    "EmpiricalMoments",
]

_PMF_SUM_TOL = 1e-10


def validate_pmf(p: Mapping) -> None:
    total = sum(float(x) for x in p.values())
    if any(float(x) < 0 for x in p.values()):
        raise ValueError("pmf has negative probabilities")
    if abs(total - 1.0) > _PMF_SUM_TOL:
        raise ValueError(f"pmf sums to {total!r}, not 1")


def tv_distance(p: Mapping, q: Mapping) -> float:
    """Total variation distance: half the L1 gap over the union support."""
    support = set(p) | set(q)
    return 0.5 * sum(abs(float(p.get(x, 0)) - float(q.get(x, 0))) for x in support)


def ks_statistic(samples, cdf: Callable[[float], float]) -> float:
    """sup_x |empirical cdf - cdf| over the sample points, both sides of each jump."""
    arr = np.sort(np.asarray(samples, dtype=np.float64))
    if arr.size == 0:
        raise ValueError("need at least one sample")
    n = arr.size
    ref = np.array([cdf(float(x)) for x in arr])
    upper = np.arange(1, n + 1) / n - ref
    lower = ref - np.arange(0, n) / n
    return float(max(upper.max(), lower.max(), 0.0))


def ecdf(reference) -> Callable[[float], float]:
    """Right-continuous empirical cdf of a reference sample, as a callable."""
    ref = np.sort(np.asarray(reference, dtype=np.float64))
    n = ref.size

    def cdf(x: float) -> float:
        return float(np.searchsorted(ref, x, side="right")) / n

    return cdf


def two_sample_ks(a, b) -> float:
    """sup_x |F_a(x) - F_b(x)| between two empirical cdfs, evaluated exactly."""
    xa = np.sort(np.asarray(a, dtype=np.float64))
    xb = np.sort(np.asarray(b, dtype=np.float64))
    if xa.size == 0 or xb.size == 0:
        raise ValueError("need at least one sample on each side")
    grid = np.concatenate((xa, xb))
    fa = np.searchsorted(xa, grid, side="right") / xa.size
    fb = np.searchsorted(xb, grid, side="right") / xb.size
    return float(np.max(np.abs(fa - fb)))


@dataclass(frozen=True)
class EmpiricalMoments:
    raw: tuple[float, ...]
    central: tuple[float, ...]
    raw_se: tuple[float, ...]
    central_se: tuple[float, ...]


def empirical_moments(samples, k_max: int, max_blocks: int = 10_000) -> EmpiricalMoments:
    """Plug-in raw and central moments with delete-one-block jackknife SEs.

    Samples are grouped into at most ``max_blocks`` contiguous blocks; the
    jackknife recomputes each estimator with one block removed, which keeps
    the whole computation O(n + blocks * k^2).
    """
    if not 1 <= k_max <= 8:
        raise ValueError(f"k_max must be in [1, 8], got {k_max}")
    x = np.asarray(samples, dtype=np.float64)
    n = x.size
    if n < 2:
        raise ValueError("need at least two samples")
    blocks = min(max_blocks, n)
    bounds = np.linspace(0, n, blocks + 1).astype(int)
    sizes = np.diff(bounds).astype(np.float64)
    # per-block power sums, order 0..k_max
    sums = np.empty((blocks, k_max + 1))
    for b in range(blocks):
        seg = x[bounds[b] : bounds[b + 1]]
        powers = np.ones_like(seg)
        sums[b, 0] = seg.size
        for k in range(1, k_max + 1):
            powers = powers * seg
            sums[b, k] = powers.sum()
    total = sums.sum(axis=0)

    def estimates(power_sums: np.ndarray, count: float) -> tuple[np.ndarray, np.ndarray]:
        raw = power_sums[1:] / count
        mean = raw[0]
        central = np.empty(k_max)
        # mu_k = sum_j C(k, j) raw_j (-mean)^{k-j}, with raw_0 = 1
        from math import comb

        for k in range(1, k_max + 1):
            acc = 0.0
            for j in range(0, k + 1):
                rj = 1.0 if j == 0 else raw[j - 1]
                acc += comb(k, j) * rj * (-mean) ** (k - j)
            central[k - 1] = acc
        return raw, central

    raw_full, central_full = estimates(total, float(n))
    if blocks < 2:
        zeros = tuple(0.0 for _ in range(k_max))
        return EmpiricalMoments(tuple(raw_full), tuple(central_full), zeros, zeros)
    raw_jack = np.empty((blocks, k_max))
    central_jack = np.empty((blocks, k_max))
    for b in range(blocks):
        r, cen = estimates(total - sums[b], float(n) - sizes[b])
        raw_jack[b] = r
        central_jack[b] = cen

    def jack_se(jacks: np.ndarray) -> np.ndarray:
        mean = jacks.mean(axis=0)
        return np.sqrt((blocks - 1) / blocks * ((jacks - mean) ** 2).sum(axis=0))

    return EmpiricalMoments(
        raw=tuple(raw_full),
        central=tuple(central_full),
        raw_se=tuple(jack_se(raw_jack)),
        central_se=tuple(jack_se(central_jack)),
    )
