"""Limit laws of monochromatic-edge counts, their evaluation and sampling.

Four families cover every regime:

* ``Poisson`` for a growing color count with m/c converging to a constant
  (the law describes the raw count N);
* ``Normal`` for the standardized count (N - m/c)/sqrt(m/c), either with a
  growing color count (variance 1) or with c fixed and a vanishing
  four-cycle ratio (variance 1 - 1/c);
* ``WeightedChiSquare`` for dense hosts with c fixed: the limit of
  (N - m/c)/sqrt(2m) is scale * sum_i w_i xi_i with xi_i independent
  centered chi-square(dof) variables and w the normalized spectrum;
* ``PoissonMixture`` and ``AtomPlusNormal`` for the mixture phenomena
  exhibited by branching-tree and coarse bipartite hosts.

Sampling is counter-based: element i of a sample path is a pure function of
(seed, i).
"""
from __future__ import annotations

import cmath
import math
from dataclasses import dataclass
from typing import Union

import numpy as np

from . import census, rng, spectral
from .errors import (
    AmbiguousRegimeError,
    DomainExceededError,
    WrongLawKindError,
)
from .graph import (
    Complete,
    CompleteBipartite,
    ErdosRenyi,
    FamilySpec,
    Graph,
)

__all__ = [
    "Poisson",
    "PointMass",
    "PoissonMixing",
    "EmpiricalMixing",
    "PoissonMixture",
    "Normal",
    "WeightedChiSquare",
    "AtomPlusNormal",
    "LimitLaw",
    "Fixed",
    "Growing",
    "limit_for",
    "law_pmf",
    "law_cdf",
    "sample_law",
    "weighted_chisq_mgf",
    "delta_conditional_mgf",
    "gadget_char_function",
    "gaussian_surrogate_delta",
    "gaussian_surrogate_product",
    "ACF4_NORMAL_THRESHOLD",
    "ACF4_GRAY_UPPER",
]

_PMF_REL_TAIL = 1e-12
_WEIGHT_SUM_TOL = 1e-10
_WEIGHT_TRUNCATION_TAIL = 1e-6
_QUANTILE_CACHE_SAMPLES = 10**7
_QUANTILE_CACHE_SEED = 0x5EED_CDF
_NORMAL_CHUNK = 4_000_000

ACF4_NORMAL_THRESHOLD = 1e-2
ACF4_GRAY_UPPER = 1e-1


# ---------------------------------------------------------------------------
# law types
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class Poisson:
    mean: float

    def __post_init__(self):
        if self.mean < 0:
            raise ValueError(f"Poisson mean must be nonnegative, got {self.mean}")


@dataclass(frozen=True)
class PointMass:
    value: float

    def __post_init__(self):
        if self.value < 0:
            raise ValueError("mixing point mass must be nonnegative")


@dataclass(frozen=True)
class PoissonMixing:
    mean: float

    def __post_init__(self):
        if self.mean < 0:
            raise ValueError("mixing mean must be nonnegative")


@dataclass(frozen=True)
class EmpiricalMixing:
    samples: tuple[float, ...]

    def __post_init__(self):
        if not self.samples or any(s < 0 for s in self.samples):
            raise ValueError("empirical mixing needs nonempty nonnegative samples")


Mixing = Union[PointMass, PoissonMixing, EmpiricalMixing]


@dataclass(frozen=True)
class PoissonMixture:
    """Poisson with a random mean Z: P(W = k) = E[e^{-Z} Z^k / k!]."""

    mixing: Mixing


@dataclass(frozen=True)
class Normal:
    mean: float
    variance: float

    def __post_init__(self):
        if self.variance <= 0:
            raise ValueError(f"variance must be positive, got {self.variance}")


@dataclass(frozen=True)
class WeightedChiSquare:
    """scale * sum_i weights_i * xi_i with xi_i iid chi-square(dof) - dof.

    Weights must be normalized: sum of squares 1 (within 1e-10).
    """

    weights: tuple[float, ...]
    dof: int
    scale: float

    def __post_init__(self):
        if self.dof < 1:
            raise ValueError(f"dof must be >= 1, got {self.dof}")
        ssq = sum(w * w for w in self.weights)
        if abs(ssq - 1.0) > _WEIGHT_SUM_TOL:
            raise ValueError(f"weights must have unit sum of squares, got {ssq!r}")

    def effective_weights(self) -> tuple[tuple[float, ...], float]:
        """(weights kept for sampling, dropped squared mass).

        Weights are ordered by decreasing magnitude and truncated once the
        remaining squared mass falls below 1e-6.
        """
        ordered = sorted(self.weights, key=abs, reverse=True)
        total = sum(w * w for w in ordered)
        kept: list[float] = []
        acc = 0.0
        for w in ordered:
            if total - acc < _WEIGHT_TRUNCATION_TAIL:
                break
            kept.append(w)
            acc += w * w
        if not kept:
            kept = ordered[:1]
            acc = kept[0] ** 2
        return tuple(kept), max(0.0, total - acc)


@dataclass(frozen=True)
class AtomPlusNormal:
    """Mixture of a point mass at 0 (weight atom_mass) and N(0, variance)."""

    atom_mass: float
    variance: float

    def __post_init__(self):
        if not 0.0 <= self.atom_mass <= 1.0:
            raise ValueError(f"atom mass must lie in [0, 1], got {self.atom_mass}")
        if self.variance <= 0:
            raise ValueError(f"variance must be positive, got {self.variance}")


LimitLaw = Union[Poisson, PoissonMixture, Normal, WeightedChiSquare, AtomPlusNormal]


# ---------------------------------------------------------------------------
# pmf / cdf
# ---------------------------------------------------------------------------


def _poisson_pmf(lam: float, k: int) -> float:
    if k < 0:
        return 0.0
    if lam == 0.0:
        return 1.0 if k == 0 else 0.0
    return math.exp(-lam + k * math.log(lam) - math.lgamma(k + 1))


def _mixture_pmf(mix: Mixing, k: int) -> float:
    if isinstance(mix, PointMass):
        return _poisson_pmf(mix.value, k)
    if isinstance(mix, EmpiricalMixing):
        return float(np.mean([_poisson_pmf(z, k) for z in mix.samples]))
    if isinstance(mix, PoissonMixing):
        # sum_j P(Z = j) e^{-j} j^k / k!, truncated when the Poisson tail of
        # the mixing law is negligible relative to the accumulated sum
        mu = mix.mean
        total = 0.0
        weight_tail = 1.0
        j = 0
        wj = math.exp(-mu)
        while True:
            total += wj * _poisson_pmf(float(j), k)
            weight_tail -= wj
            if weight_tail <= _PMF_REL_TAIL * max(total, _PMF_REL_TAIL) and j > mu:
                break
            j += 1
            wj *= mu / j
            if j > 10000:
                break
        return total
    raise TypeError(f"unknown mixing {mix!r}")


def law_pmf(law: LimitLaw, k: int) -> float:
    """P(law = k) for the discrete laws; WrongLawKindError otherwise."""
    if isinstance(law, Poisson):
        return _poisson_pmf(law.mean, k)
    if isinstance(law, PoissonMixture):
        return _mixture_pmf(law.mixing, k)
    raise WrongLawKindError(f"{type(law).__name__} has no pmf")


def _phi(x: float) -> float:
    return 0.5 * (1.0 + math.erf(x / math.sqrt(2.0)))


_wcs_quantile_cache: dict[tuple, np.ndarray] = {}


def _wcs_quantiles(law: WeightedChiSquare) -> np.ndarray:
    key = (law.weights, law.dof, law.scale)
    hit = _wcs_quantile_cache.get(key)
    if hit is None:
        hit = np.sort(sample_law(law, _QUANTILE_CACHE_SAMPLES, _QUANTILE_CACHE_SEED))
        _wcs_quantile_cache.clear()  # keep at most one table resident
        _wcs_quantile_cache[key] = hit
    return hit


def law_cdf(law: LimitLaw, x: float) -> float:
    """P(law <= x)."""
    if isinstance(law, Poisson):
        if x < 0:
            return 0.0
        return sum(_poisson_pmf(law.mean, k) for k in range(0, int(math.floor(x)) + 1))
    if isinstance(law, PoissonMixture):
        if x < 0:
            return 0.0
        return sum(_mixture_pmf(law.mixing, k) for k in range(0, int(math.floor(x)) + 1))
    if isinstance(law, Normal):
        return _phi((x - law.mean) / math.sqrt(law.variance))
    if isinstance(law, AtomPlusNormal):
        atom = law.atom_mass if x >= 0 else 0.0
        return atom + (1.0 - law.atom_mass) * _phi(x / math.sqrt(law.variance))
    if isinstance(law, WeightedChiSquare):
        table = _wcs_quantiles(law)
        return float(np.searchsorted(table, x, side="right")) / table.size
    raise WrongLawKindError(f"unknown law {law!r}")


# ---------------------------------------------------------------------------
# sampling
# ---------------------------------------------------------------------------


def _normals_for(seed: int, idx: np.ndarray, *slots) -> np.ndarray:
    return rng.normals(seed, rng.STREAM_LAW, idx, *slots)


def sample_law(law: LimitLaw, count: int, seed: int) -> np.ndarray:
    """``count`` independent draws; draw i depends only on (seed, i)."""
    if count < 1:
        raise ValueError(f"need at least one sample, got {count}")
    idx = np.arange(count, dtype=np.int64)
    if isinstance(law, Poisson):
        return rng.poissons(seed, law.mean, rng.STREAM_LAW, idx, 0).astype(np.float64)
    if isinstance(law, PoissonMixture):
        mix = law.mixing
        if isinstance(mix, PointMass):
            z = np.full(count, mix.value)
        elif isinstance(mix, PoissonMixing):
            z = rng.poissons(seed, mix.mean, rng.STREAM_LAW, idx, 1).astype(np.float64)
        else:
            arr = np.asarray(mix.samples, dtype=np.float64)
            pick = rng.uniform_ints(seed, arr.size, rng.STREAM_LAW, idx, 2)
            z = arr[pick]
        return rng.poissons(seed, z, rng.STREAM_LAW, idx, 0).astype(np.float64)
    if isinstance(law, Normal):
        return law.mean + math.sqrt(law.variance) * _normals_for(seed, idx, 0)
    if isinstance(law, AtomPlusNormal):
        u = rng.uniforms(seed, rng.STREAM_LAW, idx, 3)
        out = math.sqrt(law.variance) * _normals_for(seed, idx, 0)
        out[u < law.atom_mass] = 0.0
        return out
    if isinstance(law, WeightedChiSquare):
        kept, _ = law.effective_weights()
        w = np.asarray(kept, dtype=np.float64)
        nk, dof = w.size, law.dof
        out = np.empty(count, dtype=np.float64)
        step = max(1, _NORMAL_CHUNK // max(1, nk * dof))
        cols = np.arange(nk, dtype=np.int64)[None, :, None]
        comp = np.arange(dof, dtype=np.int64)[None, None, :]
        for start in range(0, count, step):
            block = idx[start : start + step]
            z = _normals_for(seed, block[:, None, None], cols, comp)
            xi = (z * z).sum(axis=2) - dof
            out[start : start + block.size] = law.scale * (xi @ w)
        return out
    raise WrongLawKindError(f"unknown law {law!r}")


# ---------------------------------------------------------------------------
# moment generating functions
# ---------------------------------------------------------------------------


def weighted_chisq_mgf(weights, dof: int, t: float) -> float:
    """E exp(t * sum_j w_j xi_j), xi_j iid chi-square(dof) - dof.

    Product form prod_j (1 - 2 t w_j)^{-dof/2} e^{-dof t w_j}; finite for
    2 |t| max|w| < 1. The exponential factors cancel whenever the weights
    sum to zero, as they do for graph spectra.
    """
    w = np.asarray(weights, dtype=np.float64)
    if dof < 1:
        raise ValueError(f"dof must be >= 1, got {dof}")
    wmax = float(np.max(np.abs(w))) if w.size else 0.0
    if 2.0 * abs(t) * wmax >= 1.0:
        raise DomainExceededError(
            f"|t| = {abs(t)} outside the MGF domain |t| < {0.5 / wmax if wmax else math.inf}"
        )
    log_val = -0.5 * dof * np.sum(np.log1p(-2.0 * t * w)) - dof * t * np.sum(w)
    return float(np.exp(log_val))


def delta_conditional_mgf(g: Graph, c: int, t: float) -> float:
    """MGF of the Gaussian quadratic surrogate of (N - m/c)/sqrt(2m).

    Equals prod_j (1 - lambda~_j t / c)^{(1-c)/2} over the normalized
    adjacency spectrum lambda~.
    """
    if c < 2:
        raise ValueError(f"need at least 2 colors, got {c}")
    if g.m < 1:
        raise ValueError("needs at least one edge")
    lam = spectral.eigenvalues(g).normalized
    lmax = float(np.max(np.abs(lam)))
    if abs(t) >= c / (2.0 * lmax):
        raise DomainExceededError(
            f"|t| = {abs(t)} outside the stated domain |t| < {c / (2.0 * lmax)}"
        )
    log_val = 0.5 * (1 - c) * np.sum(np.log1p(-lam * (t / c)))
    return float(np.exp(log_val))


def gadget_char_function(a: int, b: int, c: int, g: int, t: float) -> complex:
    """Characteristic function of the monochromatic g-cycle count of the
    path-cycle gadget with parameters (a, b, g) under uniform c-coloring.

    E e^{itZ} = E (1 - c^{2-g} + e^{it} c^{2-g})^{b K} with K the number of
    monochromatic edges of the length-a path, K ~ Binomial(a, 1/c); the sum
    over the binomial pmf is evaluated exactly.
    """
    if g < 3:
        raise ValueError(f"cycle length must be >= 3, got {g}")
    if a < 1 or b < 1 or c < 2:
        raise ValueError("gadget needs a >= 1, b >= 1, c >= 2")
    q = float(c) ** (2 - g)
    inner = (1.0 - q) + cmath.exp(1j * t) * q
    p = 1.0 / c
    total = 0.0 + 0.0j
    for k in range(a + 1):
        weight = math.comb(a, k) * p**k * (1.0 - p) ** (a - k)
        total += weight * inner ** (b * k)
    return total


# ---------------------------------------------------------------------------
# Gaussian surrogate sampling
# ---------------------------------------------------------------------------


def _centered_gaussian_scores(seed: int, idx, vertices: int, c: int) -> np.ndarray:
    """S[v, a] = X[v, a] - mean_a X[v, .] with X iid N(0, 1/c); shape (batch, vertices, c)."""
    v = np.arange(vertices, dtype=np.int64)[None, :, None]
    a = np.arange(c, dtype=np.int64)[None, None, :]
    x = rng.normals(seed, rng.STREAM_LAW, idx[:, None, None], v, a) / math.sqrt(c)
    return x - x.mean(axis=2, keepdims=True)


def gaussian_surrogate_delta(g: Graph, c: int, count: int, seed: int) -> np.ndarray:
    """Draws of Q(G)/sqrt(2m), the Gaussian surrogate of the standardized count.

    Q(G) = sum_{(i,j) in E} sum_a S_{ia} S_{ja} with the centered Gaussian
    scores S; its conditional MGF is :func:`delta_conditional_mgf`.
    """
    if g.m < 1:
        raise ValueError("needs at least one edge")
    u, v = g.edge_arrays()
    out = np.empty(count, dtype=np.float64)
    step = max(1, _NORMAL_CHUNK // max(1, g.n * c))
    idx = np.arange(count, dtype=np.int64)
    for start in range(0, count, step):
        block = idx[start : start + step]
        s = _centered_gaussian_scores(seed, block, g.n, c)
        q = (s[:, u, :] * s[:, v, :]).sum(axis=(1, 2))
        out[start : start + block.size] = q / math.sqrt(2.0 * g.m)
    return out


def gaussian_surrogate_product(pattern, c: int, count: int, seed: int) -> np.ndarray:
    """Draws of T(H) = prod over multi-edges of sum_a S_{ia} S_{ja}."""
    nv = pattern.vertex_count
    out = np.empty(count, dtype=np.float64)
    step = max(1, _NORMAL_CHUNK // max(1, nv * c))
    idx = np.arange(count, dtype=np.int64)
    for start in range(0, count, step):
        block = idx[start : start + step]
        s = _centered_gaussian_scores(seed, block, nv, c)
        prod = np.ones(block.size, dtype=np.float64)
        for u, v, mult in pattern.multi_edges:
            factor = (s[:, u, :] * s[:, v, :]).sum(axis=1)
            prod *= factor**mult
        out[start : start + block.size] = prod
    return out


# ---------------------------------------------------------------------------
# regime selector
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class Fixed:
    """Fixed color count c while the host grows."""

    colors: int

    def __post_init__(self):
        if self.colors < 2:
            raise ValueError(f"need at least 2 colors, got {self.colors}")


@dataclass(frozen=True)
class Growing:
    """Growing color count; ``edge_color_ratio`` is the limit of m/c (may be inf)."""

    edge_color_ratio: float

    def __post_init__(self):
        if self.edge_color_ratio < 0:
            raise ValueError("edge/color ratio must be nonnegative")


Regime = Union[Fixed, Growing]


def _fixed_family_law(spec: FamilySpec, c: int) -> LimitLaw:
    if isinstance(spec, Complete) or isinstance(spec, ErdosRenyi):
        if isinstance(spec, ErdosRenyi) and spec.p <= 0.0:
            raise AmbiguousRegimeError("empty random graph has no dense limit")
        weights = (1.0,)
    elif isinstance(spec, CompleteBipartite):
        if spec.a < 1 or spec.b < 1:
            raise AmbiguousRegimeError("degenerate bipartite family")
        weights = (1.0 / math.sqrt(2.0), -1.0 / math.sqrt(2.0))
    else:
        raise AmbiguousRegimeError(
            f"no closed-form dense limit for family {type(spec).__name__}; "
            "pass a concrete graph instead"
        )
    return WeightedChiSquare(weights=weights, dof=c - 1, scale=1.0 / (2.0 * c))


def limit_for(graph_or_spec: Union[Graph, FamilySpec], regime: Regime) -> LimitLaw:
    """Select the limit law for a host and color regime.

    Growing regimes depend only on the limiting ratio m/c: a finite ratio
    gives Poisson(ratio) for the raw count, an infinite one gives N(0, 1)
    for the standardized count. With c fixed the four-cycle ratio
    N(C4)/m^2 decides: below 1e-2 the standardized count is N(0, 1 - 1/c),
    above 1e-1 the host is treated as dense and the normalized spectrum
    drives a weighted chi-square law for (N - m/c)/sqrt(2m); the zone
    between is reported as ambiguous rather than guessed.
    """
    if isinstance(regime, Growing):
        ratio = regime.edge_color_ratio
        if math.isinf(ratio):
            return Normal(0.0, 1.0)
        return Poisson(ratio)
    if not isinstance(regime, Fixed):
        raise TypeError(f"unknown regime {regime!r}")
    c = regime.colors
    if not isinstance(graph_or_spec, Graph):
        return _fixed_family_law(graph_or_spec, c)
    g = graph_or_spec
    if g.m < 1:
        raise ValueError("fixed-color regime needs at least one edge")
    spectrum = spectral.eigenvalues(g)
    acf4 = census.four_cycle_count_from_traces(g) / g.m**2
    if acf4 < ACF4_NORMAL_THRESHOLD:
        return Normal(0.0, 1.0 - 1.0 / c)
    if acf4 <= ACF4_GRAY_UPPER:
        raise AmbiguousRegimeError(
            f"four-cycle ratio {acf4:.4g} lies in the gray zone "
            f"[{ACF4_NORMAL_THRESHOLD}, {ACF4_GRAY_UPPER}]; no regime is declared"
        )
    lam = spectrum.normalized
    weights = tuple(float(x) for x in lam if abs(x) > 1e-12)
    return WeightedChiSquare(weights=weights, dof=c - 1, scale=1.0 / (2.0 * c))
