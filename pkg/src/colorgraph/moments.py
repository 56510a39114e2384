"""Exact conditional moments of monochromatic-edge counts.

Everything here is exact rational arithmetic. Raw moments of the count N
expand over ordered edge k-tuples grouped by multigraph class H, each class
weighted by c^-(|V(H)| - components(H)); the independent-Bernoulli surrogate
M replaces that weight with c^-|E(H_S)| and collapses to a Stirling-number
formula. Central (standardized) moments weight each class by the expectation
of the product of centered edge indicators, computed by expanding the
product over sub-multisets of the pattern's edges.
"""
from __future__ import annotations

import enum
import math
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache

from . import census
from .census import MultiGraphPattern
from .errors import PatternTooLargeError
from .graph import Graph

__all__ = [
    "stirling_moment",
    "expected_central_products",
    "MomentKind",
    "MomentRequest",
    "MomentValue",
    "conditional_moment",
    "fourth_moment_report",
    "FourthMomentReport",
]

_CENTRAL_PRODUCT_GATE = 6


@lru_cache(maxsize=None)
def _stirling2(k: int, j: int) -> int:
    """Stirling number of the second kind S(k, j)."""
    if k == j:
        return 1
    if j == 0 or j > k:
        return 0
    return j * _stirling2(k - 1, j) + _stirling2(k - 1, j - 1)


def stirling_moment(m: int, c: int, k: int) -> Fraction:
    """k-th raw moment of Binomial(m, 1/c): sum_j S(k, j) (m)_j c^-j."""
    if k < 0:
        raise ValueError(f"moment order must be nonnegative, got {k}")
    if c < 1:
        raise ValueError(f"color count must be positive, got {c}")
    total = Fraction(0)
    falling = 1
    for j in range(0, k + 1):
        if j > 0:
            falling *= m - (j - 1)
        if falling == 0:
            break
        total += Fraction(_stirling2(k, j) * falling, c**j)
    return total


def bernoulli_central_moment(c: int, order: int) -> Fraction:
    """E (X - 1/c)^order for X ~ Bernoulli(1/c)."""
    p = Fraction(1, c)
    return (1 - p) * (-p) ** order + p * (1 - p) ** order


def _rank(slots: tuple[tuple[int, int], ...]) -> int:
    """|V| - components of the support of a slot subset (isolated vertices dropped)."""
    verts = {x for e in slots for x in e}
    parent = {x: x for x in verts}

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    comps = len(verts)
    for u, v in slots:
        ru, rv = find(u), find(v)
        if ru != rv:
            parent[ru] = rv
            comps -= 1
    return len(verts) - comps


@lru_cache(maxsize=None)
def _expected_central_products_cached(key: tuple, c: int) -> tuple[Fraction, Fraction]:
    nv, multi_edges = key
    pattern = MultiGraphPattern(nv, multi_edges)
    slots = pattern.expanded_slots()
    k = len(slots)
    ez = Fraction(0)
    minus = Fraction(-1, c)
    for mask in range(1 << k):
        chosen = tuple(slots[i] for i in range(k) if mask >> i & 1)
        ez += minus ** (k - len(chosen)) * Fraction(1, c ** _rank(chosen))
    ew = Fraction(1)
    for _, _, mult in pattern.multi_edges:
        ew *= bernoulli_central_moment(c, mult)
    return ez, ew


def expected_central_products(pattern: MultiGraphPattern, c: int) -> tuple[Fraction, Fraction]:
    """(EZ, EW) for one pattern H.

    EZ is the expectation of prod over multi-edges of (1{same color} - 1/c);
    EW replaces each indicator by an independent Bernoulli(1/c). Exact
    rationals; gated at 6 edges counting multiplicities.
    """
    if pattern.edge_count > _CENTRAL_PRODUCT_GATE:
        raise PatternTooLargeError(
            f"pattern has {pattern.edge_count} > {_CENTRAL_PRODUCT_GATE} edges with multiplicity"
        )
    if c < 2:
        raise ValueError(f"need at least 2 colors, got {c}")
    return _expected_central_products_cached(pattern.canonical_key, c)


class MomentKind(enum.Enum):
    RAW_N = "rawn"
    RAW_M = "rawm"
    CENTRAL_Z = "centralz"
    CENTRAL_W = "centralw"


@dataclass(frozen=True)
class MomentRequest:
    kind: MomentKind
    order: int
    colors: int

    def __post_init__(self):
        if not 1 <= self.order <= 4:
            raise ValueError(f"moment order must be in [1, 4], got {self.order}")
        if self.colors < 2:
            raise ValueError(f"need at least 2 colors, got {self.colors}")


@dataclass(frozen=True)
class MomentValue:
    """Exact moment, with the standardization factor kept explicit.

    Central moments are divided by (m/c)^{order/2}. ``unscaled`` always
    holds the exact class sum; ``value`` holds the fully standardized
    moment whenever (m/c)^{order/2} is rational (always for even order),
    and None otherwise. Raw moments carry scale_exponent 0 and
    value == unscaled.
    """

    unscaled: Fraction
    scale_exponent: Fraction
    value: Fraction | None


def _scaled(unscaled: Fraction, m: int, c: int, order: int) -> MomentValue:
    exponent = Fraction(order, 2)
    if order % 2 == 0:
        val = unscaled * Fraction(c, m) ** (order // 2)
        return MomentValue(unscaled, exponent, val)
    root = math.isqrt(m * c)
    if root * root == m * c:
        # sqrt(m/c) = root / c exactly
        val = unscaled * Fraction(c, root) ** order
        return MomentValue(unscaled, exponent, val)
    return MomentValue(unscaled, exponent, None)


def conditional_moment(g: Graph, req: MomentRequest) -> MomentValue:
    """Exact conditional moment of the monochromatic-edge count of ``g``.

    RAW_N: E(N^k | G). RAW_M: E(M^k | G) for the independent-Bernoulli
    surrogate (equal to :func:`stirling_moment`). CENTRAL_Z / CENTRAL_W:
    the standardized central moments E(Z^k | G), E(W^k | G) with
    standardization (m/c)^{-k/2}.
    """
    c, k = req.colors, req.order
    classes = census.count_multigraph_tuples(g, k)
    if req.kind is MomentKind.RAW_N:
        total = Fraction(0)
        for pat, cnt in classes.items():
            rank = pat.vertex_count - pat.component_count()
            total += Fraction(cnt, c**rank)
        return MomentValue(total, Fraction(0), total)
    if req.kind is MomentKind.RAW_M:
        total = Fraction(0)
        for pat, cnt in classes.items():
            total += Fraction(cnt, c**pat.simple_edge_count)
        return MomentValue(total, Fraction(0), total)
    if g.m < 1:
        raise ValueError("central moments need at least one edge")
    total = Fraction(0)
    for pat, cnt in classes.items():
        ez, ew = expected_central_products(pat, c)
        total += cnt * (ez if req.kind is MomentKind.CENTRAL_Z else ew)
    return _scaled(total, g.m, c, k)


@dataclass(frozen=True)
class FourthMomentReport:
    """Decomposition of the exact standardized fourth central moment.

    exact = leading + c4_term + remainder, all exact rationals:
    leading = 3 (1 - 1/c)^2, c4_term = (1/c)(1 - 1/c) N(G, C4) / m^2, and
    remainder carries every finite-size correction (the single- and
    triangle-supported classes and the tuple-ordering surplus of the
    four-cycle class).
    """

    exact: Fraction
    leading: Fraction
    c4_term: Fraction
    remainder: Fraction


def fourth_moment_report(g: Graph, c: int) -> FourthMomentReport:
    exact = conditional_moment(g, MomentRequest(MomentKind.CENTRAL_Z, 4, c)).value
    one_minus = 1 - Fraction(1, c)
    leading = 3 * one_minus**2
    c4 = Fraction(1, c) * one_minus * Fraction(census.count_cycles(g, 4), g.m**2)
    return FourthMomentReport(
        exact=exact,
        leading=leading,
        c4_term=c4,
        remainder=exact - leading - c4,
    )
