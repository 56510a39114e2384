"""Independent brute-force oracles used to fix expected test values.

Everything here is deliberately naive (subset scans, permutation searches,
occupancy sums) and shares no machinery with the library paths it checks.
"""
from __future__ import annotations

import itertools
import math
from collections import Counter, defaultdict
from fractions import Fraction

import numpy as np

from colorgraph.graph import Graph


def graphs_isomorphic(g1: Graph, g2: Graph) -> bool:
    """Exact isomorphism by permutation search (small graphs only)."""
    if g1.n != g2.n or g1.m != g2.m:
        return False
    if sorted(g1.degrees) != sorted(g2.degrees):
        return False
    e2 = set(g2.edges)
    for perm in itertools.permutations(range(g1.n)):
        if all((min(perm[u], perm[v]), max(perm[u], perm[v])) in e2 for u, v in g1.edges):
            return True
    return False


def brute_count_cycles(g: Graph, length: int) -> int:
    """Cycles of a given length by vertex-subset enumeration."""
    count = 0
    for subset in itertools.combinations(range(g.n), length):
        first = subset[0]
        rest = subset[1:]
        for perm in itertools.permutations(rest):
            seq = (first,) + perm
            if seq[1] > seq[-1]:
                continue  # one direction per cycle
            ok = all(seq[i + 1] in g.neighbor_set(seq[i]) for i in range(length - 1))
            if ok and first in g.neighbor_set(seq[-1]):
                count += 1
    return count


def brute_count_subgraph(g: Graph, h: Graph) -> int:
    """Edge subsets of g inducing a copy of h, checked by permutation search."""
    count = 0
    for subset in itertools.combinations(g.edges, h.m):
        verts = sorted({x for e in subset for x in e})
        if len(verts) != h.n:
            continue
        relabel = {v: i for i, v in enumerate(verts)}
        cand = Graph(h.n, [(relabel[u], relabel[v]) for u, v in subset])
        if graphs_isomorphic(cand, h):
            count += 1
    return count


def brute_gamma(g: Graph) -> Fraction:
    """Maximum of sum(phi) over phi in {0, 1/2, 1}^V meeting the edge caps."""
    n = g.n
    best = Fraction(0)
    grid = np.array(list(itertools.product((0, 1, 2), repeat=n)), dtype=np.int8)
    ok = np.ones(len(grid), dtype=bool)
    for u, v in g.edges:
        ok &= grid[:, u] + grid[:, v] <= 2
    if ok.any():
        best = Fraction(int(grid[ok].sum(axis=1).max()), 2)
    return best


def brute_deficiency(g: Graph) -> int:
    """max over vertex subsets S of |S| - |N(S)|."""
    best = 0
    for mask in range(1 << g.n):
        s = [v for v in range(g.n) if mask >> v & 1]
        nbrs = set()
        for v in s:
            nbrs.update(g.adjacency[v])
        best = max(best, len(s) - len(nbrs))
    return best


def brute_automorphisms(g: Graph) -> int:
    count = 0
    e = set(g.edges)
    for perm in itertools.permutations(range(g.n)):
        if all((min(perm[u], perm[v]), max(perm[u], perm[v])) in e for u, v in g.edges):
            count += 1
    return count


def pmf_moment(pmf: dict, k: int) -> Fraction:
    """Exact k-th raw moment of a rational pmf."""
    return sum((Fraction(v) ** k) * p for v, p in pmf.items())


def pmf_central_standardized_moment(pmf: dict, k: int, center: Fraction, scale2: Fraction) -> Fraction:
    """E ((X - center)/sqrt(scale2))^k for even k, exactly."""
    assert k % 2 == 0
    total = sum((Fraction(v) - center) ** k * p for v, p in pmf.items())
    return total / scale2 ** (k // 2)


def complete_graph_mono_edge_pmf(n: int, c: int, jmax: int) -> dict[int, float]:
    """Exact law of the monochromatic edge count of the complete graph.

    Enumerates color-class size partitions: classes of size k contribute
    C(k, 2) monochromatic edges each. Values above jmax are dropped; the
    returned masses then sum to P(N <= jmax).
    """
    shapes: list[tuple[int, ...]] = []

    def rec(min_part: int, left: int, weight: int, parts: list[int]):
        shapes.append(tuple(parts))
        for k in range(min_part, left + 1):
            w = math.comb(k, 2)
            if weight + w > jmax:
                break
            parts.append(k)
            rec(k, left - k, weight + w, parts)
            parts.pop()

    rec(2, n, 0, [])
    pmf: dict[int, float] = defaultdict(float)
    for parts in shapes:
        s = sum(parts)
        singles = n - s
        classes = len(parts) + singles
        if classes > c:
            continue
        mult = Counter(parts)
        mult[1] += singles
        log_ways = math.lgamma(n + 1)
        log_ways -= sum(math.lgamma(k + 1) * v for k, v in mult.items())
        log_ways -= sum(math.lgamma(v + 1) for v in mult.values())
        log_colors = sum(math.log(c - i) for i in range(classes))
        value = sum(math.comb(k, 2) for k in parts)
        pmf[value] += math.exp(log_ways + log_colors - n * math.log(c))
    return dict(pmf)


def gadget_mono_cycle_pmf(a: int, b: int, c: int, g: int, zmax: int) -> dict[int, float]:
    """Exact law of the monochromatic cycle count of the path-cycle gadget.

    Conditional on K monochromatic path edges the count is
    Binomial(b*K, c^{2-g}); K itself is Binomial(a, 1/c) because the path's
    edge indicators are independent.
    """
    q = float(c) ** (2 - g)
    pmf: dict[int, float] = defaultdict(float)
    for k in range(a + 1):
        pk = math.comb(a, k) * (1 / c) ** k * (1 - 1 / c) ** (a - k)
        mm = b * k
        for z in range(0, min(mm, zmax) + 1):
            pmf[z] += pk * math.comb(mm, z) * q**z * (1 - q) ** (mm - z)
    return dict(pmf)


def poisson_pmf_dict(mean: float, kmax: int) -> dict[int, float]:
    return {k: math.exp(-mean + k * math.log(mean) - math.lgamma(k + 1)) if mean > 0 else (1.0 if k == 0 else 0.0)
            for k in range(kmax + 1)}
