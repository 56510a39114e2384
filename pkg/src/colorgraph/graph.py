"""Simple undirected graphs: validation, family generators, text interchange.

Vertices are the contiguous integers ``0 .. n-1``. Edges are stored
canonically as a lexicographically sorted tuple of pairs ``(u, v)`` with
``u < v``; a :class:`Graph` is immutable after construction and safe to
share between threads.

The text interchange format (used by every CLI subcommand) is::

    n m
    u v        # one line per edge, 0-based, u < v, ascending
    ...

Lines beginning with ``#`` are ignored.
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Union

import numpy as np

from . import rng
from .errors import (
    DuplicateEdgeError,
    GenerationTimeoutError,
    InfeasibleSpecError,
    OutOfRangeError,
    SelfLoopError,
)

__all__ = [
    "Graph",
    "from_edge_list",
    "basic_stats",
    "BasicStats",
    "to_edge_list_text",
    "parse_edge_list_text",
    "Complete",
    "CompleteBipartite",
    "Star",
    "Path",
    "Cycle",
    "Hypercube",
    "ErdosRenyi",
    "Inhomogeneous",
    "RandomRegular",
    "GaltonWatson",
    "PathCycleGadget",
    "FamilySpec",
    "generate",
    "parse_family",
]


class Graph:
    """Immutable simple undirected graph on vertices ``0 .. n-1``."""

    __slots__ = ("n", "edges", "_adj", "_nbr_sets")

    def __init__(self, n: int, pairs: Iterable[tuple[int, int]]):
        if n < 0:
            raise OutOfRangeError(f"vertex count must be nonnegative, got {n}")
        canon = []
        seen = set()
        for pair in pairs:
            u, v = pair
            if not (0 <= u < n) or not (0 <= v < n):
                raise OutOfRangeError(f"edge ({u}, {v}) has an endpoint outside [0, {n})")
            if u == v:
                raise SelfLoopError(f"edge ({u}, {v}) is a self-loop")
            e = (u, v) if u < v else (v, u)
            if e in seen:
                raise DuplicateEdgeError(f"edge ({u}, {v}) duplicates {e}")
            seen.add(e)
            canon.append(e)
        canon.sort()
        self.n = n
        self.edges = tuple(canon)
        adj = [[] for _ in range(n)]
        for u, v in self.edges:
            adj[u].append(v)
            adj[v].append(u)
        self._adj = tuple(tuple(sorted(a)) for a in adj)
        self._nbr_sets = None

    # -- basic accessors ------------------------------------------------

    @property
    def m(self) -> int:
        return len(self.edges)

    @property
    def adjacency(self) -> tuple[tuple[int, ...], ...]:
        """Per-vertex sorted neighbor tuples."""
        return self._adj

    def neighbor_set(self, v: int) -> frozenset:
        if self._nbr_sets is None:
            self._nbr_sets = tuple(frozenset(a) for a in self._adj)
        return self._nbr_sets[v]

    def degree(self, v: int) -> int:
        return len(self._adj[v])

    @property
    def degrees(self) -> tuple[int, ...]:
        return tuple(len(a) for a in self._adj)

    def adjacency_matrix(self, dtype=np.float64) -> np.ndarray:
        a = np.zeros((self.n, self.n), dtype=dtype)
        for u, v in self.edges:
            a[u, v] = 1
            a[v, u] = 1
        return a

    def edge_arrays(self) -> tuple[np.ndarray, np.ndarray]:
        """Endpoint arrays (U, V) of shape (m,), for vectorized work."""
        if self.m == 0:
            return np.zeros(0, dtype=np.int64), np.zeros(0, dtype=np.int64)
        arr = np.asarray(self.edges, dtype=np.int64)
        return arr[:, 0], arr[:, 1]

    def component_count(self) -> int:
        seen = bytearray(self.n)
        count = 0
        for start in range(self.n):
            if seen[start]:
                continue
            count += 1
            stack = [start]
            seen[start] = 1
            while stack:
                u = stack.pop()
                for w in self._adj[u]:
                    if not seen[w]:
                        seen[w] = 1
                        stack.append(w)
        return count

    def has_isolated_vertices(self) -> bool:
        return any(len(a) == 0 for a in self._adj)

    # -- value semantics --------------------------------------------------

    def __eq__(self, other):
        return isinstance(other, Graph) and self.n == other.n and self.edges == other.edges

    def __hash__(self):
        return hash((self.n, self.edges))

    def __repr__(self):
        return f"Graph(n={self.n}, m={self.m})"


def from_edge_list(n: int, pairs: Iterable[tuple[int, int]]) -> Graph:
    """Canonical constructor; validates range, loops, and duplicates."""
    return Graph(n, pairs)


@dataclass(frozen=True)
class BasicStats:
    n: int
    m: int
    degrees: tuple[int, ...]
    components: int


def basic_stats(g: Graph) -> BasicStats:
    """Vertex/edge counts, degree sequence, and component count by traversal."""
    return BasicStats(g.n, g.m, g.degrees, g.component_count())


# -- text interchange ---------------------------------------------------------


def to_edge_list_text(g: Graph) -> str:
    lines = [f"{g.n} {g.m}"]
    lines.extend(f"{u} {v}" for u, v in g.edges)
    return "\n".join(lines) + "\n"


def parse_edge_list_text(text: str) -> Graph:
    rows = [ln.strip() for ln in text.splitlines()]
    rows = [ln for ln in rows if ln and not ln.startswith("#")]
    if not rows:
        raise ValueError("empty edge-list document")
    head = rows[0].split()
    if len(head) != 2:
        raise ValueError(f"header must be 'n m', got {rows[0]!r}")
    n, m = int(head[0]), int(head[1])
    if len(rows) - 1 != m:
        raise ValueError(f"header declares {m} edges but {len(rows) - 1} lines follow")
    pairs = []
    for ln in rows[1:]:
        parts = ln.split()
        if len(parts) != 2:
            raise ValueError(f"bad edge line {ln!r}")
        pairs.append((int(parts[0]), int(parts[1])))
    return Graph(n, pairs)


# -- family specifications -----------------------------------------------------


@dataclass(frozen=True)
class Complete:
    n: int


@dataclass(frozen=True)
class CompleteBipartite:
    a: int
    b: int


@dataclass(frozen=True)
class Star:
    """K_{1,leaves}: one center (vertex 0) plus ``leaves`` leaves."""

    leaves: int


@dataclass(frozen=True)
class Path:
    """Path with ``edges`` edges on ``edges + 1`` vertices."""

    edges: int


@dataclass(frozen=True)
class Cycle:
    length: int


@dataclass(frozen=True)
class Hypercube:
    """Hamming cube on 2**dim vertices; (dim)-regular."""

    dim: int


@dataclass(frozen=True)
class ErdosRenyi:
    n: int
    p: float
    seed: int


@dataclass(frozen=True)
class Inhomogeneous:
    """Independent edges with per-pair probabilities from an explicit grid.

    ``kernel[i][j]`` is the probability of edge (i, j); the grid must be
    symmetric with entries in [0, 1]. The caller evaluates whatever kernel
    function produced it; the library never evaluates symbolic kernels.
    """

    n: int
    kernel: tuple[tuple[float, ...], ...]
    seed: int


@dataclass(frozen=True)
class RandomRegular:
    n: int
    d: int
    seed: int


@dataclass(frozen=True)
class GaltonWatson:
    """Branching-process tree of all individuals born by ``height``.

    ``offspring`` is the finite offspring pmf (p_0, ..., p_K); mass beyond
    the last entry is not allowed. The tree may stay small or die out.
    """

    offspring: tuple[float, ...]
    height: int
    seed: int


@dataclass(frozen=True)
class PathCycleGadget:
    """Path of length ``a`` with ``b`` cycles of length ``g`` across each path edge.

    Every path edge (v_i, v_{i+1}) carries ``b`` cycles, each closed through
    its own ``g - 2`` fresh interior vertices, so the graph has
    ``a*b*(g-2) + a + 1`` vertices, ``a*b*(g-1) + a`` edges, and ``a*b``
    cycles of length ``g``.
    """

    a: int
    b: int
    g: int


FamilySpec = Union[
    Complete,
    CompleteBipartite,
    Star,
    Path,
    Cycle,
    Hypercube,
    ErdosRenyi,
    Inhomogeneous,
    RandomRegular,
    GaltonWatson,
    PathCycleGadget,
]


def _gen_complete(spec: Complete) -> Graph:
    if spec.n < 0:
        raise InfeasibleSpecError("complete graph needs n >= 0")
    return Graph(spec.n, [(i, j) for i in range(spec.n) for j in range(i + 1, spec.n)])


def _gen_bipartite(spec: CompleteBipartite) -> Graph:
    if spec.a < 0 or spec.b < 0:
        raise InfeasibleSpecError("bipartite sides must be nonnegative")
    return Graph(spec.a + spec.b, [(i, spec.a + j) for i in range(spec.a) for j in range(spec.b)])


def _gen_star(spec: Star) -> Graph:
    if spec.leaves < 0:
        raise InfeasibleSpecError("star needs a nonnegative leaf count")
    return Graph(spec.leaves + 1, [(0, i) for i in range(1, spec.leaves + 1)])


def _gen_path(spec: Path) -> Graph:
    if spec.edges < 0:
        raise InfeasibleSpecError("path needs a nonnegative edge count")
    return Graph(spec.edges + 1, [(i, i + 1) for i in range(spec.edges)])


def _gen_cycle(spec: Cycle) -> Graph:
    if spec.length < 3:
        raise InfeasibleSpecError("cycle length must be at least 3")
    g = spec.length
    return Graph(g, [(i, (i + 1) % g) for i in range(g)])


def _gen_hypercube(spec: Hypercube) -> Graph:
    if spec.dim < 0:
        raise InfeasibleSpecError("hypercube dimension must be nonnegative")
    n = 1 << spec.dim
    pairs = []
    for x in range(n):
        for b in range(spec.dim):
            y = x ^ (1 << b)
            if y > x:
                pairs.append((x, y))
    return Graph(n, pairs)


def _gen_erdos_renyi(spec: ErdosRenyi) -> Graph:
    if spec.n < 0 or not (0.0 <= spec.p <= 1.0):
        raise InfeasibleSpecError("Erdos-Renyi needs n >= 0 and p in [0, 1]")
    iu, jv = np.triu_indices(spec.n, k=1)
    u = rng.uniforms(spec.seed, rng.STREAM_ER, iu, jv)
    keep = u < spec.p
    return Graph(spec.n, list(zip(iu[keep].tolist(), jv[keep].tolist())))


def _gen_inhomogeneous(spec: Inhomogeneous) -> Graph:
    k = np.asarray(spec.kernel, dtype=np.float64)
    if k.shape != (spec.n, spec.n):
        raise InfeasibleSpecError(f"kernel grid must be {spec.n}x{spec.n}, got {k.shape}")
    if np.any(k < 0) or np.any(k > 1):
        raise InfeasibleSpecError("kernel entries must lie in [0, 1]")
    if not np.allclose(k, k.T, atol=1e-12):
        raise InfeasibleSpecError("kernel grid must be symmetric")
    iu, jv = np.triu_indices(spec.n, k=1)
    u = rng.uniforms(spec.seed, rng.STREAM_INHOM, iu, jv)
    keep = u < k[iu, jv]
    return Graph(spec.n, list(zip(iu[keep].tolist(), jv[keep].tolist())))


_REGULAR_RETRY_CAP = 1000


def _gen_random_regular(spec: RandomRegular) -> Graph:
    n, d = spec.n, spec.d
    if n < 0 or d < 0 or d >= max(n, 1) or (n * d) % 2 != 0:
        raise InfeasibleSpecError(f"random regular graph needs n*d even and d < n, got n={n}, d={d}")
    if d == 0:
        return Graph(n, [])
    points = n * d
    for attempt in range(_REGULAR_RETRY_CAP):
        perm = rng.permutation(spec.seed, points, rng.STREAM_REGULAR, attempt)
        left = perm[0::2] // d
        right = perm[1::2] // d
        if np.any(left == right):
            continue
        lo = np.minimum(left, right)
        hi = np.maximum(left, right)
        pairs = set(zip(lo.tolist(), hi.tolist()))
        if len(pairs) < points // 2:
            continue
        return Graph(n, sorted(pairs))
    raise GenerationTimeoutError(
        f"pairing model rejected {_REGULAR_RETRY_CAP} attempts for n={n}, d={d}"
    )


def _gen_galton_watson(spec: GaltonWatson) -> Graph:
    pmf = np.asarray(spec.offspring, dtype=np.float64)
    if pmf.size == 0 or np.any(pmf < 0):
        raise InfeasibleSpecError("offspring pmf must be a nonempty nonnegative vector")
    if abs(float(pmf.sum()) - 1.0) > 1e-9:
        raise InfeasibleSpecError(f"offspring pmf must sum to 1, got {pmf.sum()!r}")
    if spec.height < 0:
        raise InfeasibleSpecError("height must be nonnegative")
    cdf = np.cumsum(pmf)
    cdf[-1] = 1.0
    pairs = []
    frontier = [0]
    next_id = 1
    for _ in range(spec.height):
        new_frontier = []
        for parent in frontier:
            u = float(rng.uniforms(spec.seed, rng.STREAM_GW, parent))
            k = int(np.searchsorted(cdf, u, side="right"))
            for _ in range(k):
                pairs.append((parent, next_id))
                new_frontier.append(next_id)
                next_id += 1
        frontier = new_frontier
        if not frontier:
            break
    return Graph(next_id, pairs)


def _gen_gadget(spec: PathCycleGadget) -> Graph:
    a, b, g = spec.a, spec.b, spec.g
    if a < 1 or b < 1 or g < 3:
        raise InfeasibleSpecError("gadget needs a >= 1, b >= 1, g >= 3")
    inner = g - 2
    pairs = [(i, i + 1) for i in range(a)]
    base = a + 1
    for i in range(a):
        for j in range(b):
            start = base + (i * b + j) * inner
            chain = [i] + list(range(start, start + inner)) + [i + 1]
            pairs.extend(
                (min(x, y), max(x, y)) for x, y in zip(chain[:-1], chain[1:])
            )
    return Graph(base + a * b * inner, pairs)


_GENERATORS = {
    Complete: _gen_complete,
    CompleteBipartite: _gen_bipartite,
    Star: _gen_star,
    Path: _gen_path,
    Cycle: _gen_cycle,
    Hypercube: _gen_hypercube,
    ErdosRenyi: _gen_erdos_renyi,
    Inhomogeneous: _gen_inhomogeneous,
    RandomRegular: _gen_random_regular,
    GaltonWatson: _gen_galton_watson,
    PathCycleGadget: _gen_gadget,
}


def generate(spec: FamilySpec) -> Graph:
    """Build the graph for ``spec``; deterministic for a fixed spec and seed."""
    try:
        fn = _GENERATORS[type(spec)]
    except KeyError:
        raise InfeasibleSpecError(f"unknown family spec {spec!r}") from None
    return fn(spec)


def mean_offspring(spec: GaltonWatson) -> float:
    """Mean of the offspring pmf (used by the CLI to warn on subcritical trees)."""
    return float(sum(k * p for k, p in enumerate(spec.offspring)))


# -- family mini-grammar -------------------------------------------------------

_FAMILY_HELP = (
    "complete:n | bipartite:a:b | star:leaves | path:edges | cycle:g | "
    "hypercube:s | er:n:p:seed | regular:n:d:seed | gw:p0,p1,...:height:seed | "
    "gadget:a:b:g"
)


def _int_arg(text: str) -> int:
    # tolerate a 'seed' prefix, e.g. "er:100:0.05:seed7"
    if text.startswith("seed"):
        text = text[4:]
    return int(text)


def parse_family(text: str) -> FamilySpec:
    """Parse the ``name:arg:arg`` family mini-grammar used by the CLI.

    Grammar: """ + _FAMILY_HELP
    parts = text.strip().split(":")
    name, args = parts[0].lower(), parts[1:]
    try:
        if name == "complete":
            (a,) = args
            return Complete(int(a))
        if name == "bipartite":
            a, b = args
            return CompleteBipartite(int(a), int(b))
        if name == "star":
            (a,) = args
            return Star(int(a))
        if name == "path":
            (a,) = args
            return Path(int(a))
        if name == "cycle":
            (a,) = args
            return Cycle(int(a))
        if name == "hypercube":
            (a,) = args
            return Hypercube(int(a))
        if name == "er":
            a, p, s = args
            return ErdosRenyi(int(a), float(p), _int_arg(s))
        if name == "regular":
            a, d, s = args
            return RandomRegular(int(a), int(d), _int_arg(s))
        if name == "gw":
            pmf, h, s = args
            probs = tuple(float(x) for x in pmf.split(","))
            return GaltonWatson(probs, int(h), _int_arg(s))
        if name == "gadget":
            a, b, g = args
            return PathCycleGadget(int(a), int(b), int(g))
    except ValueError as exc:
        raise ValueError(f"bad family spec {text!r}: {exc}") from exc
    raise ValueError(f"unknown family {name!r}; expected one of: {_FAMILY_HELP}")
