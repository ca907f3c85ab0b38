"""Brute-force ground truth for small graphs.

Everything here is exponential on purpose: subset enumeration of the
sampling distribution, induced-subgraph counting and exact isomorphism.
Size limits raise ``OracleSizeError`` instead of degrading to sampling.
"""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from itertools import combinations, permutations
from math import comb
from typing import Hashable, Iterable, Sequence

from .graph import Graph, count_components, induced_subgraph
from .sampling import Bernoulli, SampleSpec, SampledGraph, Uniform


class OracleSizeError(ValueError):
    pass


MAX_MOMENT_VERTICES = 18
MAX_UNIFORM_SUBSETS = 10**6
MAX_DISTRIBUTION_VERTICES = 14
MAX_ISO_VERTICES = 12
MAX_COUNT_HOST = 20
MAX_COUNT_PATTERN = 8


# -- canonical forms ------------------------------------------------------------


def _refine(adj: Sequence[Sequence[int]], cells: list[list[int]]) -> list[list[int]]:
    """Coarsest equitable refinement of an ordered partition.

    Cells split by each vertex's neighbour counts into the current cells and
    the pieces are ordered by that signature, so the result does not depend
    on vertex labels.
    """
    while True:
        cell_of = {}
        for i, cell in enumerate(cells):
            for v in cell:
                cell_of[v] = i
        new: list[list[int]] = []
        changed = False
        for cell in cells:
            if len(cell) == 1:
                new.append(cell)
                continue
            sig = {v: tuple(sorted(Counter(cell_of[u] for u in adj[v]).items())) for v in cell}
            keys = sorted(set(sig.values()))
            if len(keys) > 1:
                changed = True
                for k in keys:
                    new.append([v for v in cell if sig[v] == k])
            else:
                new.append(cell)
        cells = new
        if not changed:
            return cells


def _twins(adj_sets: Sequence[frozenset], cell: Sequence[int]) -> bool:
    """True if every pair in ``cell`` can be swapped by an automorphism of the graph."""
    first = cell[0]
    open_ = adj_sets[first]
    closed = open_ | {first}
    if all(adj_sets[v] == open_ for v in cell[1:]):
        return True
    return all(adj_sets[v] | {v} == closed for v in cell[1:])


def _canonical_connected(n: int, adj: Sequence[Sequence[int]]) -> tuple:
    adj_sets = [frozenset(a) for a in adj]
    best: list[tuple | None] = [None]

    def certificate(cells: list[list[int]]) -> tuple:
        pos = {cell[0]: i for i, cell in enumerate(cells)}
        return tuple(sorted((min(pos[u], pos[v]), max(pos[u], pos[v])) for u in range(n) for v in adj[u] if u < v))

    def search(cells: list[list[int]]) -> None:
        cells = _refine(adj, cells)
        target = next((i for i, cell in enumerate(cells) if len(cell) > 1), None)
        if target is None:
            cert = certificate(cells)
            if best[0] is None or cert < best[0]:
                best[0] = cert
            return
        cell = cells[target]
        branch = cell[:1] if _twins(adj_sets, cell) else cell
        for v in branch:
            rest = [u for u in cell if u != v]
            search(cells[:target] + [[v], rest] + cells[target + 1 :])

    search([list(range(n))])
    return (n, best[0])


def canonical_key(g: Graph) -> tuple:
    """Isomorphism-invariant key: sorted canonical certificates of the components."""
    seen = [False] * g.n
    parts = []
    for s in range(g.n):
        if seen[s]:
            continue
        comp = [s]
        seen[s] = True
        i = 0
        while i < len(comp):
            for u in g.adj[comp[i]]:
                if not seen[u]:
                    seen[u] = True
                    comp.append(u)
            i += 1
        comp.sort()
        index = {v: j for j, v in enumerate(comp)}
        sub = [[index[u] for u in g.adj[v]] for v in comp]
        parts.append(_canonical_connected(len(comp), sub))
    return tuple(sorted(parts))


def canonical_key_bruteforce(g: Graph) -> tuple:
    """Minimum edge list over all ``n!`` relabelings. Only for tiny graphs."""
    if g.n > 8:
        raise OracleSizeError("exhaustive canonical form limited to 8 vertices")
    edges = g.sorted_edges()
    best = None
    for perm in permutations(range(g.n)):
        cert = tuple(sorted((min(perm[u], perm[v]), max(perm[u], perm[v])) for u, v in edges))
        if best is None or cert < best:
            best = cert
    return (g.n, best)


# -- isomorphism by backtracking --------------------------------------------------


def are_isomorphic(g: Graph, h: Graph) -> bool:
    """Exact isomorphism test by degree-pruned backtracking (``v <= 12``)."""
    if g.n > MAX_ISO_VERTICES or h.n > MAX_ISO_VERTICES:
        raise OracleSizeError(f"isomorphism test limited to {MAX_ISO_VERTICES} vertices")
    if g.n != h.n or g.num_edges != h.num_edges:
        return False
    if sorted(g.degrees) != sorted(h.degrees):
        return False
    n = g.n

    def profile(x: Graph, v: int) -> tuple:
        return (len(x.adj[v]), tuple(sorted(len(x.adj[u]) for u in x.adj[v])))

    pg = [profile(g, v) for v in range(n)]
    ph = [profile(h, v) for v in range(n)]
    if sorted(pg) != sorted(ph):
        return False

    # map g's vertices in BFS order from high-degree seeds so adjacency checks bite early
    order: list[int] = []
    placed = [False] * n
    for s in sorted(range(n), key=lambda v: -len(g.adj[v])):
        if placed[s]:
            continue
        placed[s] = True
        queue = [s]
        while queue:
            v = queue.pop(0)
            order.append(v)
            for u in g.adj[v]:
                if not placed[u]:
                    placed[u] = True
                    queue.append(u)

    gsets = [set(a) for a in g.adj]
    hsets = [set(a) for a in h.adj]
    mapping: dict[int, int] = {}
    used = [False] * n

    def extend(i: int) -> bool:
        if i == n:
            return True
        v = order[i]
        for w in range(n):
            if used[w] or ph[w] != pg[v]:
                continue
            if any((mapping[u] in hsets[w]) != (u in gsets[v]) for u in order[:i]):
                continue
            mapping[v] = w
            used[w] = True
            if extend(i + 1):
                return True
            used[w] = False
            del mapping[v]
        return False

    return extend(0)


# -- induced subgraph counts ------------------------------------------------------


def count_induced(h: Graph, g: Graph) -> int:
    """Number of vertex subsets ``T`` of ``g`` with ``g[T]`` isomorphic to ``h``."""
    if g.n > MAX_COUNT_HOST or h.n > MAX_COUNT_PATTERN:
        raise OracleSizeError(
            f"count_induced limited to v(h) <= {MAX_COUNT_PATTERN}, v(g) <= {MAX_COUNT_HOST}"
        )
    if h.n > g.n:
        return 0
    target_m = h.num_edges
    target_deg = sorted(h.degrees)
    key = canonical_key(h)
    gsets = [set(a) for a in g.adj]
    total = 0
    for subset in combinations(range(g.n), h.n):
        degs = [sum(1 for u in subset if u in gsets[v]) for v in subset]
        if sum(degs) != 2 * target_m or sorted(degs) != target_deg:
            continue
        if canonical_key(induced_subgraph(g, subset)[0]) == key:
            total += 1
    return total


def _extend_by_vertex(graphs: Iterable[Graph], allow_isolated: bool) -> list[Graph]:
    out: dict[tuple, Graph] = {}
    for g in graphs:
        k = g.n
        start = 0 if allow_isolated else 1
        for mask in range(start, 1 << k):
            edges = g.sorted_edges() + [(u, k) for u in range(k) if mask >> u & 1]
            ng = Graph.from_edges(k + 1, edges)
            out.setdefault(canonical_key(ng), ng)
    return [out[key] for key in sorted(out)]


@lru_cache(maxsize=None)
def connected_graphs(k: int) -> tuple[Graph, ...]:
    """All connected graphs on ``k`` vertices up to isomorphism.

    Built by adding a vertex to connected graphs on ``k - 1`` vertices, which
    reaches every class because removing a spanning-tree leaf keeps a graph
    connected.
    """
    if k < 1:
        return ()
    if k == 1:
        return (Graph(1, [()]),)
    return tuple(_extend_by_vertex(connected_graphs(k - 1), allow_isolated=False))


@lru_cache(maxsize=None)
def all_graphs(k: int) -> tuple[Graph, ...]:
    """All graphs on ``k`` vertices up to isomorphism."""
    if k < 0:
        return ()
    if k == 0:
        return (Graph(0, []),)
    return tuple(_extend_by_vertex(all_graphs(k - 1), allow_isolated=True))


# -- small-graph structure checks ------------------------------------------------


def _bit_adjacency(g: Graph) -> list[int]:
    return [sum(1 << u for u in a) for a in g.adj]


def has_long_induced_cycle(g: Graph) -> bool:
    """True if some vertex subset of size >= 4 induces a cycle."""
    if g.n > 16:
        raise OracleSizeError("induced-cycle search limited to 16 vertices")
    bits = _bit_adjacency(g)
    for mask in range(1 << g.n):
        size = bin(mask).count("1")
        if size < 4:
            continue
        members = [v for v in range(g.n) if mask >> v & 1]
        if any(bin(bits[v] & mask).count("1") != 2 for v in members):
            continue
        # 2-regular: a single cycle iff connected
        seen = members[0]
        reach = 1 << seen
        frontier = reach
        while frontier:
            nxt = 0
            for v in members:
                if frontier >> v & 1:
                    nxt |= bits[v] & mask
            frontier = nxt & ~reach
            reach |= nxt
        if reach == mask:
            return True
    return False


def max_clique_bruteforce(g: Graph) -> int:
    if g.n > 20:
        raise OracleSizeError("brute-force clique search limited to 20 vertices")
    bits = _bit_adjacency(g)
    best = 0
    for mask in range(1 << g.n):
        size = bin(mask).count("1")
        if size <= best:
            continue
        if all((bits[v] | 1 << v) & mask == mask for v in range(g.n) if mask >> v & 1):
            best = size
    return best


def clique_counts_bruteforce(g: Graph) -> list[int]:
    """``s(K_i, g)`` for ``i = 1..omega`` by subset enumeration."""
    bits = _bit_adjacency(g)
    counts = Counter()
    for mask in range(1, 1 << g.n):
        if all((bits[v] | 1 << v) & mask == mask for v in range(g.n) if mask >> v & 1):
            counts[bin(mask).count("1")] += 1
    return [counts[i] for i in range(1, max(counts, default=0) + 1)]


# -- exact moments under the sampling designs ------------------------------------


@dataclass(frozen=True)
class Moments:
    mean: object
    variance: object
    mse: object


def _as_exact(p, exact: bool | None):
    if isinstance(p, Fraction):
        return p, True
    if exact:
        approx = Fraction(p).limit_denominator(1000)
        if abs(float(approx) - p) > 1e-15:
            raise ValueError(f"p={p} is not a ratio with denominator <= 1000")
        return approx, True
    return float(p), False


def _moments(values: Sequence, weights: Sequence, truth) -> Moments:
    mean = sum(w * x for w, x in zip(weights, values))
    var = sum(w * (x - mean) ** 2 for w, x in zip(weights, values))
    mse = sum(w * (x - truth) ** 2 for w, x in zip(weights, values))
    return Moments(mean, var, mse)


def enumerate_moments(g: Graph, p, estimator, exact: bool | None = None) -> Moments:
    """Exact mean, variance and MSE (against ``cc(g)``) under Bernoulli(p) sampling.

    Sums over all ``2^N`` vertex subsets. With ``p`` a Fraction (or
    ``exact=True``) the unbiased estimators are evaluated in rational
    arithmetic and the moments are exact.
    """
    from .estimators import estimate

    if g.n > MAX_MOMENT_VERTICES:
        raise OracleSizeError(f"Bernoulli enumeration limited to {MAX_MOMENT_VERTICES} vertices")
    p, is_exact = _as_exact(p, exact)
    q = 1 - p
    spec = SampleSpec(Bernoulli(p))
    pw = [p**k * q ** (g.n - k) for k in range(g.n + 1)]
    values, weights = [], []
    for mask in range(1 << g.n):
        members = [v for v in range(g.n) if mask >> v & 1]
        sub, _ = induced_subgraph(g, members)
        sg = SampledGraph(g.n, spec, tuple(members), sub)
        values.append(estimate(sg, estimator, p))
        weights.append(pw[len(members)])
    return _moments(values, weights, count_components(g))


def enumerate_moments_uniform(g: Graph, n: int, estimator, exact: bool = True) -> Moments:
    """Exact moments over all ``C(N, n)`` subsets, each with weight ``1/C(N, n)``."""
    from .estimators import estimate

    total = comb(g.n, n)
    if total > MAX_UNIFORM_SUBSETS:
        raise OracleSizeError(f"C({g.n}, {n}) exceeds {MAX_UNIFORM_SUBSETS} subsets")
    spec = SampleSpec(Uniform(n))
    p = Fraction(n, g.n) if exact else n / g.n
    w = Fraction(1, total) if exact else 1.0 / total
    values = []
    for subset in combinations(range(g.n), n):
        sub, members = induced_subgraph(g, subset)
        values.append(estimate(SampledGraph(g.n, spec, members, sub), estimator, p))
    return _moments(values, [w] * len(values), count_components(g))


# -- sampled-graph distributions and total variation -------------------------------


@dataclass(frozen=True)
class SampleDistribution:
    """Law of the isomorphism class of the Bernoulli(p)-sampled graph.

    ``counts[key]`` is the number of vertex subsets inducing that class, so
    ``prob(key) = counts[key] * p^v * q^(N - v)``.
    """

    N: int
    p: object
    entries: tuple[tuple[Hashable, object], ...]
    counts: dict

    def as_dict(self) -> dict:
        return dict(self.entries)


@lru_cache(maxsize=256)
def induced_class_counts(g: Graph) -> dict:
    """Map canonical key -> number of vertex subsets (including the empty one) inducing it."""
    if g.n > MAX_DISTRIBUTION_VERTICES:
        raise OracleSizeError(f"distribution enumeration limited to {MAX_DISTRIBUTION_VERTICES} vertices")
    counts: Counter = Counter()
    for mask in range(1 << g.n):
        members = [v for v in range(g.n) if mask >> v & 1]
        counts[canonical_key(induced_subgraph(g, members)[0])] += 1
    return dict(counts)


def key_order(key: tuple) -> int:
    """Vertex count encoded in a canonical key."""
    return sum(part[0] for part in key)


def sampled_distribution(g: Graph, p) -> SampleDistribution:
    counts = induced_class_counts(g)
    q = 1 - p
    entries = tuple(
        (key, c * p ** key_order(key) * q ** (g.n - key_order(key))) for key, c in sorted(counts.items())
    )
    return SampleDistribution(N=g.n, p=p, entries=entries, counts=counts)


def tv_distance(a: SampleDistribution, b: SampleDistribution):
    pa, pb = a.as_dict(), b.as_dict()
    keys = set(pa) | set(pb)
    return sum(abs(pa.get(k, 0) - pb.get(k, 0)) for k in keys) / 2


def exact_tv(h: Graph, h2: Graph, p):
    """Total variation between the sampled-class laws of two equal-order graphs."""
    if h.n != h2.n:
        raise ValueError("graphs must have the same number of vertices")
    if h.n > MAX_DISTRIBUTION_VERTICES:
        raise OracleSizeError(f"exact TV limited to {MAX_DISTRIBUTION_VERTICES} vertices")
    return tv_distance(sampled_distribution(h, p), sampled_distribution(h2, p))
