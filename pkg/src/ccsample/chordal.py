"""Maximum cardinality search, PEO certificates, clique counts and fill-in."""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass
from math import comb
from typing import Sequence

import numpy as np

from . import _kernels
from .graph import Graph, make_rng


@dataclass(frozen=True)
class Peo:
    """Vertex order ``order[0], order[1], ...`` with earlier-neighbour counts.

    ``c[j]`` is the number of neighbours of ``order[j]`` among
    ``order[:j]``; those neighbours are pairwise adjacent.
    """

    order: tuple[int, ...]
    c: tuple[int, ...]

    @property
    def n(self) -> int:
        return len(self.order)


@dataclass(frozen=True)
class NotChordal:
    """MCS certificate of non-chordality.

    ``vertex`` is the first vertex (in MCS order) whose earlier neighbours
    are not a clique; ``pair`` are two of those neighbours that are not
    adjacent.
    """

    vertex: int
    pair: tuple[int, int]
    order: tuple[int, ...]

    def __bool__(self) -> bool:
        return False


def mcs_order(g: Graph, tie_seed: int | None = None) -> tuple[list[int], list[int]]:
    """Visit order of maximum cardinality search and the weight of each visit.

    Among unvisited vertices of maximum weight the lowest label wins, unless
    ``tie_seed`` is given, in which case ties follow a seeded random
    permutation of the labels.
    """
    if g.n == 0:
        return [], []
    if tie_seed is None:
        rank = np.arange(g.n, dtype=np.int64)
    else:
        rank = make_rng(tie_seed).permutation(g.n).astype(np.int64)
    indptr, indices = g.csr
    order, c = _kernels.mcs(g.n, indptr, indices, rank)
    return order.tolist(), c.tolist()


def find_peo_violation(g: Graph, order: Sequence[int]) -> tuple[int, int, int] | None:
    """First vertex of ``order`` whose earlier neighbours are not a clique.

    Linear-time zero-fill-in test: with ``f`` the latest earlier neighbour
    of ``v``, every other earlier neighbour of ``v`` must be an earlier
    neighbour of ``f``. Returns ``(v, x, f)`` with ``x`` and ``f``
    non-adjacent, or None when ``order`` is a PEO.
    """
    if g.n == 0:
        return None
    indptr, indices = g.csr
    v, x, f = _kernels.peo_violation(g.n, indptr, indices, np.asarray(order, dtype=np.int64))
    if v < 0:
        return None
    return int(v), int(x), int(f)


def mcs_peo(g: Graph, tie_seed: int | None = None) -> Peo | NotChordal:
    order, c = mcs_order(g, tie_seed)
    bad = find_peo_violation(g, order)
    if bad is not None:
        v, x, f = bad
        return NotChordal(vertex=v, pair=(min(x, f), max(x, f)), order=tuple(order))
    return Peo(order=tuple(order), c=tuple(c))


def is_chordal(g: Graph) -> bool:
    return isinstance(mcs_peo(g), Peo)


def earlier_neighbour_counts(g: Graph, order: Sequence[int]) -> list[int]:
    pos = [0] * g.n
    for i, v in enumerate(order):
        pos[v] = i
    return [sum(1 for u in g.adj[v] if pos[u] < i) for i, v in enumerate(order)]


def clique_counts(peo: Peo) -> list[int]:
    """``s[i]`` = number of cliques on ``i + 1`` vertices, as exact integers.

    Each vertex with ``c`` earlier neighbours closes ``comb(c, i)`` new
    cliques of size ``i + 1``.
    """
    if not peo.c:
        return []
    hist = Counter(peo.c)
    top = max(hist)
    return [sum(mult * comb(c, i) for c, mult in hist.items() if c >= i) for i in range(top + 1)]


def alternating_cc(s: Sequence[int]) -> int:
    """Alternating clique-count sum; equals the component count of a chordal graph."""
    return sum(x if i % 2 == 0 else -x for i, x in enumerate(s))


def sandwich_bounds(s: Sequence[int], r: int) -> tuple[int, int]:
    """Partial alternating sums over ``2r`` (lower) and ``2r - 1`` (upper) terms."""
    if r < 1:
        raise ValueError("r must be a positive integer")
    return alternating_cc(s[: 2 * r]), alternating_cc(s[: 2 * r - 1])


def clique_number(peo: Peo) -> int:
    return 1 + max(peo.c) if peo.c else 0


def triangulate(g: Graph, tie_seed: int | None = None) -> Graph:
    """Chordal completion by the elimination game along the MCS order.

    Vertices are eliminated from last visited to first; the earlier
    neighbours of each eliminated vertex are joined into a clique. On a
    chordal input the MCS order is already perfect and nothing is added.
    """
    order, _ = mcs_order(g, tie_seed)
    if find_peo_violation(g, order) is None:
        return g
    pos = [0] * g.n
    for i, v in enumerate(order):
        pos[v] = i
    nbrs = [set(a) for a in g.adj]
    for v in reversed(order):
        pv = pos[v]
        earlier = [u for u in nbrs[v] if pos[u] < pv]
        for i, x in enumerate(earlier):
            nx_ = nbrs[x]
            for y in earlier[i + 1 :]:
                if y not in nx_:
                    nx_.add(y)
                    nbrs[y].add(x)
    return Graph(g.n, [sorted(s) for s in nbrs])
