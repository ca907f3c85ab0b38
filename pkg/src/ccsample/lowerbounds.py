"""Adversarial graph pairs with matching local statistics, and analytic TV bounds.

Each generator returns two graphs on the same number of vertices whose
component counts differ but whose sampled versions are hard to tell apart.
Labelings are deterministic and documented per generator, because the
coupling argument needs vertex identity.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from itertools import combinations
from math import comb, exp, sqrt
from pathlib import Path

from .graph import Graph, count_components, cycle_graph, disjoint_union, empty_graph, path_graph, star_graph, complete_graph, write_edge_list


@dataclass(frozen=True)
class GraphPair:
    h: Graph
    h2: Graph
    construction: str
    params: dict
    matching_order: int | None = None
    cc_difference: int = 0
    special_vertices: tuple[int, ...] = ()
    notes: dict = field(default_factory=dict)

    def __post_init__(self):
        if self.h.n != self.h2.n:
            raise ValueError("pair graphs must have equal vertex counts")

    @property
    def m(self) -> int:
        return self.h.n

    def meta(self) -> dict:
        return {
            "construction": self.construction,
            "params": self.params,
            "m": self.m,
            "matching_order": self.matching_order,
            "cc_difference": self.cc_difference,
            "cc": [count_components(self.h), count_components(self.h2)],
            "special_vertices": list(self.special_vertices),
        }


def gen_cycle_pair(r: int) -> GraphPair:
    """``C_r + P_(r-2)`` against ``P_(2(r-1))``.

    Labels: the cycle is ``0..r-1`` in cyclic order, the short path follows
    as ``r..2r-3``; the long path is ``0..2r-3`` in path order.
    """
    if r < 4:
        raise ValueError("cycle pair needs r >= 4")
    h = disjoint_union([cycle_graph(r), path_graph(r - 2)])
    h2 = path_graph(2 * (r - 1))
    return GraphPair(h, h2, "cycle", {"r": r}, matching_order=r - 1, cc_difference=1)


def _attached_graph(omega: int, m: int, parity: int) -> Graph:
    """Clique ``U = {0..omega-2}`` plus ``m`` vertices with neighbourhood ``S`` for
    every ``S`` of ``U`` with ``|S| % 2 == parity``.

    Attached vertices are numbered from ``omega - 1`` upward, subsets taken
    by increasing size and then lexicographically, ``m`` consecutive labels
    per subset.
    """
    u = list(range(omega - 1))
    edges = list(combinations(u, 2))
    nxt = omega - 1
    for size in range(parity, omega, 2):
        for s in combinations(u, size):
            for _ in range(m):
                edges.extend((x, nxt) for x in s)
                nxt += 1
    return Graph.from_edges(nxt, edges)


def gen_chordal_pair_parity(omega: int, m: int) -> GraphPair:
    """Even-subset vs odd-subset attachments around a shared clique ``U``.

    For ``omega = 2``, ``U`` is one vertex: ``h`` is ``m + 1`` isolated
    vertices and ``h2`` a star with ``m`` leaves.
    """
    if omega < 2 or m < 1:
        raise ValueError("parity pair needs omega >= 2 and m >= 1")
    h = _attached_graph(omega, m, 0)
    h2 = _attached_graph(omega, m, 1)
    return GraphPair(
        h,
        h2,
        "chordal-parity",
        {"omega": omega, "m": m},
        cc_difference=m,
        special_vertices=tuple(range(omega - 1)),
    )


def gen_clique_pair(omega: int) -> GraphPair:
    """Disjoint cliques with binomial multiplicities: ``C(omega, k)`` copies of ``K_k``.

    ``h`` collects the sizes ``k`` with the same parity as ``omega`` (so it
    contains ``K_omega``), ``h2`` the other parity; ``k = 0`` is skipped.
    Cliques are laid out largest first.
    """
    if omega < 2:
        raise ValueError("clique pair needs omega >= 2")

    def build(parity: int) -> Graph:
        parts = []
        for k in range(omega, 0, -1):
            if k % 2 == parity:
                parts.extend([complete_graph(k)] * comb(omega, k))
        return disjoint_union(parts)

    h = build(omega % 2)
    h2 = build(1 - omega % 2)
    return GraphPair(h, h2, "clique", {"omega": omega}, matching_order=omega - 1, cc_difference=1)


def gen_star_pair(d: int) -> GraphPair:
    """``(d+1) K_1`` against the star ``S_d`` with centre 0."""
    if d < 1:
        raise ValueError("star pair needs d >= 1")
    return GraphPair(empty_graph(d + 1), star_graph(d), "star", {"d": d}, cc_difference=d, special_vertices=(0,))


def tv_bound_matching(m: int, k: int, p: float) -> tuple[float, float]:
    """Bounds for pairs with matching connected counts up to order ``k``.

    Returns ``(P(Bin(m, p) >= k + 1), hoeffding)``; the Hoeffding form
    ``exp(-2 (k + 1 - p m)^2 / m)`` only applies when ``p <= (k+1)/m`` and
    is reported as 1 otherwise.
    """
    if not 0 <= k <= m:
        raise ValueError("need 0 <= k <= m")
    q = 1 - p
    tail = sum(comb(m, j) * p**j * q ** (m - j) for j in range(k + 1, m + 1))
    if m == 0 or p > (k + 1) / m:
        hoeffding = 1.0
    else:
        hoeffding = min(1.0, exp(-2 * (k + 1 - p * m) ** 2 / m))
    return tail, hoeffding


def tv_bound_coupling(u_size: int, v_size: int, p: float, shared_u: bool) -> float:
    """``p^|U|``, sharpened to ``p^|U| (1 - q^(|V| - |U|))`` when ``h[U]`` and ``h2[U]`` agree."""
    if u_size > v_size:
        raise ValueError("|U| cannot exceed |V|")
    bound = p**u_size
    if shared_u:
        bound *= 1 - (1 - p) ** (v_size - u_size)
    return bound


def mainlb_delta(f_h: float, f_h2: float, N: int, m: int, tv: float) -> float:
    """Separation achieved by tiling ``N // m`` copies of a pair at distance ``tv``."""
    copies = N // m
    if tv <= 0:
        return abs(f_h - f_h2) / 8 * copies
    return abs(f_h - f_h2) / 8 * min(sqrt(N / (m * tv)), copies)


def export_pair(pair: GraphPair, prefix) -> list[Path]:
    """Write ``<prefix>_h.txt``, ``<prefix>_h2.txt`` and ``<prefix>_meta.json``."""
    prefix = Path(prefix)
    paths = [Path(f"{prefix}_h.txt"), Path(f"{prefix}_h2.txt"), Path(f"{prefix}_meta.json")]
    write_edge_list(pair.h, paths[0], [f"{pair.construction} pair, first graph"])
    write_edge_list(pair.h2, paths[1], [f"{pair.construction} pair, second graph"])
    paths[2].write_text(json.dumps(pair.meta(), indent=2, sort_keys=True) + "\n", encoding="utf-8")
    return paths
