"""Oracle-backed self-checks run by ``ccsample verify``."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Callable

from .chordal import Peo, clique_counts, clique_number, mcs_peo, triangulate
from .estimators import (
    CliquesUnbiased,
    UnbiasedChordal,
    UniformUnbiased,
    chordal_variance_bound,
    cliques_variance,
)
from .graph import (
    Graph,
    complete_graph,
    component_sizes,
    count_components,
    disjoint_union,
    gen_er,
    path_graph,
    star_graph,
)
from .lowerbounds import (
    gen_chordal_pair_parity,
    gen_clique_pair,
    gen_cycle_pair,
    gen_star_pair,
    tv_bound_coupling,
    tv_bound_matching,
)
from .oracle import are_isomorphic, connected_graphs, count_induced, enumerate_moments, enumerate_moments_uniform, exact_tv

RATIONAL_PS = (Fraction(1, 4), Fraction(1, 2), Fraction(3, 4))
GRID = tuple(Fraction(k, 10) for k in range(1, 10))


@dataclass(frozen=True)
class Check:
    name: str
    ok: bool
    detail: str = ""


def chordal_corpus() -> list[tuple[str, Graph]]:
    """Small chordal parents: named shapes plus triangulated random graphs."""
    corpus = [
        ("path5", path_graph(5)),
        ("star4", star_graph(4)),
        ("K4", complete_graph(4)),
        ("K3+P2+K1", disjoint_union([complete_graph(3), path_graph(2), complete_graph(1)])),
    ]
    for seed in range(4):
        corpus.append((f"tri-er8-{seed}", triangulate(gen_er(8, 0.3, seed))))
    return corpus


def suite_unbiasedness() -> list[Check]:
    out = []
    for name, g in chordal_corpus():
        cc = count_components(g)
        for p in RATIONAL_PS:
            mean = enumerate_moments(g, p, UnbiasedChordal()).mean
            out.append(Check(f"bernoulli {name} p={p}", mean == cc, f"mean={mean} cc={cc}"))
        if g.n <= 8:
            # cliques larger than the sample are never observed, so the
            # design is unbiased only once n reaches the clique number
            for n in range(max(2, clique_number(mcs_peo(g))), g.n + 1):
                mean = enumerate_moments_uniform(g, n, UniformUnbiased()).mean
                out.append(Check(f"uniform {name} n={n}", mean == cc, f"mean={mean} cc={cc}"))
    return out


def suite_variance() -> list[Check]:
    out = []
    unions = [
        [1, 2, 3],
        [4, 4],
        [1, 1, 1, 5],
        [2, 3, 3],
    ]
    for sizes in unions:
        g = disjoint_union([complete_graph(k) for k in sizes])
        for p in RATIONAL_PS:
            var = enumerate_moments(g, p, CliquesUnbiased()).variance
            want = cliques_variance(component_sizes(g), p)
            out.append(Check(f"cliques {sizes} p={p}", var == want, f"var={var} formula={want}"))
    for name, g in chordal_corpus():
        peo = mcs_peo(g)
        omega = clique_number(peo)
        d = g.max_degree
        for p in RATIONAL_PS:
            var = enumerate_moments(g, p, UnbiasedChordal()).variance
            bound = chordal_variance_bound(g.n, d, omega, p)
            out.append(Check(f"chordal bound {name} p={p}", var <= bound, f"var={float(var):.6g} bound={float(bound):.6g}"))
    return out


def suite_tv_pairs() -> list[Check]:
    out = []
    star = gen_star_pair(6)
    cyc = gen_cycle_pair(5)
    par = gen_chordal_pair_parity(3, 3)
    for p in GRID:
        q = 1 - p
        tv = exact_tv(star.h, star.h2, p)
        out.append(Check(f"star d=6 p={p}", tv == p * (1 - q**6), f"tv={float(tv):.6g}"))
        tv = exact_tv(cyc.h, cyc.h2, p)
        tail, _ = tv_bound_matching(cyc.m, cyc.matching_order, p)
        out.append(Check(f"cycle r=5 p={p}", tv <= tail, f"tv={float(tv):.6g} bound={float(tail):.6g}"))
        tv = exact_tv(par.h, par.h2, p)
        bound = tv_bound_coupling(len(par.special_vertices), par.m, p, shared_u=True)
        out.append(Check(f"parity (3,3) p={p}", tv <= bound, f"tv={float(tv):.6g} bound={float(bound):.6g}"))
    return out


def suite_pairs() -> list[Check]:
    out = []
    cyc = gen_cycle_pair(5)
    for k in range(1, 5):
        for pattern in connected_graphs(k):
            a, b = count_induced(pattern, cyc.h), count_induced(pattern, cyc.h2)
            want = 9 - k if are_isomorphic(pattern, path_graph(k)) else 0
            out.append(Check(f"cycle r=5 pattern {pattern.sorted_edges()} k={k}", a == b == want, f"{a} vs {b}"))
    for omega in (3, 4):
        pair = gen_clique_pair(omega)
        s1 = clique_counts(mcs_peo(pair.h))
        s2 = clique_counts(mcs_peo(pair.h2))
        out.append(Check(f"clique pair omega={omega}", s1[: omega - 1] == s2[: omega - 1], f"{s1} vs {s2}"))
    for pair in (gen_chordal_pair_parity(3, 3), gen_chordal_pair_parity(4, 2), gen_clique_pair(4)):
        chordal = isinstance(mcs_peo(pair.h), Peo) and isinstance(mcs_peo(pair.h2), Peo)
        diff = abs(count_components(pair.h) - count_components(pair.h2))
        out.append(
            Check(
                f"{pair.construction} {pair.params} chordal, cc gap",
                chordal and diff == pair.cc_difference,
                f"gap={diff}",
            )
        )
    return out


SUITES: dict[str, Callable[[], list[Check]]] = {
    "unbiasedness": suite_unbiasedness,
    "variance": suite_variance,
    "tv-pairs": suite_tv_pairs,
    "pairs": suite_pairs,
}


def run_suite(name: str) -> list[Check]:
    if name == "all":
        return [c for fn in SUITES.values() for c in fn()]
    if name not in SUITES:
        raise KeyError(name)
    return SUITES[name]()
