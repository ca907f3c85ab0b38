"""Component-count estimators computed from a sampled graph alone.

Every estimator here reads only ``SampledGraph`` (the induced subgraph, the
parent's vertex count and the sampling design). Passing ``p`` as a
``fractions.Fraction`` switches the unbiased estimators to exact rational
arithmetic, which the enumeration oracle uses to test unbiasedness as an
equality.
"""

from __future__ import annotations

import math
from collections import Counter
from dataclasses import dataclass
from fractions import Fraction
from math import comb, exp, lgamma, log
from typing import Union

from .chordal import Peo, clique_counts, mcs_peo, triangulate
from .graph import connected_components
from .sampling import Bernoulli, SampledGraph, Uniform


class EstimatorError(ValueError):
    pass


class NotChordalSampleError(EstimatorError):
    """The sampled graph has no PEO, so the parent was not chordal."""


class NotCliqueUnionError(EstimatorError):
    pass


# -- smoothing parameter ------------------------------------------------------


@dataclass(frozen=True)
class Auto:
    """Theory-driven smoothing parameter.

    ``d`` and ``omega`` are caller-supplied upper bounds on the parent's
    maximum degree and clique number (needed only by the chordal variant).
    """

    d: int | None = None
    omega: int | None = None

    def __post_init__(self):
        if self.d is not None and self.d < 1:
            raise ValueError("Auto requires d >= 1")
        if self.omega is not None and self.omega < 2:
            raise ValueError("Auto requires omega >= 2")


@dataclass(frozen=True)
class PLogN:
    """``lambda = p * log N``, the setting used in the simulation study."""


Lambda = Union[float, Auto, PLogN]


# -- estimator kinds ----------------------------------------------------------


@dataclass(frozen=True)
class UnbiasedChordal:
    pass


@dataclass(frozen=True)
class SmoothedChordal:
    lam: Lambda


@dataclass(frozen=True)
class CliquesUnbiased:
    pass


@dataclass(frozen=True)
class CliquesSmoothed:
    lam: Lambda


@dataclass(frozen=True)
class UniformUnbiased:
    pass


@dataclass(frozen=True)
class Forest:
    pass


@dataclass(frozen=True)
class NonChordalHeuristic:
    inner: "EstimatorKind"

    def __post_init__(self):
        if isinstance(self.inner, NonChordalHeuristic):
            raise ValueError("heuristic cannot wrap itself")


EstimatorKind = Union[
    UnbiasedChordal,
    SmoothedChordal,
    CliquesUnbiased,
    CliquesSmoothed,
    UniformUnbiased,
    Forest,
    NonChordalHeuristic,
]


# -- helpers ------------------------------------------------------------------


def poisson_tail(lam: float, k: int) -> float:
    """``P(L >= k)`` for ``L ~ Poisson(lam)`` by direct summation.

    Sums the lower part when ``k <= lam`` and the upper tail otherwise,
    stopping once the geometric remainder drops below 1e-16.
    """
    if lam < 0:
        raise ValueError("lambda must be nonnegative")
    if k <= 0:
        return 1.0
    if lam == 0:
        return 0.0
    if lam == math.inf:
        return 1.0
    if k <= lam:
        term = exp(-lam)
        total = 0.0
        for i in range(k):
            total += term
            term *= lam / (i + 1)
        return min(1.0, max(0.0, 1.0 - total))
    term = exp(k * log(lam) - lam - lgamma(k + 1))
    total = 0.0
    i = k
    while term > 0.0:
        total += term
        i += 1
        ratio = lam / i
        term *= ratio
        if term * ratio / (1.0 - ratio) < 1e-16:
            total += term
            break
    return min(1.0, total)


def _sampling_ratio(sg: SampledGraph, p):
    if p is None:
        p = sg.p
    if isinstance(sg.spec.model, Uniform) and not isinstance(p, Fraction):
        p = float(p)
    if p <= 0:
        raise EstimatorError("sampling ratio must be positive")
    if p > 1:
        raise EstimatorError("sampling ratio must not exceed 1")
    return p


def _neg_odds(p):
    """``-q/p``; exact when ``p`` is a Fraction."""
    if isinstance(p, Fraction):
        return -(1 - p) / p
    return -(1.0 - p) / p


def sample_peo(sg: SampledGraph) -> Peo:
    peo = mcs_peo(sg.graph)
    if not isinstance(peo, Peo):
        raise NotChordalSampleError(
            f"sampled graph is not chordal (vertex {peo.vertex}, non-adjacent pair {peo.pair}); "
            "use the triangulation heuristic"
        )
    return peo


def _component_profile(sg: SampledGraph) -> Counter:
    """Counter of component sizes, checking every component is a clique."""
    g = sg.graph
    count, labels = connected_components(g)
    sizes = [0] * count
    twice_edges = [0] * count
    for v in range(g.n):
        sizes[labels[v]] += 1
        twice_edges[labels[v]] += len(g.adj[v])
    for r, e2 in zip(sizes, twice_edges):
        if e2 != r * (r - 1):
            raise NotCliqueUnionError(f"a sampled component on {r} vertices is not a clique")
    return Counter(sizes)


def auto_lambda_chordal(p: float, N: int, d: int, omega: int) -> float:
    """``(p / (2 - 3p)) * log(N p / (1 + d omega))``, clamped at 0."""
    arg = N * p / (1 + d * omega)
    if arg <= 1:
        return 0.0
    return p / (2 - 3 * p) * log(arg)


def auto_lambda_cliques(p: float, N: int) -> float:
    """``(p / (2 - 3p)) * log(N / 4)``, clamped at 0."""
    if N <= 4:
        return 0.0
    return p / (2 - 3 * p) * log(N / 4)


def _resolve_lambda(lam: Lambda, p: float, N: int, chordal: bool) -> float | None:
    """Numeric smoothing parameter, or None when Auto falls back to unbiased."""
    if isinstance(lam, Auto):
        if p >= 0.5:
            return None
        if not chordal:
            return auto_lambda_cliques(p, N)
        if lam.d is None or lam.omega is None:
            raise EstimatorError("Auto smoothing for chordal graphs needs d and omega")
        return auto_lambda_chordal(p, N, lam.d, lam.omega)
    if isinstance(lam, PLogN):
        return p * log(N) if N > 1 else 0.0
    lam = float(lam)
    if lam < 0 or math.isnan(lam):
        raise EstimatorError("lambda must be nonnegative")
    return lam


# -- estimators ---------------------------------------------------------------


def estimate_unbiased_chordal(sg: SampledGraph, p=None):
    """``(1/p) * sum_j (-q/p)^c_j`` over a PEO of the sampled graph.

    Returns 0 for an empty sample. Exact when ``p`` is a Fraction.
    """
    p = _sampling_ratio(sg, p)
    hist = Counter(sample_peo(sg).c)
    r = _neg_odds(p)
    total = sum(mult * r**c for c, mult in hist.items())
    return total / p


def estimate_clique_sum(sg: SampledGraph, p=None) -> float:
    """Same estimator via ``-sum_i (-1/p)^i s(K_i)``, in exact rational arithmetic.

    Only meant as a cross-check of the PEO form; large samples make the
    exact sum slow.
    """
    p = _sampling_ratio(sg, p)
    s = clique_counts(sample_peo(sg))
    pf = Fraction(p)
    value = -sum((Fraction(-1) / pf) ** (i + 1) * si for i, si in enumerate(s))
    return value if isinstance(p, Fraction) else float(value)


def estimate_smoothed_chordal(sg: SampledGraph, p=None, lam: Lambda = 0.0) -> float:
    p = float(_sampling_ratio(sg, p))
    lam_value = _resolve_lambda(lam, p, sg.parent_n, chordal=True)
    if lam_value is None:
        return float(estimate_unbiased_chordal(sg, p))
    hist = Counter(sample_peo(sg).c)
    r = _neg_odds(p)
    total = sum(mult * r**c * poisson_tail(lam_value, c) for c, mult in hist.items())
    return total / p


def estimate_cliques_unbiased(sg: SampledGraph, p=None):
    """``sum_r (1 - (-q/p)^r) * cc_r`` over sampled component sizes ``r``."""
    p = _sampling_ratio(sg, p)
    r_ = _neg_odds(p)
    return sum(mult * (1 - r_**r) for r, mult in _component_profile(sg).items())


def estimate_cliques_smoothed(sg: SampledGraph, p=None, lam: Lambda = 0.0) -> float:
    p = float(_sampling_ratio(sg, p))
    lam_value = _resolve_lambda(lam, p, sg.parent_n, chordal=False)
    if lam_value is None:
        return float(estimate_cliques_unbiased(sg, p))
    profile = _component_profile(sg)
    r_ = _neg_odds(p)
    cc = sum(profile.values())
    return cc - sum(mult * r_**r * poisson_tail(lam_value, r) for r, mult in profile.items())


def inclusion_probability(N: int, n: int, i: int, exact: bool = False):
    """``C(N-i, n-i) / C(N, n)``: chance that a fixed i-set is inside a uniform n-subset."""
    if i > n:
        return Fraction(0) if exact else 0.0
    if exact:
        return Fraction(comb(N - i, n - i), comb(N, n))
    return exp(lgamma(N - i + 1) - lgamma(n - i + 1) + lgamma(n + 1) - lgamma(N + 1))


def estimate_uniform(sg: SampledGraph, exact: bool = False):
    """Inverse-inclusion-weighted alternating clique sum for the uniform design."""
    model = sg.spec.model
    if not isinstance(model, Uniform):
        raise EstimatorError("uniform estimator needs a Uniform(n) sampling design")
    N, n = sg.parent_n, model.n
    s = clique_counts(sample_peo(sg))
    if len(s) > n:
        raise EstimatorError("observed clique larger than the sample size")
    total = 0
    for i, si in enumerate(s, start=1):
        term = si / inclusion_probability(N, n, i, exact)
        total += term if i % 2 else -term
    return total


def estimate_forest(sg: SampledGraph, p=None):
    """``v/p - e/p^2``."""
    p = _sampling_ratio(sg, p)
    return sg.graph.n / p - sg.graph.num_edges / (p * p)


def estimate_nonchordal(sg: SampledGraph, p=None, inner: EstimatorKind = UnbiasedChordal()):
    """Triangulate the sampled graph, then apply ``inner``."""
    if isinstance(inner, NonChordalHeuristic):
        raise ValueError("heuristic cannot wrap itself")
    return estimate(sg.with_graph(triangulate(sg.graph)), inner, p)


def estimate(sg: SampledGraph, kind: EstimatorKind, p=None):
    if isinstance(kind, UnbiasedChordal):
        return estimate_unbiased_chordal(sg, p)
    if isinstance(kind, SmoothedChordal):
        return estimate_smoothed_chordal(sg, p, kind.lam)
    if isinstance(kind, CliquesUnbiased):
        return estimate_cliques_unbiased(sg, p)
    if isinstance(kind, CliquesSmoothed):
        return estimate_cliques_smoothed(sg, p, kind.lam)
    if isinstance(kind, UniformUnbiased):
        return estimate_uniform(sg, exact=isinstance(p, Fraction))
    if isinstance(kind, Forest):
        return estimate_forest(sg, p)
    if isinstance(kind, NonChordalHeuristic):
        return estimate_nonchordal(sg, p, kind.inner)
    raise TypeError(f"unknown estimator kind {kind!r}")


def clip_and_round(value: float, N: int) -> int:
    """Optional post-processing: nearest integer in ``[0, N]``. Breaks unbiasedness."""
    return int(min(max(round(float(value)), 0), N))


# -- theoretical guarantees, used by tests and the verify command ---------------


def chordal_variance_bound(N: int, d: int, omega: int, p: float) -> float:
    """``N/p^omega + N d / p^(omega-1)``."""
    return N / p**omega + N * d / p ** (omega - 1)


def chordal_concentration_bound(N: int, d: int, omega: int, p: float, t: float) -> float:
    """Two-sided tail bound ``2 exp(-8 p^omega t^2 / (25 (d omega + 1)(N + t/3)))``."""
    return min(1.0, 2 * exp(-8 * p**omega * t * t / (25 * (d * omega + 1) * (N + t / 3))))


def smoothed_chordal_mse_bound(N: int, d: int, omega: int, p: float) -> float:
    return 2 * N**2 * (N * p / (1 + d * omega)) ** (-p / (2 - 3 * p))


def smoothed_cliques_mse_bound(N: int, p: float) -> float:
    return N**2 * (N / 4) ** (-p / (2 - 3 * p))


def cliques_variance(component_sizes, p):
    """Exact variance ``sum_r (q/p)^r cc_r`` of the clique-union estimator."""
    odds = (1 - p) / p
    return sum(odds**r for r in component_sizes)
