"""Vertex sampling models: Bernoulli(p) and uniform n-of-N without replacement."""

from __future__ import annotations

from dataclasses import dataclass, replace
from fractions import Fraction
from typing import Union

import numpy as np

from .graph import Graph, induced_subgraph, make_rng


@dataclass(frozen=True)
class Bernoulli:
    p: float | Fraction

    def __post_init__(self):
        if not 0 <= self.p <= 1:
            raise ValueError(f"sampling probability must lie in [0, 1], got {self.p}")


@dataclass(frozen=True)
class Uniform:
    n: int

    def __post_init__(self):
        if self.n < 0:
            raise ValueError(f"sample size must be nonnegative, got {self.n}")


Model = Union[Bernoulli, Uniform]


@dataclass(frozen=True)
class SampleSpec:
    model: Model
    seed: int | None = None

    def describe(self) -> dict:
        if isinstance(self.model, Bernoulli):
            return {"model": "bernoulli", "p": float(self.model.p), "seed": self.seed}
        return {"model": "uniform", "n": self.model.n, "seed": self.seed}


@dataclass(frozen=True)
class SampledGraph:
    """What an estimator is allowed to see: ``G[S]``, ``S``, ``N`` and the design."""

    parent_n: int
    spec: SampleSpec
    sampled: tuple[int, ...]
    graph: Graph

    @property
    def p(self) -> float | Fraction:
        if isinstance(self.spec.model, Bernoulli):
            return self.spec.model.p
        return Fraction(self.spec.model.n, self.parent_n) if self.parent_n else Fraction(0)

    def with_graph(self, graph: Graph) -> "SampledGraph":
        return replace(self, graph=graph)


def sample_from_subset(g: Graph, subset, spec: SampleSpec) -> SampledGraph:
    """Wrap a given vertex subset as a sample; used by the enumeration oracle."""
    sub, members = induced_subgraph(g, sorted(subset))
    return SampledGraph(parent_n=g.n, spec=spec, sampled=members, graph=sub)


def bernoulli_sample(g: Graph, p: float | Fraction, seed: int) -> SampledGraph:
    """Keep each vertex independently when its uniform draw is below ``p``."""
    spec = SampleSpec(Bernoulli(p), seed)
    keep = np.flatnonzero(make_rng(seed).random(g.n) < float(p))
    return sample_from_subset(g, keep.tolist(), spec)


def fisher_yates_subset(N: int, n: int, rng: np.random.Generator) -> list[int]:
    """First ``n`` positions of a seeded partial Fisher-Yates shuffle of ``range(N)``."""
    perm = list(range(N))
    for i in range(n):
        j = int(rng.integers(i, N))
        perm[i], perm[j] = perm[j], perm[i]
    return sorted(perm[:n])


def uniform_sample(g: Graph, n: int, seed: int) -> SampledGraph:
    if n > g.n:
        raise ValueError(f"cannot sample {n} vertices from a graph with {g.n}")
    spec = SampleSpec(Uniform(n), seed)
    return sample_from_subset(g, fisher_yates_subset(g.n, n, make_rng(seed)), spec)


def draw(g: Graph, spec: SampleSpec) -> SampledGraph:
    if spec.seed is None:
        raise ValueError("sampling requires an explicit seed")
    if isinstance(spec.model, Bernoulli):
        return bernoulli_sample(g, spec.model.p, spec.seed)
    return uniform_sample(g, spec.model.n, spec.seed)
