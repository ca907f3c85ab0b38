from collections import Counter
from fractions import Fraction
from math import comb, sqrt

import numpy as np
import pytest
from scipy.stats import chisquare

from ccsample.graph import complete_graph, gen_er, make_rng
from ccsample.sampling import (
    Bernoulli,
    SampleSpec,
    Uniform,
    bernoulli_sample,
    draw,
    fisher_yates_subset,
    uniform_sample,
)


def test_p_one_keeps_everything():
    g = gen_er(40, 0.1, 2)
    sg = bernoulli_sample(g, 1.0, 9)
    assert sg.sampled == tuple(range(40))
    assert sg.graph == g


def test_p_zero_keeps_nothing():
    sg = bernoulli_sample(gen_er(40, 0.1, 2), 0.0, 9)
    assert sg.sampled == () and sg.graph.n == 0


def test_k2_subset_frequencies():
    g = complete_graph(2)
    trials = 100_000
    counts = Counter(bernoulli_sample(g, 0.5, seed).sampled for seed in range(trials))
    sigma = sqrt(trials * 0.25 * 0.75)
    for subset in [(), (0,), (1,), (0, 1)]:
        assert abs(counts[subset] - trials / 4) <= 3 * sigma


def test_uniform_subsets_equifrequent():
    g = complete_graph(4)
    trials = 12_000
    counts = Counter(uniform_sample(g, 2, seed).sampled for seed in range(trials))
    assert len(counts) == comb(4, 2)
    assert chisquare(list(counts.values())).pvalue > 1e-3


def test_uniform_edge_cases():
    g = gen_er(10, 0.3, 1)
    assert uniform_sample(g, 10, 0).graph == g
    assert uniform_sample(g, 0, 0).graph.n == 0
    with pytest.raises(ValueError):
        uniform_sample(g, 11, 0)


def test_fisher_yates_returns_sorted_distinct():
    s = fisher_yates_subset(100, 30, make_rng(5))
    assert s == sorted(set(s)) and len(s) == 30


def test_deterministic_given_seed():
    g = gen_er(200, 0.05, 3)
    assert bernoulli_sample(g, 0.3, 11) == bernoulli_sample(g, 0.3, 11)
    assert uniform_sample(g, 50, 11) == uniform_sample(g, 50, 11)
    assert bernoulli_sample(g, 0.3, 11).sampled != bernoulli_sample(g, 0.3, 12).sampled


def test_sampled_graph_is_induced():
    g = gen_er(60, 0.2, 8)
    sg = bernoulli_sample(g, 0.4, 3)
    s = sg.sampled
    expected = {(i, j) for i in range(len(s)) for j in range(i + 1, len(s)) if g.has_edge(s[i], s[j])}
    assert sg.graph.edges == expected


def test_model_validation():
    with pytest.raises(ValueError):
        Bernoulli(1.5)
    with pytest.raises(ValueError):
        Uniform(-1)
    with pytest.raises(ValueError):
        draw(complete_graph(3), SampleSpec(Bernoulli(0.5)))


def test_p_property():
    g = complete_graph(8)
    assert draw(g, SampleSpec(Uniform(2), 0)).p == Fraction(1, 4)
    assert draw(g, SampleSpec(Bernoulli(Fraction(1, 3)), 0)).p == Fraction(1, 3)


def test_bernoulli_mean_size():
    g = gen_er(1000, 0.0, 0)
    sizes = np.array([len(bernoulli_sample(g, 0.3, s).sampled) for s in range(200)])
    assert abs(sizes.mean() - 300) < 4 * sqrt(1000 * 0.21 / 200)
