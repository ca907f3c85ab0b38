"""Estimate the number of connected components of a graph from a vertex sample."""

__version__ = "0.1.0"

from .graph import (
    Graph,
    ParseError,
    connected_components,
    count_components,
    gen_er,
    induced_subgraph,
    parse_edge_list,
    read_edge_list,
    write_edge_list,
)
from .chordal import NotChordal, Peo, alternating_cc, clique_counts, clique_number, mcs_peo, sandwich_bounds, triangulate
from .sampling import Bernoulli, SampledGraph, SampleSpec, Uniform, draw
from .estimators import (
    Auto,
    CliquesSmoothed,
    CliquesUnbiased,
    Forest,
    NonChordalHeuristic,
    PLogN,
    SmoothedChordal,
    UnbiasedChordal,
    UniformUnbiased,
    estimate,
)
