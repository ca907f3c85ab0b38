"""Undirected simple graphs on dense integer labels, edge-list IO and generators."""

from __future__ import annotations

from collections import deque
from functools import cached_property
from typing import Iterable, Sequence

import numpy as np


class ParseError(ValueError):
    """Base class for edge-list parse failures. ``line`` is 1-based."""

    def __init__(self, message: str, line: int | None = None):
        self.line = line
        if line is not None:
            message = f"line {line}: {message}"
        super().__init__(message)


class MalformedLineError(ParseError):
    pass


class EndpointRangeError(ParseError):
    pass


class SelfLoopError(ParseError):
    pass


class DuplicateEdgeError(ParseError):
    pass


class EdgeCountError(ParseError):
    pass


class InvalidVertexSetError(ValueError):
    pass


class Graph:
    """Immutable undirected simple graph on vertices ``0..n-1``.

    Isolated vertices are represented simply by ``n`` exceeding the largest
    endpoint. Holds sorted adjacency tuples, a CSR pair of numpy arrays, or
    both; each view is built from the other on first use.
    """

    def __init__(self, n: int, adj: Sequence[Sequence[int]] | None = None, csr=None):
        # trusted constructor: callers guarantee sorted, symmetric, loop-free lists
        if adj is None and csr is None:
            raise ValueError("Graph needs adjacency lists or CSR arrays")
        self.n = n
        self._adj = None if adj is None else tuple(tuple(a) for a in adj)
        self._csr = csr

    @classmethod
    def from_csr(cls, n: int, indptr: np.ndarray, indices: np.ndarray) -> "Graph":
        return cls(n, csr=(indptr, indices))

    @property
    def adj(self) -> tuple[tuple[int, ...], ...]:
        if self._adj is None:
            indptr, indices = self._csr
            flat = indices.tolist()
            bounds = indptr.tolist()
            self._adj = tuple(tuple(flat[bounds[v] : bounds[v + 1]]) for v in range(self.n))
        return self._adj

    @property
    def csr(self) -> tuple[np.ndarray, np.ndarray]:
        if self._csr is None:
            deg = np.fromiter((len(a) for a in self._adj), dtype=np.int64, count=self.n)
            indptr = np.zeros(self.n + 1, dtype=np.int64)
            np.cumsum(deg, out=indptr[1:])
            indices = np.fromiter((u for a in self._adj for u in a), dtype=np.int64, count=int(indptr[-1]))
            self._csr = (indptr, indices)
        return self._csr

    @classmethod
    def from_edges(cls, n: int, edges: Iterable[tuple[int, int]]) -> "Graph":
        if n < 0:
            raise ValueError("vertex count must be nonnegative")
        nbrs: list[set[int]] = [set() for _ in range(n)]
        for u, v in edges:
            if u == v:
                raise ValueError(f"self-loop at vertex {u}")
            if not (0 <= u < n and 0 <= v < n):
                raise ValueError(f"edge ({u}, {v}) out of range for n={n}")
            nbrs[u].add(v)
            nbrs[v].add(u)
        return cls(n, [sorted(s) for s in nbrs])

    @cached_property
    def edges(self) -> frozenset[tuple[int, int]]:
        return frozenset((u, v) for u in range(self.n) for v in self.adj[u] if u < v)

    @cached_property
    def num_edges(self) -> int:
        if self._adj is None:
            return int(self._csr[0][-1]) // 2
        return sum(len(a) for a in self._adj) // 2

    @cached_property
    def degrees(self) -> tuple[int, ...]:
        if self._adj is None:
            return tuple(np.diff(self._csr[0]).tolist())
        return tuple(len(a) for a in self._adj)

    @property
    def max_degree(self) -> int:
        return max(self.degrees, default=0)

    def has_edge(self, u: int, v: int) -> bool:
        return (min(u, v), max(u, v)) in self.edges

    def sorted_edges(self) -> list[tuple[int, int]]:
        return [(u, v) for u in range(self.n) for v in self.adj[u] if u < v]

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, Graph):
            return NotImplemented
        return self.n == other.n and self.adj == other.adj

    def __hash__(self) -> int:
        return hash((self.n, self.adj))

    def __repr__(self) -> str:
        return f"Graph(n={self.n}, m={self.num_edges})"


def parse_edge_list(text: str) -> Graph:
    """Parse the ``N M`` header + ``M`` lines of ``u v`` format.

    ``#`` starts a comment; blank lines are skipped; CRLF is accepted.
    """
    header: tuple[int, int] | None = None
    seen: set[tuple[int, int]] = set()
    edges: list[tuple[int, int]] = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        parts = line.split()
        if len(parts) != 2:
            raise MalformedLineError(f"expected two integers, got {raw.strip()!r}", lineno)
        try:
            a, b = int(parts[0]), int(parts[1])
        except ValueError:
            raise MalformedLineError(f"non-integer token in {raw.strip()!r}", lineno) from None
        if header is None:
            if a < 0 or b < 0:
                raise MalformedLineError("header counts must be nonnegative", lineno)
            header = (a, b)
            continue
        n = header[0]
        if not (0 <= a < n and 0 <= b < n):
            raise EndpointRangeError(f"endpoint out of range for N={n}: {a} {b}", lineno)
        if a == b:
            raise SelfLoopError(f"self-loop at vertex {a}", lineno)
        key = (min(a, b), max(a, b))
        if key in seen:
            raise DuplicateEdgeError(f"duplicate edge {key[0]} {key[1]}", lineno)
        seen.add(key)
        edges.append(key)
    if header is None:
        raise MalformedLineError("missing 'N M' header")
    if len(edges) != header[1]:
        raise EdgeCountError(f"header declares {header[1]} edges, found {len(edges)}")
    return Graph.from_edges(header[0], edges)


def format_edge_list(g: Graph, comments: Sequence[str] = ()) -> str:
    lines = [f"# {c}" for c in comments]
    lines.append(f"{g.n} {g.num_edges}")
    lines.extend(f"{u} {v}" for u, v in g.sorted_edges())
    return "\n".join(lines) + "\n"


def read_edge_list(path) -> Graph:
    with open(path, encoding="utf-8", newline="") as fh:
        return parse_edge_list(fh.read())


def write_edge_list(g: Graph, path, comments: Sequence[str] = ()) -> None:
    with open(path, "w", encoding="utf-8", newline="\n") as fh:
        fh.write(format_edge_list(g, comments))


def connected_components(g: Graph) -> tuple[int, list[int]]:
    """Union-find component count and per-vertex labels.

    Labels are renumbered ``0..count-1`` in order of each component's
    smallest vertex.
    """
    parent = list(range(g.n))

    def find(x: int) -> int:
        root = x
        while parent[root] != root:
            root = parent[root]
        while parent[x] != root:
            parent[x], x = root, parent[x]
        return root

    for u in range(g.n):
        for v in g.adj[u]:
            if v > u:
                ru, rv = find(u), find(v)
                if ru != rv:
                    if ru < rv:
                        parent[rv] = ru
                    else:
                        parent[ru] = rv
    labels = [0] * g.n
    ids: dict[int, int] = {}
    for v in range(g.n):
        r = find(v)
        if r not in ids:
            ids[r] = len(ids)
        labels[v] = ids[r]
    return len(ids), labels


def count_components(g: Graph) -> int:
    return connected_components(g)[0]


def component_sizes(g: Graph) -> list[int]:
    count, labels = connected_components(g)
    sizes = [0] * count
    for lab in labels:
        sizes[lab] += 1
    return sizes


def bfs_components(g: Graph) -> int:
    """Component count by breadth-first search (kept separate from union-find)."""
    seen = [False] * g.n
    count = 0
    for s in range(g.n):
        if seen[s]:
            continue
        count += 1
        seen[s] = True
        queue = deque([s])
        while queue:
            u = queue.popleft()
            for v in g.adj[u]:
                if not seen[v]:
                    seen[v] = True
                    queue.append(v)
    return count


def validate_vertex_set(g: Graph, s: Iterable[int]) -> tuple[int, ...]:
    members = tuple(s)
    for i, v in enumerate(members):
        if not (0 <= v < g.n):
            raise InvalidVertexSetError(f"vertex {v} out of range for n={g.n}")
        if i and members[i - 1] >= v:
            raise InvalidVertexSetError("vertex set must be strictly increasing")
    return members


def induced_subgraph(g: Graph, s: Iterable[int]) -> tuple[Graph, tuple[int, ...]]:
    """Return ``(g[s], members)``; vertex ``i`` of the result is ``members[i]``."""
    members = validate_vertex_set(g, s)
    k = len(members)
    if g._adj is not None and (g._csr is None or k < 64):
        index = dict(zip(members, range(k)))
        adj = []
        for v in members:
            row = []
            for u in g.adj[v]:
                j = index.get(u)
                if j is not None:
                    row.append(j)
            adj.append(row)
        # rows stay sorted since index is monotone in the original label
        return Graph(k, adj), members
    indptr, indices = g.csr
    keep = np.asarray(members, dtype=np.int64)
    newid = np.full(g.n, -1, dtype=np.int64)
    newid[keep] = np.arange(k, dtype=np.int64)
    starts, stops = indptr[keep], indptr[keep + 1]
    lengths = stops - starts
    rows = np.repeat(np.arange(k, dtype=np.int64), lengths)
    offsets = np.arange(int(lengths.sum()), dtype=np.int64) - np.repeat(np.cumsum(lengths) - lengths, lengths)
    targets = newid[indices[np.repeat(starts, lengths) + offsets]]
    inside = targets >= 0
    sub_indices = targets[inside]
    sub_indptr = np.zeros(k + 1, dtype=np.int64)
    np.cumsum(np.bincount(rows[inside], minlength=k), out=sub_indptr[1:])
    return Graph.from_csr(k, sub_indptr, sub_indices), members


def disjoint_union(gs: Sequence[Graph]) -> Graph:
    adj: list[tuple[int, ...]] = []
    offset = 0
    for g in gs:
        adj.extend(tuple(u + offset for u in a) for a in g.adj)
        offset += g.n
    return Graph(offset, adj)


def relabel(g: Graph, perm: Sequence[int]) -> Graph:
    """Graph with vertex ``v`` renamed ``perm[v]``."""
    return Graph.from_edges(g.n, ((perm[u], perm[v]) for u, v in g.sorted_edges()))


def make_rng(seed: int) -> np.random.Generator:
    """The artifact-wide generator: numpy PCG64 seeded with a 64-bit integer."""
    return np.random.Generator(np.random.PCG64(seed))


def gen_er(n: int, delta: float, seed: int) -> Graph:
    """Erdos-Renyi G(n, delta); pair {i, j} (i < j) kept iff its uniform draw < delta.

    Draws are taken row by row (one vector of ``n-i-1`` uniforms for vertex i),
    so the output depends only on ``(n, delta, seed)``.
    """
    if not 0.0 <= delta <= 1.0:
        raise ValueError("delta must lie in [0, 1]")
    rng = make_rng(seed)
    nbrs: list[list[int]] = [[] for _ in range(n)]
    for i in range(n - 1):
        hits = np.flatnonzero(rng.random(n - i - 1) < delta)
        for j in (hits + (i + 1)).tolist():
            nbrs[i].append(j)
            nbrs[j].append(i)
    # j-lists receive i in increasing order, i-lists receive j in increasing order
    return Graph(n, [sorted(a) for a in nbrs])


def complete_graph(k: int) -> Graph:
    return Graph(k, [[u for u in range(k) if u != v] for v in range(k)])


def path_graph(k: int) -> Graph:
    return Graph.from_edges(k, ((i, i + 1) for i in range(k - 1)))


def cycle_graph(k: int) -> Graph:
    return Graph.from_edges(k, [(i, (i + 1) % k) for i in range(k)])


def star_graph(k: int) -> Graph:
    """S_k: center 0 joined to leaves 1..k."""
    return Graph.from_edges(k + 1, ((0, i) for i in range(1, k + 1)))


def empty_graph(k: int) -> Graph:
    return Graph(k, [() for _ in range(k)])


_NAMED = {
    "complete": (complete_graph, 1),
    "path": (path_graph, 1),
    "cycle": (cycle_graph, 3),
    "star": (star_graph, 1),
    "empty": (empty_graph, 0),
}


def gen_named(kind: str, k: int) -> Graph:
    try:
        builder, kmin = _NAMED[kind]
    except KeyError:
        raise ValueError(f"unknown graph kind {kind!r}; choose from {sorted(_NAMED)}") from None
    if k < kmin:
        raise ValueError(f"{kind} needs k >= {kmin}, got {k}")
    return builder(k)
