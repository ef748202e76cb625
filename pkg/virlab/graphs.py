#!/usr/bin/env python3
"""
Edges, two-color (Mayer / Boltzmann) labeled graphs and the predicates the
criteria are built on.

Vertices are the labels 1..n. Internally, vertex v maps to bit v-1 of a vertex
mask and the unordered pair {u, v} (u < v) maps to a fixed edge index, so an
edge set on V_n is also an integer "edge mask".
"""
import itertools
import math
from dataclasses import dataclass
from functools import lru_cache
from typing import Dict, Iterable, List, Literal, Sequence, Tuple

import numpy as np

from .errors import (
    CoverageError,
    NotBaseProductError,
    OverlapError,
    SizeError,
    VertexRangeError,
)

CANONICAL_MAX_N = 8
MAX_VERTICES = 16

Connectivity = Literal["mayer-only", "both"]


@dataclass(frozen=True, order=True)
class Edge:
    """Unordered pair {u, v}; stored with u < v."""

    u: int
    v: int

    def __post_init__(self):
        if self.u == self.v:
            raise VertexRangeError(f"loop edge {{{self.u}, {self.v}}} is not allowed")
        if min(self.u, self.v) < 1:
            raise VertexRangeError(f"vertex labels start at 1, got {{{self.u}, {self.v}}}")
        if self.u > self.v:
            u, v = self.v, self.u
            object.__setattr__(self, "u", u)
            object.__setattr__(self, "v", v)

    def as_list(self) -> List[int]:
        return [self.u, self.v]


EdgeLike = Edge | Tuple[int, int] | Sequence[int]


def as_edge(pair: EdgeLike) -> Edge:
    return pair if isinstance(pair, Edge) else Edge(*pair)


def edge_set(pairs: Iterable[EdgeLike]) -> Tuple[Edge, ...]:
    """Normalize pairs to a sorted, duplicate-free tuple of Edges."""
    return tuple(sorted({as_edge(p) for p in pairs}))


@dataclass(frozen=True)
class TwoColorGraph:
    """Canonical pair of Mayer / Boltzmann edge sets on V_n = {1..n}.

    Build instances through ``make_two_color_graph`` so the invariants hold.
    """

    n: int
    mayer_edges: Tuple[Edge, ...]
    boltzmann_edges: Tuple[Edge, ...]

    @property
    def edge_count(self) -> int:
        return len(self.mayer_edges) + len(self.boltzmann_edges)

    def to_json(self) -> Dict[str, object]:
        return {
            "n": self.n,
            "mayer": [e.as_list() for e in self.mayer_edges],
            "boltzmann": [e.as_list() for e in self.boltzmann_edges],
        }

    @classmethod
    def from_json(cls, payload: Dict[str, object]) -> "TwoColorGraph":
        return make_two_color_graph(payload["n"], payload["mayer"], payload["boltzmann"])


def make_two_color_graph(
    n: int, mayer: Iterable[EdgeLike], boltzmann: Iterable[EdgeLike] = ()
) -> TwoColorGraph:
    """Validate and build a two-color graph.

    Raises:
        OverlapError: an edge is both Mayer and Boltzmann.
        VertexRangeError: an endpoint exceeds n.
        CoverageError: some vertex of V_n is on no edge.
    """
    if not 1 <= n <= MAX_VERTICES:
        raise VertexRangeError(f"vertex count {n} outside 1..{MAX_VERTICES}")
    mayer_edges = edge_set(mayer)
    boltzmann_edges = edge_set(boltzmann)

    overlap = set(mayer_edges) & set(boltzmann_edges)
    if overlap:
        raise OverlapError(f"edges are both Mayer and Boltzmann: {sorted(overlap)}")

    covered = set()
    for e in mayer_edges + boltzmann_edges:
        if e.v > n:
            raise VertexRangeError(f"edge {{{e.u}, {e.v}}} exceeds n={n}")
        covered.update((e.u, e.v))
    missing = set(range(1, n + 1)) - covered
    if missing:
        raise CoverageError(f"vertices {sorted(missing)} are not covered by any edge")

    return TwoColorGraph(n=n, mayer_edges=mayer_edges, boltzmann_edges=boltzmann_edges)


# --- BITMASK HELPERS ---
@lru_cache(maxsize=None)
def pair_list(n: int) -> Tuple[Tuple[int, int], ...]:
    """All pairs (u, v), 1 <= u < v <= n, in edge-index order."""
    return tuple(itertools.combinations(range(1, n + 1), 2))


@lru_cache(maxsize=None)
def pair_index(n: int) -> Dict[Tuple[int, int], int]:
    return {pair: i for i, pair in enumerate(pair_list(n))}


def edges_to_mask(edges: Iterable[EdgeLike], n: int) -> int:
    index = pair_index(n)
    mask = 0
    for e in edges:
        e = as_edge(e)
        mask |= 1 << index[(e.u, e.v)]
    return mask


def mask_to_edges(mask: int, n: int) -> Tuple[Edge, ...]:
    pairs = pair_list(n)
    return tuple(Edge(*pairs[i]) for i in range(len(pairs)) if mask >> i & 1)


def adjacency_from_mask(mask: int, n: int) -> List[int]:
    """Vertex-bitmask adjacency lists (index 0 is vertex 1)."""
    adj = [0] * n
    for i, (u, v) in enumerate(pair_list(n)):
        if mask >> i & 1:
            adj[u - 1] |= 1 << (v - 1)
            adj[v - 1] |= 1 << (u - 1)
    return adj


def _spans(adj: Sequence[int], vertices: int) -> bool:
    """True iff the subgraph induced on the vertex mask is connected."""
    if vertices == 0:
        return False
    start = vertices & -vertices
    seen = start
    frontier = start
    while frontier:
        low = frontier & -frontier
        frontier ^= low
        fresh = adj[low.bit_length() - 1] & vertices & ~seen
        seen |= fresh
        frontier |= fresh
    return seen == vertices


def _biconnected_adj(adj: Sequence[int], n: int) -> bool:
    full = (1 << n) - 1
    if n == 2:
        return adj[0] == 0b10
    if n < 2 or not _spans(adj, full):
        return False
    for v in range(n):
        if not _spans(adj, full & ~(1 << v)):
            return False
    return True


def is_biconnected_mask(mask: int, n: int) -> bool:
    return _biconnected_adj(adjacency_from_mask(mask, n), n)


def is_connected_mask(mask: int, n: int) -> bool:
    return _spans(adjacency_from_mask(mask, n), (1 << n) - 1)


# --- PREDICATES ---
def is_connected(g: TwoColorGraph, which: Connectivity = "mayer-only") -> bool:
    """Connectivity of the Mayer subgraph (base-product test) or of all edges."""
    edges = g.mayer_edges if which == "mayer-only" else g.mayer_edges + g.boltzmann_edges
    return is_connected_mask(edges_to_mask(edges, g.n), g.n)


def is_biconnected(edges: Iterable[EdgeLike], n: int) -> bool:
    """Spanning, connected and free of cut vertices; a lone edge counts at n=2."""
    return is_biconnected_mask(edges_to_mask(edges, n), n)


def is_complete(g: TwoColorGraph) -> bool:
    """Mayer and Boltzmann edges together cover every pair of V_n."""
    return g.edge_count == g.n * (g.n - 1) // 2


def n1_complexity(g: TwoColorGraph) -> int:
    """|X_f| - n + 1 + |X_f~|, the per-integral complexity of an improper base integral."""
    if not is_connected(g, "mayer-only"):
        raise NotBaseProductError(f"Mayer subgraph of {g.to_json()} is disconnected")
    return len(g.mayer_edges) - g.n + 1 + len(g.boltzmann_edges)


# --- CANONICAL FORMS ---
@lru_cache(maxsize=None)
def permutation_edge_table(n: int) -> np.ndarray:
    """Array (n!, n(n-1)/2): image edge index of each edge under each vertex permutation."""
    index = pair_index(n)
    pairs = pair_list(n)
    perms = list(itertools.permutations(range(1, n + 1)))
    table = np.empty((len(perms), len(pairs)), dtype=np.int64)
    for p, perm in enumerate(perms):
        for i, (u, v) in enumerate(pairs):
            a, b = perm[u - 1], perm[v - 1]
            table[p, i] = index[(a, b) if a < b else (b, a)]
    return table


def orbit_masks(mask: int, n: int) -> np.ndarray:
    """Images of an edge mask under every permutation of V_n (with repeats)."""
    table = permutation_edge_table(n)
    bits = [i for i in range(table.shape[1]) if mask >> i & 1]
    if not bits:
        return np.zeros(table.shape[0], dtype=np.int64)
    return np.left_shift(np.int64(1), table[:, bits]).sum(axis=1)


def canonical_mask(mask: int, n: int) -> int:
    if n > CANONICAL_MAX_N:
        raise SizeError(f"canonical form supports n <= {CANONICAL_MAX_N}, got {n}")
    return int(orbit_masks(mask, n).min())


def canonical_form(edges: Iterable[EdgeLike], n: int) -> Tuple[int, int]:
    """Isomorphism-invariant key: (n, minimum edge mask over all relabelings)."""
    return (n, canonical_mask(edges_to_mask(edges, n), n))


def canonical_two_color(g: TwoColorGraph) -> Tuple[int, int]:
    """Isomorphism key of a two-color graph; relabelings must preserve both colors."""
    if g.n > CANONICAL_MAX_N:
        raise SizeError(f"canonical form supports n <= {CANONICAL_MAX_N}, got {g.n}")
    width = len(pair_list(g.n))
    mayer = orbit_masks(edges_to_mask(g.mayer_edges, g.n), g.n)
    boltzmann = orbit_masks(edges_to_mask(g.boltzmann_edges, g.n), g.n)
    return (g.n, int(((mayer << width) | boltzmann).min()))


def labeled_graph_count(n: int) -> int:
    return 2 ** math.comb(n, 2)
