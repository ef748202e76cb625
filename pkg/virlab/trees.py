#!/usr/bin/env python3
"""
Tree frames: classes of rooted labeled trees, their admissible edges and
multiplicities, the sets TR(n) and TR(n,0), and the tree sums built on them.

A class is fixed by its layer sizes, the parent-rank map of every intermediate
layer and the composition saying how many last-layer children each vertex of
layer H-1 has. Its representative gets labels layer by layer, by rank within a
layer, and last-layer children receive contiguous labels grouped by parent.
"""
import itertools
import logging
import math
from collections import Counter, defaultdict
from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property, lru_cache
from typing import Dict, Iterator, List, Literal, Optional, Sequence, Tuple

from config import config

from .criteria import BaseLinearCombination, Domain
from .errors import VirlabError, check_order
from .graphs import (
    Edge,
    TwoColorGraph,
    as_edge,
    canonical_two_color,
    edge_set,
    edges_to_mask,
    is_connected_mask,
    labeled_graph_count,
    make_two_color_graph,
)

Subset = Literal["full", "a-subset"]
SUBSETS = ("full", "a-subset")
ORACLE_MAX_N = 5


@dataclass(frozen=True)
class TreeClass:
    """Class of rooted labeled trees on V_n, root 1.

    Attributes:
        n: Vertex count.
        layers: Sizes n(1..H) of the layers below the root.
        parents: For layers 2..H-1, the parent rank (1-based, in the previous layer) of each vertex by rank.
        composition: Last-layer children per vertex of layer H-1 (per the root when H=1).
    """

    n: int
    layers: Tuple[int, ...]
    parents: Tuple[Tuple[int, ...], ...]
    composition: Tuple[int, ...]

    def __post_init__(self):
        H = len(self.layers)
        if H < 1 or any(size < 1 for size in self.layers) or sum(self.layers) != self.n - 1:
            raise VirlabError(f"layer sizes {self.layers} do not split {self.n - 1} vertices")
        if len(self.parents) != max(H - 2, 0):
            raise VirlabError(f"expected {max(H - 2, 0)} parent maps, got {len(self.parents)}")
        for k, ranks in enumerate(self.parents, start=1):
            if len(ranks) != self.layers[k] or any(not 1 <= r <= self.layers[k - 1] for r in ranks):
                raise VirlabError(f"parent map {ranks} does not fit layers {self.layers}")
        width = self.layers[-2] if H >= 2 else 1
        if len(self.composition) != width or sum(self.composition) != self.layers[-1] or min(self.composition) < 0:
            raise VirlabError(f"composition {self.composition} does not fit layers {self.layers}")

    @property
    def height(self) -> int:
        return len(self.layers)

    def sort_key(self) -> Tuple:
        return (self.height, self.layers, self.parents, self.composition)

    @classmethod
    def star(cls, n: int) -> "TreeClass":
        return cls(n=n, layers=(n - 1,), parents=(), composition=(n - 1,))

    @classmethod
    def chain(cls, n: int) -> "TreeClass":
        H = n - 1
        return cls(n=n, layers=(1,) * H, parents=((1,),) * max(H - 2, 0), composition=(1,))

    def children_per_rank(self, layer: int) -> Tuple[int, ...]:
        """Child counts of the vertices of ``layer`` (1..H-1), by rank."""
        if layer == self.height - 1:
            return self.composition
        counts = Counter(self.parents[layer - 1])
        return tuple(counts.get(r, 0) for r in range(1, self.layers[layer - 1] + 1))

    def to_json(self) -> Dict[str, object]:
        return {
            "height": self.height,
            "layers": list(self.layers),
            "parents": [list(p) for p in self.parents],
            "composition": list(self.composition),
            "multiplicity": multiplicity(self),
            "admissible_count": len(admissible_edges(self)),
        }


# --- LABELED FRAMES ---
@dataclass(frozen=True)
class Frame:
    """Layered view of a labeled tree rooted at 1."""

    n: int
    layer_labels: Tuple[Tuple[int, ...], ...]
    parent: Dict[int, int]

    @cached_property
    def layer_of(self) -> Dict[int, int]:
        return {v: i for i, labels in enumerate(self.layer_labels) for v in labels}

    def tree_edges(self) -> Tuple[Edge, ...]:
        return edge_set((p, v) for v, p in self.parent.items())

    def admissible_edges(self) -> Tuple[Edge, ...]:
        """Same-layer pairs, plus consecutive-layer pairs {u, v} whose u outranks v's parent."""
        out: List[Tuple[int, int]] = []
        for labels in self.layer_labels[1:]:
            out.extend(itertools.combinations(labels, 2))
        for upper, lower in zip(self.layer_labels[1:], self.layer_labels[2:]):
            out.extend((u, v) for u in upper for v in lower if u > self.parent[v])
        return edge_set(out)


def bfs_frame(edges: Sequence[Tuple[int, int]], n: int) -> Frame:
    """Breadth-first frame of a connected graph from vertex 1.

    The parent of each vertex is its lowest-labeled neighbor in the previous
    layer, so for a tree this recovers the tree itself.
    """
    adjacency: Dict[int, List[int]] = defaultdict(list)
    for e in map(as_edge, edges):
        u, v = e.u, e.v
        adjacency[u].append(v)
        adjacency[v].append(u)
    depth = {1: 0}
    parent: Dict[int, int] = {}
    frontier = [1]
    while frontier:
        nxt = []
        for u in frontier:
            for v in sorted(adjacency[u]):
                if v not in depth:
                    depth[v] = depth[u] + 1
                    parent[v] = u
                    nxt.append(v)
        frontier = sorted(nxt)
    if len(depth) != n:
        raise VirlabError(f"edge set {sorted(edges)} does not connect V_{n}")
    H = max(depth.values())
    layers = tuple(tuple(sorted(v for v, d in depth.items() if d == i)) for i in range(H + 1))
    return Frame(n=n, layer_labels=layers, parent=parent)


@lru_cache(maxsize=None)
def canonical_frame(t: TreeClass) -> Frame:
    layer_labels = [(1,)]
    next_label = 2
    for size in t.layers:
        layer_labels.append(tuple(range(next_label, next_label + size)))
        next_label += size

    parent: Dict[int, int] = {v: 1 for v in layer_labels[1]}
    H = t.height
    if H >= 2:
        for k, ranks in enumerate(t.parents, start=2):
            for v, r in zip(layer_labels[k], ranks):
                parent[v] = layer_labels[k - 1][r - 1]
        last = iter(layer_labels[H])
        for u, count in zip(layer_labels[H - 1], t.composition):
            for _ in range(count):
                parent[next(last)] = u
    return Frame(n=t.n, layer_labels=tuple(layer_labels), parent=parent)


def canonical_labeling(t: TreeClass) -> Tuple[Edge, ...]:
    """The n-1 edges of the class representative."""
    return canonical_frame(t).tree_edges()


@lru_cache(maxsize=None)
def admissible_edges(t: TreeClass) -> Tuple[Edge, ...]:
    return canonical_frame(t).admissible_edges()


@lru_cache(maxsize=None)
def multiplicity(t: TreeClass) -> int:
    """Number of labeled rooted trees in the class."""
    count = math.factorial(t.n - 1)
    for size in t.layers[:-1]:
        count //= math.factorial(size)
    for c in t.composition:
        count //= math.factorial(c)
    return count


@lru_cache(maxsize=None)
def to_two_color_graph(t: TreeClass) -> TwoColorGraph:
    """Completed graph-label: tree edges Mayer, admissible edges Boltzmann."""
    return make_two_color_graph(t.n, canonical_labeling(t), admissible_edges(t))


def satisfies_a_conditions(t: TreeClass) -> bool:
    """Layer conditions of TR(n,0).

    Every layer 1..H-1 holds at least two vertices, and in none of them is
    the highest-ranked vertex the only one with children.
    """
    H = t.height
    if any(size < 2 for size in t.layers[:-1]):
        return False
    for layer in range(1, H):
        counts = t.children_per_rank(layer)
        with_children = {r for r, c in enumerate(counts, start=1) if c > 0}
        if with_children == {t.layers[layer - 1]}:
            return False
    return True


# --- ENUMERATION ---
def layer_vectors(total: int, parts: int, minimum_head: int = 1) -> Iterator[Tuple[int, ...]]:
    """Compositions of ``total`` into ``parts`` positive parts, lexicographic.

    All parts but the last are at least ``minimum_head``.
    """
    if parts == 1:
        if total >= 1:
            yield (total,)
        return
    for first in range(minimum_head, total - (parts - 2) * minimum_head):
        for rest in layer_vectors(total - first, parts - 1, minimum_head):
            yield (first,) + rest


def weak_compositions(total: int, parts: int) -> Iterator[Tuple[int, ...]]:
    """Nonnegative compositions of ``total`` into ``parts`` parts, lexicographic."""
    if parts == 1:
        yield (total,)
        return
    for first in range(total + 1):
        for rest in weak_compositions(total - first, parts - 1):
            yield (first,) + rest


def _iter_classes(n: int) -> Iterator[TreeClass]:
    yield TreeClass.star(n)
    for H in range(2, n):
        for layers in layer_vectors(n - 1, H):
            maps = [
                list(itertools.product(range(1, layers[k - 1] + 1), repeat=layers[k]))
                for k in range(1, H - 1)
            ]
            for parents in itertools.product(*maps):
                for composition in weak_compositions(layers[-1], layers[-2]):
                    yield TreeClass(n=n, layers=layers, parents=tuple(parents), composition=composition)


@lru_cache(maxsize=None)
def enumerate_tr(n: int) -> Tuple[TreeClass, ...]:
    """Every class of TR(n) once, ordered by height, layer sizes, maps, composition."""
    check_order(n, 2, config.TREE_MAX_N, "enumerate_tr")
    classes = tuple(_iter_classes(n))
    logging.info("[trees] TR(%d): %d classes", n, len(classes))
    return classes


@lru_cache(maxsize=None)
def enumerate_tr0(n: int) -> Tuple[TreeClass, ...]:
    check_order(n, 2, config.TREE_MAX_N, "enumerate_tr0")
    classes = tuple(t for t in enumerate_tr(n) if satisfies_a_conditions(t))
    logging.info("[trees] TR(%d,0): %d classes", n, len(classes))
    return classes


def enumerate_classes(n: int, subset: Subset) -> Tuple[TreeClass, ...]:
    if subset not in SUBSETS:
        raise VirlabError(f"unknown tree subset {subset!r}; expected one of {SUBSETS}")
    return enumerate_tr(n) if subset == "full" else enumerate_tr0(n)


# --- CLOSED FORMS ---
def _maps_count(layers: Tuple[int, ...], excluded: int = 0) -> int:
    count = 1
    for k in range(1, len(layers) - 1):
        count *= layers[k - 1] ** layers[k] - excluded
    return count


def _compositions_count(layers: Tuple[int, ...], excluded: int = 0) -> int:
    return math.comb(layers[-2] + layers[-1] - 1, layers[-1]) - excluded


def count_tr(n: int) -> int:
    """|TR(n)| in closed form."""
    if n < 2:
        raise VirlabError(f"count_tr needs n >= 2, got {n}")
    total = 1
    for H in range(2, n):
        for layers in layer_vectors(n - 1, H):
            total += _compositions_count(layers) * _maps_count(layers)
    return total


def count_tr0(n: int) -> int:
    """|TR(n,0)| in closed form.

    Each admissible layer vector loses the one composition and the one map per
    intermediate layer that hang every child on the highest-ranked vertex.
    """
    if n < 2:
        raise VirlabError(f"count_tr0 needs n >= 2, got {n}")
    total = 1
    for H in range(2, math.ceil((n - 1) / 2) + 1):
        for layers in layer_vectors(n - 1, H, minimum_head=2):
            total += _compositions_count(layers, 1) * _maps_count(layers, 1)
    return total


# --- TREE SUMS ---
@dataclass(frozen=True)
class TreeSum:
    """Base linear combination over tree-frame classes, prefactor 1/n!."""

    n: int
    subset: Subset
    entries: Tuple[Tuple[TreeClass, int], ...]
    prefactor: Fraction
    domain: Domain

    @property
    def total_multiplicity(self) -> int:
        return sum(m for _, m in self.entries)

    @cached_property
    def combination(self) -> BaseLinearCombination:
        return BaseLinearCombination(
            n=self.n,
            domain=self.domain,
            entries=tuple((to_two_color_graph(t), self.prefactor * m) for t, m in self.entries),
        )

    def as_combination(self) -> BaseLinearCombination:
        return self.combination


@lru_cache(maxsize=None)
def tree_sum(n: int, subset: Subset = "full", domain: Optional[Domain] = None) -> TreeSum:
    """Tree sum of b_n (``full``) or a_n (``a-subset``)."""
    classes = enumerate_classes(n, subset)
    return TreeSum(
        n=n,
        subset=subset,
        entries=tuple((t, multiplicity(t)) for t in classes),
        prefactor=Fraction(1, math.factorial(n)),
        domain=domain or Domain.space(),
    )


def tree_sum_set(n_max: int, subset: Subset = "full", domain: Optional[Domain] = None, n_min: int = 2) -> List[TreeSum]:
    """Tree sums of orders n_min..n_max, the members of a cumulative base set."""
    return [tree_sum(k, subset, domain) for k in range(n_min, n_max + 1)]


def cost_accounting(n: int, subset: Subset = "full") -> List[Dict[str, object]]:
    """Pair evaluations per sample for each class: n-1 Mayer draws, |X_ad| Boltzmann factors."""
    return [
        {
            "class": t.to_json(),
            "mayer_evals": n - 1,
            "boltzmann_evals": len(admissible_edges(t)),
            "pair_evals": n - 1 + len(admissible_edges(t)),
        }
        for t in enumerate_classes(n, subset)
    ]


# --- ORACLES ---
def prufer_to_edges(sequence: Sequence[int], n: int) -> List[Tuple[int, int]]:
    """Decode a Prufer sequence over V_n into the n-1 edges of a labeled tree."""
    degree = [1] * (n + 1)
    for v in sequence:
        degree[v] += 1
    edges = []
    for v in sequence:
        leaf = next(u for u in range(1, n + 1) if degree[u] == 1)
        edges.append((leaf, v))
        degree[leaf] -= 1
        degree[v] -= 1
    u, w = (x for x in range(1, n + 1) if degree[x] == 1)
    edges.append((u, w))
    return edges


def labeled_trees(n: int) -> Iterator[List[Tuple[int, int]]]:
    """All n^(n-2) labeled trees on V_n."""
    if n == 2:
        yield [(1, 2)]
        return
    for sequence in itertools.product(range(1, n + 1), repeat=n - 2):
        yield prufer_to_edges(sequence, n)


def class_of_frame(frame: Frame) -> TreeClass:
    """The class signature of a labeled frame: layer sizes, parent ranks, children composition."""
    rank = {v: r for labels in frame.layer_labels for r, v in enumerate(labels, start=1)}
    layers = tuple(len(labels) for labels in frame.layer_labels[1:])
    H = len(layers)
    parents = tuple(
        tuple(rank[frame.parent[v]] for v in frame.layer_labels[k]) for k in range(2, H)
    )
    last_parents = Counter(frame.parent[v] for v in frame.layer_labels[H])
    composition = tuple(last_parents.get(u, 0) for u in frame.layer_labels[H - 1])
    return TreeClass(n=frame.n, layers=layers, parents=parents, composition=composition)


def partition_oracle(n: int) -> Dict[str, int]:
    """Expand every labeled frame over its admissible subsets and tally the graphs produced.

    A faithful frame classification covers each connected labeled graph on V_n
    exactly once.
    """
    check_order(n, 2, ORACLE_MAX_N, "partition_oracle")
    hits: Counter = Counter()
    for edges in labeled_trees(n):
        frame = bfs_frame(edges, n)
        base = edges_to_mask(frame.tree_edges(), n)
        extra = [edges_to_mask([e], n) for e in frame.admissible_edges()]
        for r in range(len(extra) + 1):
            for chosen in itertools.combinations(extra, r):
                hits[base | sum(chosen)] += 1

    connected = {m for m in range(labeled_graph_count(n)) if is_connected_mask(m, n)}
    report = {
        "n": n,
        "connected": len(connected),
        "covered": sum(1 for m in connected if hits[m] == 1),
        "misses": sum(1 for m in connected if hits[m] == 0),
        "double_covers": sum(1 for m in connected if hits[m] > 1),
        "strays": sum(1 for m in hits if m not in connected),
    }
    logging.info("[trees] partition oracle n=%d: %s", n, report)
    return report


def class_consistency_oracle(n: int) -> Dict[str, int]:
    """Group all labeled trees by class signature and check sizes and completed labels."""
    check_order(n, 2, ORACLE_MAX_N, "class_consistency_oracle")
    groups: Dict[TreeClass, List[TwoColorGraph]] = defaultdict(list)
    for edges in labeled_trees(n):
        frame = bfs_frame(edges, n)
        completed = make_two_color_graph(n, frame.tree_edges(), frame.admissible_edges())
        groups[class_of_frame(frame)].append(completed)

    expected = set(enumerate_tr(n))
    size_mismatches = sum(1 for t, members in groups.items() if len(members) != multiplicity(t))
    label_mismatches = sum(
        1
        for t, members in groups.items()
        if any(canonical_two_color(g) != canonical_two_color(to_two_color_graph(t)) for g in members)
    )
    return {
        "n": n,
        "classes": len(groups),
        "unknown_classes": len(set(groups) - expected),
        "missing_classes": len(expected - set(groups)),
        "size_mismatches": size_mismatches,
        "label_mismatches": label_mismatches,
    }
