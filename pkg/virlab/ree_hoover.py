#!/usr/bin/env python3
"""
Ree-Hoover representation by brute force.

The star content of an f-edge set F is the signed count of the biconnected
spanning subgraphs inside F. It is computed for all 2^(n(n-1)/2) edge masks at
once: a vectorised biconnectivity indicator followed by a subset Moebius
transform over the edge bits. Diagrams with nonzero star content are grouped
into isomorphism classes by orbit enumeration.
"""
import logging
import math
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Dict, List, Optional, Tuple

import numpy as np

from config import config

from . import reference
from .criteria import BaseLinearCombination, Domain, ReferenceCombination
from .errors import SizeError, check_order
from .estimator import Estimate, SamplingPlan, mayer_oracle_Bn_from_blocks
from .graphs import Edge, edges_to_mask, labeled_graph_count, make_two_color_graph, mask_to_edges, orbit_masks, pair_list
from .potentials import PairPotential

RH_ORACLE_MAX_N = 5
B_ORACLE_MAX_N = 4


@dataclass(frozen=True)
class RhDiagram:
    """Isomorphism class of f-edge sets; the Boltzmann edges are the complement."""

    n: int
    mayer_edges: Tuple[Edge, ...]
    star_content: int
    iso_class_size: int

    @property
    def boltzmann_edges(self) -> Tuple[Edge, ...]:
        full = labeled_graph_count(self.n) - 1
        return mask_to_edges(full & ~edges_to_mask(self.mayer_edges, self.n), self.n)

    def to_json(self) -> Dict[str, object]:
        return {
            "n": self.n,
            "f_edges": [e.as_list() for e in self.mayer_edges],
            "star_content": self.star_content,
            "class_size": self.iso_class_size,
        }


# --- STAR CONTENT ---
def _mask_array(n: int) -> np.ndarray:
    return np.arange(labeled_graph_count(n), dtype=np.int64)


def _spans(adj: List[np.ndarray], n: int, removed: Optional[int] = None) -> np.ndarray:
    """Per mask: do the edges connect every vertex except ``removed``?"""
    keep = [v for v in range(n) if v != removed]
    full = np.uint8(sum(1 << v for v in keep))
    reach = np.full(adj[0].shape, 1 << keep[0], dtype=np.uint8)
    for _ in range(len(keep) - 1):
        grown = reach.copy()
        for v in keep:
            grown |= np.where((reach >> v) & 1, adj[v], 0).astype(np.uint8)
        reach = grown & full
    return reach == full


@lru_cache(maxsize=None)
def biconnected_indicator(n: int) -> np.ndarray:
    """Boolean array over all edge masks of V_n: spanning, connected, no cut vertex."""
    if n > config.RH_MAX_N:
        raise SizeError(f"mask transforms support n <= {config.RH_MAX_N}, got {n}")
    masks = _mask_array(n)
    if n == 2:
        return masks == 1
    adj = [np.zeros(masks.shape, dtype=np.uint8) for _ in range(n)]
    for index, (u, v) in enumerate(pair_list(n)):
        bit = ((masks >> index) & 1).astype(np.uint8)
        adj[u - 1] |= bit << (v - 1)
        adj[v - 1] |= bit << (u - 1)
    result = _spans(adj, n)
    for removed in range(n):
        result &= _spans(adj, n, removed)
    logging.info("[rh] n=%d: %d biconnected labeled graphs", n, int(result.sum()))
    return result


@lru_cache(maxsize=None)
def star_content_table(n: int) -> np.ndarray:
    """Star content of every f-edge mask of V_n."""
    table = biconnected_indicator(n).astype(np.int64)
    for bit in range(len(pair_list(n))):
        view = table.reshape(-1, 2, 1 << bit)
        view[:, 1, :] -= view[:, 0, :]
    return table


def star_content(f_edges, n: int) -> int:
    """Signed count of biconnected spanning subgraphs inside ``f_edges``."""
    if n > config.RH_MAX_N:
        raise SizeError(f"star content supports n <= {config.RH_MAX_N}, got {n}")
    return int(star_content_table(n)[edges_to_mask(f_edges, n)])


# --- DIAGRAMS ---
@lru_cache(maxsize=None)
def enumerate_rh_diagrams(n: int) -> Tuple[RhDiagram, ...]:
    """Isomorphism classes of f-edge sets with nonzero star content, by canonical mask."""
    check_order(n, 2, config.RH_MAX_N, "enumerate_rh_diagrams")
    table = star_content_table(n)
    visited = np.zeros(table.shape, dtype=bool)
    diagrams = []
    for mask in np.flatnonzero(table):
        if visited[mask]:
            continue
        orbit = np.unique(orbit_masks(int(mask), n))
        visited[orbit] = True
        canonical = int(orbit[0])
        diagrams.append(
            RhDiagram(
                n=n,
                mayer_edges=mask_to_edges(canonical, n),
                star_content=int(table[mask]),
                iso_class_size=int(orbit.size),
            )
        )
    diagrams.sort(key=lambda d: edges_to_mask(d.mayer_edges, n))
    logging.info("[rh] n=%d: %d diagrams", n, len(diagrams))
    return tuple(diagrams)


def rh_reference_count(n: int) -> int:
    return reference.rh_reference_count(n)


def rh_coefficient(n: int, sc: int) -> Fraction:
    return Fraction(-(n - 1) * sc, math.factorial(n))


def rh_linear_combination(n: int, box_side: float = 1.0, labeled: bool = False) -> BaseLinearCombination:
    """Complete base linear combination of B_n over the box of side ``box_side``.

    The default view has one entry per isomorphism class with a class-size
    weighted coefficient; ``labeled=True`` has one entry per labeled diagram.
    """
    check_order(n, 2, config.RH_MAX_N, "rh_linear_combination")
    entries = []
    if labeled:
        table = star_content_table(n)
        for mask in np.flatnonzero(table):
            f_edges = mask_to_edges(int(mask), n)
            label = make_two_color_graph(n, f_edges, _complement(int(mask), n))
            entries.append((label, rh_coefficient(n, int(table[mask]))))
    else:
        for d in enumerate_rh_diagrams(n):
            label = make_two_color_graph(n, d.mayer_edges, d.boltzmann_edges)
            entries.append((label, rh_coefficient(n, d.star_content) * d.iso_class_size))
    return BaseLinearCombination(n=n, domain=Domain.box(box_side), entries=tuple(entries))


def _complement(mask: int, n: int) -> Tuple[Edge, ...]:
    full = labeled_graph_count(n) - 1
    return mask_to_edges(full & ~mask, n)


def rh_reference_combination(n: int, box_side: float = 1.0) -> ReferenceCombination:
    """RH combination of order n known by its published length only."""
    return ReferenceCombination(
        n=n,
        domain=Domain.box(box_side),
        length=reference.rh_reference_count(n),
        source=reference.RH_COUNTS_SOURCE,
    )


def rh_combination(n: int, box_side: float = 1.0):
    """Enumerated combination up to the enumeration cap, the reference one above it."""
    if n <= config.RH_MAX_N:
        return rh_linear_combination(n, box_side)
    return rh_reference_combination(n, box_side)


# --- ORACLES ---
def rh_expansion_oracle(n: int) -> Dict[str, int]:
    """Expand sum_F SC(F) prod_F f prod_(not F) (1 + f) monomial by monomial.

    The coefficient of each f-monomial must be 1 on blocks and 0 elsewhere.
    """
    check_order(n, 2, RH_ORACLE_MAX_N, "rh_expansion_oracle")
    width = len(pair_list(n))
    full = (1 << width) - 1
    table = star_content_table(n)
    coefficients = np.zeros(1 << width, dtype=np.int64)
    for mask in np.flatnonzero(table):
        mask = int(mask)
        sc = int(table[mask])
        free = full & ~mask
        subset = free
        while True:
            coefficients[mask | subset] += sc
            if subset == 0:
                break
            subset = (subset - 1) & free
    blocks = biconnected_indicator(n).astype(np.int64)
    mismatches = int(np.count_nonzero(coefficients != blocks))
    return {"n": n, "diagrams": int(np.count_nonzero(table)), "blocks": int(blocks.sum()), "mismatches": mismatches}


def mayer_oracle_Bn(
    n: int,
    potential: PairPotential,
    samples: int,
    seed: int = config.SEED,
    plan: Optional[SamplingPlan] = None,
) -> Estimate:
    """B_n straight from the block sum, one coordinate pinned."""
    check_order(n, 2, B_ORACLE_MAX_N, "mayer_oracle_Bn")
    blocks = [int(m) for m in np.flatnonzero(biconnected_indicator(n))]
    return mayer_oracle_Bn_from_blocks(n, blocks, potential, samples, seed, plan)
