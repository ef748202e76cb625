#!/usr/bin/env python3
"""
Monte Carlo estimation of tree-sum integrals and of b_n, a_n and B_n.

Vertex 1 is pinned at the origin. Every tree edge draws its displacement from
|f| / integral |f|, so a sample weighs the product of the Mayer signs times
(integral |f|)^(n-1) times the Boltzmann factors of the admissible pairs.

Random streams are counter-based (Philox) and keyed by (sum, order, class, shard):
estimates are bit-identical for a fixed seed whatever the worker count.
"""
import logging
import math
import time
from concurrent.futures import ThreadPoolExecutor
from dataclasses import asdict, dataclass
from pathlib import Path
from typing import Callable, Dict, List, Literal, Optional, Sequence, Tuple

import gvar as gv
import numpy as np

from config import config
from utils.utils import json_exporter

from . import series
from .errors import VirlabError, check_order
from .graphs import Edge, is_connected_mask, labeled_graph_count, mask_to_edges
from .potentials import PairPotential
from .trees import Frame, TreeClass, admissible_edges, bfs_frame, canonical_frame, enumerate_classes, enumerate_tr, multiplicity

Route = Literal["b-route", "a-route"]
ROUTES = ("b-route", "a-route")
ORACLE_MAX_N = 4

DEFAULT_SHARD_SIZE = 65536
DEFAULT_MIN_CLASS_SAMPLES = 1000

# leading key of every Philox stream
STREAM_B = 0
STREAM_A = 1
STREAM_ORACLE = 2
SUBSET_STREAMS = {"full": STREAM_B, "a-subset": STREAM_A}


@dataclass(frozen=True)
class Estimate:
    """Monte Carlo result; ``ops`` counts the polynomial stages, ``pair_evals`` the sampling stage."""

    quantity: str
    n: int
    mean: float
    stderr: float
    samples: int
    pair_evals: int
    seed: int
    route: Optional[str] = None
    ops: int = 0

    def __post_init__(self):
        if self.stderr < 0:
            raise VirlabError(f"negative standard error {self.stderr}")

    def to_gvar(self) -> gv.GVar:
        return gv.gvar(self.mean, self.stderr)

    def to_dict(self) -> Dict[str, object]:
        return asdict(self)


@dataclass(frozen=True)
class SamplingPlan:
    shard_size: int = DEFAULT_SHARD_SIZE
    min_class_samples: int = DEFAULT_MIN_CLASS_SAMPLES
    workers: int = 1

    @classmethod
    def from_run_config(cls, run: "config.RunConfig") -> "SamplingPlan":
        return cls(shard_size=run.shard_size, min_class_samples=run.min_class_samples, workers=run.workers)


@dataclass(frozen=True)
class _Moments:
    count: int
    mean: float
    m2: float

    @classmethod
    def of(cls, values: np.ndarray) -> "_Moments":
        if values.size and np.all(values == values[0]):
            return cls(int(values.size), float(values[0]), 0.0)
        mean = float(values.mean())
        return cls(int(values.size), mean, float(((values - mean) ** 2).sum()))

    def merge(self, other: "_Moments") -> "_Moments":
        if self.count == 0:
            return other
        count = self.count + other.count
        delta = other.mean - self.mean
        mean = self.mean + delta * other.count / count
        m2 = self.m2 + other.m2 + delta * delta * self.count * other.count / count
        return _Moments(count, mean, m2)

    @property
    def stderr(self) -> float:
        if self.count < 2:
            return 0.0
        return math.sqrt(self.m2 / (self.count - 1) / self.count)


def rng_stream(seed: int, *key: int) -> np.random.Generator:
    """Independent generator for a (seed, key...) pair."""
    return np.random.Generator(np.random.Philox(np.random.SeedSequence(seed, spawn_key=tuple(key))))


@dataclass
class PairEvals:
    """Pair evaluations made while sampling: |f| draws along tree edges, factor evaluations on the rest."""

    draws: int = 0
    factors: int = 0

    @property
    def total(self) -> int:
        return self.draws + self.factors

    def merge(self, other: "PairEvals") -> "PairEvals":
        return PairEvals(self.draws + other.draws, self.factors + other.factors)


def _placement_order(frame: Frame) -> List[Tuple[int, int]]:
    """(parent, child) pairs so every parent is placed before its children."""
    return [(frame.parent[v], v) for labels in frame.layer_labels[1:] for v in labels]


def sample_tree_configuration(
    tree: TreeClass | Frame,
    potential: PairPotential,
    rng: np.random.Generator,
    size: int = 1,
    evals: Optional[PairEvals] = None,
) -> Tuple[np.ndarray, np.ndarray]:
    """Positions of vertices 1..n along the tree, vertex 1 at the origin.

    Returns:
        (positions, sign): positions has shape (size, n, dim); sign is the product
        of the signs of f over the tree edges.
    """
    frame = canonical_frame(tree) if isinstance(tree, TreeClass) else tree
    positions = np.zeros((size, frame.n, potential.dim))
    sign = np.ones(size)
    for parent, child in _placement_order(frame):
        delta, s = potential.sample_displacements(rng, size)
        positions[:, child - 1] = positions[:, parent - 1] + delta
        sign *= s
        if evals is not None:
            evals.draws += size
    return positions, sign


def _pair_r2(positions: np.ndarray, u: int, v: int) -> np.ndarray:
    d = positions[:, u - 1] - positions[:, v - 1]
    return np.einsum("ij,ij->i", d, d)


def _factor_weights(
    frame: Frame,
    factor_sets: Sequence[Sequence[Edge]],
    boltzmann: bool,
    potential: PairPotential,
    rng: np.random.Generator,
    size: int,
    evals: PairEvals,
) -> np.ndarray:
    """Per-sample weight, summed over the factor sets sharing this frame."""
    positions, sign = sample_tree_configuration(frame, potential, rng, size, evals)
    base = sign * potential.abs_integral() ** (frame.n - 1)
    pairs = sorted({e for factors in factor_sets for e in factors})
    values = {}
    for e in pairs:
        r2 = _pair_r2(positions, e.u, e.v)
        values[e] = potential.boltzmann_f_sq(r2) if boltzmann else potential.mayer_f_sq(r2)
        evals.factors += size
    total = np.zeros(size)
    for factors in factor_sets:
        w = base.copy()
        for e in factors:
            w *= values[e]
        total += w
    return total


def _shard_sizes(samples: int, shard_size: int) -> List[int]:
    full, rest = divmod(samples, shard_size)
    return [shard_size] * full + ([rest] if rest else [])


Draw = Callable[[np.random.Generator, int, PairEvals], np.ndarray]


def _run_shards(draw: Draw, samples: int, seed: int, key: Tuple[int, ...], plan: SamplingPlan) -> Tuple[_Moments, PairEvals]:
    sizes = _shard_sizes(samples, plan.shard_size)

    def shard(index: int) -> Tuple[_Moments, PairEvals]:
        evals = PairEvals()
        return _Moments.of(draw(rng_stream(seed, *key, index), sizes[index], evals)), evals

    if plan.workers > 1 and len(sizes) > 1:
        with ThreadPoolExecutor(max_workers=plan.workers) as pool:
            parts = list(pool.map(shard, range(len(sizes))))
    else:
        parts = [shard(i) for i in range(len(sizes))]

    moments, evals = _Moments(0, 0.0, 0.0), PairEvals()
    for part, counted in parts:
        moments = moments.merge(part)
        evals = evals.merge(counted)
    return moments, evals


def _class_key(t: TreeClass, stream: int) -> Tuple[int, int, int]:
    return (stream, t.n, enumerate_tr(t.n).index(t))


def estimate_tree_integral(
    t: TreeClass,
    potential: PairPotential,
    samples: int,
    seed: int = config.SEED,
    plan: Optional[SamplingPlan] = None,
    stream: int = STREAM_B,
) -> Estimate:
    """Importance-sampled I(t): tree edges drawn from |f|, admissible pairs as f~ factors.

    ``stream`` separates the generators of the b- and a-sums so the two never
    share samples for the same class.
    """
    if samples < 1:
        raise VirlabError(f"samples must be positive, got {samples}")
    plan = plan or SamplingPlan()
    frame = canonical_frame(t)
    factors = [admissible_edges(t)]
    moments, evals = _run_shards(
        lambda rng, size, evals: _factor_weights(frame, factors, True, potential, rng, size, evals),
        samples,
        seed,
        _class_key(t, stream),
        plan,
    )
    return Estimate(
        quantity="I(t)",
        n=t.n,
        mean=moments.mean,
        stderr=moments.stderr,
        samples=samples,
        pair_evals=evals.total,
        seed=seed,
    )


def allocate_samples(weights: Sequence[int], samples: int, floor: int) -> List[int]:
    """Split ``samples`` proportionally to ``weights``, at least ``floor`` each."""
    total = sum(weights)
    return [max(floor, round(samples * w / total)) for w in weights]


def _estimate_tree_sum(quantity: str, n: int, subset: str, potential: PairPotential, samples: int, seed: int, plan: SamplingPlan) -> Estimate:
    classes = enumerate_classes(n, subset)
    weights = [multiplicity(t) for t in classes]
    allocation = allocate_samples(weights, samples, plan.min_class_samples)
    scale = 1.0 / math.factorial(n)

    mean, variance, pair_evals = 0.0, 0.0, 0
    for t, weight, share in zip(classes, weights, allocation):
        est = estimate_tree_integral(t, potential, share, seed, plan, SUBSET_STREAMS[subset])
        mean += scale * weight * est.mean
        variance += (scale * weight * est.stderr) ** 2
        pair_evals += est.pair_evals
    logging.info("[mc] %s_%d: %d classes, %d samples, mean=%.6g", quantity, n, len(classes), sum(allocation), mean)
    return Estimate(
        quantity=quantity,
        n=n,
        mean=mean,
        stderr=math.sqrt(variance),
        samples=sum(allocation),
        pair_evals=pair_evals,
        seed=seed,
    )


def estimate_b(n: int, potential: PairPotential, samples: int, seed: int = config.SEED, plan: Optional[SamplingPlan] = None) -> Estimate:
    """b_n = (1/n!) sum over TR(n) of multiplicity times I(t)."""
    check_order(n, 2, config.MC_MAX_N_B, "estimate_b")
    return _estimate_tree_sum("b", n, "full", potential, samples, seed, plan or SamplingPlan())


def estimate_a(n: int, potential: PairPotential, samples: int, seed: int = config.SEED, plan: Optional[SamplingPlan] = None) -> Estimate:
    """a_n = (1/n!) sum over TR(n,0) of multiplicity times I(t)."""
    check_order(n, 2, config.MC_MAX_N_B, "estimate_a")
    return _estimate_tree_sum("a", n, "a-subset", potential, samples, seed, plan or SamplingPlan())


def estimate_B(
    n: int,
    route: Route,
    potential: PairPotential,
    samples: int,
    seed: int = config.SEED,
    plan: Optional[SamplingPlan] = None,
) -> Estimate:
    """B_n through the b-route (Mayer formula) or the a-route.

    Stage 1 estimates b_2..b_n (or a_2..a_n); the polynomial stages propagate
    their errors to first order. ``pair_evals`` covers stage 1 only and
    ``ops`` the arithmetic of the remaining stages.
    """
    check_order(n, 2, config.MC_MAX_N_VIRIAL, "estimate_B")
    if route not in ROUTES:
        raise VirlabError(f"unknown route {route!r}; expected one of {ROUTES}")
    plan = plan or SamplingPlan()
    estimate = estimate_b if route == "b-route" else estimate_a
    stage1 = [estimate(k, potential, samples, seed, plan) for k in range(2, n + 1)]
    coefficients = [e.to_gvar() for e in stage1]

    counter = series.OpCounter()
    if route == "b-route":
        value = series.b_to_B(coefficients, n, counter)
    else:
        value = series.a_to_B(coefficients, n, counter)
    value = value if isinstance(value, gv.GVar) else gv.gvar(float(value), 0.0)
    logging.info("[mc] B_%d via %s: %s (%d pair evals, %d ops)", n, route, value, sum(e.pair_evals for e in stage1), counter.total)
    return Estimate(
        quantity="B",
        n=n,
        mean=float(value.mean),
        stderr=float(value.sdev),
        samples=sum(e.samples for e in stage1),
        pair_evals=sum(e.pair_evals for e in stage1),
        seed=seed,
        route=route,
        ops=counter.total,
    )


# --- MAYER-SUM ORACLES ---
def _graph_sum_estimate(
    quantity: str,
    n: int,
    masks: Sequence[int],
    prefactor: float,
    potential: PairPotential,
    samples: int,
    seed: int,
    plan: SamplingPlan,
) -> Estimate:
    """prefactor * sum over labeled graphs of the integral of their f-products.

    Graphs sharing a breadth-first spanning frame are sampled together; the
    frame edges are drawn from |f| and the remaining edges enter as f factors.
    """
    groups: Dict[Tuple[Edge, ...], List[Tuple[Edge, ...]]] = {}
    frames: Dict[Tuple[Edge, ...], Frame] = {}
    for mask in masks:
        edges = mask_to_edges(mask, n)
        frame = bfs_frame(edges, n)
        tree = frame.tree_edges()
        frames[tree] = frame
        on_tree = set(tree)
        groups.setdefault(tree, []).append(tuple(e for e in edges if e not in on_tree))

    share = max(plan.min_class_samples, samples // max(len(groups), 1))
    mean, variance, pair_evals = 0.0, 0.0, 0
    for index, tree in enumerate(sorted(groups)):
        frame, factor_sets = frames[tree], groups[tree]
        moments, evals = _run_shards(
            lambda rng, size, evals: _factor_weights(frame, factor_sets, False, potential, rng, size, evals),
            share,
            seed,
            (STREAM_ORACLE, n, index),
            plan,
        )
        mean += prefactor * moments.mean
        variance += (prefactor * moments.stderr) ** 2
        pair_evals += evals.total
    return Estimate(
        quantity=quantity,
        n=n,
        mean=mean,
        stderr=math.sqrt(variance),
        samples=share * len(groups),
        pair_evals=pair_evals,
        seed=seed,
    )


def connected_masks(n: int) -> List[int]:
    return [m for m in range(labeled_graph_count(n)) if is_connected_mask(m, n)]


def mayer_oracle_bn(n: int, potential: PairPotential, samples: int, seed: int = config.SEED, plan: Optional[SamplingPlan] = None) -> Estimate:
    """b_n from the connected-graph sum (1/n!) sum over connected G of the integral of prod f."""
    check_order(n, 2, ORACLE_MAX_N, "mayer_oracle_bn")
    return _graph_sum_estimate(
        "b-oracle", n, connected_masks(n), 1.0 / math.factorial(n), potential, samples, seed, plan or SamplingPlan()
    )


def mayer_oracle_Bn_from_blocks(n: int, block_masks: Sequence[int], potential: PairPotential, samples: int, seed: int, plan: Optional[SamplingPlan] = None) -> Estimate:
    """B_n = -(n-1)/n! times the block sum; used by the Ree-Hoover module."""
    prefactor = -(n - 1) / math.factorial(n)
    return _graph_sum_estimate("B-oracle", n, block_masks, prefactor, potential, samples, seed, plan or SamplingPlan())


# --- MANIFEST ---
def manifest_path(out_dir: Path, quantity: str, n: int, route: Optional[str]) -> Path:
    return Path(out_dir) / f"manifest_{quantity}_n{n}_{route or 'direct'}.json"


def write_manifest(
    estimate: Estimate,
    potential: PairPotential,
    run: Dict[str, object],
    wall_time: float,
    out_dir: Path,
) -> Path:
    """Persist the estimate with the effective configuration."""
    path = manifest_path(out_dir, estimate.quantity, estimate.n, estimate.route)
    payload = {
        "quantity": estimate.quantity,
        "n": estimate.n,
        "route": estimate.route,
        "potential": potential.describe(),
        "samples": estimate.samples,
        "seed": estimate.seed,
        "mean": estimate.mean,
        "stderr": estimate.stderr,
        "pair_evals": estimate.pair_evals,
        "ops": estimate.ops,
        "config": run,
        "wall_time": wall_time,
    }
    json_exporter(payload, path)
    logging.info("[mc] manifest written to %s", path)
    return path


class Stopwatch:
    def __enter__(self) -> "Stopwatch":
        self.start = time.perf_counter()
        self.elapsed = 0.0
        return self

    def __exit__(self, *exc) -> None:
        self.elapsed = time.perf_counter() - self.start
