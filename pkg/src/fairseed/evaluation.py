"""Seed-quality evaluation: minimum-access curves, the per-seed marginal
gain metric, relative categorization against Myopic, and wall-clock timing.
"""

from __future__ import annotations

import os
import time
from contextlib import contextmanager
from dataclasses import dataclass, replace
from enum import Enum
from typing import Callable, Sequence

import numpy as np

from .cascade import CascadeConfig, exact_access, prob_est
from .graph import Graph
from .rng import TAG_EVAL, TAG_INIT, TAG_SEEDER, TAG_TIMING, fold_seed, substream
from .seeders import AlgorithmId, SeedSequence, make_seeder, run_seeder

Evaluator = Callable[[Graph, tuple[int, ...], CascadeConfig], np.ndarray]


def _resolve_evaluator(evaluator) -> Evaluator:
    if evaluator == "mc":
        return lambda g, seeds, cfg: prob_est(g, seeds, cfg).pi
    if evaluator == "exact":
        return lambda g, seeds, cfg: exact_access(g, seeds, cfg.alpha).pi
    if callable(evaluator):
        return evaluator
    raise ValueError(f"unknown evaluator {evaluator!r}")


def pi_min_curve(
    g: Graph,
    seq: SeedSequence,
    cfg: CascadeConfig,
    evaluator="mc",
) -> np.ndarray:
    """Minimum access probability for every prefix of ``seq``.

    Returns a (k_max, 2) array of (k, pi_min) points, k = 1..len(seq.seeds).
    Each prefix gets an independent estimation stream derived from
    ``cfg.rng_seed`` and k, disjoint from any seeder randomness.
    """
    fn = _resolve_evaluator(evaluator)
    points = []
    for k in range(1, len(seq.seeds) + 1):
        cfg_k = replace(cfg, rng_seed=fold_seed(cfg.rng_seed, TAG_EVAL, k))
        pi = fn(g, seq.prefix(k), cfg_k)
        points.append((float(k), float(np.min(pi))))
    return np.asarray(points)


def fit_beta(points) -> float:
    """Ordinary least-squares slope of (k, pi_min) points."""
    pts = np.asarray(points, dtype=np.float64)
    if pts.ndim != 2 or pts.shape[1] != 2 or pts.shape[0] < 2:
        raise ValueError("need at least two (k, value) points")
    x = pts[:, 0]
    y = pts[:, 1]
    sxx = ((x - x.mean()) ** 2).sum()
    if sxx == 0.0:
        raise ValueError("slope undefined: all k values are equal")
    return float(((x - x.mean()) * (y - y.mean())).sum() / sxx)


@dataclass(frozen=True)
class BetaResult:
    """Mean best-fit slope of pi_min versus budget across repeated runs."""

    algorithm: AlgorithmId
    alpha: float
    slopes: tuple[float, ...]
    k_max: int
    rounds: int
    negative_slopes: int  # runs whose fitted slope dipped below zero

    @property
    def runs(self) -> int:
        return len(self.slopes)

    @property
    def mean(self) -> float:
        return float(np.mean(self.slopes))

    @property
    def se(self) -> float:
        if len(self.slopes) < 2 or min(self.slopes) == max(self.slopes):
            return 0.0  # np.std of a constant sequence carries mean-rounding dust
        return float(np.std(self.slopes, ddof=1) / np.sqrt(len(self.slopes)))


def evaluate_beta(
    g: Graph,
    algorithm: AlgorithmId | str,
    *,
    alpha: float,
    runs: int = 20,
    k_max: int = 10,
    eval_rounds: int = 1000,
    eval_seed: int = 0,
    seeder_rounds: int = 1000,
    seeder_seed: int = 1,
    damping: float = 0.85,
    inits: Sequence[int] | None = None,
    evaluator="mc",
    exact_seeder: bool = False,
    parallel: bool = False,
) -> BetaResult:
    """Run ``algorithm`` ``runs`` times and average the fitted slopes.

    Each run draws a fresh uniform initial seed unless ``inits`` supplies
    one; a harness comparing algorithms passes the same ``inits`` to each so
    every contender starts from identical initial seeds per round. The
    evaluation streams are derived from ``eval_seed`` only, so measurement
    noise is independent of algorithm randomness.
    """
    algorithm = AlgorithmId(algorithm)
    if runs < 1:
        raise ValueError("runs must be >= 1")
    if inits is not None and len(inits) < runs:
        raise ValueError(f"need {runs} inits, got {len(inits)}")
    slopes = []
    negative = 0
    for t in range(runs):
        if inits is not None:
            init = int(inits[t])
        else:
            init = int(substream(seeder_seed, TAG_INIT, t).integers(g.n))
        seq = run_seeder(
            algorithm, g, k_max, init,
            alpha=alpha,
            cascade_cfg=CascadeConfig(
                alpha, seeder_rounds, fold_seed(seeder_seed, TAG_SEEDER, t), parallel
            ),
            rng=substream(seeder_seed, TAG_SEEDER, t),
            damping=damping,
            exact=exact_seeder,
        )
        curve = pi_min_curve(
            g, seq,
            CascadeConfig(alpha, eval_rounds, fold_seed(eval_seed, TAG_EVAL, t), parallel),
            evaluator=evaluator,
        )
        slope = fit_beta(curve)
        if slope < 0:
            negative += 1
        slopes.append(slope)
    return BetaResult(
        algorithm=algorithm,
        alpha=alpha,
        slopes=tuple(slopes),
        k_max=k_max,
        rounds=eval_rounds,
        negative_slopes=negative,
    )


class RelativeCategory(str, Enum):
    """How an algorithm's slope compares with Myopic's on one network."""

    BETTER = "better"
    EQUIVALENT = "equivalent"
    WITHIN80 = "within80"
    WORSE = "worse"


def categorize(beta_alg: BetaResult, beta_myopic: BetaResult) -> RelativeCategory:
    """Categorize against Myopic; rules apply in precedence order.

    Better: exceeds Myopic by more than one Myopic standard error.
    Equivalent: within one Myopic standard error. Within80: at least 80% of
    Myopic's slope. Otherwise Worse. A non-positive Myopic slope makes the
    thresholds degenerate (low-spreadability precision limit); callers should
    flag such rows.
    """
    a, m, se = beta_alg.mean, beta_myopic.mean, beta_myopic.se
    if a > m + se:
        return RelativeCategory.BETTER
    if abs(a - m) <= se:
        return RelativeCategory.EQUIVALENT
    if a >= 0.8 * m:
        return RelativeCategory.WITHIN80
    return RelativeCategory.WORSE


@dataclass(frozen=True)
class TimingRecord:
    """Wall-clock cost of full seed-selection runs."""

    algorithm: AlgorithmId
    network: str
    k: int
    times_ms: tuple[float, ...]
    single_core: bool

    @property
    def repetitions(self) -> int:
        return len(self.times_ms)

    @property
    def mean_ms(self) -> float:
        return float(np.mean(self.times_ms))

    @property
    def std_ms(self) -> float:
        return float(np.std(self.times_ms, ddof=1)) if len(self.times_ms) > 1 else 0.0


@contextmanager
def _affinity(single_core: bool):
    if not single_core or not hasattr(os, "sched_getaffinity"):
        yield
        return
    previous = os.sched_getaffinity(0)
    os.sched_setaffinity(0, {min(previous)})
    try:
        yield
    finally:
        os.sched_setaffinity(0, previous)


def benchmark_runtime(
    g: Graph,
    algorithm: AlgorithmId | str,
    k: int = 10,
    reps: int = 10,
    *,
    alpha: float,
    seeder_rounds: int = 1000,
    rng_seed: int = 0,
    damping: float = 0.85,
    single_core: bool = False,
) -> TimingRecord:
    """Time full k-seed selection runs, one fresh initial seed per rep."""
    algorithm = AlgorithmId(algorithm)
    times = []
    with _affinity(single_core):
        for rep in range(reps):
            init = int(substream(rng_seed, TAG_TIMING, rep).integers(g.n))
            cfg = CascadeConfig(alpha, seeder_rounds, fold_seed(rng_seed, TAG_TIMING, rep))
            rng = substream(rng_seed, TAG_TIMING, rep, 1)
            start = time.perf_counter()
            seeder = make_seeder(
                algorithm, g, init,
                alpha=alpha, cascade_cfg=cfg, rng=rng, damping=damping,
            )
            for _ in range(k):
                seeder.next_seed()
            times.append((time.perf_counter() - start) * 1000.0)
    return TimingRecord(
        algorithm=algorithm,
        network=g.name,
        k=k,
        times_ms=tuple(times),
        single_core=single_core,
    )
