"""Independent cascade simulation and access-probability estimation.

A cascade with transmission probability ``alpha`` is realized through its
percolation form: flip one coin per undirected edge, keep the edge on
success, and activate exactly the nodes reachable from the seed set through
kept edges. This is equivalent to frontier spreading where each edge is
flipped at most once, but it lets a replicate's outcome be a pure function
of its coin mask, which is what makes the Monte Carlo estimator bitwise
reproducible under any parallel schedule.

Replicate ``r`` draws its coins from a stream keyed by
``(rng_seed, TAG_CASCADE, r // BLOCK)`` at offset ``r % BLOCK``, so masks
never depend on worker count or on the total number of rounds requested.
"""

from __future__ import annotations

from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from typing import Iterable, Sequence

import numpy as np

from .graph import Graph
from .rng import TAG_CASCADE, TAG_SPREAD, fold_seed, substream

# Replicates per RNG block. Fixed: changing it changes every Monte Carlo
# stream, so it is part of the reproducibility contract.
BLOCK = 4096

# Graphs at or below this many edges use the replicate-batched kernel.
_BATCH_EDGE_LIMIT = 64

_EXACT_EDGE_LIMIT = 20


@dataclass(frozen=True)
class CascadeConfig:
    """Monte Carlo estimation settings."""

    alpha: float
    rounds: int = 1000
    rng_seed: int = 0
    parallel: bool = False

    def __post_init__(self):
        if not 0.0 <= self.alpha <= 1.0:
            raise ValueError(f"alpha must lie in [0, 1], got {self.alpha}")
        if self.rounds < 1:
            raise ValueError(f"rounds must be >= 1, got {self.rounds}")


@dataclass(frozen=True)
class AccessEstimate:
    """Per-node activation probabilities for one seed set."""

    pi: np.ndarray
    seeds: tuple[int, ...]
    alpha: float
    rounds: int | None       # None for the exact oracle
    rng_seed: int | None
    exact: bool = False

    def pi_min(self) -> float:
        return float(self.pi.min())


def _check_seeds(g: Graph, seeds: Iterable[int]) -> np.ndarray:
    arr = np.asarray(sorted(set(int(s) for s in seeds)), dtype=np.int64)
    if arr.size == 0:
        raise ValueError("seed set must be non-empty")
    if arr.min() < 0 or arr.max() >= g.n:
        raise ValueError("seed id out of range")
    return arr


# -- reachability kernels ----------------------------------------------------

def _reach_frontier(
    g: Graph, seeds: np.ndarray, mask: np.ndarray, scratch: np.ndarray | None = None
) -> np.ndarray:
    """Nodes reachable from ``seeds`` through kept edges (one replicate)."""
    active = np.zeros(g.n, dtype=bool)
    active[seeds] = True
    frontier = seeds
    indptr, indices, edge_slot = g.indptr, g.indices, g.edge_slot
    if scratch is None:
        scratch = np.zeros(g.n, dtype=bool)
    while frontier.size:
        starts = indptr[frontier]
        counts = indptr[frontier + 1] - starts
        total = int(counts.sum())
        if total == 0:
            break
        shifts = np.cumsum(counts) - counts
        slots = np.arange(total) - np.repeat(shifts, counts) + np.repeat(starts, counts)
        targets = indices[slots]
        hit = mask[edge_slot[slots]] & ~active[targets]
        if not hit.any():
            break
        # O(n) scatter dedup beats sorting the hit list on dense layers
        scratch[targets[hit]] = True
        frontier = np.flatnonzero(scratch)
        scratch[frontier] = False
        active[frontier] = True
    return active


def _reach_batch(
    g: Graph,
    masks: np.ndarray,
    seeds: np.ndarray | None = None,
    row_seeds: np.ndarray | None = None,
) -> np.ndarray:
    """Reachability for a block of replicates at once (small graphs).

    ``masks`` is (rows, m) bool. Either one shared seed set or one seed per
    row. Sweeps all directed edges until no replicate changes; each sweep
    advances every replicate by at least one hop.
    """
    rows = masks.shape[0]
    active = np.zeros((rows, g.n), dtype=bool)
    if seeds is not None:
        active[:, seeds] = True
    else:
        active[np.arange(rows), row_seeds] = True
    src = np.concatenate([g.edges[:, 0], g.edges[:, 1]])
    dst = np.concatenate([g.edges[:, 1], g.edges[:, 0]])
    eid = np.concatenate([np.arange(g.m)] * 2) if g.m else np.empty(0, np.int64)
    while True:
        changed = False
        for j in range(src.shape[0]):
            gain = active[:, src[j]] & masks[:, eid[j]] & ~active[:, dst[j]]
            if gain.any():
                active[:, dst[j]] |= gain
                changed = True
        if not changed:
            return active


def _mask_chunks(gen: np.random.Generator, rows: int, cols: int, alpha: float):
    """Yield (chunk_rows, cols) coin masks, bounding transient float memory.

    Generator draws are sequential, so chunked draws reproduce exactly the
    masks a single (rows, cols) draw would have produced row by row.
    """
    chunk = max(1, 4_000_000 // max(cols, 1))
    done = 0
    while done < rows:
        take = min(chunk, rows - done)
        yield gen.random((take, cols)) < alpha
        done += take


def simulate_cascade(
    g: Graph,
    seeds: Iterable[int],
    alpha: float,
    rng: np.random.Generator,
) -> np.ndarray:
    """One cascade; returns the sorted array of activated node ids.

    Consumes exactly ``g.m`` uniforms from ``rng`` (one coin per edge).
    """
    seed_arr = _check_seeds(g, seeds)
    if not 0.0 <= alpha <= 1.0:
        raise ValueError(f"alpha must lie in [0, 1], got {alpha}")
    mask = rng.random(g.m) < alpha
    return np.flatnonzero(_reach_frontier(g, seed_arr, mask))


def prob_est(g: Graph, seeds: Iterable[int], cfg: CascadeConfig) -> AccessEstimate:
    """Monte Carlo estimate of every node's activation probability.

    ``pi[i]`` is the fraction of ``cfg.rounds`` cascades that activated
    ``i``. The result is bitwise identical for a given ``(g, seeds, cfg)``
    whether or not ``cfg.parallel`` distributes blocks across threads,
    because per-block activation counts are integers.
    """
    seed_arr = _check_seeds(g, seeds)
    blocks = [
        (b, min(BLOCK, cfg.rounds - b * BLOCK))
        for b in range((cfg.rounds + BLOCK - 1) // BLOCK)
    ]

    def run_block(item: tuple[int, int]) -> np.ndarray:
        b, rows = item
        gen = substream(cfg.rng_seed, TAG_CASCADE, b)
        counts = np.zeros(g.n, dtype=np.int64)
        scratch = np.zeros(g.n, dtype=bool)
        for masks in _mask_chunks(gen, rows, g.m, cfg.alpha):
            if g.m <= _BATCH_EDGE_LIMIT:
                counts += _reach_batch(g, masks, seeds=seed_arr).sum(axis=0, dtype=np.int64)
            else:
                for r in range(masks.shape[0]):
                    counts += _reach_frontier(g, seed_arr, masks[r], scratch)
        return counts

    if cfg.parallel and len(blocks) > 1:
        with ThreadPoolExecutor() as pool:
            partials = list(pool.map(run_block, blocks))
        counts = np.sum(partials, axis=0)
    else:
        counts = np.zeros(g.n, dtype=np.int64)
        for item in blocks:
            counts += run_block(item)

    return AccessEstimate(
        pi=counts / cfg.rounds,
        seeds=tuple(int(s) for s in seed_arr),
        alpha=cfg.alpha,
        rounds=cfg.rounds,
        rng_seed=cfg.rng_seed,
    )


def exact_access(g: Graph, seeds: Iterable[int], alpha: float) -> AccessEstimate:
    """Exact activation probabilities by summing over all edge subsets.

    Enumerates the 2^m percolation outcomes, so it refuses graphs with more
    than 20 edges. Intended as a test oracle and for tiny instances.
    """
    seed_arr = _check_seeds(g, seeds)
    if not 0.0 <= alpha <= 1.0:
        raise ValueError(f"alpha must lie in [0, 1], got {alpha}")
    m = g.m
    if m > _EXACT_EDGE_LIMIT:
        raise ValueError(f"exact oracle limited to {_EXACT_EDGE_LIMIT} edges, graph has {m}")
    pi = np.zeros(g.n)
    chunk = 1 << 16
    subsets = np.arange(1 << m, dtype=np.int64)
    for lo in range(0, subsets.shape[0], chunk):
        part = subsets[lo : lo + chunk]
        masks = (part[:, None] >> np.arange(m, dtype=np.int64)) & 1 if m else np.zeros(
            (part.shape[0], 0), dtype=np.int64
        )
        masks = masks.astype(bool)
        kept = masks.sum(axis=1)
        weights = alpha ** kept * (1.0 - alpha) ** (m - kept)
        hits = _reach_batch(g, masks, seeds=seed_arr)
        pi += weights @ hits
    pi[seed_arr] = 1.0  # by definition; clears summation dust
    return AccessEstimate(
        pi=pi,
        seeds=tuple(int(s) for s in seed_arr),
        alpha=alpha,
        rounds=None,
        rng_seed=None,
        exact=True,
    )


# -- spreadability and alpha calibration --------------------------------------

DEFAULT_ALPHA_GRID = tuple(i / 100 for i in range(1, 100))

SPREADABILITY_TARGETS = {"low": 0.2, "medium": 0.5, "high": 0.8}


@dataclass(frozen=True)
class SpreadabilityCurve:
    """Sampled (alpha, mean activated fraction) points, sorted by alpha."""

    alphas: tuple[float, ...]
    fractions: tuple[float, ...]
    rounds: int

    def to_csv(self, path) -> None:
        with open(path, "w", encoding="utf-8", newline="") as fh:
            fh.write("alpha,fraction\r\n")
            for a, f in zip(self.alphas, self.fractions):
                fh.write(f"{a!r},{f!r}\r\n")

    @classmethod
    def from_csv(cls, path, rounds: int) -> "SpreadabilityCurve":
        alphas, fractions = [], []
        with open(path, encoding="utf-8") as fh:
            header = fh.readline().strip()
            if header != "alpha,fraction":
                raise ValueError(f"{path}: unexpected spreadability header {header!r}")
            for line in fh:
                line = line.strip()
                if not line:
                    continue
                a, f = line.split(",")
                alphas.append(float(a))
                fractions.append(float(f))
        return cls(alphas=tuple(alphas), fractions=tuple(fractions), rounds=rounds)


def spreadability(g: Graph, alpha: float, rounds: int = 1000, rng_seed: int = 0) -> float:
    """Mean fraction of nodes activated from a uniformly random single seed.

    The seed is redrawn each trial. Trial ``r`` consumes ``m + 1`` uniforms
    (seed choice first, then edge coins) from the block stream keyed by
    ``(rng_seed, TAG_SPREAD, r // BLOCK)``.
    """
    if rounds < 1:
        raise ValueError("rounds must be >= 1")
    if not 0.0 <= alpha <= 1.0:
        raise ValueError(f"alpha must lie in [0, 1], got {alpha}")
    total = 0
    scratch = np.zeros(g.n, dtype=bool)
    for b in range((rounds + BLOCK - 1) // BLOCK):
        rows = min(BLOCK, rounds - b * BLOCK)
        gen = substream(rng_seed, TAG_SPREAD, b)
        chunk = max(1, 4_000_000 // (g.m + 1))
        done = 0
        while done < rows:
            take = min(chunk, rows - done)
            draws = gen.random((take, g.m + 1))
            row_seeds = np.minimum((draws[:, 0] * g.n).astype(np.int64), g.n - 1)
            masks = draws[:, 1:] < alpha
            if g.m <= _BATCH_EDGE_LIMIT:
                total += int(_reach_batch(g, masks, row_seeds=row_seeds).sum())
            else:
                for r in range(take):
                    total += int(
                        _reach_frontier(g, row_seeds[r : r + 1], masks[r], scratch).sum()
                    )
            done += take
    return total / (rounds * g.n)


def measure_spreadability_curve(
    g: Graph,
    rounds: int = 1000,
    rng_seed: int = 0,
    grid: Sequence[float] = DEFAULT_ALPHA_GRID,
) -> SpreadabilityCurve:
    """Spreadability at every grid alpha, each on its own derived stream."""
    fractions = []
    for i, alpha in enumerate(grid):
        fractions.append(spreadability(g, alpha, rounds, fold_seed(rng_seed, TAG_SPREAD, i)))
    return SpreadabilityCurve(
        alphas=tuple(float(a) for a in grid),
        fractions=tuple(fractions),
        rounds=rounds,
    )


@dataclass(frozen=True)
class CalibrationResult:
    """Outcome of fitting alpha to a target spreadability."""

    alpha: float
    achieved: float
    target: float
    curve: SpreadabilityCurve
    target_unreachable: bool = False


def calibrate_alpha(
    g: Graph,
    target: float,
    rounds: int = 1000,
    rng_seed: int = 0,
    grid: Sequence[float] = DEFAULT_ALPHA_GRID,
    curve: SpreadabilityCurve | None = None,
    method: str = "grid",
) -> CalibrationResult:
    """Pick the grid alpha whose spreadability is closest to ``target``.

    The default sweeps the full grid, since the measured curve is only
    statistically monotone; ``method="bisect"`` assumes monotonicity and
    probes O(log) grid points instead. Ties break toward smaller alpha. If
    even the largest grid alpha falls short of the target, that alpha is
    returned with ``target_unreachable`` set.
    """
    if not 1.0 / g.n < target <= 1.0:
        raise ValueError(f"target must lie in (1/n, 1], got {target} with n={g.n}")
    if method not in ("grid", "bisect"):
        raise ValueError(f"unknown calibration method {method!r}")

    if curve is None:
        if method == "grid":
            curve = measure_spreadability_curve(g, rounds, rng_seed, grid)
        else:
            curve = _bisect_curve(g, target, rounds, rng_seed, grid)

    fractions = np.asarray(curve.fractions)
    alphas = np.asarray(curve.alphas)
    top = int(np.argmax(alphas))
    if fractions[top] < target:
        return CalibrationResult(
            alpha=float(alphas[top]),
            achieved=float(fractions[top]),
            target=target,
            curve=curve,
            target_unreachable=True,
        )
    best = int(np.argmin(np.abs(fractions - target)))
    return CalibrationResult(
        alpha=float(alphas[best]),
        achieved=float(fractions[best]),
        target=target,
        curve=curve,
        target_unreachable=False,
    )


def _bisect_curve(
    g: Graph, target: float, rounds: int, rng_seed: int, grid: Sequence[float]
) -> SpreadabilityCurve:
    """Probe the grid by bisection; evaluated points reuse the per-index
    streams of the full sweep so grid and bisect agree where they overlap."""
    measured: dict[int, float] = {}

    def probe(i: int) -> float:
        if i not in measured:
            measured[i] = spreadability(
                g, grid[i], rounds, fold_seed(rng_seed, TAG_SPREAD, i)
            )
        return measured[i]

    lo, hi = 0, len(grid) - 1
    probe(lo)
    probe(hi)
    while hi - lo > 1:
        mid = (lo + hi) // 2
        if probe(mid) < target:
            lo = mid
        else:
            hi = mid
    idx = sorted(measured)
    return SpreadabilityCurve(
        alphas=tuple(float(grid[i]) for i in idx),
        fractions=tuple(measured[i] for i in idx),
        rounds=rounds,
    )
