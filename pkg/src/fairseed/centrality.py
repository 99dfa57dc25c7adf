"""Shared structural kernels: BFS distances, closeness/harmonic centrality,
and personalized PageRank.

All operations are pure and deterministic. Distances are hop counts stored as
float64 with ``inf`` for unreachable nodes.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable

import numpy as np

from .graph import Graph, _gather_neighbors, to_scipy_adjacency


def bfs_layers(g: Graph, source: int) -> tuple[np.ndarray, list[np.ndarray]]:
    """Distances from ``source`` plus the layer partition.

    Layer ``t`` holds the nodes at hop distance exactly ``t``; unreachable
    nodes appear in no layer and get distance ``inf``.
    """
    g._check_node(source)
    dist = np.full(g.n, np.inf)
    dist[source] = 0.0
    layers = [np.array([source], dtype=np.int64)]
    frontier = layers[0]
    hop = 0
    while True:
        nbrs = _gather_neighbors(g, frontier)
        nbrs = nbrs[np.isinf(dist[nbrs])]
        if not nbrs.size:
            break
        hop += 1
        frontier = np.unique(nbrs)
        dist[frontier] = hop
        layers.append(frontier)
    return dist, layers


def multi_source_distance(g: Graph, sources: Iterable[int]) -> np.ndarray:
    """Hop distance to the nearest source; ``inf`` where unreachable."""
    src = np.asarray(sorted(set(int(s) for s in sources)), dtype=np.int64)
    if not src.size:
        raise ValueError("sources must be non-empty")
    for s in src:
        g._check_node(int(s))
    dist = np.full(g.n, np.inf)
    dist[src] = 0.0
    frontier = src
    hop = 0
    while frontier.size:
        nbrs = _gather_neighbors(g, frontier)
        nbrs = nbrs[np.isinf(dist[nbrs])]
        if not nbrs.size:
            break
        hop += 1
        frontier = np.unique(nbrs)
        dist[frontier] = hop
    return dist


def closeness(g: Graph) -> np.ndarray:
    """Closeness per node: reachable count over summed hop distance.

    Computed within each node's connected component; nodes with no reachable
    peers (isolated, or n = 1) score 0.
    """
    scores = np.zeros(g.n)
    for v in range(g.n):
        dist = multi_source_distance(g, [v])
        reach = np.isfinite(dist) & (dist > 0)
        total = dist[reach].sum()
        if total > 0:
            scores[v] = reach.sum() / total
    return scores


def harmonic(g: Graph) -> np.ndarray:
    """Harmonic centrality per node: sum of inverse hop distances."""
    scores = np.zeros(g.n)
    for v in range(g.n):
        dist = multi_source_distance(g, [v])
        reach = np.isfinite(dist) & (dist > 0)
        scores[v] = (1.0 / dist[reach]).sum()
    return scores


@dataclass(frozen=True)
class PprScores:
    """Personalized PageRank result; scores are a probability vector."""

    scores: np.ndarray
    damping: float
    personalization: tuple[int, ...]
    iterations: int
    converged: bool


def ppr(
    g: Graph,
    personalization: Iterable[int],
    damping: float = 0.85,
    tol: float = 1e-6,
    max_iters: int = 100,
) -> PprScores:
    """Personalized PageRank by power iteration.

    Restarts are uniform over the personalization set, and the outgoing mass
    of degree-0 nodes is redirected there too, so the score vector stays a
    probability distribution at every iterate. If ``max_iters`` is exhausted
    before the L1 change drops below ``tol``, the last iterate is returned
    with ``converged=False``.
    """
    pers = tuple(sorted(set(int(s) for s in personalization)))
    if not pers:
        raise ValueError("personalization must be non-empty")
    for s in pers:
        g._check_node(s)
    if not 0.0 < damping < 1.0:
        raise ValueError("damping must lie in (0, 1)")

    restart = np.zeros(g.n)
    restart[list(pers)] = 1.0 / len(pers)
    deg = g.degrees.astype(np.float64)
    dangling = deg == 0
    inv_deg = np.where(dangling, 0.0, 1.0 / np.where(dangling, 1.0, deg))
    # walk[v] = sum over neighbors u of score[u] / deg(u)
    flow = to_scipy_adjacency(g).multiply(inv_deg[np.newaxis, :]).tocsr()

    score = restart.copy()
    iterations = 0
    converged = False
    for iterations in range(1, max_iters + 1):
        walk = flow @ score
        lost = score[dangling].sum()
        nxt = damping * (walk + lost * restart) + (1.0 - damping) * restart
        delta = np.abs(nxt - score).sum()
        score = nxt
        if delta < tol:
            converged = True
            break
    return PprScores(
        scores=score,
        damping=damping,
        personalization=pers,
        iterations=iterations,
        converged=converged,
    )
