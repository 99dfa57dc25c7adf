"""Shared fixtures and independent oracles.

The oracles here are deliberately naive pure-Python implementations
(itertools enumeration, adjacency-dict BFS, dense Floyd-Warshall) so they
share no code path with the library kernels they check.
"""

from __future__ import annotations

from itertools import product

import numpy as np
import pytest

from fairseed.data import FIXTURE_NAMES, load_fixture
from fairseed.graph import Graph


@pytest.fixture(scope="session")
def fixtures() -> dict[str, Graph]:
    return {name: load_fixture(name) for name in FIXTURE_NAMES}


def adjacency_dict(g: Graph) -> dict[int, set[int]]:
    adj: dict[int, set[int]] = {v: set() for v in range(g.n)}
    for u, v in g.edges:
        adj[int(u)].add(int(v))
        adj[int(v)].add(int(u))
    return adj


def python_reachable(g: Graph, seeds, kept_edges) -> set[int]:
    """Plain BFS over an explicit list of kept edges."""
    adj: dict[int, set[int]] = {v: set() for v in range(g.n)}
    for u, v in kept_edges:
        adj[u].add(v)
        adj[v].add(u)
    seen = set(int(s) for s in seeds)
    stack = list(seen)
    while stack:
        u = stack.pop()
        for w in adj[u]:
            if w not in seen:
                seen.add(w)
                stack.append(w)
    return seen


def brute_force_access(g: Graph, seeds, alpha: float) -> np.ndarray:
    """Exact activation probabilities by explicit subset enumeration."""
    edges = [(int(u), int(v)) for u, v in g.edges]
    pi = np.zeros(g.n)
    for keep in product([False, True], repeat=len(edges)):
        weight = 1.0
        kept = []
        for flag, edge in zip(keep, edges):
            weight *= alpha if flag else 1.0 - alpha
            if flag:
                kept.append(edge)
        if weight == 0.0:
            continue
        for node in python_reachable(g, seeds, kept):
            pi[node] += weight
    return pi


def floyd_warshall(g: Graph) -> np.ndarray:
    dist = np.full((g.n, g.n), np.inf)
    np.fill_diagonal(dist, 0.0)
    for u, v in g.edges:
        dist[u, v] = dist[v, u] = 1.0
    for k in range(g.n):
        dist = np.minimum(dist, dist[:, k : k + 1] + dist[k : k + 1, :])
    return dist


def random_test_graph(rng: np.random.Generator, max_n: int = 64) -> Graph:
    """Arbitrary simple graph for fuzzing; may be disconnected."""
    n = int(rng.integers(2, max_n + 1))
    target_m = int(rng.integers(1, max(2, n * 2)))
    pairs = rng.integers(0, n, size=(target_m, 2))
    return Graph.from_edges(pairs, n, name=f"fuzz{n}")
