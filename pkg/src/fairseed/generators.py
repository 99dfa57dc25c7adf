"""Synthetic graph generators for benchmarks, demos, and tests."""

from __future__ import annotations

from .graph import Graph, largest_connected_component
from .rng import substream


def er_graph(
    n: int,
    mean_degree: float,
    seed: int = 0,
    *,
    name: str = "er",
    domain: str = "unknown",
) -> Graph:
    """Uniform random graph with a fixed edge count of round(n * k / 2)."""
    m = int(round(n * mean_degree / 2))
    max_edges = n * (n - 1) // 2
    if m > max_edges:
        raise ValueError(f"requested {m} edges but only {max_edges} possible")
    rng = substream(seed, 101)
    chosen: set[int] = set()
    edges = []
    while len(edges) < m:
        need = m - len(edges)
        u = rng.integers(0, n, size=2 * need + 16)
        v = rng.integers(0, n, size=2 * need + 16)
        for a, b in zip(u, v):
            if a == b:
                continue
            key = int(min(a, b)) * n + int(max(a, b))
            if key in chosen:
                continue
            chosen.add(key)
            edges.append((int(a), int(b)))
            if len(edges) == m:
                break
    return Graph.from_edges(edges, n, name=name, domain=domain)


def ring_lattice(
    n: int, k: int, *, name: str = "ring", domain: str = "unknown"
) -> Graph:
    """Ring where each node links to its k nearest neighbors (k even)."""
    if k % 2 or k < 2:
        raise ValueError("k must be even and >= 2")
    edges = [
        (i, (i + d) % n)
        for i in range(n)
        for d in range(1, k // 2 + 1)
    ]
    return Graph.from_edges(edges, n, name=name, domain=domain)


def watts_strogatz(
    n: int,
    k: int,
    rewire_p: float,
    seed: int = 0,
    *,
    name: str = "ws",
    domain: str = "unknown",
) -> Graph:
    """Ring lattice with each edge's far endpoint rewired w.p. ``rewire_p``.

    Low rewiring keeps the lattice's high clustering; heavy rewiring
    approaches a random graph. Duplicate rewirings collapse, so the realized
    edge count can dip slightly below the lattice's.
    """
    rng = substream(seed, 102)
    edges = []
    for i in range(n):
        for d in range(1, k // 2 + 1):
            j = (i + d) % n
            if rng.random() < rewire_p:
                j = int(rng.integers(n))
                while j == i:
                    j = int(rng.integers(n))
            edges.append((i, j))
    return Graph.from_edges(edges, n, name=name, domain=domain)


def core_periphery(
    core_n: int,
    core_mean_degree: float,
    pendants: int,
    seed: int = 0,
    *,
    pendant_depth: int = 1,
    name: str = "core_periphery",
    domain: str = "unknown",
) -> Graph:
    """Dense random core with pendant chains hanging off random core nodes.

    The chains create nodes whose activation probability stays low until
    they are seeded directly, which keeps minimum-access curves informative
    on otherwise well-connected graphs.
    """
    core = er_graph(core_n, core_mean_degree, seed)
    core = largest_connected_component(core)
    edges = [tuple(e) for e in core.edges]
    n = core.n
    rng = substream(seed, 103)
    for _ in range(pendants):
        anchor = int(rng.integers(core.n))
        for _ in range(pendant_depth):
            edges.append((anchor, n))
            anchor = n
            n += 1
    return Graph.from_edges(edges, n, name=name, domain=domain)
