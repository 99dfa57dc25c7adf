"""Simple undirected graphs with dense integer ids.

Graphs are stored in CSR form (``indptr``/``indices``) with neighbor lists
sorted by id, plus a canonical edge list where every undirected edge appears
once as ``(u, v)`` with ``u < v``. Each adjacency slot carries the id of its
undirected edge so cascade simulation can flip one coin per edge regardless
of traversal direction.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from pathlib import Path
from typing import Iterable, Sequence

import numpy as np

DOMAINS = (
    "biological",
    "social",
    "economic",
    "technological",
    "transportation",
    "informational",
    "unknown",
)


class EdgeListParseError(ValueError):
    """Raised for malformed edge-list input; carries the offending line."""

    def __init__(self, message: str, line_number: int | None = None):
        self.line_number = line_number
        super().__init__(message)


@dataclass(frozen=True, eq=False)
class Graph:
    """Immutable simple undirected graph; safe to share across threads."""

    n: int
    edges: np.ndarray        # (m, 2) int64, u < v, lexicographically sorted
    indptr: np.ndarray       # (n + 1,) int64
    indices: np.ndarray      # (2m,) int64, sorted within each node's slice
    edge_slot: np.ndarray    # (2m,) int64, undirected edge id per slot
    labels: tuple[str, ...]  # original token per node id
    name: str = ""
    domain: str = "unknown"

    @property
    def m(self) -> int:
        return int(self.edges.shape[0])

    @property
    def degrees(self) -> np.ndarray:
        return np.diff(self.indptr)

    def degree(self, v: int) -> int:
        self._check_node(v)
        return int(self.indptr[v + 1] - self.indptr[v])

    def neighbors(self, v: int) -> np.ndarray:
        self._check_node(v)
        return self.indices[self.indptr[v] : self.indptr[v + 1]]

    def label_of(self, v: int) -> str:
        self._check_node(v)
        return self.labels[v]

    def _check_node(self, v: int) -> None:
        if not 0 <= v < self.n:
            raise ValueError(f"node id {v} out of range [0, {self.n})")

    @classmethod
    def from_edges(
        cls,
        pairs: Iterable[Sequence[int]],
        n: int | None = None,
        *,
        labels: Sequence[str] | None = None,
        name: str = "",
        domain: str = "unknown",
    ) -> "Graph":
        """Build from integer id pairs; drops self-loops and duplicates."""
        arr = np.asarray(list(pairs), dtype=np.int64).reshape(-1, 2)
        if n is None:
            n = int(arr.max()) + 1 if arr.size else 0
        if n <= 0:
            raise ValueError("graph must have at least one node")
        if arr.size and (arr.min() < 0 or arr.max() >= n):
            raise ValueError("edge endpoint out of range")
        if labels is None:
            labels = tuple(str(i) for i in range(n))
        else:
            labels = tuple(labels)
            if len(labels) != n:
                raise ValueError("labels length must equal node count")
        return _assemble(arr, n, labels, name, domain)


def _assemble(pairs: np.ndarray, n: int, labels: tuple[str, ...], name: str, domain: str) -> Graph:
    if pairs.size:
        keep = pairs[:, 0] != pairs[:, 1]
        pairs = pairs[keep]
    if pairs.size:
        lo = np.minimum(pairs[:, 0], pairs[:, 1])
        hi = np.maximum(pairs[:, 0], pairs[:, 1])
        edges = np.unique(np.column_stack([lo, hi]), axis=0)
    else:
        edges = np.empty((0, 2), dtype=np.int64)
    m = edges.shape[0]
    src = np.concatenate([edges[:, 0], edges[:, 1]])
    dst = np.concatenate([edges[:, 1], edges[:, 0]])
    eid = np.concatenate([np.arange(m, dtype=np.int64)] * 2) if m else np.empty(0, np.int64)
    order = np.lexsort((dst, src))
    indices = dst[order]
    edge_slot = eid[order]
    indptr = np.zeros(n + 1, dtype=np.int64)
    np.add.at(indptr, src + 1, 1)
    np.cumsum(indptr, out=indptr)
    for arr in (edges, indptr, indices, edge_slot):
        arr.flags.writeable = False  # share freely across threads
    return Graph(
        n=n,
        edges=edges,
        indptr=indptr,
        indices=indices,
        edge_slot=edge_slot,
        labels=labels,
        name=name,
        domain=domain,
    )


def load_edge_list(
    path: str | Path,
    extract_lcc: bool = True,
    *,
    name: str | None = None,
    domain: str = "unknown",
) -> Graph:
    """Parse a whitespace-delimited edge list into a graph.

    One edge per line, two tokens, ``#`` comment lines and blank lines
    ignored. Tokens are mapped to dense ids in order of first appearance, so
    loading the same file twice yields identical graphs. Duplicate edges and
    self-loops are dropped silently.
    """
    path = Path(path)
    ids: dict[str, int] = {}
    pairs: list[tuple[int, int]] = []
    with open(path, encoding="utf-8") as fh:
        for lineno, raw in enumerate(fh, start=1):
            line = raw.strip()
            if not line or line.startswith("#"):
                continue
            tokens = line.split()
            if len(tokens) != 2:
                raise EdgeListParseError(
                    f"{path}:{lineno}: expected two tokens, got {len(tokens)}",
                    line_number=lineno,
                )
            u = ids.setdefault(tokens[0], len(ids))
            v = ids.setdefault(tokens[1], len(ids))
            pairs.append((u, v))
    if not ids:
        raise EdgeListParseError(f"{path}: no edges found (empty graph)")
    labels = tuple(sorted(ids, key=ids.get))
    g = _assemble(
        np.asarray(pairs, dtype=np.int64),
        len(ids),
        labels,
        name if name is not None else path.stem,
        domain,
    )
    if extract_lcc:
        g = largest_connected_component(g)
    return g


def connected_components(g: Graph) -> np.ndarray:
    """Component label per node; labels are assigned by smallest member id."""
    comp = np.full(g.n, -1, dtype=np.int64)
    current = 0
    for start in range(g.n):
        if comp[start] >= 0:
            continue
        comp[start] = current
        frontier = np.array([start], dtype=np.int64)
        while frontier.size:
            nbrs = _gather_neighbors(g, frontier)
            nbrs = nbrs[comp[nbrs] < 0]
            if not nbrs.size:
                break
            frontier = np.unique(nbrs)
            comp[frontier] = current
        current += 1
    return comp


def largest_connected_component(g: Graph) -> Graph:
    """Restrict to the largest component, re-densifying ids.

    Ties go to the component containing the smallest node id. Surviving
    nodes keep their relative order, so the mapping back to original labels
    stays deterministic.
    """
    comp = connected_components(g)
    sizes = np.bincount(comp)
    target = int(np.argmax(sizes))  # argmax takes the first, i.e. lowest-id, tie
    keep = np.flatnonzero(comp == target)
    if keep.size == g.n:
        return g
    remap = np.full(g.n, -1, dtype=np.int64)
    remap[keep] = np.arange(keep.size)
    mask = np.isin(g.edges[:, 0], keep)
    edges = remap[g.edges[mask]]
    labels = tuple(g.labels[i] for i in keep)
    return _assemble(edges, keep.size, labels, g.name, g.domain)


def _gather_neighbors(g: Graph, nodes: np.ndarray) -> np.ndarray:
    starts = g.indptr[nodes]
    counts = g.indptr[nodes + 1] - starts
    total = int(counts.sum())
    if total == 0:
        return np.empty(0, dtype=np.int64)
    shifts = np.cumsum(counts) - counts
    slots = np.arange(total) - np.repeat(shifts, counts) + np.repeat(starts, counts)
    return g.indices[slots]


# -- structural feature profile ---------------------------------------------

@dataclass(frozen=True)
class NetworkFeatures:
    """Nine structural features used by the algorithm-selection classifier."""

    domain: str
    n: int
    mean_degree: float
    max_degree: int
    degree_variance: float
    clustering: float
    mean_path_length: float
    diameter: int
    assortativity: float
    degenerate: bool = False  # set when C or r had a zero denominator


def compute_features(g: Graph, domain: str | None = None) -> NetworkFeatures:
    """Structural profile of ``g``; pure, deterministic function.

    Path statistics run over reachable pairs only. A graph with no edges gets
    C = 0 and r = 0 and is flagged degenerate, as is any graph whose degree
    sequence has zero variance across edge endpoints.
    """
    if g.n < 1:
        raise ValueError("features need at least one node")
    deg = g.degrees.astype(np.float64)
    degenerate = False

    if g.m == 0:
        clustering = 0.0
        assortativity = 0.0
        degenerate = True
    else:
        clustering, c_degenerate = _transitivity(g)
        assortativity, r_degenerate = _degree_assortativity(g)
        degenerate = c_degenerate or r_degenerate

    total_dist = 0
    pair_count = 0
    diameter = 0
    for source in range(g.n):
        dist = _bfs_hops(g, source)
        reach = dist > 0
        if reach.any():
            total_dist += int(dist[reach].sum())
            pair_count += int(reach.sum())
            diameter = max(diameter, int(dist[reach].max()))
    mean_path = total_dist / pair_count if pair_count else 0.0

    return NetworkFeatures(
        domain=domain if domain is not None else g.domain,
        n=g.n,
        mean_degree=2.0 * g.m / g.n,
        max_degree=int(deg.max()) if g.n else 0,
        degree_variance=float(deg.var()),
        clustering=clustering,
        mean_path_length=mean_path,
        diameter=diameter,
        assortativity=assortativity,
        degenerate=degenerate,
    )


def _bfs_hops(g: Graph, source: int) -> np.ndarray:
    """Hop distances from ``source``; -1 marks unreachable nodes."""
    dist = np.full(g.n, -1, dtype=np.int64)
    dist[source] = 0
    frontier = np.array([source], dtype=np.int64)
    hop = 0
    while frontier.size:
        nbrs = _gather_neighbors(g, frontier)
        nbrs = nbrs[dist[nbrs] < 0]
        if not nbrs.size:
            break
        hop += 1
        frontier = np.unique(nbrs)
        dist[frontier] = hop
    return dist


def _transitivity(g: Graph) -> tuple[float, bool]:
    from scipy import sparse

    deg = g.degrees
    triples = int((deg * (deg - 1) // 2).sum())
    if triples == 0:
        return 0.0, True
    adj = to_scipy_adjacency(g)
    # (A @ A) ∘ A sums ordered 2-paths closed by an edge: 6 per triangle.
    closed = int(((adj @ adj).multiply(adj)).sum())
    return (closed / 2) / triples, False


def _degree_assortativity(g: Graph) -> tuple[float, bool]:
    deg = g.degrees.astype(np.float64)
    du = deg[g.edges[:, 0]]
    dv = deg[g.edges[:, 1]]
    x = np.concatenate([du, dv])
    y = np.concatenate([dv, du])
    sx = x.std()
    sy = y.std()
    if sx == 0.0 or sy == 0.0:
        return 0.0, True
    r = float(((x - x.mean()) * (y - y.mean())).mean() / (sx * sy))
    return r, False


def to_scipy_adjacency(g: Graph):
    """CSR 0/1 adjacency matrix (both directions)."""
    from scipy import sparse

    data = np.ones(g.indices.shape[0], dtype=np.float64)
    return sparse.csr_matrix((data, g.indices, g.indptr), shape=(g.n, g.n))


# -- corpus manifest ---------------------------------------------------------

@dataclass(frozen=True)
class ManifestEntry:
    name: str
    path: Path
    domain: str


def load_manifest(path: str | Path) -> list[ManifestEntry]:
    """Read a corpus manifest: a JSON array of {name, path, domain}.

    Relative paths are resolved against the manifest's directory.
    """
    path = Path(path)
    with open(path, encoding="utf-8") as fh:
        raw = json.load(fh)
    if not isinstance(raw, list):
        raise ValueError(f"{path}: manifest must be a JSON array")
    entries = []
    for i, item in enumerate(raw):
        try:
            name = item["name"]
            rel = item["path"]
            domain = item.get("domain", "unknown")
        except (TypeError, KeyError) as exc:
            raise ValueError(f"{path}: entry {i} missing {exc}") from exc
        if domain not in DOMAINS:
            raise ValueError(f"{path}: entry {name!r} has unknown domain {domain!r}")
        entry_path = Path(rel)
        if not entry_path.is_absolute():
            entry_path = path.parent / entry_path
        entries.append(ManifestEntry(name=name, path=entry_path, domain=domain))
    return entries
