"""The 14 seed-selection algorithms behind one incremental interface.

Every algorithm starts from a provided initial seed (not counted against the
budget) and then extends the sequence one node at a time, so a single
length-k run yields every prefix needed for evaluation. All otherwise
unresolved ties break toward the lowest node id, which makes each selection
step a total function of its inputs.
"""

from __future__ import annotations

from dataclasses import dataclass, replace
from enum import Enum
import numpy as np

from .cascade import CascadeConfig, exact_access, prob_est
from .centrality import bfs_layers, closeness, harmonic, multi_source_distance, ppr
from .graph import Graph
from .rng import TAG_SEEDER, fold_seed, substream


class AlgorithmId(str, Enum):
    """Stable algorithm names, in canonical tie-break order."""

    RANDOM = "Random"
    GONZALEZ = "Gonzalez"
    MYOPIC = "Myopic"
    NAIVE_MYOPIC = "NaiveMyopic"
    MYOPIC_BFS = "MyopicBFS"
    NAIVE_MYOPIC_BFS = "NaiveMyopicBFS"
    MYOPIC_PPR = "MyopicPPR"
    NAIVE_MYOPIC_PPR = "NaiveMyopicPPR"
    LEAST_CENTRAL = "LeastCentral"
    LEAST_CENTRAL_N = "LeastCentral_n"
    MIN_DEGREE_HC = "MinDegree_hc"
    MIN_DEGREE_HCN = "MinDegree_hcn"
    MIN_DEGREE_ND = "MinDegree_nd"
    MIN_DEGREE_NDN = "MinDegree_ndn"


ALL_ALGORITHMS = tuple(AlgorithmId)

# Algorithms that consume randomness beyond the initial seed.
STOCHASTIC_ALGORITHMS = frozenset(
    {AlgorithmId.RANDOM, AlgorithmId.MYOPIC, AlgorithmId.NAIVE_MYOPIC}
)


class SeedingExhaustedError(RuntimeError):
    """No admissible candidate remains before the budget is filled."""

    def __init__(self, algorithm: "AlgorithmId", partial: list[int]):
        self.algorithm = algorithm
        self.partial = list(partial)
        super().__init__(
            f"{algorithm.value}: candidates exhausted after {len(partial)} seeds: {partial}"
        )

    def __reduce__(self):  # args-based reconstruction keeps pickling intact
        return (type(self), (self.algorithm, self.partial))


@dataclass(frozen=True)
class SeedSequence:
    """Ordered output of one seeder run."""

    algorithm: AlgorithmId
    network: str
    initial_seed: int
    seeds: tuple[int, ...]
    alpha: float | None = None
    rng_seed: int | None = None

    def prefix(self, k: int) -> tuple[int, ...]:
        """Seed set after k budgeted picks: the initial seed plus seeds[:k]."""
        return (self.initial_seed,) + self.seeds[:k]

    def to_json_dict(self, g: Graph | None = None) -> dict:
        """Serializable form; node ids become original labels when ``g`` given."""
        if g is not None:
            init = g.label_of(self.initial_seed)
            seeds = [g.label_of(s) for s in self.seeds]
        else:
            init = self.initial_seed
            seeds = list(self.seeds)
        return {
            "algorithm": self.algorithm.value,
            "network": self.network,
            "alpha": self.alpha,
            "rng_seed": self.rng_seed,
            "initial_seed": init,
            "seeds": seeds,
        }


def _lowest_id_argmin(scores: np.ndarray, candidates: np.ndarray) -> int:
    masked = np.where(candidates, scores, np.inf)
    return int(np.argmin(masked))


def _lowest_id_argmax(scores: np.ndarray, candidates: np.ndarray) -> int:
    masked = np.where(candidates, scores, -np.inf)
    return int(np.argmax(masked))


def _ascending_order(scores: np.ndarray, candidates: np.ndarray) -> list[int]:
    """Candidate ids sorted by score ascending, ties by id."""
    ids = np.flatnonzero(candidates)
    return [int(v) for v in ids[np.argsort(scores[ids], kind="stable")]]


class _Seeder:
    """Base incremental seeder; subclasses implement ``_select``."""

    algorithm: AlgorithmId

    def __init__(self, g: Graph, init: int):
        g._check_node(int(init))
        self.g = g
        self.init = int(init)
        self.chosen: list[int] = []
        self._in_set = np.zeros(g.n, dtype=bool)
        self._in_set[self.init] = True

    @property
    def seed_set(self) -> tuple[int, ...]:
        return (self.init,) + tuple(self.chosen)

    def next_seed(self) -> int:
        if len(self.chosen) >= self.g.n - 1:
            raise SeedingExhaustedError(self.algorithm, self.chosen)
        v = self._select()
        self.chosen.append(v)
        self._in_set[v] = True
        self._after_append(v)
        return v

    def _candidates(self) -> np.ndarray:
        return ~self._in_set

    def _select(self) -> int:
        raise NotImplementedError

    def _after_append(self, v: int) -> None:
        pass


class RandomSeeder(_Seeder):
    algorithm = AlgorithmId.RANDOM

    def __init__(self, g: Graph, init: int, rng: np.random.Generator):
        super().__init__(g, init)
        pool = np.delete(np.arange(g.n), self.init)
        self._order = list(rng.permutation(pool))

    def _select(self) -> int:
        return int(self._order[len(self.chosen)])


class GonzalezSeeder(_Seeder):
    """Farthest-point traversal in the hop metric."""

    algorithm = AlgorithmId.GONZALEZ

    def __init__(self, g: Graph, init: int):
        super().__init__(g, init)
        self._dist = multi_source_distance(g, [self.init])

    def _select(self) -> int:
        # inf (unreachable) outranks any finite distance
        return _lowest_id_argmax(self._dist, self._candidates())

    def _after_append(self, v: int) -> None:
        self._dist = np.minimum(self._dist, multi_source_distance(self.g, [v]))


class MyopicSeeder(_Seeder):
    """Re-estimates access probabilities each step; seeds the current worst-off node."""

    algorithm = AlgorithmId.MYOPIC

    def __init__(self, g: Graph, init: int, cfg: CascadeConfig, exact: bool = False):
        super().__init__(g, init)
        self.cfg = cfg
        self.exact = exact

    def _estimate(self) -> np.ndarray:
        if self.exact:
            return exact_access(self.g, self.seed_set, self.cfg.alpha).pi
        step_cfg = replace(
            self.cfg, rng_seed=fold_seed(self.cfg.rng_seed, TAG_SEEDER, len(self.chosen))
        )
        return prob_est(self.g, self.seed_set, step_cfg).pi

    def _select(self) -> int:
        return _lowest_id_argmin(self._estimate(), self._candidates())


class NaiveMyopicSeeder(MyopicSeeder):
    """One estimation pass at initialization; picks ascending by access probability."""

    algorithm = AlgorithmId.NAIVE_MYOPIC

    def __init__(self, g: Graph, init: int, cfg: CascadeConfig, exact: bool = False):
        super().__init__(g, init, cfg, exact)
        self._order = _ascending_order(self._estimate(), self._candidates())

    def _select(self) -> int:
        return self._order[len(self.chosen)]


def bfs_access_update(
    g: Graph, new_seed: int, alpha: float, pi_state: np.ndarray
) -> np.ndarray:
    """Layered single-source access estimate, merged into ``pi_state``.

    BFS from ``new_seed`` assigns q = 1 at the seed. For each layer in order,
    a node first receives a parent-only value from the previous layer's final
    values, a_i = 1 - prod_parents(1 - alpha*q_p); its final value then folds
    in same-layer neighbors' parent-only values,
    q_i = 1 - (1 - a_i) * prod_same_layer(1 - alpha*a_u).
    The per-seed estimates combine independently:
    pi_i <- 1 - (1 - pi_i)(1 - q_i). Nodes unreachable from ``new_seed`` are
    untouched. Not idempotent by design; merging is the contract.
    """
    dist, layers = bfs_layers(g, new_seed)
    q = np.zeros(g.n)
    a = np.zeros(g.n)
    q[new_seed] = 1.0
    a[new_seed] = 1.0
    for t in range(1, len(layers)):
        layer = layers[t]
        # product over parents, accumulated per node as exp(sum of logs)
        src, dst = _layer_slots(g, layers[t - 1])
        keep = dist[dst] == t
        with np.errstate(divide="ignore"):
            logs = np.log1p(-alpha * q[src[keep]])
        miss = np.bincount(dst[keep], weights=logs, minlength=g.n)
        a[layer] = 1.0 - np.exp(miss[layer])
        # fold in same-layer neighbors' parent-only values
        src, dst = _layer_slots(g, layer)
        keep = dist[dst] == t
        with np.errstate(divide="ignore"):
            logs = np.log1p(-alpha * a[src[keep]])
        miss = np.bincount(dst[keep], weights=logs, minlength=g.n)
        q[layer] = 1.0 - (1.0 - a[layer]) * np.exp(miss[layer])
    out = np.array(pi_state, dtype=np.float64, copy=True)
    reached = np.isfinite(dist)
    out[reached] = 1.0 - (1.0 - out[reached]) * (1.0 - q[reached])
    return out


def _layer_slots(g: Graph, nodes: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
    """(source, target) pairs for every adjacency slot of ``nodes``."""
    starts = g.indptr[nodes]
    counts = g.indptr[nodes + 1] - starts
    total = int(counts.sum())
    if total == 0:
        return np.empty(0, np.int64), np.empty(0, np.int64)
    shifts = np.cumsum(counts) - counts
    slots = np.arange(total) - np.repeat(shifts, counts) + np.repeat(starts, counts)
    return np.repeat(nodes, counts), g.indices[slots]


class MyopicBfsSeeder(_Seeder):
    algorithm = AlgorithmId.MYOPIC_BFS

    def __init__(self, g: Graph, init: int, alpha: float):
        super().__init__(g, init)
        self.alpha = alpha
        self._pi = bfs_access_update(g, self.init, alpha, np.zeros(g.n))

    def _select(self) -> int:
        return _lowest_id_argmin(self._pi, self._candidates())

    def _after_append(self, v: int) -> None:
        self._pi = bfs_access_update(self.g, v, self.alpha, self._pi)


class NaiveMyopicBfsSeeder(_Seeder):
    algorithm = AlgorithmId.NAIVE_MYOPIC_BFS

    def __init__(self, g: Graph, init: int, alpha: float):
        super().__init__(g, init)
        pi = bfs_access_update(g, self.init, alpha, np.zeros(g.n))
        self._order = _ascending_order(pi, self._candidates())

    def _select(self) -> int:
        return self._order[len(self.chosen)]


class MyopicPprSeeder(_Seeder):
    algorithm = AlgorithmId.MYOPIC_PPR

    def __init__(self, g: Graph, init: int, damping: float = 0.85):
        super().__init__(g, init)
        self.damping = damping

    def _select(self) -> int:
        scores = ppr(self.g, self.seed_set, damping=self.damping).scores
        return _lowest_id_argmin(scores, self._candidates())


class NaiveMyopicPprSeeder(_Seeder):
    algorithm = AlgorithmId.NAIVE_MYOPIC_PPR

    def __init__(self, g: Graph, init: int, damping: float = 0.85):
        super().__init__(g, init)
        scores = ppr(g, [self.init], damping=damping).scores
        self._order = _ascending_order(scores, self._candidates())

    def _select(self) -> int:
        return self._order[len(self.chosen)]


class LeastCentralSeeder(_Seeder):
    algorithm = AlgorithmId.LEAST_CENTRAL

    def __init__(self, g: Graph, init: int):
        super().__init__(g, init)
        self._closeness = closeness(g)

    def _select(self) -> int:
        return _lowest_id_argmin(self._closeness, self._candidates())


class _NeighborPickMixin:
    """Shared fallback for seeders that place a candidate's best neighbor.

    The raw rule can re-propose the same candidate forever once its best
    neighbor is already seeded, so candidates whose pick fails are consumed
    and the next one is tried; running out raises with the partial result.
    """

    def __init__(self):
        self._consumed = np.zeros(self.g.n, dtype=bool)

    def _pickable(self) -> np.ndarray:
        return self._candidates() & ~self._consumed

    def _best_neighbor(self, x: int) -> int | None:
        nb = self.g.neighbors(x)
        if not nb.size:
            return None
        y = int(nb[np.argmax(self.g.degrees[nb])])  # ids ascending, first max wins
        return None if self._in_set[y] else y

    def _select_via_neighbor(self, pick_candidate) -> int:
        while True:
            pool = self._pickable()
            if not pool.any():
                raise SeedingExhaustedError(self.algorithm, self.chosen)
            x = pick_candidate(pool)
            y = self._best_neighbor(x)
            if y is None:
                self._consumed[x] = True
                continue
            return y


class LeastCentralNeighborSeeder(_NeighborPickMixin, _Seeder):
    algorithm = AlgorithmId.LEAST_CENTRAL_N

    def __init__(self, g: Graph, init: int):
        _Seeder.__init__(self, g, init)
        _NeighborPickMixin.__init__(self)
        self._closeness = closeness(g)

    def _select(self) -> int:
        return self._select_via_neighbor(
            lambda pool: _lowest_id_argmin(self._closeness, pool)
        )


def _neighbor_degree_sums(g: Graph) -> np.ndarray:
    sums = np.zeros(g.n)
    srcs = np.repeat(np.arange(g.n), np.diff(g.indptr))
    np.add.at(sums, srcs, g.degrees[g.indices].astype(np.float64))
    return sums


class MinDegreeSeeder(_NeighborPickMixin, _Seeder):
    """Min-degree pool seeders: hc, hcn, nd, ndn variants.

    The pool is the minimum-degree subset of remaining candidates. ``hc``
    picks the pool's lowest-harmonic-centrality node, ``nd`` the pool's
    highest neighbor-degree-sum node; the ``*n`` variants place that node's
    highest-degree neighbor instead, with the consumed-candidate fallback.
    """

    VARIANTS = ("hc", "hcn", "nd", "ndn")

    def __init__(self, g: Graph, init: int, variant: str):
        if variant not in self.VARIANTS:
            raise ValueError(f"unknown MinDegree variant {variant!r}")
        _Seeder.__init__(self, g, init)
        _NeighborPickMixin.__init__(self)
        self.variant = variant
        self.algorithm = {
            "hc": AlgorithmId.MIN_DEGREE_HC,
            "hcn": AlgorithmId.MIN_DEGREE_HCN,
            "nd": AlgorithmId.MIN_DEGREE_ND,
            "ndn": AlgorithmId.MIN_DEGREE_NDN,
        }[variant]
        if variant in ("hc", "hcn"):
            self._score = harmonic(g)
        else:
            self._score = _neighbor_degree_sums(g)

    def _pool(self, candidates: np.ndarray) -> np.ndarray:
        deg = self.g.degrees
        min_deg = deg[candidates].min()
        return candidates & (deg == min_deg)

    def _pick(self, candidates: np.ndarray) -> int:
        pool = self._pool(candidates)
        if self.variant in ("hc", "hcn"):
            return _lowest_id_argmin(self._score, pool)
        return _lowest_id_argmax(self._score, pool)

    def _select(self) -> int:
        if self.variant in ("hc", "nd"):
            return self._pick(self._candidates())
        return self._select_via_neighbor(self._pick)


def make_seeder(
    algorithm: AlgorithmId | str,
    g: Graph,
    init: int,
    *,
    alpha: float | None = None,
    cascade_cfg: CascadeConfig | None = None,
    rng: np.random.Generator | None = None,
    damping: float = 0.85,
    exact: bool = False,
) -> _Seeder:
    """Construct the seeder for ``algorithm`` with the parameters it needs."""
    algorithm = AlgorithmId(algorithm)
    if algorithm is AlgorithmId.RANDOM:
        if rng is None:
            raise ValueError("Random requires an rng")
        return RandomSeeder(g, init, rng)
    if algorithm is AlgorithmId.GONZALEZ:
        return GonzalezSeeder(g, init)
    if algorithm in (AlgorithmId.MYOPIC, AlgorithmId.NAIVE_MYOPIC):
        if cascade_cfg is None:
            raise ValueError(f"{algorithm.value} requires a CascadeConfig")
        cls = MyopicSeeder if algorithm is AlgorithmId.MYOPIC else NaiveMyopicSeeder
        return cls(g, init, cascade_cfg, exact=exact)
    if algorithm in (AlgorithmId.MYOPIC_BFS, AlgorithmId.NAIVE_MYOPIC_BFS):
        if alpha is None:
            raise ValueError(f"{algorithm.value} requires alpha")
        cls = MyopicBfsSeeder if algorithm is AlgorithmId.MYOPIC_BFS else NaiveMyopicBfsSeeder
        return cls(g, init, alpha)
    if algorithm is AlgorithmId.MYOPIC_PPR:
        return MyopicPprSeeder(g, init, damping)
    if algorithm is AlgorithmId.NAIVE_MYOPIC_PPR:
        return NaiveMyopicPprSeeder(g, init, damping)
    if algorithm is AlgorithmId.LEAST_CENTRAL:
        return LeastCentralSeeder(g, init)
    if algorithm is AlgorithmId.LEAST_CENTRAL_N:
        return LeastCentralNeighborSeeder(g, init)
    return MinDegreeSeeder(g, init, algorithm.value.split("_", 1)[1])


def run_seeder(
    algorithm: AlgorithmId | str,
    g: Graph,
    k: int,
    init: int,
    *,
    alpha: float | None = None,
    cascade_cfg: CascadeConfig | None = None,
    rng: np.random.Generator | None = None,
    rng_seed: int | None = None,
    damping: float = 0.85,
    exact: bool = False,
) -> SeedSequence:
    """Run a seeder for ``k`` picks and package the result."""
    algorithm = AlgorithmId(algorithm)
    if not 0 <= k <= g.n - 1:
        raise ValueError(f"k must lie in [0, n-1], got {k} with n={g.n}")
    if rng is None and rng_seed is not None and algorithm is AlgorithmId.RANDOM:
        rng = substream(rng_seed, TAG_SEEDER)
    seeder = make_seeder(
        algorithm, g, init,
        alpha=alpha, cascade_cfg=cascade_cfg, rng=rng, damping=damping, exact=exact,
    )
    for _ in range(k):
        seeder.next_seed()
    if alpha is None and cascade_cfg is not None:
        alpha = cascade_cfg.alpha
    if rng_seed is None and cascade_cfg is not None:
        rng_seed = cascade_cfg.rng_seed
    return SeedSequence(
        algorithm=algorithm,
        network=g.name,
        initial_seed=seeder.init,
        seeds=tuple(seeder.chosen),
        alpha=alpha,
        rng_seed=rng_seed,
    )


# Thin functional forms mirroring the per-algorithm operations.

def seed_random(g, k, init, rng):
    return run_seeder(AlgorithmId.RANDOM, g, k, init, rng=rng)


def seed_gonzalez(g, k, init):
    return run_seeder(AlgorithmId.GONZALEZ, g, k, init)


def seed_myopic(g, k, init, cfg, exact=False):
    return run_seeder(AlgorithmId.MYOPIC, g, k, init, cascade_cfg=cfg, exact=exact)


def seed_naive_myopic(g, k, init, cfg, exact=False):
    return run_seeder(AlgorithmId.NAIVE_MYOPIC, g, k, init, cascade_cfg=cfg, exact=exact)


def seed_myopic_bfs(g, k, init, alpha):
    return run_seeder(AlgorithmId.MYOPIC_BFS, g, k, init, alpha=alpha)


def seed_naive_myopic_bfs(g, k, init, alpha):
    return run_seeder(AlgorithmId.NAIVE_MYOPIC_BFS, g, k, init, alpha=alpha)


def seed_myopic_ppr(g, k, init, damping=0.85):
    return run_seeder(AlgorithmId.MYOPIC_PPR, g, k, init, damping=damping)


def seed_naive_myopic_ppr(g, k, init, damping=0.85):
    return run_seeder(AlgorithmId.NAIVE_MYOPIC_PPR, g, k, init, damping=damping)


def seed_least_central(g, k, init):
    return run_seeder(AlgorithmId.LEAST_CENTRAL, g, k, init)


def seed_least_central_n(g, k, init):
    return run_seeder(AlgorithmId.LEAST_CENTRAL_N, g, k, init)


def seed_min_degree(g, k, init, variant):
    algorithm = AlgorithmId(f"MinDegree_{variant}")
    return run_seeder(algorithm, g, k, init)
