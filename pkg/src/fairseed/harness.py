"""End-to-end experiment pipelines: calibration, benchmarking, reporting,
and portfolio/meta-learner orchestration.

All randomness derives from the run configuration's global seed plus stable
string hashes of cell keys, so any schedule of workers produces the same
bytes. Per-cell outputs land in their own JSON files (written atomically)
and the final CSVs are composed from cells in manifest order; interrupting
and resuming therefore reproduces the uninterrupted output exactly.
"""

from __future__ import annotations

import csv
import hashlib
import json
import logging
import os
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, fields
from pathlib import Path
from typing import Iterable, Mapping, Sequence

import numpy as np

from .cascade import (
    CascadeConfig,
    SPREADABILITY_TARGETS,
    SpreadabilityCurve,
    calibrate_alpha,
    measure_spreadability_curve,
)
from .evaluation import (
    BetaResult,
    RelativeCategory,
    benchmark_runtime,
    categorize,
    evaluate_beta,
)
from .graph import Graph, ManifestEntry, compute_features, load_edge_list, load_manifest
from .meta import (
    EnsembleSet,
    MetaModel,
    build_meta_report,
    load_meta_model,
    meta_predict,
    save_meta_model,
    select_ensemble,
    train_meta,
)
from .rng import TAG_EVAL, TAG_INIT, TAG_SEEDER, TAG_TIMING, fold_seed, seed_from_string, substream
from .seeders import ALL_ALGORITHMS, AlgorithmId, run_seeder

logger = logging.getLogger("fairseed")

ENV_PREFIX = "FAIRSEED_"

REGIMES = ("low", "medium", "high")


class DataError(Exception):
    """Missing or malformed input; maps to exit code 2."""


class PartialFailure(Exception):
    """Some cells failed but the run continued; maps to exit code 3."""


@dataclass
class RunConfig:
    """Settings for the benchmark pipelines; JSON-serializable."""

    manifest: Path | None = None
    regimes: tuple[str, ...] = ("medium",)
    calibration_rounds: int = 1000
    evaluation_rounds: int = 1000
    seeder_rounds: int = 1000
    runs: int = 20
    k_max: int = 10
    seed: int = 0
    out: Path = Path("results")
    workers: int = 1
    single_core_timing: bool = False
    extract_lcc: bool = True
    timing_reps: int = 10
    ppr_damping: float = 0.85
    algorithms: tuple[AlgorithmId, ...] = ALL_ALGORITHMS

    def __post_init__(self):
        if self.manifest is not None:
            self.manifest = Path(self.manifest)
        self.out = Path(self.out)
        self.regimes = tuple(self.regimes)
        self.algorithms = tuple(AlgorithmId(a) for a in self.algorithms)
        for r in self.regimes:
            if r not in REGIMES:
                raise DataError(f"unknown regime {r!r}; expected one of {REGIMES}")
        for name in ("calibration_rounds", "evaluation_rounds", "seeder_rounds",
                     "runs", "k_max", "timing_reps", "workers"):
            if getattr(self, name) < 1:
                raise DataError(f"{name} must be >= 1")

    def apply_large_network_preset(self) -> None:
        """Heavier estimation, fewer trials: R=10000 evaluation, 3 runs,
        calibration still at R=1000."""
        self.evaluation_rounds = 10000
        self.runs = 3
        self.calibration_rounds = 1000


_CONFIG_KEYS = {f.name for f in fields(RunConfig)}


def load_run_config(
    config_path: str | Path | None = None,
    overrides: Mapping[str, object] | None = None,
    env: Mapping[str, str] | None = None,
) -> RunConfig:
    """Resolve a RunConfig: defaults < config file < environment < overrides.

    Environment variables use the ``FAIRSEED_`` prefix with upper-cased field
    names (e.g. ``FAIRSEED_WORKERS=4``). The large-network preset, wherever
    it is switched on, applies before explicit overrides.
    """
    values: dict[str, object] = {}
    preset = False

    if config_path is not None:
        with open(config_path, encoding="utf-8") as fh:
            try:
                raw = json.load(fh)
            except json.JSONDecodeError as exc:
                raise DataError(f"{config_path}: invalid JSON: {exc}") from exc
        if not isinstance(raw, dict):
            raise DataError(f"{config_path}: config must be a JSON object")
        preset = bool(raw.pop("large_network_preset", False))
        unknown = set(raw) - _CONFIG_KEYS
        if unknown:
            raise DataError(f"{config_path}: unknown config keys {sorted(unknown)}")
        values.update(raw)

    env = os.environ if env is None else env
    for name in sorted(_CONFIG_KEYS | {"large_network_preset"}):
        var = ENV_PREFIX + name.upper()
        if var not in env:
            continue
        raw_value = env[var]
        if name == "large_network_preset":
            preset = raw_value.lower() in ("1", "true", "yes")
        elif name in ("regimes", "algorithms"):
            values[name] = tuple(x for x in raw_value.split(",") if x)
        elif name in ("single_core_timing", "extract_lcc"):
            values[name] = raw_value.lower() in ("1", "true", "yes")
        elif name in ("manifest", "out"):
            values[name] = raw_value
        elif name == "ppr_damping":
            values[name] = float(raw_value)
        else:
            values[name] = int(raw_value)

    overrides = dict(overrides or {})
    preset = bool(overrides.pop("large_network_preset", preset))

    cfg = RunConfig(**values)
    if preset:
        cfg.apply_large_network_preset()
    for key, value in overrides.items():
        if value is None:
            continue
        if key not in _CONFIG_KEYS:
            raise DataError(f"unknown config override {key!r}")
        setattr(cfg, key, value)
    cfg.__post_init__()
    return cfg


# -- corpus loading ------------------------------------------------------------

def load_corpus(cfg: RunConfig) -> tuple[list[tuple[ManifestEntry, Graph]], list[str]]:
    """Load every manifest network; collect failures instead of aborting."""
    if cfg.manifest is None:
        raise DataError("no manifest configured (use --manifest or the config file)")
    entries = load_manifest(cfg.manifest)
    if not entries:
        raise DataError(f"{cfg.manifest}: manifest is empty")
    loaded, failed = [], []
    for entry in entries:
        try:
            g = load_edge_list(entry.path, cfg.extract_lcc, name=entry.name, domain=entry.domain)
        except (OSError, ValueError) as exc:
            logger.error("skipping %s: %s", entry.name, exc)
            failed.append(entry.name)
            continue
        loaded.append((entry, g))
    return loaded, failed


def _file_hash(path: Path) -> str:
    digest = hashlib.sha256()
    with open(path, "rb") as fh:
        for block in iter(lambda: fh.read(65536), b""):
            digest.update(block)
    return digest.hexdigest()


def _atomic_write(path: Path, text: str) -> None:
    tmp = path.with_name(path.name + ".tmp")
    tmp.write_text(text, encoding="utf-8")
    os.replace(tmp, path)


def _write_csv(path: Path, header: Sequence[str], rows: Iterable[Sequence]) -> None:
    tmp = path.with_name(path.name + ".tmp")
    with open(tmp, "w", encoding="utf-8", newline="") as fh:
        writer = csv.writer(fh)
        writer.writerow(header)
        for row in rows:
            writer.writerow([_cell(x) for x in row])
    os.replace(tmp, path)


def _cell(x) -> str:
    if isinstance(x, float):
        return repr(x)
    if isinstance(x, AlgorithmId):
        return x.value
    if isinstance(x, RelativeCategory):
        return x.value
    return str(x)


def _read_csv(path: Path) -> list[dict[str, str]]:
    if not path.exists():
        raise DataError(f"missing required file {path}")
    with open(path, encoding="utf-8", newline="") as fh:
        return list(csv.DictReader(fh))


# -- calibration ---------------------------------------------------------------

def cached_spreadability_curve(
    cfg: RunConfig, entry: ManifestEntry, g: Graph
) -> tuple[SpreadabilityCurve, bool]:
    """Measure (or reload) the spreadability curve for one network.

    Cached under a key of (file content hash, rounds, seed): editing the
    network file, the round count, or the global seed invalidates the entry.
    """
    cache_dir = cfg.out / "cache"
    cache_dir.mkdir(parents=True, exist_ok=True)
    key = f"curve_{_file_hash(entry.path)[:20]}_{cfg.calibration_rounds}_{cfg.seed}.csv"
    path = cache_dir / key
    if path.exists():
        return SpreadabilityCurve.from_csv(path, cfg.calibration_rounds), True
    curve = measure_spreadability_curve(
        g,
        rounds=cfg.calibration_rounds,
        rng_seed=fold_seed(cfg.seed, seed_from_string(entry.name)),
    )
    tmp = path.with_name(path.name + ".tmp")
    curve.to_csv(tmp)
    os.replace(tmp, path)
    return curve, False


def cmd_calibrate(cfg: RunConfig) -> int:
    """Calibrate alpha per (network, regime); emits calibration.csv."""
    loaded, failed = load_corpus(cfg)
    cfg.out.mkdir(parents=True, exist_ok=True)
    rows = []
    cache_hits = 0
    for entry, g in loaded:
        try:
            curve, hit = cached_spreadability_curve(cfg, entry, g)
            cache_hits += hit
            for regime in cfg.regimes:
                result = calibrate_alpha(g, SPREADABILITY_TARGETS[regime], curve=curve)
                if result.target_unreachable:
                    logger.warning(
                        "%s/%s: target %.2f unreachable, using alpha=%.2f (f=%.3f)",
                        entry.name, regime, result.target, result.alpha, result.achieved,
                    )
                rows.append((entry.name, regime, result.alpha, result.achieved))
        except ValueError as exc:
            logger.error("calibration failed for %s: %s", entry.name, exc)
            failed.append(entry.name)
    _write_csv(cfg.out / "calibration.csv",
               ("network", "regime", "alpha", "achieved_fraction"), rows)
    logger.info("calibrated %d networks (%d cache hits), %d failed",
                len(loaded), cache_hits, len(failed))
    return 3 if failed else 0


def read_calibration(cfg: RunConfig) -> dict[tuple[str, str], float]:
    rows = _read_csv(cfg.out / "calibration.csv")
    return {(r["network"], r["regime"]): float(r["alpha"]) for r in rows}


# -- benchmark -----------------------------------------------------------------

def _cell_key(network: str, regime: str, algorithm: AlgorithmId) -> str:
    safe = "".join(c if c.isalnum() or c in "-_" else "_" for c in network)
    tag = hashlib.sha256(f"{network}|{regime}|{algorithm.value}".encode()).hexdigest()[:8]
    return f"{safe}__{regime}__{algorithm.value}__{tag}"


def _beta_cell(args: tuple) -> dict:
    """Evaluate one (network, regime, algorithm) cell; runs in any worker."""
    (path, name, domain, extract_lcc, regime, alpha, algorithm,
     runs, k_max, eval_rounds, seeder_rounds, damping, seed) = args
    g = load_edge_list(path, extract_lcc, name=name, domain=domain)
    net_h = seed_from_string(name)
    reg_h = seed_from_string(regime)
    alg_h = seed_from_string(algorithm)
    inits = [
        int(substream(seed, TAG_INIT, net_h, reg_h, t).integers(g.n)) for t in range(runs)
    ]
    result = evaluate_beta(
        g, algorithm,
        alpha=alpha, runs=runs, k_max=min(k_max, g.n - 1),
        eval_rounds=eval_rounds,
        eval_seed=fold_seed(seed, TAG_EVAL, net_h, reg_h, alg_h),
        seeder_rounds=seeder_rounds,
        seeder_seed=fold_seed(seed, TAG_SEEDER, net_h, reg_h, alg_h),
        damping=damping, inits=inits,
    )
    return {
        "network": name,
        "domain": domain,
        "algorithm": algorithm,
        "regime": regime,
        "alpha": alpha,
        "slopes": list(result.slopes),
        "negative_slopes": result.negative_slopes,
        "k_max": result.k_max,
        "rounds": result.rounds,
    }


def cmd_bench(cfg: RunConfig) -> int:
    """Evaluate every (network, algorithm, regime) cell plus timings.

    Resumable: cells that already have an output file are skipped, and the
    final CSVs are recomposed from all cell files in manifest order, so a
    resumed run matches an uninterrupted one byte for byte.
    """
    loaded, failed = load_corpus(cfg)
    alphas = read_calibration(cfg)
    cells_dir = cfg.out / "cells"
    cells_dir.mkdir(parents=True, exist_ok=True)

    plan = []
    for entry, g in loaded:
        for regime in cfg.regimes:
            if (entry.name, regime) not in alphas:
                raise DataError(
                    f"no calibrated alpha for ({entry.name}, {regime}); run calibrate first"
                )
            for algorithm in cfg.algorithms:
                plan.append((entry, g, regime, alphas[(entry.name, regime)], algorithm))

    pending = []
    for entry, g, regime, alpha, algorithm in plan:
        cell_path = cells_dir / f"beta__{_cell_key(entry.name, regime, algorithm)}.json"
        if cell_path.exists():
            continue
        pending.append((
            cell_path,
            (str(entry.path), entry.name, entry.domain, cfg.extract_lcc, regime,
             alpha, algorithm.value, cfg.runs, cfg.k_max, cfg.evaluation_rounds,
             cfg.seeder_rounds, cfg.ppr_damping, cfg.seed),
        ))

    logger.info("bench: %d cells total, %d to compute", len(plan), len(pending))
    if cfg.workers > 1 and len(pending) > 1:
        with ProcessPoolExecutor(max_workers=cfg.workers) as pool:
            futures = {
                pool.submit(_beta_cell, args): cell_path for cell_path, args in pending
            }
            for future, cell_path in futures.items():
                try:
                    payload = future.result()
                except Exception as exc:  # cell failures logged, run continues
                    logger.error("cell %s failed: %s", cell_path.name, exc)
                    failed.append(cell_path.name)
                    continue
                _atomic_write(cell_path, json.dumps(payload, indent=1))
    else:
        for cell_path, args in pending:
            try:
                payload = _beta_cell(args)
            except Exception as exc:
                logger.error("cell %s failed: %s", cell_path.name, exc)
                failed.append(cell_path.name)
                continue
            _atomic_write(cell_path, json.dumps(payload, indent=1))

    # timing cells run serially after the estimation cells (no co-tenancy)
    for entry, g, regime, alpha, algorithm in plan:
        t_path = cells_dir / f"timing__{_cell_key(entry.name, regime, algorithm)}.json"
        if t_path.exists():
            continue
        try:
            record = benchmark_runtime(
                g, algorithm, k=min(cfg.k_max, g.n - 1), reps=cfg.timing_reps,
                alpha=alpha, seeder_rounds=cfg.seeder_rounds,
                rng_seed=fold_seed(
                    cfg.seed, TAG_TIMING,
                    seed_from_string(entry.name), seed_from_string(regime),
                    seed_from_string(algorithm.value),
                ),
                damping=cfg.ppr_damping, single_core=cfg.single_core_timing,
            )
        except Exception as exc:
            logger.error("timing %s failed: %s", t_path.name, exc)
            failed.append(t_path.name)
            continue
        _atomic_write(t_path, json.dumps({
            "network": entry.name, "regime": regime, "algorithm": algorithm.value,
            "k": record.k, "times_ms": list(record.times_ms),
            "single_core": record.single_core,
        }, indent=1))

    compose_bench_outputs(cfg, loaded)
    return 3 if failed else 0


def _load_cell(path: Path) -> dict | None:
    if not path.exists():
        return None
    return json.loads(path.read_text(encoding="utf-8"))


def compose_bench_outputs(cfg: RunConfig, loaded) -> None:
    """Rebuild results.csv, per-regime aggregates, and timing.csv from cells."""
    cells_dir = cfg.out / "cells"
    results_rows = []
    timing_rows = []
    aggregates: dict[str, list] = {regime: [] for regime in cfg.regimes}

    for regime in cfg.regimes:
        beta_by_net: dict[str, dict[AlgorithmId, BetaResult]] = {}
        for entry, g in loaded:
            for algorithm in cfg.algorithms:
                cell = _load_cell(
                    cells_dir / f"beta__{_cell_key(entry.name, regime, algorithm)}.json"
                )
                if cell is None:
                    continue
                result = BetaResult(
                    algorithm=algorithm, alpha=cell["alpha"],
                    slopes=tuple(cell["slopes"]), k_max=cell["k_max"],
                    rounds=cell["rounds"], negative_slopes=cell["negative_slopes"],
                )
                beta_by_net.setdefault(entry.name, {})[algorithm] = result
                for run, slope in enumerate(cell["slopes"]):
                    results_rows.append((
                        entry.name, entry.domain, algorithm, regime,
                        cell["alpha"], run, slope,
                    ))
        for entry, g in loaded:
            per_alg = beta_by_net.get(entry.name, {})
            myopic = per_alg.get(AlgorithmId.MYOPIC)
            if myopic is not None and myopic.mean <= 0:
                logger.warning(
                    "%s/%s: Myopic slope %.4g <= 0, categories are precision-limited",
                    entry.name, regime, myopic.mean,
                )
            for algorithm in cfg.algorithms:
                if algorithm not in per_alg:
                    continue
                result = per_alg[algorithm]
                category = categorize(result, myopic).value if myopic else ""
                t_cell = _load_cell(
                    cells_dir / f"timing__{_cell_key(entry.name, regime, algorithm)}.json"
                )
                mean_ms = (
                    float(np.mean(t_cell["times_ms"])) if t_cell else float("nan")
                )
                aggregates[regime].append(
                    (entry.name, algorithm, result.mean, result.se, category, mean_ms)
                )
                if t_cell:
                    times = t_cell["times_ms"]
                    timing_rows.append((
                        entry.name, regime, algorithm, t_cell["k"], len(times),
                        float(np.mean(times)),
                        float(np.std(times, ddof=1)) if len(times) > 1 else 0.0,
                        t_cell["single_core"],
                    ))

    _write_csv(cfg.out / "results.csv",
               ("network", "domain", "algorithm", "spreadability", "alpha", "run", "slope"),
               results_rows)
    for regime, rows in aggregates.items():
        _write_csv(cfg.out / f"aggregate_{regime}.csv",
                   ("network", "algorithm", "beta", "se", "category", "mean_ms"), rows)
    _write_csv(cfg.out / "timing.csv",
               ("network", "spreadability", "algorithm", "k", "repetitions",
                "mean_ms", "std_ms", "single_core"),
               timing_rows)


# -- reporting -----------------------------------------------------------------

def read_aggregate(cfg: RunConfig, regime: str) -> list[dict[str, str]]:
    return _read_csv(cfg.out / f"aggregate_{regime}.csv")


def cmd_report(cfg: RunConfig) -> int:
    """Emit the per-regime category matrix and best-per-network tables."""
    loaded, _failed = load_corpus(cfg)
    info = {entry.name: (entry.domain, g.n, 2.0 * g.m / g.n) for entry, g in loaded}
    for regime in cfg.regimes:
        rows = read_aggregate(cfg, regime)
        by_net: dict[str, dict[str, dict[str, str]]] = {}
        for row in rows:
            by_net.setdefault(row["network"], {})[row["algorithm"]] = row
        missing = sorted(
            net for net, algs in by_net.items() if AlgorithmId.MYOPIC.value not in algs
        )
        if missing:
            raise DataError(
                f"aggregate_{regime}.csv lacks Myopic rows for networks: {missing}"
            )
        networks = sorted(
            (net for net in by_net if net in info),
            key=lambda net: (info[net][0], info[net][1], net),
        )
        algorithms = [a for a in cfg.algorithms]
        matrix_rows = []
        best_rows = []
        for net in networks:
            domain, n, mean_degree = info[net]
            cats = [
                by_net[net].get(a.value, {}).get("category", "") for a in algorithms
            ]
            matrix_rows.append([net, domain, n] + cats)
            present = [a for a in algorithms if a.value in by_net[net]]
            best = max(present, key=lambda a: (float(by_net[net][a.value]["beta"]),
                                               -list(AlgorithmId).index(a)))
            best_rows.append((net, mean_degree, best))
        _write_csv(cfg.out / f"category_matrix_{regime}.csv",
                   ["network", "domain", "n"] + [a.value for a in algorithms],
                   matrix_rows)
        _write_csv(cfg.out / f"best_per_network_{regime}.csv",
                   ("network", "mean_degree", "best_algorithm"), best_rows)
    return 0


# -- meta pipeline -------------------------------------------------------------

def _beta_tables(cfg: RunConfig, regime: str):
    rows = read_aggregate(cfg, regime)
    beta_table: dict[str, dict[str, float]] = {}
    timing_table: dict[str, dict[str, float]] = {}
    for row in rows:
        beta_table.setdefault(row["network"], {})[row["algorithm"]] = float(row["beta"])
        if row["mean_ms"] and row["mean_ms"] != "nan":
            timing_table.setdefault(row["network"], {})[row["algorithm"]] = float(
                row["mean_ms"]
            )
    myopic = {
        net: algs[AlgorithmId.MYOPIC.value]
        for net, algs in beta_table.items()
        if AlgorithmId.MYOPIC.value in algs
    }
    return beta_table, myopic, timing_table


def ensemble_path(cfg: RunConfig, regime: str) -> Path:
    return cfg.out / f"ensemble_{regime}.json"


def model_path(cfg: RunConfig, regime: str) -> Path:
    return cfg.out / f"meta_model_{regime}.joblib"


def cmd_meta_select(cfg: RunConfig) -> int:
    for regime in cfg.regimes:
        beta_table, myopic, _ = _beta_tables(cfg, regime)
        if not myopic:
            raise DataError(f"aggregate_{regime}.csv has no Myopic rows")
        table = {net: row for net, row in beta_table.items() if net in myopic}
        # candidacy requires a slope on every network; algorithms with failed
        # cells (e.g. neighbor variants exhausted on tiny graphs) drop out
        complete = set.intersection(*(set(row) for row in table.values()))
        dropped = sorted(
            {a for row in table.values() for a in row} - complete
        )
        if dropped:
            logger.warning("%s: excluding partially-covered algorithms %s", regime, dropped)
            table = {
                net: {a: b for a, b in row.items() if a in complete}
                for net, row in table.items()
            }
        ensemble = select_ensemble(table, myopic, regime=regime)
        _atomic_write(ensemble_path(cfg, regime), json.dumps({
            "regime": regime,
            "algorithms": [a.value for a in ensemble.algorithms],
            "coverage": ensemble.coverage,
            "networks": len(table),
        }, indent=1))
        logger.info("%s ensemble: %s (coverage %d/%d)", regime,
                    [a.value for a in ensemble.algorithms], ensemble.coverage, len(table))
    return 0


def load_ensemble(cfg: RunConfig, regime: str) -> EnsembleSet:
    path = ensemble_path(cfg, regime)
    if not path.exists():
        raise DataError(f"missing {path}; run `meta select` first")
    raw = json.loads(path.read_text(encoding="utf-8"))
    return EnsembleSet(
        tuple(AlgorithmId(a) for a in raw["algorithms"]),
        regime=raw["regime"],
        coverage=raw.get("coverage"),
    )


def best_in_ensemble(
    ensemble: EnsembleSet, row: Mapping[str, float]
) -> AlgorithmId:
    """Ensemble member with the highest slope; ties by canonical order."""
    best = None
    for a in ensemble.algorithms:
        if a.value not in row:
            continue
        if best is None or row[a.value] > row[best.value]:
            best = a
    if best is None:
        raise DataError("no ensemble member present in the slope table")
    return best


def cmd_meta_train(cfg: RunConfig) -> int:
    loaded, _failed = load_corpus(cfg)
    graphs = {entry.name: (entry, g) for entry, g in loaded}
    for regime in cfg.regimes:
        ensemble = load_ensemble(cfg, regime)
        beta_table, myopic, _ = _beta_tables(cfg, regime)
        names, feats, labels = [], [], []
        for net in sorted(beta_table):
            if net not in graphs:
                continue
            entry, g = graphs[net]
            names.append(net)
            feats.append(compute_features(g, entry.domain))
            labels.append(best_in_ensemble(ensemble, beta_table[net]))
        model = train_meta(
            feats, labels, ensemble,
            split_seed=fold_seed(cfg.seed, seed_from_string(regime)),
            network_names=names,
        )
        save_meta_model(model, model_path(cfg, regime))
        logger.info("%s model: held-out accuracy %s over %d networks", regime,
                    model.manifest["held_out_accuracy"], len(names))
    return 0


def cmd_meta_predict(cfg: RunConfig, model_file: str | Path,
                     network_path: str | Path, domain: str = "unknown") -> int:
    model = load_meta_model(model_file)
    g = load_edge_list(network_path, cfg.extract_lcc, domain=domain)
    print(meta_predict(model, g).value)
    return 0


def cmd_meta_report(cfg: RunConfig) -> int:
    loaded, _failed = load_corpus(cfg)
    graphs = {entry.name: (entry, g) for entry, g in loaded}
    for regime in cfg.regimes:
        path = model_path(cfg, regime)
        if not path.exists():
            raise DataError(f"missing {path}; run `meta train` first")
        model = load_meta_model(path)
        beta_table, myopic, timing_table = _beta_tables(cfg, regime)
        selections: dict[str, AlgorithmId] = {}
        inference_ms: dict[str, float] = {}
        for net in sorted(beta_table):
            if net not in graphs or net not in myopic:
                continue
            entry, g = graphs[net]
            start = time.perf_counter()
            selections[net] = meta_predict(model, g, entry.domain)
            inference_ms[net] = (time.perf_counter() - start) * 1000.0
        timing_myopic = {
            net: timing_table[net][AlgorithmId.MYOPIC.value]
            for net in selections
            if AlgorithmId.MYOPIC.value in timing_table.get(net, {})
        }
        usable = sorted(set(selections) & set(timing_myopic))
        report = build_meta_report(
            {net: selections[net] for net in usable},
            beta_table, myopic, timing_table, timing_myopic, inference_ms,
        )
        _write_csv(cfg.out / f"meta_report_{regime}.csv",
                   ("network", "selected_alg", "beta_selected", "beta_myopic",
                    "perf_diff_pct", "t_selected_ms", "t_myopic_ms", "speedup"),
                   [(r.network, r.selected, r.beta_selected, r.beta_myopic,
                     "" if r.perf_diff_pct is None else r.perf_diff_pct,
                     r.t_selected_ms, r.t_myopic_ms, r.speedup)
                    for r in report.rows])
        logger.info(
            "%s meta report: perf diff %.2f%% +- %.2f, speedup %.2f +- %.2f, "
            "%d/%d wins, %d excluded", regime,
            report.mean_perf_diff_pct, report.std_perf_diff_pct,
            report.mean_speedup, report.std_speedup,
            report.wins_over_myopic, len(report.rows), report.excluded_networks,
        )
    return 0


# -- one-shot helpers ------------------------------------------------------------

def cmd_seed(
    network_path: str | Path,
    algorithm: AlgorithmId | str,
    alpha: float,
    k: int,
    rng_seed: int = 0,
    *,
    init: int | None = None,
    rounds: int = 1000,
    extract_lcc: bool = True,
    damping: float = 0.85,
) -> dict:
    """Run one seeder on one network; returns the JSON-ready sequence."""
    algorithm = AlgorithmId(algorithm)
    g = load_edge_list(network_path, extract_lcc)
    if init is None:
        init = int(substream(rng_seed, TAG_INIT).integers(g.n))
    seq = run_seeder(
        algorithm, g, k, init,
        alpha=alpha,
        cascade_cfg=CascadeConfig(alpha, rounds, fold_seed(rng_seed, TAG_SEEDER)),
        rng=substream(rng_seed, TAG_SEEDER),
        rng_seed=rng_seed,
        damping=damping,
    )
    return seq.to_json_dict(g)


FEATURE_COLUMNS = (
    "network", "domain", "n", "mean_degree", "max_degree", "degree_variance",
    "clustering", "mean_path_length", "diameter", "assortativity",
)


def cmd_features(cfg: RunConfig, network_path: str | Path | None = None) -> int:
    """Feature profiles: CSV for a manifest, JSON on stdout for one network."""
    if network_path is not None:
        g = load_edge_list(network_path, cfg.extract_lcc)
        f = compute_features(g)
        payload = {"network": g.name}
        payload.update({c: getattr(f, c) for c in FEATURE_COLUMNS[1:]})
        print(json.dumps(payload, indent=1))
        return 0
    loaded, failed = load_corpus(cfg)
    cfg.out.mkdir(parents=True, exist_ok=True)
    rows = []
    for entry, g in loaded:
        f = compute_features(g, entry.domain)
        rows.append((entry.name, f.domain, f.n, f.mean_degree, f.max_degree,
                     f.degree_variance, f.clustering, f.mean_path_length,
                     f.diameter, f.assortativity))
    _write_csv(cfg.out / "features.csv", FEATURE_COLUMNS, rows)
    return 3 if failed else 0
