"""fairseed: seed selection for fair information access.

Chooses k seed nodes of a network to maximize the minimum probability that
any node is activated by an independent cascade started at the seeds. Ships
the Monte Carlo access estimator with an exact oracle for tiny graphs,
spreadability-based calibration of the transmission probability, fourteen
seeding algorithms, a marginal-gain evaluation metric, and portfolio
selection with a feature-driven meta-learner.
"""

from .cascade import (
    AccessEstimate,
    CalibrationResult,
    CascadeConfig,
    DEFAULT_ALPHA_GRID,
    SPREADABILITY_TARGETS,
    SpreadabilityCurve,
    calibrate_alpha,
    exact_access,
    measure_spreadability_curve,
    prob_est,
    simulate_cascade,
    spreadability,
)
from .centrality import PprScores, bfs_layers, closeness, harmonic, multi_source_distance, ppr
from .evaluation import (
    BetaResult,
    RelativeCategory,
    TimingRecord,
    benchmark_runtime,
    categorize,
    evaluate_beta,
    fit_beta,
    pi_min_curve,
)
from .graph import (
    DOMAINS,
    EdgeListParseError,
    Graph,
    ManifestEntry,
    NetworkFeatures,
    compute_features,
    largest_connected_component,
    load_edge_list,
    load_manifest,
)
from .meta import (
    EnsembleSet,
    MetaModel,
    MetaReport,
    OracleSelection,
    PRESET_ENSEMBLES,
    build_meta_report,
    fast_ensemble_oracle,
    load_meta_model,
    meta_predict,
    save_meta_model,
    select_ensemble,
    train_meta,
)
from .seeders import (
    ALL_ALGORITHMS,
    AlgorithmId,
    SeedSequence,
    SeedingExhaustedError,
    bfs_access_update,
    make_seeder,
    run_seeder,
)

__version__ = "0.1.0"
