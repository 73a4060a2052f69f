"""Counterfactual decision metrics over potential outcomes.

Point identification and estimation of outcome-ranking probabilities (PoR)
and best-outcome probabilities (PoB) under rank preservation,
distribution-free bounds without it, an exact finite-population oracle,
seeded synthetic-study generation with analytic ground truths, and
stratified percentile-bootstrap intervals.
"""

__version__ = "0.1.0"

from .bounds import GridConfig, pob_bounds, por_bounds, sup_cdf_diff
from .core import (
    ActionId,
    ArmSamples,
    EmpiricalCdf,
    IntervalEstimate,
    InternalConsistencyError,
    PoMatrix,
    PorPobError,
    Ranking,
    StudyData,
    ValidationError,
    all_rankings,
    ecdf_eval,
    empirical_quantile,
    order_statistic_index,
    validate_ranking,
)
from .estimators import (
    OracleResult,
    PobEstimate,
    PorEstimate,
    RoeEstimate,
    best_action,
    best_ranking,
    counterfactual_map,
    estimate_pob,
    estimate_por,
    estimate_roe,
    exact_pob,
    exact_por,
)
from .inference import BootstrapConfig, BootstrapResult, bootstrap_ci, resample_study
from .io import (
    DataFormatError,
    LabelMap,
    MetricRecord,
    ResultDocument,
    dumps_results,
    load_csv,
    load_po_matrix_csv,
    read_results,
    write_csv,
    write_results,
)
from .metrics import StatisticSpec, evaluate_statistic
from .scm_sim import (
    NoiseSpec,
    ReplicationSummary,
    ScmSpec,
    TruthReport,
    analytic_truth,
    derive_run_seed,
    preset,
    run_replications,
    sample_po_matrix,
    sample_study,
)

__all__ = [
    "__version__",
    "ActionId",
    "Ranking",
    "PorPobError",
    "ValidationError",
    "InternalConsistencyError",
    "DataFormatError",
    "ArmSamples",
    "StudyData",
    "EmpiricalCdf",
    "PoMatrix",
    "IntervalEstimate",
    "ecdf_eval",
    "empirical_quantile",
    "order_statistic_index",
    "validate_ranking",
    "all_rankings",
    "counterfactual_map",
    "estimate_por",
    "estimate_pob",
    "estimate_roe",
    "best_ranking",
    "best_action",
    "exact_por",
    "exact_pob",
    "PorEstimate",
    "PobEstimate",
    "RoeEstimate",
    "OracleResult",
    "GridConfig",
    "sup_cdf_diff",
    "por_bounds",
    "pob_bounds",
    "StatisticSpec",
    "evaluate_statistic",
    "NoiseSpec",
    "ScmSpec",
    "TruthReport",
    "ReplicationSummary",
    "preset",
    "sample_study",
    "sample_po_matrix",
    "analytic_truth",
    "run_replications",
    "derive_run_seed",
    "BootstrapConfig",
    "BootstrapResult",
    "bootstrap_ci",
    "resample_study",
    "LabelMap",
    "MetricRecord",
    "ResultDocument",
    "load_csv",
    "load_po_matrix_csv",
    "write_csv",
    "write_results",
    "read_results",
    "dumps_results",
]
