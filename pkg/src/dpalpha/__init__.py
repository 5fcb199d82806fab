"""Differentially private estimation of the degree-distribution scaling parameter.

The package fits a truncated discrete power law to a graph's degree tail and
offers three privacy regimes: exact (non-private) fitting, centralized DP via
noisy sufficient statistics, and local DP via per-node releases. A histogram
style comparison method (noisy sorted degree sequence plus isotonic repair)
and a synthetic-data experiment harness round it out.
"""

from .baseline import (
    NoisySortedDegrees,
    baseline_fit,
    baseline_release,
    baseline_run,
    isotonic_postprocess,
)
from .central import NoisyTailStats, central_da, central_no, fit_noisy, noisy_tail_stats
from .graphio import (
    DegreeSequence,
    EdgeListParseError,
    Graph,
    LoadResult,
    degrees,
    load_edge_list,
    write_edge_list,
)
from .harness import (
    ABSENT,
    CSV_COLUMNS,
    ExperimentSpec,
    SensBound,
    SensReport,
    TrialRecord,
    TrialResults,
    emit_csv,
    emit_plot,
    materialize_dataset,
    run_experiment,
    sens_check,
)
from .local import (
    KIND_DEGREE,
    KIND_LOG_STAT,
    NodeReport,
    ProtocolError,
    aggregate_degree_reports,
    aggregate_log_reports,
    local_fit,
    local_run,
    node_release_degree,
    node_release_log,
    release_degrees,
    release_log_stats,
)
from .mechanisms import (
    DATASET_STREAM,
    STREAM_BASELINE,
    STREAM_GENERATOR,
    STREAM_N_NOISE,
    STREAM_NODE_NOISE,
    STREAM_T_NOISE,
    PrivacyBudget,
    RngSeed,
    laplace_from_uniform,
    laplace_sample,
    laplace_vector,
    sensitivity_degree,
    sensitivity_log_stat,
    sensitivity_n,
    sensitivity_t_disc,
    split_budget,
    substream,
)
from .powerlaw import (
    METHOD_BASELINE,
    METHOD_DISCRETE,
    METHOD_NUMERICAL,
    MODEL_CENTRAL,
    MODEL_LOCAL,
    MODEL_NON_PRIVATE,
    RELEASE_DEGREE,
    RELEASE_LOG_STAT,
    RELEASE_NONE,
    SEARCH_HI,
    SEARCH_LO,
    AlphaEstimate,
    TailConfig,
    TailStats,
    fit_discrete_approx,
    fit_numerical,
    log_likelihood,
    pmf,
    shifted_log_sum,
    tail_stats,
    zeta_trunc,
)
from .syngen import (
    GeneratorSpec,
    RealizationReport,
    realize_graph,
    sample_degree,
    sample_degree_sequence,
)

__version__ = "0.1.0"

__all__ = [
    "ABSENT",
    "AlphaEstimate",
    "CSV_COLUMNS",
    "DATASET_STREAM",
    "DegreeSequence",
    "EdgeListParseError",
    "ExperimentSpec",
    "GeneratorSpec",
    "Graph",
    "KIND_DEGREE",
    "KIND_LOG_STAT",
    "LoadResult",
    "METHOD_BASELINE",
    "METHOD_DISCRETE",
    "METHOD_NUMERICAL",
    "MODEL_CENTRAL",
    "MODEL_LOCAL",
    "MODEL_NON_PRIVATE",
    "NodeReport",
    "NoisySortedDegrees",
    "NoisyTailStats",
    "PrivacyBudget",
    "ProtocolError",
    "RELEASE_DEGREE",
    "RELEASE_LOG_STAT",
    "RELEASE_NONE",
    "RealizationReport",
    "RngSeed",
    "SEARCH_HI",
    "SEARCH_LO",
    "STREAM_BASELINE",
    "STREAM_GENERATOR",
    "STREAM_N_NOISE",
    "STREAM_NODE_NOISE",
    "STREAM_T_NOISE",
    "SensBound",
    "SensReport",
    "TailConfig",
    "TailStats",
    "TrialRecord",
    "TrialResults",
    "aggregate_degree_reports",
    "aggregate_log_reports",
    "baseline_fit",
    "baseline_release",
    "baseline_run",
    "central_da",
    "central_no",
    "degrees",
    "emit_csv",
    "emit_plot",
    "fit_discrete_approx",
    "fit_noisy",
    "fit_numerical",
    "isotonic_postprocess",
    "laplace_from_uniform",
    "laplace_sample",
    "laplace_vector",
    "load_edge_list",
    "local_fit",
    "local_run",
    "log_likelihood",
    "materialize_dataset",
    "node_release_degree",
    "node_release_log",
    "noisy_tail_stats",
    "pmf",
    "realize_graph",
    "release_degrees",
    "release_log_stats",
    "run_experiment",
    "sample_degree",
    "sample_degree_sequence",
    "sens_check",
    "sensitivity_degree",
    "sensitivity_log_stat",
    "sensitivity_n",
    "sensitivity_t_disc",
    "shifted_log_sum",
    "split_budget",
    "substream",
    "tail_stats",
    "write_edge_list",
    "zeta_trunc",
]
