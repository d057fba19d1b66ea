"""Exact coupling-potential metrics and a transformation calculus for
encapsulated graphs of absolute information hiding."""

from .graph import (
    BRUTE_FORCE_LIMIT,
    CapacityError,
    DistributionStats,
    EncapsulatedGraph,
    MAX_NODES,
    MpeBreakdown,
    RegionSpec,
    brute_force_mpe,
    configuration_efficiency,
    external_mpe,
    hidden_stddev,
    internal_mpe,
    mpe,
    violational_stddev,
)
from .transform import (
    DeltaReport,
    FUNDAMENTAL_KINDS,
    OracleMismatchError,
    TransformKind,
    Transformation,
    ValidationError,
    add_hidden,
    add_violational,
    apply,
    apply_checked,
    apply_sequence,
    convert,
    predict_delta,
    translate_hidden,
    translate_violational,
    validate,
)
from .experiment import (
    ExperimentConfig,
    ExperimentSeries,
    PRESETS,
    PileMode,
    SeriesPoint,
    SourcePolicy,
    generate_random_graph,
    preset_config,
    run_batch,
    run_experiment,
    run_hidden_pile,
    run_violational_pile,
)
from .formats import (
    FormatError,
    GRAPH_HEADER,
    MANIFEST_HEADER,
    ingest_manifest,
    read_graph,
    write_graph,
    write_series_csv,
)
from .verify import VerificationResult, run_verification

__all__ = [
    "BRUTE_FORCE_LIMIT",
    "CapacityError",
    "DeltaReport",
    "DistributionStats",
    "EncapsulatedGraph",
    "ExperimentConfig",
    "ExperimentSeries",
    "FormatError",
    "FUNDAMENTAL_KINDS",
    "GRAPH_HEADER",
    "MANIFEST_HEADER",
    "MAX_NODES",
    "MpeBreakdown",
    "OracleMismatchError",
    "PRESETS",
    "PileMode",
    "RegionSpec",
    "SeriesPoint",
    "SourcePolicy",
    "TransformKind",
    "Transformation",
    "ValidationError",
    "VerificationResult",
    "add_hidden",
    "add_violational",
    "apply",
    "apply_checked",
    "apply_sequence",
    "brute_force_mpe",
    "configuration_efficiency",
    "convert",
    "external_mpe",
    "generate_random_graph",
    "hidden_stddev",
    "ingest_manifest",
    "internal_mpe",
    "mpe",
    "predict_delta",
    "preset_config",
    "read_graph",
    "run_batch",
    "run_experiment",
    "run_hidden_pile",
    "run_verification",
    "run_violational_pile",
    "translate_hidden",
    "translate_violational",
    "validate",
    "violational_stddev",
    "write_graph",
    "write_series_csv",
]
