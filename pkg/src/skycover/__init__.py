"""QoS-aware placement of aerial base stations over a layered road scene."""

__version__ = "0.1.0"

from .baselines import PsoParams, ScaParams, ga_plain_solve, pso_solve, sca_solve
from .channel import ChannelParams, avg_path_loss_db, los_probability, uplink_rate_mbps
from .coverage import (
    PENALTY_FITNESS,
    CoverageParams,
    DeploymentPlan,
    EvalResult,
    UavPlacement,
    coverage_radius,
    evaluate_plan,
    validate_constraints,
)
from .experiments import (
    ExperimentConfig,
    ExperimentResult,
    RunRecord,
    SummaryRecord,
    Sweep,
    config_from_json,
    config_to_json,
    emit_csv,
    emit_summary_csv,
    load_config,
    preset,
    preset_names,
    run_experiment,
)
from .genetic import GaParams, SolveReport, solve
from .gwo import GwoParams, gwo_search
from .kmeans import ClusterResult, KmeansParams, kmeans
from .oracle import OracleResult, exhaustive_search
from .scene import RoadScene, RoadSpec, Vehicle, build_scene, default_scene, spawn_vehicles

__all__ = [
    "__version__",
    "ChannelParams",
    "ClusterResult",
    "CoverageParams",
    "DeploymentPlan",
    "EvalResult",
    "ExperimentConfig",
    "ExperimentResult",
    "GaParams",
    "GwoParams",
    "KmeansParams",
    "OracleResult",
    "PENALTY_FITNESS",
    "PsoParams",
    "RoadScene",
    "RoadSpec",
    "RunRecord",
    "ScaParams",
    "SolveReport",
    "SummaryRecord",
    "Sweep",
    "UavPlacement",
    "Vehicle",
    "avg_path_loss_db",
    "build_scene",
    "config_from_json",
    "config_to_json",
    "coverage_radius",
    "default_scene",
    "emit_csv",
    "emit_summary_csv",
    "evaluate_plan",
    "exhaustive_search",
    "ga_plain_solve",
    "gwo_search",
    "kmeans",
    "load_config",
    "los_probability",
    "preset",
    "preset_names",
    "pso_solve",
    "run_experiment",
    "sca_solve",
    "solve",
    "spawn_vehicles",
    "uplink_rate_mbps",
    "validate_constraints",
]
