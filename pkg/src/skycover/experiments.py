"""Experiment harness: presets, seeded replication, sweeps, CSV emission.

A run spawns vehicles and drives one solver per (sweep point, solver,
replicate) triple with seed = base_seed + replicate; the same replicate seed
feeds both the vehicle draw and the solver, so different solvers at the same
replicate see identical scenes. Output ordering is fixed: sweep points
sorted, solvers sorted, replicates ascending. Everything numeric is
reproducible byte-for-byte except wall time.
"""

from __future__ import annotations

import dataclasses
import json
import time
from dataclasses import dataclass, field, replace
from pathlib import Path
from typing import Optional, Sequence

from .baselines import PsoParams, ScaParams, ga_plain_solve, pso_solve, sca_solve
from .channel import ChannelParams
from .coverage import CoverageParams
from .genetic import DEFAULT_XY_BOUNDS, GaParams, SolveReport
from .genetic import solve as hybrid_solve
from .gwo import GwoParams
from .scene import RoadScene, RoadSpec, Vehicle, build_scene, default_scene, spawn_vehicles

SWEEP_PARAMS = ("n_uavs", "r_min_mbps", "pc_pm")
SOLVER_NAMES = ("ga", "hybrid", "pso", "sca")

CSV_HEADER = "solver,seed,n_uavs,r_min_mbps,p_c,p_m,coverage_fraction,best_fitness,wall_time_s,feasible"
SUMMARY_HEADER = "sweep_param,sweep_value,solver,replicates,mean_coverage,min_coverage,max_coverage"


@dataclass(frozen=True)
class Sweep:
    param: str
    values: tuple

    def __post_init__(self) -> None:
        if self.param not in SWEEP_PARAMS:
            raise ValueError("sweep param must be one of %r, got %r" % (SWEEP_PARAMS, self.param))
        if not self.values:
            raise ValueError("sweep values must be non-empty")


@dataclass(frozen=True)
class ExperimentConfig:
    scene: RoadScene = field(default_factory=default_scene)
    vehicle_count: int = 80
    n_uavs: int = 6
    channel: ChannelParams = field(default_factory=ChannelParams)
    coverage: CoverageParams = field(default_factory=CoverageParams)
    ga: GaParams = field(default_factory=GaParams)
    gwo: GwoParams = field(default_factory=GwoParams)
    pso: PsoParams = field(default_factory=PsoParams)
    sca: ScaParams = field(default_factory=ScaParams)
    kmeans_max_iter: int = 100
    kmeans_tolerance_m: float = 1e-3
    uav_capacity_mbps: float = 40.0
    solvers: tuple[str, ...] = ("hybrid",)
    replicates: int = 30
    base_seed: int = 1000
    sweep: Optional[Sweep] = None

    def __post_init__(self) -> None:
        if self.vehicle_count < 1:
            raise ValueError("vehicle_count must be >= 1")
        if self.n_uavs < 1:
            raise ValueError("n_uavs must be >= 1")
        if self.replicates < 1:
            raise ValueError("replicates must be >= 1")
        if self.uav_capacity_mbps <= 0:
            raise ValueError("uav_capacity_mbps must be positive")
        for name in self.solvers:
            if name not in SOLVER_NAMES:
                raise ValueError("unknown solver %r; options are %r" % (name, SOLVER_NAMES))


@dataclass(frozen=True)
class RunRecord:
    solver: str
    seed: int
    n_uavs: int
    r_min_mbps: float
    p_c: float
    p_m: float
    coverage_fraction: float
    best_fitness: float
    wall_time_s: float
    feasible: bool


@dataclass(frozen=True)
class SummaryRecord:
    sweep_param: str
    sweep_value: str
    solver: str
    replicates: int
    mean_coverage: float
    min_coverage: float
    max_coverage: float


@dataclass(frozen=True)
class ExperimentResult:
    records: tuple[RunRecord, ...]
    summaries: tuple[SummaryRecord, ...]


def _apply_sweep(config: ExperimentConfig, point) -> ExperimentConfig:
    if config.sweep is None or point is None:
        return config
    if config.sweep.param == "n_uavs":
        return replace(config, n_uavs=int(point))
    if config.sweep.param == "r_min_mbps":
        return replace(config, channel=replace(config.channel, r_min_mbps=float(point)))
    p_c, p_m = point
    return replace(config, ga=replace(config.ga, crossover_rate=float(p_c), mutation_rate=float(p_m)))


def _dispatch(config: ExperimentConfig, solver: str, vehicles: Sequence[Vehicle], seed: int) -> SolveReport:
    xy_bounds = ((0.0, config.scene.bounds[0]), (0.0, config.scene.bounds[1]))
    common = dict(
        channel=config.channel,
        coverage=config.coverage,
        capacity_mbps=config.uav_capacity_mbps,
        xy_bounds=xy_bounds,
        rng_seed=seed,
    )
    if solver == "hybrid":
        gwo = replace(config.gwo, bounds=xy_bounds)
        return hybrid_solve(
            vehicles,
            config.n_uavs,
            ga=config.ga,
            gwo_params=gwo,
            kmeans_max_iter=config.kmeans_max_iter,
            kmeans_tolerance_m=config.kmeans_tolerance_m,
            **common,
        )
    if solver == "ga":
        return ga_plain_solve(vehicles, config.n_uavs, ga=config.ga, **common)
    if solver == "pso":
        return pso_solve(vehicles, config.n_uavs, pso=config.pso, **common)
    if solver == "sca":
        return sca_solve(vehicles, config.n_uavs, sca=config.sca, **common)
    raise ValueError("unknown solver %r" % solver)


def _format_sweep_value(param: str, point) -> str:
    if point is None:
        return ""
    if param == "pc_pm":
        return "%g/%g" % (float(point[0]), float(point[1]))
    return repr(float(point)) if param == "r_min_mbps" else str(int(point))


def run_experiment(config: ExperimentConfig) -> ExperimentResult:
    """Execute the full grid and return records plus per-cell summaries."""
    points = sorted(config.sweep.values) if config.sweep is not None else [None]
    solvers = sorted(set(config.solvers))
    sweep_param = config.sweep.param if config.sweep is not None else ""

    records = []
    summaries = []
    for point in points:
        cfg = _apply_sweep(config, point)
        for solver in solvers:
            coverages = []
            for r in range(cfg.replicates):
                seed = cfg.base_seed + r
                vehicles = spawn_vehicles(cfg.scene, cfg.vehicle_count, seed)
                started = time.perf_counter()
                report = _dispatch(cfg, solver, vehicles, seed)
                wall = time.perf_counter() - started
                records.append(
                    RunRecord(
                        solver=solver,
                        seed=seed,
                        n_uavs=cfg.n_uavs,
                        r_min_mbps=cfg.channel.r_min_mbps,
                        p_c=cfg.ga.crossover_rate,
                        p_m=cfg.ga.mutation_rate,
                        coverage_fraction=report.coverage_fraction,
                        best_fitness=report.best_fitness,
                        wall_time_s=wall,
                        feasible=report.feasible,
                    )
                )
                coverages.append(report.coverage_fraction)
            summaries.append(
                SummaryRecord(
                    sweep_param=sweep_param,
                    sweep_value=_format_sweep_value(sweep_param, point),
                    solver=solver,
                    replicates=cfg.replicates,
                    mean_coverage=sum(coverages) / len(coverages),
                    min_coverage=min(coverages),
                    max_coverage=max(coverages),
                )
            )
    return ExperimentResult(records=tuple(records), summaries=tuple(summaries))


def _record_line(record: RunRecord) -> str:
    return ",".join(
        [
            record.solver,
            str(record.seed),
            str(record.n_uavs),
            repr(record.r_min_mbps),
            repr(record.p_c),
            repr(record.p_m),
            repr(record.coverage_fraction),
            repr(record.best_fitness),
            "%.3f" % record.wall_time_s,
            "true" if record.feasible else "false",
        ]
    )


def emit_csv(records: Sequence[RunRecord], path) -> Path:
    """Write records in the fixed column order, one line per run."""
    path = Path(path)
    lines = [CSV_HEADER] + [_record_line(r) for r in records]
    path.write_text("\n".join(lines) + "\n", encoding="utf-8")
    return path


def parse_records_csv(path) -> list[RunRecord]:
    text = Path(path).read_text(encoding="utf-8")
    lines = [ln for ln in text.splitlines() if ln]
    if not lines or lines[0] != CSV_HEADER:
        raise ValueError("unrecognised records header in %s" % path)
    records = []
    for ln in lines[1:]:
        f = ln.split(",")
        records.append(
            RunRecord(
                solver=f[0],
                seed=int(f[1]),
                n_uavs=int(f[2]),
                r_min_mbps=float(f[3]),
                p_c=float(f[4]),
                p_m=float(f[5]),
                coverage_fraction=float(f[6]),
                best_fitness=float(f[7]),
                wall_time_s=float(f[8]),
                feasible=f[9] == "true",
            )
        )
    return records


def emit_summary_csv(summaries: Sequence[SummaryRecord], path) -> Path:
    path = Path(path)
    lines = [SUMMARY_HEADER]
    for s in summaries:
        lines.append(
            ",".join(
                [
                    s.sweep_param,
                    s.sweep_value,
                    s.solver,
                    str(s.replicates),
                    repr(s.mean_coverage),
                    repr(s.min_coverage),
                    repr(s.max_coverage),
                ]
            )
        )
    path.write_text("\n".join(lines) + "\n", encoding="utf-8")
    return path


def preset(name: str) -> ExperimentConfig:
    """Frozen experiment configurations used throughout the docs and tests."""
    if name == "high_density":
        return ExperimentConfig(vehicle_count=80, n_uavs=6, replicates=30)
    if name == "low_density":
        return ExperimentConfig(vehicle_count=30, n_uavs=4, replicates=30)
    if name == "sweep_uavs":
        return ExperimentConfig(
            vehicle_count=80,
            replicates=10,
            solvers=SOLVER_NAMES,
            sweep=Sweep("n_uavs", (3, 4, 5, 6, 7, 8)),
        )
    if name == "sweep_rmin":
        return ExperimentConfig(
            vehicle_count=80,
            n_uavs=6,
            replicates=10,
            solvers=SOLVER_NAMES,
            sweep=Sweep("r_min_mbps", (2.0, 2.4, 2.8, 3.2, 3.6, 4.0)),
        )
    if name == "sweep_pc_pm":
        grid = tuple((pc, pm) for pc in (0.6, 0.8, 1.0) for pm in (0.05, 0.1, 0.2))
        return ExperimentConfig(
            vehicle_count=80, n_uavs=6, replicates=5, sweep=Sweep("pc_pm", grid)
        )
    raise KeyError("unknown preset %r" % name)


def preset_names() -> tuple[str, ...]:
    return ("high_density", "low_density", "sweep_uavs", "sweep_rmin", "sweep_pc_pm")


# --- JSON config -----------------------------------------------------------
#
# Every leaf is annotated {"value": v, "source": s} where s records whether
# the number comes from the published experimental setup ("reference"), was
# back-derived from published results ("derived"), or is an invented default
# of this artifact ("default"). The loader also accepts bare leaves.

_REFERENCE_KEYS = {
    ("channel", "carrier_hz"),
    ("channel", "tx_power_w"),
    ("channel", "total_bandwidth_hz"),
    ("channel", "r_min_mbps"),
    ("channel", "util_a"),
    ("coverage", "view_angle_deg"),
    ("ga", "generations"),
    ("ga", "pop_size"),
    ("ga", "crossover_rate"),
    ("ga", "mutation_rate"),
    ("", "vehicle_count"),
    ("", "n_uavs"),
    ("", "replicates"),
}
_DERIVED_KEYS = {("coverage", "h_alpha")}


def _source_for(section: str, key: str) -> str:
    if (section, key) in _REFERENCE_KEYS:
        return "reference"
    if (section, key) in _DERIVED_KEYS:
        return "derived"
    return "default"


def _annotate(section: str, obj) -> dict:
    out = {}
    for f in dataclasses.fields(obj):
        value = getattr(obj, f.name)
        out[f.name] = {"value": value, "source": _source_for(section, f.name)}
    return out


def config_to_json(config: ExperimentConfig) -> dict:
    scene = {
        "bounds": list(config.scene.bounds),
        "roads": [
            {
                "origin_xy": list(r.origin_xy),
                "heading": list(r.heading),
                "length_m": r.length_m,
                "width_m": r.width_m,
                "elevation_start_m": r.elevation_start_m,
                "elevation_end_m": r.elevation_end_m,
                "layer_tag": r.layer_tag,
            }
            for r in config.scene.roads
        ],
        "source": "default",
    }
    doc = {
        "scene": scene,
        "channel": _annotate("channel", config.channel),
        "coverage": _annotate("coverage", config.coverage),
        "ga": _annotate("ga", config.ga),
        "gwo": {
            "n_wolves": {"value": config.gwo.n_wolves, "source": "default"},
            "max_iter": {"value": config.gwo.max_iter, "source": "default"},
        },
        "pso": _annotate("pso", config.pso),
        "sca": _annotate("sca", config.sca),
        "kmeans_max_iter": {"value": config.kmeans_max_iter, "source": "default"},
        "kmeans_tolerance_m": {"value": config.kmeans_tolerance_m, "source": "default"},
        "uav_capacity_mbps": {"value": config.uav_capacity_mbps, "source": "default"},
        "vehicle_count": {"value": config.vehicle_count, "source": _source_for("", "vehicle_count")},
        "n_uavs": {"value": config.n_uavs, "source": _source_for("", "n_uavs")},
        "solvers": {"value": list(config.solvers), "source": "default"},
        "replicates": {"value": config.replicates, "source": _source_for("", "replicates")},
        "base_seed": {"value": config.base_seed, "source": "default"},
    }
    if config.sweep is not None:
        doc["sweep"] = {
            "param": config.sweep.param,
            "values": [list(v) if isinstance(v, tuple) else v for v in config.sweep.values],
        }
    return doc


def _unwrap(node):
    if isinstance(node, dict) and "value" in node:
        return node["value"]
    return node


def _section(data: dict, key: str) -> dict:
    node = data.get(key, {})
    if not isinstance(node, dict):
        raise ValueError("config section %r must be an object" % key)
    return {k: _unwrap(v) for k, v in node.items() if k != "source"}


def _build(cls, section: dict, name: str, defaults=None):
    base = defaults if defaults is not None else cls()
    allowed = {f.name for f in dataclasses.fields(cls)}
    unknown = set(section) - allowed
    if unknown:
        raise ValueError("unknown field %r in config section %r" % (sorted(unknown)[0], name))
    try:
        return replace(base, **{k: tuple(v) if isinstance(v, list) else v for k, v in section.items()})
    except (TypeError, ValueError) as exc:
        raise ValueError("invalid %s config: %s" % (name, exc)) from exc


def config_from_json(data: dict) -> ExperimentConfig:
    """Build a config from a JSON document, defaulting every omitted field."""
    if not isinstance(data, dict):
        raise ValueError("config document must be a JSON object")
    known = {
        "scene", "channel", "coverage", "ga", "gwo", "pso", "sca", "sweep",
        "kmeans_max_iter", "kmeans_tolerance_m", "uav_capacity_mbps",
        "vehicle_count", "n_uavs", "solvers", "replicates", "base_seed",
    }
    unknown = set(data) - known
    if unknown:
        raise ValueError("unknown config field %r" % sorted(unknown)[0])

    if "scene" in data:
        scene_doc = data["scene"]
        roads = [
            RoadSpec(
                origin_xy=tuple(r["origin_xy"]),
                heading=tuple(r["heading"]),
                length_m=r["length_m"],
                width_m=r["width_m"],
                elevation_start_m=r["elevation_start_m"],
                elevation_end_m=r["elevation_end_m"],
                layer_tag=r.get("layer_tag", "lower"),
            )
            for r in scene_doc["roads"]
        ]
        scene = build_scene(roads, tuple(scene_doc.get("bounds", (3000.0, 3000.0, 3000.0))))
    else:
        scene = default_scene()

    sweep = None
    if "sweep" in data and data["sweep"] is not None:
        sw = data["sweep"]
        values = tuple(tuple(v) if isinstance(v, list) else v for v in sw.get("values", ()))
        sweep = Sweep(param=sw.get("param", ""), values=values)

    scalars = {}
    for key in ("kmeans_max_iter", "kmeans_tolerance_m", "uav_capacity_mbps",
                "vehicle_count", "n_uavs", "replicates", "base_seed"):
        if key in data:
            scalars[key] = _unwrap(data[key])
    solvers = tuple(_unwrap(data["solvers"])) if "solvers" in data else ("hybrid",)

    try:
        return ExperimentConfig(
            scene=scene,
            channel=_build(ChannelParams, _section(data, "channel"), "channel"),
            coverage=_build(CoverageParams, _section(data, "coverage"), "coverage"),
            ga=_build(GaParams, _section(data, "ga"), "ga"),
            gwo=_build(GwoParams, _section(data, "gwo"), "gwo"),
            pso=_build(PsoParams, _section(data, "pso"), "pso"),
            sca=_build(ScaParams, _section(data, "sca"), "sca"),
            solvers=solvers,
            sweep=sweep,
            **scalars,
        )
    except TypeError as exc:
        raise ValueError("invalid config: %s" % exc) from exc


def load_config(path) -> ExperimentConfig:
    with open(path, "r", encoding="utf-8") as fh:
        return config_from_json(json.load(fh))


def write_config_json(config: ExperimentConfig, path) -> Path:
    path = Path(path)
    path.write_text(json.dumps(config_to_json(config), indent=2) + "\n", encoding="utf-8")
    return path
