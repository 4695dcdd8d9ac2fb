"""FastAPI wrapper around the core package.

The service is stateless: every request carries its own preset name or
config document, so two calls with the same body and seed return identical
numbers. The CLI mounts this app in-process by default.
"""

from __future__ import annotations

import dataclasses

from fastapi import FastAPI, HTTPException

from .. import __version__
from ..coverage import DeploymentPlan, UavPlacement, evaluate_plan, validate_constraints
from ..experiments import (
    SOLVER_NAMES,
    ExperimentConfig,
    _dispatch,
    config_from_json,
    config_to_json,
    preset,
    preset_names,
    run_experiment,
)
from ..oracle import exhaustive_search
from ..scene import Vehicle, spawn_vehicles
from .schemas import (
    EvaluateRequest,
    EvaluateResponse,
    ExperimentRequest,
    ExperimentResponse,
    HealthResponse,
    OracleRequest,
    OracleResponse,
    PresetsResponse,
    SolveRequest,
    SolveResponse,
    ValidateRequest,
    ValidateResponse,
)


def _resolve_config(preset_name, config_doc) -> ExperimentConfig:
    if preset_name is not None:
        try:
            return preset(preset_name)
        except KeyError:
            raise HTTPException(status_code=404, detail="unknown preset %r" % preset_name)
    if config_doc is not None:
        try:
            return config_from_json(config_doc)
        except ValueError as exc:
            raise HTTPException(status_code=400, detail=str(exc))
    return ExperimentConfig()


def _plan_from_rows(rows, default_capacity: float) -> DeploymentPlan:
    uavs = []
    for i, row in enumerate(rows):
        if len(row) == 3:
            x, y, h = row
            cap = default_capacity
        elif len(row) == 4:
            x, y, h, cap = row
        else:
            raise HTTPException(
                status_code=400,
                detail="plan row %d must be [x, y, h] or [x, y, h, capacity]" % i,
            )
        try:
            uavs.append(UavPlacement(x=x, y=y, h=h, capacity_mbps=cap))
        except ValueError as exc:
            raise HTTPException(status_code=400, detail="plan row %d: %s" % (i, exc))
    if not uavs:
        raise HTTPException(status_code=400, detail="plan must contain at least one row")
    return DeploymentPlan(uavs=tuple(uavs))


def _vehicles_from(req, config: ExperimentConfig) -> list[Vehicle]:
    if req.vehicles is None:
        return spawn_vehicles(config.scene, config.vehicle_count, req.seed)
    out = []
    for i, row in enumerate(req.vehicles):
        if len(row) not in (4, 5):
            raise HTTPException(
                status_code=400,
                detail="vehicle row %d must be [x, y, elevation, rate] with optional under-bridge flag" % i,
            )
        under = bool(row[4]) if len(row) == 5 else False
        out.append(
            Vehicle(
                id=i,
                x=float(row[0]),
                y=float(row[1]),
                elevation_m=float(row[2]),
                rate_mbps=float(row[3]),
                road_index=-1,
                under_bridge=under,
            )
        )
    if not out:
        raise HTTPException(status_code=400, detail="vehicle list must be non-empty")
    return out


def create_app() -> FastAPI:
    app = FastAPI(title="skycover", version=__version__)

    @app.get("/health", response_model=HealthResponse)
    def health() -> HealthResponse:
        return HealthResponse(status="ok", version=__version__)

    @app.get("/presets", response_model=PresetsResponse)
    def presets() -> PresetsResponse:
        return PresetsResponse(presets=list(preset_names()))

    @app.get("/presets/{name}")
    def preset_config(name: str) -> dict:
        try:
            return config_to_json(preset(name))
        except KeyError:
            raise HTTPException(status_code=404, detail="unknown preset %r" % name)

    @app.post("/solve", response_model=SolveResponse)
    def solve(req: SolveRequest) -> SolveResponse:
        if req.solver not in SOLVER_NAMES:
            raise HTTPException(
                status_code=400,
                detail="unknown solver %r; options are %r" % (req.solver, SOLVER_NAMES),
            )
        config = _resolve_config(req.preset, req.config)
        vehicles = spawn_vehicles(config.scene, config.vehicle_count, req.seed)
        report = _dispatch(config, req.solver, vehicles, req.seed)
        return SolveResponse(
            solver=req.solver,
            seed=req.seed,
            best_plan=[[u.x, u.y, u.h, u.capacity_mbps] for u in report.best_plan.uavs],
            best_fitness=report.best_fitness,
            coverage_fraction=report.coverage_fraction,
            per_uav_radii=list(report.per_uav_radii),
            generation_best_curve=list(report.generation_best_curve),
            feasible=report.feasible,
        )

    @app.post("/evaluate", response_model=EvaluateResponse)
    def evaluate(req: EvaluateRequest) -> EvaluateResponse:
        config = _resolve_config(req.preset, req.config)
        plan = _plan_from_rows(req.plan, config.uav_capacity_mbps)
        vehicles = _vehicles_from(req, config)
        result = evaluate_plan(plan, vehicles, config.channel, config.coverage)
        violation = None
        if result.violation is not None:
            violation = dataclasses.asdict(result.violation)
        return EvaluateResponse(
            fitness=result.fitness,
            feasible=result.feasible,
            per_uav_counts=list(result.per_uav_counts),
            assignment=list(result.assignment),
            violation=violation,
        )

    @app.post("/validate", response_model=ValidateResponse)
    def validate(req: ValidateRequest) -> ValidateResponse:
        config = _resolve_config(req.preset, req.config)
        plan = _plan_from_rows(req.plan, config.uav_capacity_mbps)
        vehicles = _vehicles_from(req, config)
        result = evaluate_plan(plan, vehicles, config.channel, config.coverage)
        tags = validate_constraints(
            plan,
            vehicles,
            result,
            scene=config.scene,
            channel_params=config.channel,
            coverage_params=config.coverage,
        )
        return ValidateResponse(violations=list(tags), feasible=result.feasible)

    @app.post("/experiment", response_model=ExperimentResponse)
    def experiment(req: ExperimentRequest) -> ExperimentResponse:
        config = _resolve_config(req.preset, req.config)
        result = run_experiment(config)
        return ExperimentResponse(
            records=[dataclasses.asdict(r) for r in result.records],
            summaries=[dataclasses.asdict(s) for s in result.summaries],
        )

    @app.post("/oracle", response_model=OracleResponse)
    def oracle(req: OracleRequest) -> OracleResponse:
        config = _resolve_config(req.preset, req.config)
        vehicles = spawn_vehicles(config.scene, req.vehicle_count, req.seed)
        xy_bounds = ((0.0, config.scene.bounds[0]), (0.0, config.scene.bounds[1]))
        try:
            result = exhaustive_search(
                vehicles,
                req.n_uavs,
                channel=config.channel,
                coverage=config.coverage,
                capacity_mbps=config.uav_capacity_mbps,
                xy_bounds=xy_bounds,
                nx=req.nx,
                ny=req.ny,
                n_altitudes=req.n_altitudes,
            )
        except ValueError as exc:
            raise HTTPException(status_code=400, detail=str(exc))
        return OracleResponse(
            best_plan=[[u.x, u.y, u.h, u.capacity_mbps] for u in result.best_plan.uavs],
            best_fitness=result.best_fitness,
            plans_evaluated=result.plans_evaluated,
        )

    return app
