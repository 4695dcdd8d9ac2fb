"""Request and response envelopes for the HTTP layer.

Plans travel as lists of [x, y, h, capacity_mbps] rows; vehicles as
[x, y, elevation_m, rate_mbps] or with a trailing under-bridge flag. The
`config` field everywhere takes the same JSON document the CLI reads from
disk, and `preset` takes one of the built-in experiment names. Exactly one
of the two may be set; neither means library defaults.
"""

from __future__ import annotations

from typing import Optional

from pydantic import BaseModel, Field, model_validator


class SolveRequest(BaseModel):
    preset: Optional[str] = None
    config: Optional[dict] = None
    solver: str = "hybrid"
    seed: int = 0

    @model_validator(mode="after")
    def _one_source(self):
        if self.preset is not None and self.config is not None:
            raise ValueError("set preset or config, not both")
        return self


class SolveResponse(BaseModel):
    solver: str
    seed: int
    best_plan: list[list[float]]
    best_fitness: float
    coverage_fraction: float
    per_uav_radii: list[float]
    generation_best_curve: list[float]
    feasible: bool


class EvaluateRequest(BaseModel):
    plan: list[list[float]]
    preset: Optional[str] = None
    config: Optional[dict] = None
    seed: int = 0
    vehicles: Optional[list[list[float]]] = None

    @model_validator(mode="after")
    def _one_source(self):
        if self.preset is not None and self.config is not None:
            raise ValueError("set preset or config, not both")
        return self


class EvaluateResponse(BaseModel):
    fitness: float
    feasible: bool
    per_uav_counts: list[int]
    assignment: list[int]
    violation: Optional[dict] = None


class ValidateRequest(EvaluateRequest):
    pass


class ValidateResponse(BaseModel):
    violations: list[str]
    feasible: bool


class ExperimentRequest(BaseModel):
    preset: Optional[str] = None
    config: Optional[dict] = None

    @model_validator(mode="after")
    def _one_source(self):
        if self.preset is not None and self.config is not None:
            raise ValueError("set preset or config, not both")
        return self


class ExperimentResponse(BaseModel):
    records: list[dict]
    summaries: list[dict]


class OracleRequest(BaseModel):
    preset: Optional[str] = None
    config: Optional[dict] = None
    seed: int = 0
    vehicle_count: int = Field(default=8, ge=1)
    n_uavs: int = Field(default=1, ge=1)
    nx: int = Field(default=30, ge=1)
    ny: int = Field(default=30, ge=1)
    n_altitudes: int = Field(default=5, ge=1)

    @model_validator(mode="after")
    def _one_source(self):
        if self.preset is not None and self.config is not None:
            raise ValueError("set preset or config, not both")
        return self


class OracleResponse(BaseModel):
    best_plan: list[list[float]]
    best_fitness: float
    plans_evaluated: int


class PresetsResponse(BaseModel):
    presets: list[str]


class HealthResponse(BaseModel):
    status: str
    version: str
