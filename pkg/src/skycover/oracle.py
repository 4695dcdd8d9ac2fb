"""Brute-force reference optimum for small instances.

Sweeps relay positions over a cell-centered horizontal grid crossed with a
short ladder of altitudes, scoring every combination with the same evaluator
the solvers use. Intended for single-relay instances with a handful of
vehicles; the plan count grows as (nx * ny * n_altitudes) ** n_uavs.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass

import numpy as np

from .channel import ChannelParams
from .coverage import CoverageParams, DeploymentPlan, UavPlacement, evaluate_plan
from .genetic import DEFAULT_XY_BOUNDS, XyBounds
from .scene import VehicleSet


@dataclass(frozen=True)
class OracleResult:
    best_plan: DeploymentPlan
    best_fitness: float
    plans_evaluated: int


def exhaustive_search(
    vehicles,
    n_uavs: int = 1,
    *,
    channel: ChannelParams,
    coverage: CoverageParams,
    capacity_mbps: float = 40.0,
    xy_bounds: XyBounds = DEFAULT_XY_BOUNDS,
    nx: int = 30,
    ny: int = 30,
    n_altitudes: int = 5,
    max_plans: int = 200_000,
) -> OracleResult:
    """Evaluate every grid plan and keep the first maximum encountered."""
    if n_uavs < 1:
        raise ValueError("n_uavs must be >= 1")
    if nx < 1 or ny < 1 or n_altitudes < 1:
        raise ValueError("grid dimensions must be positive")
    vs = VehicleSet.coerce(vehicles)
    (x0, x1), (y0, y1) = xy_bounds
    xs = x0 + (np.arange(nx) + 0.5) * (x1 - x0) / nx
    ys = y0 + (np.arange(ny) + 0.5) * (y1 - y0) / ny
    hs = np.linspace(coverage.h_min_m, coverage.h_max_m, n_altitudes)
    cells = [(float(x), float(y), float(h)) for x in xs for y in ys for h in hs]

    total = len(cells) ** n_uavs
    if total > max_plans:
        raise ValueError(
            "grid would enumerate %d plans, above the %d cap" % (total, max_plans)
        )

    best_plan = None
    best_fitness = -np.inf
    evaluated = 0
    for combo in itertools.product(cells, repeat=n_uavs):
        plan = DeploymentPlan(
            tuple(UavPlacement(x, y, h, capacity_mbps) for x, y, h in combo)
        )
        fitness = evaluate_plan(plan, vs, channel, coverage).fitness
        evaluated += 1
        if fitness > best_fitness:
            best_fitness = fitness
            best_plan = plan
    assert best_plan is not None
    return OracleResult(best_plan=best_plan, best_fitness=float(best_fitness), plans_evaluated=evaluated)
