"""Reference solvers run against the same constrained evaluator.

A plain genetic run with uniform-random initialisation, a global-best
particle swarm, and a sine-cosine position update, all over the flattened
(x, y, h) plan vector. Hyperparameters are textbook defaults, sized so each
solver spends the same evaluation budget as the hybrid (population times
iterations).
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .channel import ChannelParams
from .coverage import CoverageParams, DeploymentPlan, coverage_radius, evaluate_plan
from .genetic import DEFAULT_XY_BOUNDS, GaParams, Population, SolveReport, XyBounds, run_ga
from .scene import VehicleSet


@dataclass(frozen=True)
class PsoParams:
    n_particles: int = 10
    max_iter: int = 100
    inertia: float = 0.7
    cognitive: float = 1.5
    social: float = 1.5
    velocity_clamp_m: float = 600.0

    def __post_init__(self) -> None:
        if self.n_particles < 1 or self.max_iter < 1:
            raise ValueError("n_particles and max_iter must be positive")
        if not 0.0 < self.inertia <= 1.0:
            raise ValueError("inertia must lie in (0, 1]")
        if self.cognitive <= 0 or self.social <= 0:
            raise ValueError("cognitive and social weights must be positive")
        if self.velocity_clamp_m <= 0:
            raise ValueError("velocity_clamp_m must be positive")


@dataclass(frozen=True)
class ScaParams:
    n_agents: int = 10
    max_iter: int = 100
    r1_initial: float = 2.0

    def __post_init__(self) -> None:
        if self.n_agents < 1 or self.max_iter < 1:
            raise ValueError("n_agents and max_iter must be positive")
        if self.r1_initial <= 0:
            raise ValueError("r1_initial must be positive")


def _dim_bounds(n_uavs: int, xy_bounds: XyBounds, h_bounds: tuple[float, float]):
    (x0, x1), (y0, y1) = xy_bounds
    h0, h1 = h_bounds
    low = np.tile([x0, y0, h0], n_uavs)
    high = np.tile([x1, y1, h1], n_uavs)
    return low, high


def _flat_fitness(flat: np.ndarray, vehicles, channel, coverage, capacity) -> np.ndarray:
    out = np.empty(flat.shape[0])
    for i, row in enumerate(flat):
        plan = DeploymentPlan.from_array(row.reshape(-1, 3), capacity)
        out[i] = evaluate_plan(plan, vehicles, channel, coverage).fitness
    return out


def _report_from_flat(
    flat_best: np.ndarray, best_fitness: float, curve, vehicles, coverage, capacity, seed
) -> SolveReport:
    plan = DeploymentPlan.from_array(flat_best.reshape(-1, 3), capacity)
    feasible = best_fitness >= 0
    n = len(vehicles)
    return SolveReport(
        best_plan=plan,
        best_fitness=float(best_fitness),
        per_uav_radii=tuple(float(coverage_radius(u.h, coverage)) for u in plan.uavs),
        coverage_fraction=float(best_fitness) / n if feasible and n else 0.0,
        generation_best_curve=tuple(float(c) for c in curve),
        seed=seed,
        feasible=feasible,
    )


def ga_plain_solve(
    vehicles,
    n_uavs: int,
    *,
    channel: ChannelParams,
    coverage: CoverageParams,
    ga: GaParams,
    capacity_mbps: float = 40.0,
    xy_bounds: XyBounds = DEFAULT_XY_BOUNDS,
    rng_seed: int = 0,
) -> SolveReport:
    """Same operators and loop as the hybrid, minus the seeded start."""
    rng = np.random.default_rng(rng_seed)
    (x0, x1), (y0, y1) = xy_bounds
    genomes = np.empty((ga.pop_size, n_uavs, 3), dtype=float)
    genomes[:, :, 0] = rng.uniform(x0, x1, size=(ga.pop_size, n_uavs))
    genomes[:, :, 1] = rng.uniform(y0, y1, size=(ga.pop_size, n_uavs))
    genomes[:, :, 2] = rng.uniform(coverage.h_min_m, coverage.h_max_m, size=(ga.pop_size, n_uavs))
    pop = Population(genomes=genomes, capacity_mbps=capacity_mbps)
    return run_ga(
        pop,
        vehicles,
        channel=channel,
        coverage=coverage,
        ga=ga,
        xy_bounds=xy_bounds,
        rng=rng,
        seed=rng_seed,
    )


def pso_solve(
    vehicles,
    n_uavs: int,
    *,
    channel: ChannelParams,
    coverage: CoverageParams,
    pso: PsoParams,
    capacity_mbps: float = 40.0,
    xy_bounds: XyBounds = DEFAULT_XY_BOUNDS,
    rng_seed: int = 0,
) -> SolveReport:
    """Canonical global-best swarm over the flattened plan vector."""
    vs = VehicleSet.coerce(vehicles)
    low, high = _dim_bounds(n_uavs, xy_bounds, (coverage.h_min_m, coverage.h_max_m))
    rng = np.random.default_rng(rng_seed)
    shape = (pso.n_particles, low.size)

    pos = rng.uniform(low, high, size=shape)
    vel = np.zeros(shape)
    fitness = _flat_fitness(pos, vs, channel, coverage, capacity_mbps)
    pbest = pos.copy()
    pbest_fitness = fitness.copy()
    g = int(np.argmax(pbest_fitness))
    gbest = pbest[g].copy()
    gbest_fitness = float(pbest_fitness[g])
    curve = [gbest_fitness]

    for _ in range(pso.max_iter):
        r1 = rng.random(shape)
        r2 = rng.random(shape)
        vel = (
            pso.inertia * vel
            + pso.cognitive * r1 * (pbest - pos)
            + pso.social * r2 * (gbest - pos)
        )
        np.clip(vel, -pso.velocity_clamp_m, pso.velocity_clamp_m, out=vel)
        pos = np.clip(pos + vel, low, high)
        fitness = _flat_fitness(pos, vs, channel, coverage, capacity_mbps)
        improved = fitness > pbest_fitness
        pbest[improved] = pos[improved]
        pbest_fitness[improved] = fitness[improved]
        g = int(np.argmax(pbest_fitness))
        if pbest_fitness[g] > gbest_fitness:
            gbest_fitness = float(pbest_fitness[g])
            gbest = pbest[g].copy()
        curve.append(gbest_fitness)

    return _report_from_flat(gbest, gbest_fitness, curve, vs, coverage, capacity_mbps, rng_seed)


def sca_solve(
    vehicles,
    n_uavs: int,
    *,
    channel: ChannelParams,
    coverage: CoverageParams,
    sca: ScaParams,
    capacity_mbps: float = 40.0,
    xy_bounds: XyBounds = DEFAULT_XY_BOUNDS,
    rng_seed: int = 0,
) -> SolveReport:
    """Sine-cosine position update pulling agents around the incumbent best."""
    vs = VehicleSet.coerce(vehicles)
    low, high = _dim_bounds(n_uavs, xy_bounds, (coverage.h_min_m, coverage.h_max_m))
    rng = np.random.default_rng(rng_seed)
    shape = (sca.n_agents, low.size)

    pos = rng.uniform(low, high, size=shape)
    fitness = _flat_fitness(pos, vs, channel, coverage, capacity_mbps)
    b = int(np.argmax(fitness))
    best = pos[b].copy()
    best_fitness = float(fitness[b])
    curve = [best_fitness]

    for t in range(1, sca.max_iter + 1):
        r1 = sca.r1_initial * (1.0 - t / sca.max_iter)
        r2 = rng.uniform(0.0, 2.0 * np.pi, size=shape)
        r3 = rng.uniform(0.0, 2.0, size=shape)
        r4 = rng.random(shape)
        wave = np.where(r4 < 0.5, np.sin(r2), np.cos(r2))
        pos = np.clip(pos + r1 * wave * np.abs(r3 * best - pos), low, high)
        fitness = _flat_fitness(pos, vs, channel, coverage, capacity_mbps)
        b = int(np.argmax(fitness))
        if fitness[b] > best_fitness:
            best_fitness = float(fitness[b])
            best = pos[b].copy()
        curve.append(best_fitness)

    return _report_from_flat(best, best_fitness, curve, vs, coverage, capacity_mbps, rng_seed)
