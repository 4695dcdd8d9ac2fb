"""Hybrid population solver for relay deployment.

Each chromosome is a full deployment plan, one (x, y, h) gene per relay.
Initial chromosomes place relays on per-chromosome cluster centers with
uniform altitudes, then substitute one gene's horizontal position with a
pack-search refinement. Evolution is binary tournament selection, gene-atomic
single-point crossover, and whole-gene uniform mutation, scored by the
constrained coverage evaluator. The best chromosome ever scored is returned,
so later operators cannot lose it.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Optional

import numpy as np

from .channel import ChannelParams
from .coverage import CoverageParams, DeploymentPlan, coverage_radius, evaluate_plan
from .gwo import GwoParams, gwo_search
from .kmeans import KmeansParams, kmeans
from .scene import VehicleSet

XyBounds = tuple[tuple[float, float], tuple[float, float]]
DEFAULT_XY_BOUNDS: XyBounds = ((0.0, 3000.0), (0.0, 3000.0))


@dataclass(frozen=True)
class GaParams:
    generations: int = 100
    pop_size: int = 10
    crossover_rate: float = 0.8
    mutation_rate: float = 0.1

    def __post_init__(self) -> None:
        if self.generations < 1:
            raise ValueError("generations must be >= 1")
        if self.pop_size < 2:
            raise ValueError("pop_size must be >= 2")
        for name in ("crossover_rate", "mutation_rate"):
            rate = getattr(self, name)
            if not 0.0 <= rate <= 1.0:
                raise ValueError("%s must lie in [0, 1], got %r" % (name, rate))


@dataclass
class Population:
    genomes: np.ndarray  # (D, n_uavs, 3)
    capacity_mbps: float
    fitness: Optional[np.ndarray] = None

    @property
    def size(self) -> int:
        return self.genomes.shape[0]

    @property
    def n_uavs(self) -> int:
        return self.genomes.shape[1]

    def plans(self) -> list[DeploymentPlan]:
        return [DeploymentPlan.from_array(g, self.capacity_mbps) for g in self.genomes]


@dataclass(frozen=True)
class SolveReport:
    best_plan: DeploymentPlan
    best_fitness: float
    per_uav_radii: tuple[float, ...]
    coverage_fraction: float
    generation_best_curve: tuple[float, ...]
    seed: int
    feasible: bool


def init_population(
    vehicles,
    n_uavs: int,
    *,
    ga: GaParams,
    gwo_params: GwoParams,
    coverage: CoverageParams,
    capacity_mbps: float,
    rng: np.random.Generator,
    kmeans_max_iter: int = 100,
    kmeans_tolerance_m: float = 1e-3,
    shared_seeding: bool = False,
    substitute_all: bool = True,
) -> Population:
    """Build the seeded initial population.

    Per chromosome: a fresh sub-seeded clustering gives the horizontal
    layout, altitudes draw uniformly from the allowed band, and the pack
    search (seeded from those centers) replaces one uniformly chosen gene's
    horizontal position. shared_seeding reuses one clustering/search across
    all chromosomes (ablation); substitute_all=False applies the replacement
    to a fair-coin subset of chromosomes instead of every one.
    """
    vs = VehicleSet.coerce(vehicles)
    if len(vs) < n_uavs:
        raise ValueError("need at least %d vehicles for %d relays" % (n_uavs, n_uavs))
    pts = vs.horizontal_positions()
    km_params = KmeansParams(n_uavs, max_iter=kmeans_max_iter, tolerance_m=kmeans_tolerance_m)

    shared_centers = None
    shared_alpha = None
    if shared_seeding:
        km_seed = int(rng.integers(2**32))
        search_seed = int(rng.integers(2**32))
        shared_centers = kmeans(pts, km_params, km_seed).centers
        shared_alpha = gwo_search(pts, shared_centers, gwo_params, search_seed)

    genomes = np.empty((ga.pop_size, n_uavs, 3), dtype=float)
    for z in range(ga.pop_size):
        if shared_seeding:
            centers, alpha = shared_centers, shared_alpha
        else:
            km_seed = int(rng.integers(2**32))
            search_seed = int(rng.integers(2**32))
            centers = kmeans(pts, km_params, km_seed).centers
            alpha = gwo_search(pts, centers, gwo_params, search_seed)
        genomes[z, :, :2] = centers
        genomes[z, :, 2] = rng.uniform(coverage.h_min_m, coverage.h_max_m, size=n_uavs)
        if substitute_all or rng.random() < 0.5:
            gene = int(rng.integers(n_uavs))
            genomes[z, gene, :2] = alpha
    return Population(genomes=genomes, capacity_mbps=capacity_mbps)


def evaluate_population(
    pop: Population, vehicles, channel: ChannelParams, coverage: CoverageParams
) -> np.ndarray:
    vs = VehicleSet.coerce(vehicles)
    fitness = np.array(
        [evaluate_plan(plan, vs, channel, coverage).fitness for plan in pop.plans()]
    )
    pop.fitness = fitness
    return fitness


def tournament_select(pop: Population, rng: np.random.Generator) -> Population:
    """Binary tournaments with replacement; ties keep the first pick."""
    if pop.fitness is None:
        raise ValueError("population must be evaluated before selection")
    draws = rng.integers(0, pop.size, size=(pop.size, 2))
    first, second = draws[:, 0], draws[:, 1]
    winners = np.where(pop.fitness[first] >= pop.fitness[second], first, second)
    return Population(genomes=pop.genomes[winners].copy(), capacity_mbps=pop.capacity_mbps)


def crossover(pop: Population, p_c: float, rng: np.random.Generator) -> Population:
    """Single-point crossover at whole-gene granularity on random pairs.

    Chromosomes are shuffled into pairs; each pair crosses with probability
    p_c at a cut drawn from the interior gene boundaries. Single-gene plans
    have no interior boundary and pass through unchanged.
    """
    genomes = pop.genomes.copy()
    order = rng.permutation(pop.size)
    n_genes = pop.n_uavs
    for k in range(0, pop.size - 1, 2):
        a, b = order[k], order[k + 1]
        if rng.random() >= p_c or n_genes < 2:
            continue
        cut = int(rng.integers(1, n_genes))
        tail = genomes[a, cut:].copy()
        genomes[a, cut:] = genomes[b, cut:]
        genomes[b, cut:] = tail
    return Population(genomes=genomes, capacity_mbps=pop.capacity_mbps)


def mutate(
    pop: Population,
    p_m: float,
    xy_bounds: XyBounds,
    h_bounds: tuple[float, float],
    rng: np.random.Generator,
) -> Population:
    """Per chromosome, with probability p_m resample one whole gene uniformly."""
    genomes = pop.genomes.copy()
    (x0, x1), (y0, y1) = xy_bounds
    h0, h1 = h_bounds
    for z in range(pop.size):
        if rng.random() >= p_m:
            continue
        gene = int(rng.integers(pop.n_uavs))
        genomes[z, gene, 0] = rng.uniform(x0, x1)
        genomes[z, gene, 1] = rng.uniform(y0, y1)
        genomes[z, gene, 2] = rng.uniform(h0, h1)
    return Population(genomes=genomes, capacity_mbps=pop.capacity_mbps)


def run_ga(
    pop: Population,
    vehicles,
    *,
    channel: ChannelParams,
    coverage: CoverageParams,
    ga: GaParams,
    xy_bounds: XyBounds,
    rng: np.random.Generator,
    seed: int,
) -> SolveReport:
    """Drive an already-initialised population through the generation loop.

    The per-generation best is recorded before the operators run, and the
    reported optimum is the maximum over that curve.
    """
    vs = VehicleSet.coerce(vehicles)
    h_bounds = (coverage.h_min_m, coverage.h_max_m)
    curve = []
    best_fitness = -np.inf
    best_genome = pop.genomes[0].copy()
    for _ in range(ga.generations):
        fitness = evaluate_population(pop, vs, channel, coverage)
        gen_best = int(np.argmax(fitness))
        curve.append(float(fitness[gen_best]))
        if fitness[gen_best] > best_fitness:
            best_fitness = float(fitness[gen_best])
            best_genome = pop.genomes[gen_best].copy()
        pop = tournament_select(pop, rng)
        pop = crossover(pop, ga.crossover_rate, rng)
        pop = mutate(pop, ga.mutation_rate, xy_bounds, h_bounds, rng)

    best_plan = DeploymentPlan.from_array(best_genome, pop.capacity_mbps)
    feasible = best_fitness >= 0
    n_vehicles = len(vs)
    coverage_fraction = best_fitness / n_vehicles if feasible and n_vehicles else 0.0
    radii = tuple(float(coverage_radius(u.h, coverage)) for u in best_plan.uavs)
    return SolveReport(
        best_plan=best_plan,
        best_fitness=best_fitness,
        per_uav_radii=radii,
        coverage_fraction=coverage_fraction,
        generation_best_curve=tuple(curve),
        seed=seed,
        feasible=feasible,
    )


def solve(
    vehicles,
    n_uavs: int,
    *,
    channel: ChannelParams,
    coverage: CoverageParams,
    ga: GaParams,
    gwo_params: GwoParams,
    capacity_mbps: float = 40.0,
    xy_bounds: XyBounds = DEFAULT_XY_BOUNDS,
    kmeans_max_iter: int = 100,
    kmeans_tolerance_m: float = 1e-3,
    shared_seeding: bool = False,
    substitute_all: bool = True,
    rng_seed: int = 0,
) -> SolveReport:
    """Full hybrid run: seeded initialisation plus the generation loop."""
    rng = np.random.default_rng(rng_seed)
    pop = init_population(
        vehicles,
        n_uavs,
        ga=ga,
        gwo_params=gwo_params,
        coverage=coverage,
        capacity_mbps=capacity_mbps,
        rng=rng,
        kmeans_max_iter=kmeans_max_iter,
        kmeans_tolerance_m=kmeans_tolerance_m,
        shared_seeding=shared_seeding,
        substitute_all=substitute_all,
    )
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
