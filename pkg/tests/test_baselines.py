"""Reference solvers: swarm, sine-cosine, and the unseeded genetic run."""

import numpy as np
import pytest

from skycover.baselines import PsoParams, ScaParams, ga_plain_solve, pso_solve, sca_solve
from skycover.coverage import evaluate_plan
from skycover.genetic import GaParams
from skycover.scene import spawn_vehicles

N_UAVS = 3


@pytest.fixture(scope="module")
def vehicles(scene):
    return spawn_vehicles(scene, 20, 6)


def run_pso(vehicles, channel, coverage_params, seed=0, **overrides):
    params = PsoParams(n_particles=6, max_iter=15, **overrides)
    return pso_solve(vehicles, N_UAVS, channel=channel, coverage=coverage_params,
                     pso=params, rng_seed=seed)


def run_sca(vehicles, channel, coverage_params, seed=0, **overrides):
    params = ScaParams(n_agents=6, max_iter=15, **overrides)
    return sca_solve(vehicles, N_UAVS, channel=channel, coverage=coverage_params,
                     sca=params, rng_seed=seed)


def run_ga(vehicles, channel, coverage_params, seed=0):
    params = GaParams(generations=15, pop_size=6)
    return ga_plain_solve(vehicles, N_UAVS, channel=channel, coverage=coverage_params,
                          ga=params, rng_seed=seed)


class TestParams:
    @pytest.mark.parametrize("field,value", [
        ("n_particles", 0),
        ("max_iter", 0),
        ("inertia", 0.0),
        ("inertia", 1.5),
        ("cognitive", 0.0),
        ("social", -1.0),
        ("velocity_clamp_m", 0.0),
    ])
    def test_pso_validation(self, field, value):
        with pytest.raises(ValueError):
            PsoParams(**{field: value})

    @pytest.mark.parametrize("field,value", [
        ("n_agents", 0),
        ("max_iter", 0),
        ("r1_initial", 0.0),
    ])
    def test_sca_validation(self, field, value):
        with pytest.raises(ValueError):
            ScaParams(**{field: value})


class TestReports:
    @pytest.mark.parametrize("runner", [run_pso, run_sca, run_ga])
    def test_deterministic(self, runner, vehicles, channel, coverage_params):
        a = runner(vehicles, channel, coverage_params, seed=11)
        b = runner(vehicles, channel, coverage_params, seed=11)
        assert a == b
        c = runner(vehicles, channel, coverage_params, seed=12)
        assert a != c

    @pytest.mark.parametrize("runner", [run_pso, run_sca, run_ga])
    def test_plan_shape_and_bounds(self, runner, vehicles, channel, coverage_params):
        report = runner(vehicles, channel, coverage_params, seed=3)
        assert len(report.best_plan) == N_UAVS
        assert len(report.per_uav_radii) == N_UAVS
        for uav in report.best_plan.uavs:
            assert 0.0 <= uav.x <= 3000.0
            assert 0.0 <= uav.y <= 3000.0
            assert coverage_params.h_min_m <= uav.h <= coverage_params.h_max_m

    @pytest.mark.parametrize("runner", [run_pso, run_sca, run_ga])
    def test_reported_fitness_matches_reported_plan(self, runner, vehicles, channel, coverage_params):
        report = runner(vehicles, channel, coverage_params, seed=7)
        rescored = evaluate_plan(report.best_plan, vehicles, channel, coverage_params)
        assert rescored.fitness == report.best_fitness

    @pytest.mark.parametrize("runner", [run_pso, run_sca, run_ga])
    def test_best_is_max_of_curve(self, runner, vehicles, channel, coverage_params):
        report = runner(vehicles, channel, coverage_params, seed=5)
        assert report.best_fitness == max(report.generation_best_curve)
        if report.feasible:
            assert report.coverage_fraction == pytest.approx(report.best_fitness / len(vehicles))

    def test_incumbent_curves_never_regress(self, vehicles, channel, coverage_params):
        for seed in range(4):
            for runner in (run_pso, run_sca):
                curve = runner(vehicles, channel, coverage_params, seed=seed).generation_best_curve
                assert all(a <= b for a, b in zip(curve, curve[1:]))

    def test_curve_lengths_cover_every_iteration(self, vehicles, channel, coverage_params):
        assert len(run_pso(vehicles, channel, coverage_params).generation_best_curve) == 16
        assert len(run_sca(vehicles, channel, coverage_params).generation_best_curve) == 16
        assert len(run_ga(vehicles, channel, coverage_params).generation_best_curve) == 15

    def test_velocity_clamp_respected_indirectly(self, vehicles, channel, coverage_params):
        # a tiny clamp freezes the swarm near its start; the run must still
        # complete and report a valid plan
        report = run_pso(vehicles, channel, coverage_params, seed=9, velocity_clamp_m=1e-6)
        assert len(report.best_plan) == N_UAVS
