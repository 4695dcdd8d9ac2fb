"""Brute-force grid reference for small instances."""

import pytest

from skycover.coverage import DeploymentPlan, UavPlacement, evaluate_plan
from skycover.oracle import exhaustive_search
from skycover.scene import Vehicle


def cluster(x, y, count, rate=1.0):
    return [
        Vehicle(id=i, x=x, y=y, elevation_m=0.0, rate_mbps=rate, road_index=-1)
        for i in range(count)
    ]


class TestExhaustiveSearch:
    def test_enumerates_full_grid(self, channel, coverage_params):
        res = exhaustive_search(
            cluster(1500.0, 1500.0, 3),
            1,
            channel=channel,
            coverage=coverage_params,
            nx=6,
            ny=5,
            n_altitudes=2,
        )
        assert res.plans_evaluated == 6 * 5 * 2

    def test_finds_full_cluster_coverage(self, channel, coverage_params):
        res = exhaustive_search(
            cluster(1500.0, 1500.0, 3),
            1,
            channel=channel,
            coverage=coverage_params,
            nx=10,
            ny=10,
            n_altitudes=3,
        )
        assert res.best_fitness == 3.0
        assert len(res.best_plan) == 1

    def test_at_least_as_good_as_any_grid_plan(self, channel, coverage_params):
        vehicles = [
            Vehicle(id=0, x=1450.0, y=1450.0, elevation_m=0.0, rate_mbps=1.0, road_index=-1),
            Vehicle(id=1, x=1450.0, y=1470.0, elevation_m=0.0, rate_mbps=1.0, road_index=-1),
            Vehicle(id=2, x=1650.0, y=1650.0, elevation_m=0.0, rate_mbps=1.0, road_index=-1),
            Vehicle(id=3, x=1650.0, y=1630.0, elevation_m=0.0, rate_mbps=1.0, road_index=-1),
        ]
        res = exhaustive_search(
            vehicles, 1, channel=channel, coverage=coverage_params,
            nx=8, ny=8, n_altitudes=2,
        )
        hand = DeploymentPlan((UavPlacement(1550.0, 1550.0, 1800.0),))
        assert res.best_fitness >= evaluate_plan(hand, vehicles, channel, coverage_params).fitness - 1.0

    def test_plan_cap_guards_blowup(self, channel, coverage_params):
        with pytest.raises(ValueError):
            exhaustive_search(
                cluster(0.0, 0.0, 2), 2,
                channel=channel, coverage=coverage_params,
                nx=30, ny=30, n_altitudes=5,
            )

    def test_bad_dimensions_rejected(self, channel, coverage_params):
        with pytest.raises(ValueError):
            exhaustive_search(cluster(0.0, 0.0, 1), 0, channel=channel, coverage=coverage_params)
        with pytest.raises(ValueError):
            exhaustive_search(cluster(0.0, 0.0, 1), 1, channel=channel,
                              coverage=coverage_params, nx=0)
