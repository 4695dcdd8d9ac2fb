"""HTTP surface: request validation, solver dispatch, and error mapping."""

import pytest
from fastapi.testclient import TestClient

import skycover
from skycover.service import create_app

TINY_CONFIG = {
    "vehicle_count": 8,
    "n_uavs": 2,
    "ga": {"generations": 2, "pop_size": 2},
    "gwo": {"n_wolves": 3, "max_iter": 2},
    "pso": {"n_particles": 2, "max_iter": 2},
    "sca": {"n_agents": 2, "max_iter": 2},
    "replicates": 2,
    "base_seed": 50,
}


@pytest.fixture(scope="module")
def client():
    return TestClient(create_app())


class TestMeta:
    def test_health(self, client):
        body = client.get("/health").json()
        assert body == {"status": "ok", "version": skycover.__version__}

    def test_preset_listing(self, client):
        body = client.get("/presets").json()
        assert "high_density" in body["presets"]
        assert len(body["presets"]) == 5

    def test_preset_config_document(self, client):
        body = client.get("/presets/high_density").json()
        assert body["vehicle_count"] == {"value": 80, "source": "reference"}
        assert body["channel"]["r_min_mbps"]["source"] == "reference"

    def test_unknown_preset_404(self, client):
        assert client.get("/presets/medium_density").status_code == 404


class TestSolve:
    def test_config_run(self, client):
        resp = client.post("/solve", json={"config": TINY_CONFIG, "seed": 7})
        assert resp.status_code == 200
        body = resp.json()
        assert body["solver"] == "hybrid"
        assert body["seed"] == 7
        assert len(body["best_plan"]) == 2
        assert len(body["best_plan"][0]) == 4
        assert len(body["generation_best_curve"]) == 2
        assert body["best_fitness"] == max(body["generation_best_curve"])

    def test_deterministic(self, client):
        a = client.post("/solve", json={"config": TINY_CONFIG, "seed": 3}).json()
        b = client.post("/solve", json={"config": TINY_CONFIG, "seed": 3}).json()
        assert a == b

    def test_alternate_solver(self, client):
        resp = client.post("/solve", json={"config": TINY_CONFIG, "seed": 1, "solver": "pso"})
        assert resp.status_code == 200
        assert resp.json()["solver"] == "pso"

    def test_unknown_solver_400(self, client):
        resp = client.post("/solve", json={"config": TINY_CONFIG, "solver": "annealing"})
        assert resp.status_code == 400
        assert "annealing" in resp.json()["detail"]

    def test_preset_and_config_conflict_422(self, client):
        resp = client.post(
            "/solve", json={"preset": "low_density", "config": TINY_CONFIG}
        )
        assert resp.status_code == 422

    def test_unknown_preset_404(self, client):
        assert client.post("/solve", json={"preset": "nope"}).status_code == 404

    def test_bad_config_400(self, client):
        resp = client.post("/solve", json={"config": {"bogus": 1}})
        assert resp.status_code == 400
        assert "bogus" in resp.json()["detail"]


class TestEvaluate:
    def body(self, plan, vehicles):
        return {"config": TINY_CONFIG, "plan": plan, "vehicles": vehicles}

    def test_served_vehicle(self, client):
        resp = client.post("/evaluate", json=self.body(
            [[600.0, 1510.0, 1200.0]], [[600.0, 1505.0, 10.0, 2.0]]
        ))
        assert resp.status_code == 200
        body = resp.json()
        assert body["fitness"] == 1.0
        assert body["feasible"] is True
        assert body["assignment"] == [0]
        assert body["per_uav_counts"] == [1]
        assert body["violation"] is None

    def test_capacity_violation_reported(self, client):
        resp = client.post("/evaluate", json=self.body(
            [[600.0, 1510.0, 1200.0]],
            [[590.0, 1505.0, 0.0, 30.0], [610.0, 1505.0, 0.0, 30.0]],
        ))
        body = resp.json()
        assert body["fitness"] == -100.0
        assert body["violation"] == {"kind": "capacity", "uav_index": 0}

    def test_four_element_rows_override_capacity(self, client):
        resp = client.post("/evaluate", json=self.body(
            [[600.0, 1510.0, 1200.0, 100.0]],
            [[590.0, 1505.0, 0.0, 30.0], [610.0, 1505.0, 0.0, 30.0]],
        ))
        assert resp.json()["feasible"] is True

    def test_bad_plan_row_400(self, client):
        resp = client.post("/evaluate", json=self.body([[1.0, 2.0]], [[0.0, 0.0, 0.0, 1.0]]))
        assert resp.status_code == 400
        assert "row 0" in resp.json()["detail"]

    def test_bad_vehicle_row_400(self, client):
        resp = client.post("/evaluate", json=self.body([[600.0, 1510.0, 1200.0]], [[1.0, 2.0]]))
        assert resp.status_code == 400
        assert "vehicle row 0" in resp.json()["detail"]

    def test_empty_plan_400(self, client):
        resp = client.post("/evaluate", json=self.body([], [[0.0, 0.0, 0.0, 1.0]]))
        assert resp.status_code == 400

    def test_spawned_vehicles_when_omitted(self, client):
        resp = client.post("/evaluate", json={
            "config": TINY_CONFIG, "plan": [[1500.0, 1500.0, 1400.0]], "seed": 50,
        })
        assert resp.status_code == 200
        assert len(resp.json()["assignment"]) == TINY_CONFIG["vehicle_count"]


class TestValidate:
    def test_clean_plan(self, client):
        resp = client.post("/validate", json={
            "config": TINY_CONFIG,
            "plan": [[600.0, 1510.0, 1200.0]],
            "vehicles": [[600.0, 1505.0, 10.0, 2.0]],
        })
        body = resp.json()
        assert body["violations"] == []
        assert body["feasible"] is True

    def test_tags_match_evaluator_verdict(self, client):
        payload = {
            "config": TINY_CONFIG,
            "plan": [[600.0, 1510.0, 1200.0]],
            "vehicles": [[590.0, 1505.0, 0.0, 30.0], [610.0, 1505.0, 0.0, 30.0]],
        }
        validated = client.post("/validate", json=payload).json()
        evaluated = client.post("/evaluate", json=payload).json()
        assert "C4" in validated["violations"]
        assert validated["feasible"] is False
        assert validated["feasible"] == evaluated["feasible"]

    def test_out_of_envelope_altitude_tagged(self, client):
        resp = client.post("/validate", json={
            "config": TINY_CONFIG,
            "plan": [[600.0, 1510.0, 200.0]],
            "vehicles": [[600.0, 1505.0, 10.0, 2.0]],
        })
        assert "bounds" in resp.json()["violations"]

    def test_relay_under_viaduct_vehicle_is_tagged_not_500(self, client):
        # default 80-vehicle spawn puts traffic on the viaduct above this
        # relay; the dead links must surface as violations, not a crash
        resp = client.post("/validate", json={"plan": [[1500.0, 1500.0, 100.0]], "seed": 0})
        assert resp.status_code == 200
        body = resp.json()
        assert "bounds" in body["violations"]
        assert body["feasible"] is False


class TestExperiment:
    def test_tiny_grid(self, client):
        resp = client.post("/experiment", json={"config": TINY_CONFIG})
        assert resp.status_code == 200
        body = resp.json()
        assert len(body["records"]) == 2
        assert len(body["summaries"]) == 1
        record = body["records"][0]
        assert record["solver"] == "hybrid"
        assert record["seed"] == 50
        assert set(record) == {
            "solver", "seed", "n_uavs", "r_min_mbps", "p_c", "p_m",
            "coverage_fraction", "best_fitness", "wall_time_s", "feasible",
        }


class TestOracle:
    def test_small_grid(self, client):
        resp = client.post("/oracle", json={
            "config": TINY_CONFIG, "seed": 50,
            "vehicle_count": 3, "n_uavs": 1, "nx": 4, "ny": 4, "n_altitudes": 2,
        })
        assert resp.status_code == 200
        body = resp.json()
        assert body["plans_evaluated"] == 4 * 4 * 2
        assert len(body["best_plan"]) == 1

    def test_oversized_grid_400(self, client):
        resp = client.post("/oracle", json={
            "config": TINY_CONFIG, "n_uavs": 2,
            "nx": 30, "ny": 30, "n_altitudes": 5,
        })
        assert resp.status_code == 400
        assert "cap" in resp.json()["detail"]
