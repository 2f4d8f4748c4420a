"""Tests for the HTTP service."""

import pytest
from fastapi.testclient import TestClient

from app.main import app

UNIT_CUBES = "3 2\n1 1 1 1\n2 1 1 1\n3 1 1 1\n1 2 2 2\n2 1 1 1\n"
EXACT_FIT = "1 1\n1 5 5 5\n1 5 5 5\n"


@pytest.fixture
def client():
    with TestClient(app) as test_client:
        yield test_client


def test_root(client) -> None:
    assert client.get("/").json()["service"] == "binpack-ga"


@pytest.mark.parametrize("path", ["/health", "/api/v1/health"])
def test_health(client, path) -> None:
    body = client.get(path).json()
    assert body["status"] == "healthy"
    assert body["running_solves"] == 0


class TestDecode:

    def test_exact_fit(self, client) -> None:
        response = client.post("/decode", json={"instance_text": EXACT_FIT, "chromosome": "1|1"})
        assert response.status_code == 200
        body = response.json()
        assert body["fitness"] == 1.0
        assert body["feasible"] is True
        assert body["opened_containers"] == [1]
        assert body["solution_text"].endswith("place 1 1 0 0 0 5 5 5\n")

    def test_bad_instance(self, client) -> None:
        response = client.post("/decode", json={"instance_text": "1 1\n", "chromosome": "1|1"})
        assert response.status_code == 400
        assert response.json()["detail"].startswith("Invalid instance")

    def test_chromosome_size_mismatch(self, client) -> None:
        response = client.post("/decode", json={"instance_text": EXACT_FIT, "chromosome": "1,2|1"})
        assert response.status_code == 400


class TestValidate:

    def test_valid(self, client) -> None:
        solution = "fitness 1\nfeasible true\nopened 1\nplace 1 1 0 0 0 5 5 5\n"
        body = client.post("/validate", json={"instance_text": EXACT_FIT, "solution_text": solution}).json()
        assert body["violations"] == []
        assert body["recomputed_fitness"] == 1.0

    def test_out_of_bounds(self, client) -> None:
        solution = "fitness 1\nfeasible true\nopened 1\nplace 1 1 0 0 1 5 5 5\n"
        body = client.post("/validate", json={"instance_text": EXACT_FIT, "solution_text": solution}).json()
        assert [v["kind"] for v in body["violations"]] == ["bounds"]

    def test_malformed_solution(self, client) -> None:
        response = client.post("/validate", json={"instance_text": EXACT_FIT, "solution_text": "fitness x\n"})
        assert response.status_code == 400


class TestSolve:

    def test_solve_then_poll(self, client) -> None:
        response = client.post(
            "/solve",
            json={
                "instance_text": UNIT_CUBES,
                "instance_name": "cubes",
                "config": {"population_size": 10, "elite_count": 2, "generations": 2, "seed": 1},
            },
        )
        assert response.status_code == 200
        task_id = response.json()["task_id"]

        task = client.get(f"/tasks/{task_id}").json()
        assert task["status"] == "completed"
        assert task["label"] == "cubes"
        assert task["progress_percent"] == 100
        assert task["result"]["generations_run"] == 2
        assert task["result"]["solution_text"].startswith("fitness ")

        listed = client.get("/tasks", params={"status": "completed"}).json()
        assert task_id in [t["task_id"] for t in listed]

    def test_checkpoints_written_per_task(self, client, isolated_settings) -> None:
        response = client.post(
            "/solve",
            json={
                "instance_text": EXACT_FIT,
                "config": {"population_size": 4, "elite_count": 0, "generations": 1},
                "checkpoints": True,
            },
        )
        task_id = response.json()["task_id"]
        task_dir = isolated_settings / "checkpoints" / task_id
        assert sorted(p.name for p in task_dir.iterdir()) == ["gen_0.pop", "gen_1.pop"]

    def test_unknown_config_key(self, client) -> None:
        response = client.post("/solve", json={"instance_text": EXACT_FIT, "config": {"mutation_rate": 0.1}})
        assert response.status_code == 400
        assert "mutation_rate" in response.json()["detail"]

    def test_invalid_config_fails_task(self, client) -> None:
        response = client.post("/solve", json={"instance_text": EXACT_FIT, "config": {"population_size": 11}})
        assert response.status_code == 400
        failed = client.get("/tasks", params={"status": "failed"}).json()
        assert any("population_size" in (t["error"] or "") for t in failed)

    def test_unknown_task(self, client) -> None:
        assert client.get("/tasks/does-not-exist").status_code == 404
