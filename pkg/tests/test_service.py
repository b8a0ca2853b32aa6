import math

import pytest
from fastapi.testclient import TestClient

from walkcensus import circle_chords, star_loops
from walkcensus.service.app import create_app

from conftest import two_self_loops


@pytest.fixture(scope="module")
def client():
    return TestClient(create_app())


@pytest.fixture(scope="module")
def star2_doc():
    return star_loops(2).to_dict()


@pytest.fixture(scope="module")
def chords_doc():
    return circle_chords().to_dict()


def test_health(client):
    resp = client.get("/api/health")
    assert resp.status_code == 200
    assert resp.json() == {"status": "ok"}


class TestValidateEndpoint:
    def test_sperner_graph(self, client, star2_doc):
        resp = client.post("/api/validate", json={"graph": star2_doc})
        assert resp.status_code == 200
        body = resp.json()
        assert body["sperner"] is True
        assert body["k"] == body["beta"] == 2
        assert body["handshake_ok"] and body["edge_sum_ok"]
        assert [c["index"] for c in body["cycles"]] == [1, 2]
        assert body["cycles"][0]["edges"] == ["out1", "back1"]
        chains = {c["vertex"]: c for c in body["chains"]}
        assert chains["s"]["edges"] == []
        assert chains["v1"]["edges"] == ["out1"]

    def test_out_of_class_graph(self, client, chords_doc):
        resp = client.post("/api/validate", json={"graph": chords_doc})
        assert resp.status_code == 200
        body = resp.json()
        assert body["sperner"] is False
        assert body["violation"]
        assert body["handshake_ok"] is True
        assert body["cycles"] is None

    def test_negative_length_is_422(self, client):
        doc = {"vertices": ["s"], "source": "s", "edges": [{"id": "e", "from": "s", "to": "s", "length": "-1"}]}
        resp = client.post("/api/validate", json={"graph": doc})
        assert resp.status_code == 422
        assert "not positive" in resp.json()["detail"]

    def test_schema_violation_is_422(self, client):
        resp = client.post("/api/validate", json={"graph": {"vertices": ["s"]}})
        assert resp.status_code == 422


class TestCountEndpoint:
    def test_exact(self, client):
        resp = client.post("/api/count", json={"graph": two_self_loops().to_dict(), "time": 10.0})
        assert resp.status_code == 200
        assert resp.json() == {"exact": 19, "oracle": None, "match": None}

    def test_with_oracle(self, client, star2_doc):
        resp = client.post("/api/count", json={"graph": star2_doc, "time": 50.0, "oracle": True})
        body = resp.json()
        assert body["match"] is True
        assert body["exact"] == body["oracle"]

    def test_oracle_only_works_off_class(self, client, chords_doc):
        resp = client.post("/api/count", json={"graph": chords_doc, "time": 5.0, "oracle_only": True})
        assert resp.status_code == 200
        assert resp.json()["oracle"] >= 3

    def test_out_of_class_is_409(self, client, chords_doc):
        resp = client.post("/api/count", json={"graph": chords_doc, "time": 5.0})
        assert resp.status_code == 409
        assert "Sperner" in resp.json()["detail"]

    def test_negative_time_is_422(self, client, star2_doc):
        resp = client.post("/api/count", json={"graph": star2_doc, "time": -1.0})
        assert resp.status_code == 422


class TestJumpsEndpoint:
    def test_stream(self, client):
        resp = client.post("/api/jumps", json={"graph": two_self_loops().to_dict(), "time": 3.0})
        body = resp.json()
        assert body["total"] == 7
        assert [e["jump"] for e in body["events"]] == [2, 1, 1, 1, 1, 1]
        assert [e["running_total"] for e in body["events"]] == [2, 3, 4, 5, 6, 7]
        assert body["events"][0]["cycles"] == []
        assert body["events"][1]["time"] == pytest.approx(1.0)
        assert body["events"][2]["time"] == pytest.approx(math.sqrt(2))

    def test_out_of_class_is_409(self, client, chords_doc):
        resp = client.post("/api/jumps", json={"graph": chords_doc, "time": 3.0})
        assert resp.status_code == 409


class TestAsymptoticsEndpoint:
    def test_two_loops(self, client):
        resp = client.post("/api/asymptotics", json={"graph": two_self_loops().to_dict()})
        body = resp.json()
        assert body["beta"] == 2
        assert body["coefficient"] == pytest.approx((1 + math.sqrt(2)) / math.sqrt(2))


class TestSweepEndpoint:
    def test_rows(self, client, star2_doc):
        resp = client.post(
            "/api/sweep",
            json={"graph": star2_doc, "t_max": 100.0, "steps": 4, "oracle": True},
        )
        body = resp.json()
        assert len(body["rows"]) == 4
        assert [row["t"] for row in body["rows"]] == [25.0, 50.0, 75.0, 100.0]
        for row in body["rows"]:
            assert row["n_oracle"] == row["n_exact"]
            assert row["asymptotic"] == pytest.approx(body["coefficient"] * row["t"] ** (body["beta"] - 1))
            assert row["ratio"] == pytest.approx(row["n_exact"] / row["asymptotic"])

    def test_oracle_column_optional(self, client, star2_doc):
        resp = client.post("/api/sweep", json={"graph": star2_doc, "t_max": 40.0, "steps": 2})
        assert [row["n_oracle"] for row in resp.json()["rows"]] == [None, None]

    def test_bad_steps_is_422(self, client, star2_doc):
        resp = client.post("/api/sweep", json={"graph": star2_doc, "t_max": 40.0, "steps": 1})
        assert resp.status_code == 422


class TestEndpointsEndpoint:
    def test_positions(self, client):
        resp = client.post("/api/endpoints", json={"graph": two_self_loops().to_dict(), "time": 0.5})
        body = resp.json()
        assert body["count"] == 2
        assert body["positions"] == [
            {"edge": "a", "offset": 0.5},
            {"edge": "b", "offset": 0.5},
        ]

    def test_works_off_class(self, client, chords_doc):
        resp = client.post("/api/endpoints", json={"graph": chords_doc, "time": 1.0})
        assert resp.status_code == 200
        assert resp.json()["count"] == 3


class TestAuditEndpoint:
    def test_clean_graph(self, client):
        resp = client.post("/api/audit", json={"graph": two_self_loops().to_dict(), "horizon": 20.0})
        assert resp.json() == {"warnings": []}

    def test_rational_collisions_reported(self, client):
        doc = two_self_loops("1.0", "2.0").to_dict()
        resp = client.post("/api/audit", json={"graph": doc, "horizon": 5.0})
        warnings = resp.json()["warnings"]
        assert warnings
        assert all(w["gap"] <= 1e-9 for w in warnings)


class TestExamplesEndpoint:
    def test_star(self, client):
        resp = client.post("/api/examples", json={"name": "star-loops", "k": 2})
        graph = resp.json()["graph"]
        assert graph["vertices"] == ["s", "v1", "v2"]
        assert len(graph["edges"]) == 4

    def test_round_trip_through_count(self, client):
        graph = client.post("/api/examples", json={"name": "path-cycle", "n": 3}).json()["graph"]
        resp = client.post("/api/count", json={"graph": graph, "time": 100.0})
        assert resp.json()["exact"] == 1

    def test_custom_lengths(self, client):
        resp = client.post(
            "/api/examples", json={"name": "circle-chords", "lengths": ["1", "2", "3", "4", "5"]}
        )
        lengths = {e["id"]: e["length"] for e in resp.json()["graph"]["edges"]}
        assert lengths == {"f1": "1", "f2": "2", "f3": "3", "t1": "4", "t2": "5"}

    def test_unknown_name_is_422(self, client):
        resp = client.post("/api/examples", json={"name": "torus"})
        assert resp.status_code == 422
