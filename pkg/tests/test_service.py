"""HTTP API: full workflow, error mapping, determinism, persistence."""

import json

import pytest
from fastapi.testclient import TestClient

from elicit import session as sess
from elicit.service import create_app


@pytest.fixture
def client(tmp_path):
    return TestClient(create_app(tmp_path / "sessions"))


def _drive_example(client, thetas=(0.33, 0.40)):
    sid = client.post(
        "/sessions", json={"context": {"purpose": "translation times"}, "seed": 42}
    ).json()["id"]
    client.post(f"/sessions/{sid}/bounds", json={"lower": 5, "upper": 70})
    client.post(
        f"/sessions/{sid}/mean-quantiles",
        json={"quantiles": [{"alpha": 0.05, "value": 30}, {"alpha": 0.95, "value": 40}]},
    )
    client.post(
        f"/sessions/{sid}/proportion",
        json={"theta_lo": thetas[0], "theta_hi": thetas[1], "width": 10},
    )
    return sid


class TestWorkflowOverHttp:
    def test_worked_example_responses(self, client):
        r = client.post("/sessions", json={"transform": "identity", "seed": 7})
        assert r.status_code == 201
        view = r.json()
        assert view["state"] == "Created"
        sid = view["id"]

        r = client.post(f"/sessions/{sid}/bounds", json={"lower": 5, "upper": 70})
        assert r.json()["state"] == "BoundsSet"

        r = client.post(
            f"/sessions/{sid}/mean-quantiles",
            json={"quantiles": [{"alpha": 0.05, "value": 30}, {"alpha": 0.95, "value": 40}]},
        )
        fit = r.json()["fits"]["location"]
        assert fit["params"]["mean"] == 35.0
        assert fit["params"]["variance"] == pytest.approx(9.24, abs=0.005)
        assert r.json()["state"] == "MeanFitted"

        r = client.post(
            f"/sessions/{sid}/proportion", json={"theta_lo": 0.33, "theta_hi": 0.40, "width": 10}
        )
        var = r.json()["fits"]["variance"]
        assert var["params"][0] == pytest.approx(31.5, rel=0.05)
        assert var["params"][1] == pytest.approx(2514.0, rel=0.05)
        assert r.json()["warnings"] == []  # 0.33 and 0.40 sit inside the robust band

    def test_percent_thetas_accepted(self, client):
        sid = client.post("/sessions", json={}).json()["id"]
        client.post(f"/sessions/{sid}/bounds", json={"lower": 5, "upper": 70})
        client.post(
            f"/sessions/{sid}/mean-quantiles",
            json={"quantiles": [{"alpha": 0.05, "value": 30}, {"alpha": 0.95, "value": 40}]},
        )
        r = client.post(
            f"/sessions/{sid}/proportion",
            json={"theta_lo": 33, "theta_hi": 40, "width": 10},
        )
        assert r.status_code == 200
        assert r.json()["judgements"]["proportion"]["theta_lo"] == pytest.approx(0.33)

    def test_robustness_warning_flagged(self, client):
        sid = client.post("/sessions", json={}).json()["id"]
        client.post(f"/sessions/{sid}/bounds", json={"lower": 5, "upper": 70})
        client.post(
            f"/sessions/{sid}/mean-quantiles",
            json={"quantiles": [{"alpha": 0.05, "value": 30}, {"alpha": 0.95, "value": 40}]},
        )
        r = client.post(
            f"/sessions/{sid}/proportion",
            json={"theta_lo": 0.05, "theta_hi": 0.30, "width": 10},
        )
        assert [w["code"] for w in r.json()["warnings"]] == ["theta-outside-robust-band"]

    def test_revision_flow(self, client):
        sid = _drive_example(client)
        client.post(f"/sessions/{sid}/feedback-shown", json={})
        r = client.post(
            f"/sessions/{sid}/revise",
            json={"target": "proportion", "theta_lo": 0.30, "theta_hi": 0.35, "width": 10},
        )
        assert r.json()["fits"]["variance"]["params"][0] == pytest.approx(62.8, rel=0.05)
        r = client.post(f"/sessions/{sid}/conclude", json={"note": "accepted"})
        assert r.json()["state"] == "Concluded"
        history = client.get(f"/sessions/{sid}/export").json()["history"]
        fits = [e for e in history if e["event"] == "variance_prior_fitted"]
        assert len(fits) == 2


class TestErrors:
    def test_invalid_transform(self, client):
        r = client.post("/sessions", json={"transform": "cubic"})
        assert r.status_code == 400
        assert r.json()["error"]["code"] == "invalid-transform"

    def test_out_of_order_is_conflict(self, client):
        sid = client.post("/sessions", json={}).json()["id"]
        r = client.post(
            f"/sessions/{sid}/proportion", json={"theta_lo": 0.3, "theta_hi": 0.4}
        )
        assert r.status_code == 409
        assert r.json()["error"]["code"] == "state-error"

    def test_unknown_session_404(self, client):
        r = client.get("/sessions/missing")
        assert r.status_code == 404
        assert r.json()["error"]["code"] == "session-not-found"

    def test_invalid_judgement_400(self, client):
        sid = client.post("/sessions", json={}).json()["id"]
        r = client.post(f"/sessions/{sid}/bounds", json={"lower": 70, "upper": 5})
        assert r.status_code == 400
        assert r.json()["error"]["code"] == "invalid-judgement"

    def test_malformed_import_400(self, client):
        r = client.post("/sessions/import", json={"document": {"schema_version": 99}})
        assert r.status_code == 400
        assert r.json()["error"]["code"] == "parse-error"

    def test_feedback_draw_cap(self, client):
        sid = _drive_example(client)
        r = client.get(f"/sessions/{sid}/feedback?k=2000000")
        assert r.status_code == 400
        assert "K=" in r.json()["error"]["message"]

    def test_bad_alpha_list(self, client):
        sid = _drive_example(client)
        r = client.get(f"/sessions/{sid}/feedback?alphas=abc")
        assert r.status_code == 400


class TestFeedbackEndpoint:
    def test_deterministic_body(self, client):
        sid = _drive_example(client)
        one = client.get(f"/sessions/{sid}/feedback?k=500&j=11&seed=5").text
        two = client.get(f"/sessions/{sid}/feedback?k=500&j=11&seed=5").text
        assert one == two

    def test_uses_session_seed_by_default(self, client):
        sid = _drive_example(client)
        seed = client.get(f"/sessions/{sid}").json()["seed"]
        body = client.get(f"/sessions/{sid}/feedback?k=200&j=5").json()
        assert body["config"]["seed"] == seed

    def test_minimum_draws(self, client):
        sid = _drive_example(client)
        r = client.get(f"/sessions/{sid}/feedback?k=2&j=4")
        assert r.status_code == 200
        body = r.json()
        assert len(body["grid"]) == 4
        assert all(lo <= hi for lo, hi in zip(body["cdf_lower"], body["cdf_upper"]))

    def test_mean_stage_gives_summary_only(self, client):
        sid = client.post("/sessions", json={}).json()["id"]
        client.post(f"/sessions/{sid}/bounds", json={"lower": 5, "upper": 70})
        client.post(
            f"/sessions/{sid}/mean-quantiles",
            json={"quantiles": [{"alpha": 0.05, "value": 30}, {"alpha": 0.95, "value": 40}]},
        )
        body = client.get(f"/sessions/{sid}/feedback").json()
        assert set(body) == {"mean_summary"}
        assert round(body["mean_summary"]["0.01"]) == 28
        assert round(body["mean_summary"]["0.99"]) == 42

    def test_feedback_before_mean_fit_is_conflict(self, client):
        sid = client.post("/sessions", json={}).json()["id"]
        r = client.get(f"/sessions/{sid}/feedback")
        assert r.status_code == 409

    def test_quantile_intervals_near_worked_example(self, client):
        sid = _drive_example(client)
        body = client.get(
            f"/sessions/{sid}/feedback?k=10000&seed=3&interval_level=0.9&alphas=0.05,0.95"
        ).json()
        lo, hi = body["quantile_intervals"]["0.05"]
        assert lo == pytest.approx(12.0, abs=4.0)
        assert hi == pytest.approx(23.0, abs=4.0)
        lo, hi = body["quantile_intervals"]["0.95"]
        assert lo == pytest.approx(47.0, abs=4.0)
        assert hi == pytest.approx(58.0, abs=4.0)


class TestDocumentsOverHttp:
    def test_export_import_new_id_same_content(self, client):
        sid = _drive_example(client)
        doc = client.get(f"/sessions/{sid}/export").json()
        r = client.post("/sessions/import", json={"document": doc})
        assert r.status_code == 201
        new = r.json()
        assert new["id"] != sid
        assert new["state"] == "VarianceFitted"
        assert new["fits"] == client.get(f"/sessions/{sid}").json()["fits"]

    def test_mid_session_export_round_trip(self, client):
        sid = client.post("/sessions", json={}).json()["id"]
        client.post(f"/sessions/{sid}/bounds", json={"lower": 5, "upper": 70})
        client.post(
            f"/sessions/{sid}/mean-quantiles",
            json={"quantiles": [{"alpha": 0.05, "value": 30}, {"alpha": 0.95, "value": 40}]},
        )
        doc = client.get(f"/sessions/{sid}/export").json()
        assert doc["fits"]["variance"] is None
        imported = client.post("/sessions/import", json={"document": doc}).json()
        assert imported["state"] == "MeanFitted"

    def test_numeric_payloads_lossless(self, client):
        sid = _drive_example(client)
        body = client.get(f"/sessions/{sid}").json()
        variance = body["fits"]["location"]["params"]["variance"]
        # the JSON round trip must reproduce the exact double
        assert variance == 9.24028773670487
        reparsed = json.loads(json.dumps(body))
        assert reparsed == body


class TestPersistenceAndIsolation:
    def test_restart_loses_nothing(self, tmp_path):
        data = tmp_path / "sessions"
        client = TestClient(create_app(data))
        sid = _drive_example(client)
        fits = client.get(f"/sessions/{sid}").json()["fits"]
        fresh = TestClient(create_app(data))
        assert fresh.get(f"/sessions/{sid}").json()["fits"] == fits

    def test_interleaved_sessions_do_not_interfere(self, client):
        a = client.post("/sessions", json={"seed": 1}).json()["id"]
        b = client.post("/sessions", json={"seed": 2}).json()["id"]
        client.post(f"/sessions/{a}/bounds", json={"lower": 5, "upper": 70})
        client.post(f"/sessions/{b}/bounds", json={"lower": 0.5, "upper": 200})
        client.post(
            f"/sessions/{a}/mean-quantiles",
            json={"quantiles": [{"alpha": 0.05, "value": 30}, {"alpha": 0.95, "value": 40}]},
        )
        client.post(
            f"/sessions/{b}/mean-quantiles",
            json={"quantiles": [{"alpha": 0.05, "value": 60}, {"alpha": 0.95, "value": 100}]},
        )
        client.post(f"/sessions/{a}/proportion", json={"theta_lo": 0.33, "theta_hi": 0.4, "width": 10})
        va = client.get(f"/sessions/{a}").json()
        vb = client.get(f"/sessions/{b}").json()
        assert va["judgements"]["upper"] == 70
        assert vb["judgements"]["upper"] == 200
        assert va["fits"]["location"]["params"]["mean"] == 35.0
        assert vb["fits"]["location"]["params"]["mean"] == pytest.approx(80.0)
        assert vb["fits"]["variance"] is None

    def test_list_sessions(self, client):
        first = client.post("/sessions", json={}).json()["id"]
        second = client.post("/sessions", json={}).json()["id"]
        listed = client.get("/sessions").json()["sessions"]
        assert set(listed) == {first, second}

    def test_concurrent_clients_on_distinct_sessions(self, client):
        from concurrent.futures import ThreadPoolExecutor

        def drive(offset: float) -> dict:
            sid = client.post("/sessions", json={}).json()["id"]
            client.post(
                f"/sessions/{sid}/bounds", json={"lower": 5 + offset, "upper": 70 + offset}
            )
            client.post(
                f"/sessions/{sid}/mean-quantiles",
                json={
                    "quantiles": [
                        {"alpha": 0.05, "value": 30 + offset},
                        {"alpha": 0.95, "value": 40 + offset},
                    ]
                },
            )
            client.post(
                f"/sessions/{sid}/proportion",
                json={"theta_lo": 0.33, "theta_hi": 0.40, "width": 10},
            )
            return client.get(f"/sessions/{sid}").json()

        offsets = [0.0, 1.0, 2.0, 3.0, 4.0, 5.0]
        with ThreadPoolExecutor(max_workers=6) as pool:
            views = list(pool.map(drive, offsets))
        for offset, view in zip(offsets, views):
            assert view["state"] == "VarianceFitted"
            assert view["judgements"]["lower"] == 5 + offset
            assert view["fits"]["location"]["params"]["mean"] == pytest.approx(35 + offset)


class TestGoldenParity:
    def test_driving_example_inputs_matches_golden_file(self, client, golden_document):
        sid = client.post(
            "/sessions", json={"context": golden_document["context"], "seed": 42}
        ).json()["id"]
        client.post(f"/sessions/{sid}/bounds", json={"lower": 5, "upper": 70})
        client.post(
            f"/sessions/{sid}/mean-quantiles",
            json={"quantiles": [{"alpha": 0.05, "value": 30}, {"alpha": 0.95, "value": 40}]},
        )
        client.post(
            f"/sessions/{sid}/proportion",
            json={"theta_lo": 0.33, "theta_hi": 0.40, "width": 10},
        )
        client.post(f"/sessions/{sid}/feedback-shown", json={"summary": {"quantiles": [0.05, 0.95], "interval_level": 0.9}})
        client.post(
            f"/sessions/{sid}/revise",
            json={"target": "proportion", "theta_lo": 0.30, "theta_hi": 0.35, "width": 10},
        )
        client.post(f"/sessions/{sid}/feedback-shown", json={"summary": {"quantiles": [0.05, 0.95], "interval_level": 0.9}})
        client.post(
            f"/sessions/{sid}/conclude",
            json={"note": "expert accepted the fitted population distribution"},
        )
        exported = client.get(f"/sessions/{sid}/export").json()
        assert sess.normalized_for_comparison(exported) == sess.normalized_for_comparison(
            golden_document
        )
