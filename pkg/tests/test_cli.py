"""CLI subcommands: values, exit codes, determinism, service parity."""

import csv
import io
import json

import pytest
from fastapi.testclient import TestClient

from elicit import session as sess
from elicit.cli import main
from elicit.service import create_app

from conftest import run_example_session


def run_cli(capsys, *argv):
    code = main(list(argv))
    captured = capsys.readouterr()
    return code, captured.out, captured.err


class TestFitMean:
    def test_worked_example_with_feedback_quantiles(self, capsys):
        code, out, _ = run_cli(
            capsys,
            "fit-mean",
            "--probs", "0.05,0.95",
            "--vals", "30,40",
            "--lower", "5",
            "--upper", "70",
            "--ql", "0.01",
            "--qu", "0.99",
        )
        assert code == 0
        assert "family: normal" in out
        assert "mean: 35.0" in out
        payload_lines = {line.split(": ")[0]: line.split(": ")[1] for line in out.strip().splitlines()}
        assert float(payload_lines["variance"]) == pytest.approx(9.24, abs=0.005)
        assert round(float(payload_lines["quantile 0.01"])) == 28
        assert round(float(payload_lines["quantile 0.99"])) == 42

    def test_single_pair_is_usage_error(self, capsys):
        code, _, err = run_cli(
            capsys, "fit-mean", "--probs", "0.05", "--vals", "30", "--lower", "5", "--upper", "70"
        )
        assert code == 2
        assert "two" in err

    def test_three_quantiles_lognormal_reports_residual(self, capsys):
        code, out, _ = run_cli(
            capsys,
            "fit-mean",
            "--probs", "0.1,0.5,0.9",
            "--vals", "10,20,45",
            "--lower", "1",
            "--upper", "100",
            "--family", "lognormal",
            "--json",
        )
        assert code == 0
        payload = json.loads(out)
        assert payload["location"]["family"] == "lognormal"
        assert payload["location"]["residual"] >= 0.0

    def test_value_outside_bounds_is_domain_exit(self, capsys):
        code, _, err = run_cli(
            capsys, "fit-mean", "--probs", "0.05,0.95", "--vals", "30,80", "--lower", "5", "--upper", "70"
        )
        assert code == 3
        assert "invalid-judgement" in err

    def test_json_matches_service_payload(self, capsys, tmp_path):
        code, out, _ = run_cli(
            capsys,
            "fit-mean",
            "--probs", "0.05,0.95",
            "--vals", "30,40",
            "--lower", "5",
            "--upper", "70",
            "--json",
        )
        assert code == 0
        cli_fit = json.loads(out)["location"]
        client = TestClient(create_app(tmp_path))
        sid = client.post("/sessions", json={}).json()["id"]
        client.post(f"/sessions/{sid}/bounds", json={"lower": 5, "upper": 70})
        service_fit = client.post(
            f"/sessions/{sid}/mean-quantiles",
            json={"quantiles": [{"alpha": 0.05, "value": 30}, {"alpha": 0.95, "value": 40}]},
        ).json()["fits"]["location"]
        assert cli_fit == service_fit


class TestFitPrecision:
    def test_final_fit(self, capsys):
        code, out, _ = run_cli(
            capsys, "fit-precision", "--interval", "35,45", "--propvals", "0.30,0.35", "--json"
        )
        assert code == 0
        a, b = json.loads(out)["variance"]["params"]
        assert a == pytest.approx(62.8, rel=0.05)
        assert b == pytest.approx(7114.0, rel=0.05)

    def test_first_fit_with_percent_suffix(self, capsys):
        code, out, _ = run_cli(
            capsys, "fit-precision", "--interval", "35,45", "--propvals", "33%,40%", "--json"
        )
        assert code == 0
        a, b = json.loads(out)["variance"]["params"]
        assert a == pytest.approx(31.5, rel=0.05)
        assert b == pytest.approx(2514.0, rel=0.05)

    def test_theta_above_half_is_domain_error(self, capsys):
        code, _, err = run_cli(
            capsys, "fit-precision", "--interval", "35,45", "--propvals", "0.6,0.7"
        )
        assert code == 3
        assert "domain-error" in err

    def test_warns_outside_robust_band(self, capsys):
        code, _, err = run_cli(
            capsys, "fit-precision", "--interval", "35,45", "--propvals", "0.05,0.30"
        )
        assert code == 0
        assert "robust" in err

    def test_json_matches_service_payload(self, capsys, tmp_path):
        code, out, _ = run_cli(
            capsys, "fit-precision", "--interval", "35,45", "--propvals", "0.33,0.40", "--json"
        )
        cli_fit = json.loads(out)["variance"]
        client = TestClient(create_app(tmp_path))
        sid = client.post("/sessions", json={}).json()["id"]
        client.post(f"/sessions/{sid}/bounds", json={"lower": 5, "upper": 70})
        client.post(
            f"/sessions/{sid}/mean-quantiles",
            json={"quantiles": [{"alpha": 0.05, "value": 30}, {"alpha": 0.95, "value": 40}]},
        )
        service_fit = client.post(
            f"/sessions/{sid}/proportion",
            json={"theta_lo": 0.33, "theta_hi": 0.40, "width": 10},
        ).json()["fits"]["variance"]
        assert cli_fit == service_fit


class TestFeedback:
    ARGS = [
        "feedback",
        "--location-params", "35,9.24028773670487",
        "--var-params", "31.5,2514",
        "--lower", "5",
        "--upper", "70",
        "--quantiles", "0.05,0.95",
        "--level", "0.9",
    ]

    def test_repeated_runs_identical_bytes(self, capsys):
        code, out1, _ = run_cli(capsys, *self.ARGS, "--K", "400", "--J", "9", "--seed", "12")
        assert code == 0
        code, out2, _ = run_cli(capsys, *self.ARGS, "--K", "400", "--J", "9", "--seed", "12")
        assert out1 == out2
        code, out3, _ = run_cli(capsys, *self.ARGS, "--K", "400", "--J", "9", "--seed", "13")
        assert out1 != out3

    def test_k2_runs_wide(self, capsys):
        code, out, _ = run_cli(capsys, *self.ARGS, "--K", "2", "--J", "4", "--seed", "1")
        assert code == 0
        body = json.loads(out)
        assert len(body["grid"]) == 4

    def test_csv_output_parses(self, capsys):
        code, out, _ = run_cli(
            capsys, *self.ARGS, "--K", "50", "--J", "6", "--seed", "2", "--format", "csv"
        )
        assert code == 0
        rows = list(csv.DictReader(io.StringIO(out)))
        assert len(rows) == 6
        assert set(rows[0]) == {"x", "cdf_lower", "cdf_median", "cdf_upper"}
        assert float(rows[0]["x"]) == 5.0
        assert float(rows[-1]["x"]) == 70.0

    def test_intervals_near_worked_example(self, capsys):
        code, out, _ = run_cli(capsys, *self.ARGS, "--K", "100000", "--J", "2", "--seed", "9")
        body = json.loads(out)
        lo, hi = body["quantile_intervals"]["0.05"]
        assert lo == pytest.approx(12.0, abs=4.0)
        assert hi == pytest.approx(23.0, abs=4.0)
        lo, hi = body["quantile_intervals"]["0.95"]
        assert lo == pytest.approx(47.0, abs=4.0)
        assert hi == pytest.approx(58.0, abs=4.0)

    def test_session_file_source(self, capsys, tmp_path):
        s = run_example_session()
        path = tmp_path / "session.json"
        path.write_text(sess.export_json(s), encoding="utf-8")
        code, out, _ = run_cli(
            capsys, "feedback", "--session", str(path), "--K", "100", "--J", "5", "--seed", "3"
        )
        assert code == 0
        assert json.loads(out)["config"]["K"] == 100

    def test_session_without_variance_fit_errors(self, capsys, tmp_path):
        s = sess.create_session(seed=1)
        sess.record_bounds(s, 5.0, 70.0)
        path = tmp_path / "partial.json"
        path.write_text(sess.export_json(s), encoding="utf-8")
        code, _, err = run_cli(capsys, "feedback", "--session", str(path))
        assert code == 3
        assert "state" in err

    def test_missing_file_is_io_error(self, capsys):
        code, _, _ = run_cli(capsys, "feedback", "--session", "/nonexistent/file.json")
        assert code == 4

    def test_missing_params_usage_error(self, capsys):
        code, _, err = run_cli(capsys, "feedback", "--location-params", "35,9.24")
        assert code == 2
        assert "--var-params" in err

    def test_json_matches_service_payload(self, capsys, tmp_path):
        client = TestClient(create_app(tmp_path))
        sid = client.post("/sessions", json={"seed": 42}).json()["id"]
        client.post(f"/sessions/{sid}/bounds", json={"lower": 5, "upper": 70})
        client.post(
            f"/sessions/{sid}/mean-quantiles",
            json={"quantiles": [{"alpha": 0.05, "value": 30}, {"alpha": 0.95, "value": 40}]},
        )
        client.post(
            f"/sessions/{sid}/proportion",
            json={"theta_lo": 0.33, "theta_hi": 0.40, "width": 10},
        )
        service_body = client.get(f"/sessions/{sid}/feedback?k=300&j=7&seed=4").json()

        doc = client.get(f"/sessions/{sid}/export").json()
        path = tmp_path / "exported.json"
        path.write_text(json.dumps(doc), encoding="utf-8")
        code, out, _ = run_cli(
            capsys, "feedback", "--session", str(path), "--K", "300", "--J", "7", "--seed", "4"
        )
        assert code == 0
        assert json.loads(out) == service_body


class TestValidateSession:
    def test_valid_file(self, capsys, tmp_path):
        s = run_example_session()
        path = tmp_path / "s.json"
        path.write_text(sess.export_json(s), encoding="utf-8")
        code, out, _ = run_cli(capsys, "validate-session", str(path))
        assert code == 0
        assert "state: Concluded" in out
        assert "replay: consistent" in out

    def test_json_view_matches_service_shape(self, capsys, tmp_path):
        s = run_example_session()
        path = tmp_path / "s.json"
        path.write_text(sess.export_json(s), encoding="utf-8")
        code, out, _ = run_cli(capsys, "validate-session", str(path), "--json")
        assert json.loads(out) == sess.session_view(s)

    def test_tampered_file(self, capsys, tmp_path):
        s = run_example_session()
        doc = sess.export_session(s)
        doc["judgements"]["L"] = 10.0
        path = tmp_path / "bad.json"
        path.write_text(json.dumps(doc), encoding="utf-8")
        code, _, err = run_cli(capsys, "validate-session", str(path))
        assert code == 4
        assert "validation-error" in err

    def test_unparseable_file(self, capsys, tmp_path):
        path = tmp_path / "junk.json"
        path.write_text("{not json", encoding="utf-8")
        code, _, err = run_cli(capsys, "validate-session", str(path))
        assert code == 4
