import io
import json
import os

import pytest

from ftqc_estimator import cli, report
from ftqc_estimator.errors import EstimatorError


def run(tmp_path, *argv):
    buf = io.StringIO()
    code = cli.run(["--output-dir", str(tmp_path), *argv], stdout=buf)
    return code, json.loads(buf.getvalue())


QPU_ION = {56: 1.0, 100: 4.8, 150: 8.7}
QPU_NA = {56: 0.73, 100: 1.7, 150: 3.1}
CPU = {56: 7.0, 100: 27.8, 150: 294.4}


def test_comparison_on_published_series(derived):
    header, rows, verdict = report.comparison(QPU_ION, QPU_NA, CPU)
    assert header == list(report.COMPARISON_COLUMNS)
    assert [r[0] for r in rows] == [56, 100, 150]
    for k, v in derived["speedups_published_days"].items():
        assert verdict["speedups"][k] == pytest.approx(v, rel=1e-12)
    assert verdict["speedups"]["56o"] == pytest.approx(7.0)
    assert verdict["speedups"]["100o"] == pytest.approx(5.79, abs=0.01)
    assert verdict["speedups"]["150o"] == pytest.approx(33.84, abs=0.01)
    assert verdict["advantage_everywhere"]


def test_comparison_equal_series():
    _, _, verdict = report.comparison(QPU_ION, {}, dict(QPU_ION))
    assert set(verdict["speedups"].values()) == {1.0}
    assert verdict["quantum_faster_at"] == [] and not verdict["advantage_everywhere"]


def test_comparison_errors():
    with pytest.raises(EstimatorError):
        report.comparison(QPU_ION, {}, {})
    with pytest.raises(EstimatorError):
        report.comparison({}, {}, CPU)
    with pytest.raises(EstimatorError):
        report.comparison({56: 1.0}, {}, CPU)


def test_atomic_write_leaves_no_temp(tmp_path):
    p = report.write_json(tmp_path / "sub" / "a.json", {"x": 1})
    assert json.loads(p.read_text()) == {"x": 1}
    assert os.listdir(p.parent) == ["a.json"]


def test_atomic_write_keeps_old_file_on_failure(tmp_path):
    p = report.write_json(tmp_path / "a.json", {"x": 1})
    with pytest.raises(TypeError):
        report.write_json(p, {"x": object()})
    assert json.loads(p.read_text()) == {"x": 1}
    assert os.listdir(tmp_path) == ["a.json"]


def test_csv_round_trip(tmp_path):
    p = report.write_csv(tmp_path / "t.csv", ["a", "b"], [[1, 2.5], ["x", ""]])
    assert report.read_csv(p) == [{"a": "1", "b": "2.5"}, {"a": "x", "b": ""}]


def test_read_points(tmp_path):
    p = tmp_path / "p.csv"
    p.write_text("x,y\n1,2\n3,4\n")
    assert report.read_points(p) == [(1.0, 2.0), (3.0, 4.0)]
    p.write_text("1,2\n3\n")
    with pytest.raises(ValueError):
        report.read_points(p)


def test_cli_estimate(tmp_path):
    code, out = run(tmp_path, "estimate", "--scenario", "published-56o-ion")
    assert code == 0 and out["status"] == "ok"
    assert out["runtime_days"] == pytest.approx(1.0, rel=1e-6)
    assert out["physical_qubits_basic"] == 1_780_016
    assert out["physical_qubits_detailed"] == 5_064_220
    art = json.loads((tmp_path / "estimate-published-56o-ion.json").read_text())
    assert art["runtime_days"] == out["runtime_days"]
    assert art["provenance"]["calibration_provenance"]["published_value"]["runtime_days"] == 1.0
    rows = report.read_csv(tmp_path / "estimate-published-56o-ion.csv")
    assert float(rows[0]["runtime_days"]) == out["runtime_days"]


def test_cli_estimate_overlap_and_flags(tmp_path):
    code, out = run(tmp_path, "--format", "json", "estimate", "--scenario", "published-150o-ion", "--overlap")
    assert code == 0 and out["runtime_days"] == pytest.approx(11.8, abs=0.1)
    assert not list(tmp_path.glob("*.csv"))
    code, out = run(tmp_path, "estimate", "--scenario", "published-56o-ion", "--flags", "1110")
    assert code == 0 and out["runtime_days"] > 1.0


def test_cli_exit_codes(tmp_path):
    assert run(tmp_path, "estimate", "--scenario", "nope")[0] == 2
    assert run(tmp_path, "fit", "--kind", "linear", "--points", str(tmp_path / "missing.csv"))[0] == 2
    bad = tmp_path / "bad.json"
    bad.write_text(json.dumps({"algorithm": {"n_orbitals": 4}, "profile": {"qubits": 0, "t_total": 10},
                               "hardware_preset": "ion_trap_basic", "calibration_preset": "shared-56o"}))
    code, out = run(tmp_path, "estimate", "--scenario", str(bad))
    assert code == 1 and out["kind"] == "domain" and out["layer"] == "gsc"


def test_cli_parse(tmp_path, fixtures_dir):
    code, out = run(tmp_path, "parse", "--qasm", str(fixtures_dir / "remote_ratio.qasm"))
    assert code == 0
    assert out["profile"]["remote_cnot_per_block"] == 9529
    q = tmp_path / "x.qasm"
    q.write_text('OPENQASM 2.0;\ninclude "qelib1.inc";\nqreg q[1];\nt q[0];\ntdg q[0];\nfoo q[0];\n')
    code, out = run(tmp_path, "parse", "--qasm", str(q))
    assert code == 1 and "line 6" in out["message"]
    q.write_text('OPENQASM 2.0;\ninclude "qelib1.inc";\nqreg q[1];\nt q[0];\ntdg q[0];\nt q[0];\n')
    code, out = run(tmp_path, "parse", "--qasm", str(q), "--peephole")
    assert out["peephole"] == {"t_before": 3, "t_after": 1}


def test_cli_ablate(tmp_path):
    code, out = run(tmp_path, "ablate")
    assert code == 0 and out["monotone"]
    assert out["order"][0] == "S13"
    code, out = run(tmp_path, "ablate", "--grid", "grid-56o")
    assert code == 0 and out["monotone"] and len(out["order"]) == 16


def test_cli_fit(tmp_path):
    code, out = run(tmp_path, "fit", "--kind", "exponential", "--points", "classical_days.csv")
    assert code == 0
    assert out["fit"]["slope_or_rate"] == pytest.approx(0.0400, abs=5e-4)
    assert "mismatch" in out["published"]
    code, out = run(tmp_path, "fit", "--kind", "linear", "--points", "quantum_days.csv")
    assert out["extrapolation"]["250"] == pytest.approx(16.9, abs=0.1)


def test_cli_chem(tmp_path):
    code, out = run(tmp_path, "chem", "--method", "SHCI", "--runs", "runs.csv")
    assert code == 0
    assert out["value"] == pytest.approx(0.443483, abs=1e-5)
    assert out["uncertainty_series"] == [[56, 0.05], [100, 0.3], [150, 7.0]]


def test_cli_compare(tmp_path):
    code, out = run(tmp_path, "compare")
    assert code == 0 and out["advantage_everywhere"]
    assert out["speedups"]["56o"] == pytest.approx(167 / 24)
    assert "published-56o-ion" in out["provenance"]
    assert (tmp_path / "comparison.csv").is_file()


def test_cli_figures(tmp_path):
    code, out = run(tmp_path, "--figures", "fit", "--kind", "linear", "--points", "quantum_days.csv")
    assert code == 0
    png = tmp_path / "fit-linear.png"
    assert png.is_file() and png.read_bytes()[:4] == b"\x89PNG"
    for args in (["ablate"], ["compare"], ["chem", "--runs", "runs.csv"]):
        assert run(tmp_path, "--figures", *args)[0] == 0
    assert {p.name for p in tmp_path.glob("*.png")} == {
        "fit-linear.png", "ablation.png", "comparison.png", "uncertainty.png"}


def test_no_figures_by_default(tmp_path):
    run(tmp_path, "ablate")
    assert not list(tmp_path.glob("*.png"))


def test_user_preset_dir_shadows_packaged(tmp_path, store):
    d = tmp_path / "presets" / "hardware"
    d.mkdir(parents=True)
    doc = store.read("hardware", "ion_trap_basic")
    doc["scc_time"] = 2e-4
    (d / "ion_trap_basic.json").write_text(json.dumps(doc))
    code, out = run(tmp_path, "--preset-dir", str(tmp_path / "presets"), "estimate", "--scenario", "S1")
    assert code == 0 and out["runtime_days"] == pytest.approx(2.0, rel=1e-6)
    assert run(tmp_path, "--preset-dir", str(tmp_path / "nowhere"), "estimate", "--scenario", "S1")[0] == 2
