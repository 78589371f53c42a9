"""End-to-end command-line tests driven through main(argv).

Exit-code contract: 0 success, 1 a check or validation failed, 2 the
invocation itself was bad. Reports written with --out must be
byte-identical across reruns of the same configuration and seed.
"""

import json

import numpy as np
import pytest

from homofiber import export_entry, get_entry
from homofiber.cli import main


def run_out(tmp_path, name, argv):
    out = tmp_path / name
    rc = main(argv + ["--out", str(out)])
    return rc, out


def test_validate_catalog_space(tmp_path, capsys):
    rc, out = run_out(tmp_path, "v.json", ["validate", "--space", "hopf:1"])
    assert rc == 0
    lines = capsys.readouterr().out.strip().splitlines()
    assert lines and all(line.startswith("PASS") for line in lines)
    doc = json.loads(out.read_text())
    assert doc["passed"] is True
    assert set(doc["checks"]) >= {"orthogonality", "ad_invariance", "center_membership"}


@pytest.mark.parametrize(
    "name", ["hopf:1", "hopf:2", "hopf:3", "su2", "kahler_s2", "twistor_su3"]
)
def test_validate_every_entry(name):
    assert main(["validate", "--space", name]) == 0


def test_verify_passes_on_closed_form_curve(tmp_path):
    rc, out = run_out(
        tmp_path,
        "r.json",
        ["verify", "--space", "hopf:1", "--lambda", "1", "--lambda", "2",
         "--k", "1", "--samples", "9"],
    )
    assert rc == 0
    doc = json.loads(out.read_text())
    assert doc["passed"] is True
    assert doc["failures"] == []
    assert doc["koszul"]["max_abs"] <= 1e-6
    assert doc["bracket_identity_max"] <= 1e-11


def test_verify_reports_special_checks(tmp_path):
    # k = 0 on the round sphere triggers the great-circle report
    rc, out = run_out(
        tmp_path,
        "gc.json",
        ["verify", "--space", "hopf:1", "--samples", "9"],
    )
    assert rc == 0
    doc = json.loads(out.read_text())
    assert "great_circle" in doc["special"]
    # the adjoint-orbit sphere triggers the magnetic-circle report
    rc, out = run_out(
        tmp_path,
        "mc.json",
        ["verify", "--space", "kahler_s2", "--k", "1", "--samples", "9"],
    )
    assert rc == 0
    doc = json.loads(out.read_text())
    entries = doc["special"]["magnetic_circle"]["entries"]
    assert [e["k"] for e in entries] == [0.5, 1.0, 2.0]


def test_verify_collapse_reported_at_equal_weights(tmp_path):
    rc, out = run_out(
        tmp_path,
        "c.json",
        ["verify", "--space", "su2", "--k", "1", "--samples", "9"],
    )
    assert rc == 0
    doc = json.loads(out.read_text())
    assert doc["special"]["collapse"]["max_frobenius"] <= 1e-12


def test_verify_flags_perturbed_curve(tmp_path, capsys):
    rc, out = run_out(
        tmp_path,
        "bad.json",
        ["verify", "--space", "hopf:1", "--lambda", "1", "--lambda", "2",
         "--k", "1", "--samples", "9", "--perturb", "1e-2"],
    )
    assert rc == 1
    doc = json.loads(out.read_text())
    assert doc["passed"] is False
    assert any("koszul" in f for f in doc["failures"])
    assert "verification failed" in capsys.readouterr().err


def test_verify_respects_env_tolerance(tmp_path, monkeypatch):
    monkeypatch.setenv("HOMOFIBER_TOL", "1e-30")
    rc, _ = run_out(
        tmp_path,
        "tight.json",
        ["verify", "--space", "hopf:1", "--k", "1", "--samples", "5"],
    )
    assert rc == 1


def test_unknown_space_is_usage_error(capsys):
    assert main(["validate", "--space", "nope"]) == 2
    assert "unknown space" in capsys.readouterr().err


def test_missing_document_is_usage_error(tmp_path):
    assert main(["validate", "--space", str(tmp_path / "absent.json")]) == 2


def test_malformed_json_is_usage_error(tmp_path, capsys):
    bad = tmp_path / "bad.json"
    bad.write_text("{not json")
    assert main(["validate", "--space", str(bad)]) == 2
    assert "cannot parse" in capsys.readouterr().err


def test_tampered_document_fails_validation(tmp_path):
    doc = export_entry(get_entry("hopf:1"))
    doc["h_basis"] = [doc["g_basis"][2]]
    path = tmp_path / "tampered.json"
    path.write_text(json.dumps(doc))
    rc, out = run_out(tmp_path, "t.json", ["validate", "--space", str(path)])
    assert rc == 1
    assert json.loads(out.read_text())["passed"] is False


def test_catalog_list(capsys):
    assert main(["catalog", "list"]) == 0
    out = capsys.readouterr().out
    lines = out.strip().splitlines()
    assert len(lines) >= 6
    assert any(line.startswith("hopf:1") and "model=vector" in line for line in lines)


def test_catalog_export_round_trip(tmp_path):
    rc, out = run_out(tmp_path, "hopf1.json", ["catalog", "export", "hopf:1"])
    assert rc == 0
    assert main(["validate", "--space", str(out)]) == 0
    assert main(["verify", "--space", str(out), "--k", "1", "--samples", "5"]) == 0


def test_catalog_export_unknown(capsys):
    assert main(["catalog", "export", "nope"]) == 1
    assert "unknown catalog entry" in capsys.readouterr().err


def test_catalog_export_needs_name(capsys):
    assert main(["catalog", "export"]) == 2
    assert "needs a name" in capsys.readouterr().err


def test_simulate_csv_layout(tmp_path):
    rc, out = run_out(
        tmp_path,
        "traj.csv",
        ["simulate", "--space", "hopf:1", "--lambda", "1", "--lambda", "2",
         "--k", "1", "--t0", "0", "--t1", "2", "--samples", "11"],
    )
    assert rc == 0
    rows = [line.split(",") for line in out.read_text().strip().splitlines()]
    header, data = rows[0], rows[1:]
    assert len(data) == 11
    assert header[0] == "t"
    assert header[-1] == "speed"
    assert "pos_0_re" in header  # sphere positions are complex pairs
    speeds = [float(r[-1]) for r in data]
    assert max(speeds) - min(speeds) <= 1e-12
    assert float(data[0][0]) == 0.0 and float(data[-1][0]) == 2.0


def test_simulate_positions_on_the_orbit_sphere(tmp_path):
    rc, out = run_out(
        tmp_path,
        "orbit.csv",
        ["simulate", "--space", "kahler_s2", "--k", "1", "--t0", "0",
         "--t1", "6.3", "--samples", "13"],
    )
    assert rc == 0
    rows = [line.split(",") for line in out.read_text().strip().splitlines()]
    header, data = rows[0], rows[1:]
    cols = [header.index(f"pos_{i}") for i in range(3)]
    for r in data:
        radius = np.hypot(np.hypot(float(r[cols[0]]), float(r[cols[1]])), float(r[cols[2]]))
        assert radius == pytest.approx(np.sqrt(2.0), abs=1e-10)


def test_simulate_json_tree(tmp_path):
    rc, out = run_out(
        tmp_path,
        "traj.json",
        ["simulate", "--space", "su2", "--samples", "4", "--format", "json-tree"],
    )
    assert rc == 0
    doc = json.loads(out.read_text())
    assert doc["space"] == "su2"
    assert len(doc["samples"]) == 4
    assert doc["samples"][0]["position"] is None


def test_verify_csv_table(tmp_path):
    rc, out = run_out(
        tmp_path,
        "res.csv",
        ["verify", "--space", "hopf:1", "--k", "1", "--samples", "5",
         "--format", "csv"],
    )
    assert rc == 0
    rows = out.read_text().strip().splitlines()
    assert rows[0] == "t,probe,t1,t2,t3,rhs,residual"
    assert len(rows) == 1 + 5 * 3  # five times, three metric probes


def test_explicit_coefficients(tmp_path):
    rc, _ = run_out(
        tmp_path,
        "c.csv",
        ["simulate", "--space", "hopf:1", "--xa", "1,0", "--xb", "1",
         "--samples", "3"],
    )
    assert rc == 0
    assert main(["simulate", "--space", "hopf:1", "--xa", "1", "--samples", "3",
                 "--out", str(tmp_path / "d.csv")]) == 2
    assert main(["simulate", "--space", "kahler_s2", "--xb", "1", "--samples", "3",
                 "--out", str(tmp_path / "e.csv")]) == 2


def test_pair_flag_parsing(tmp_path):
    ok = ["verify", "--space", "kahler_s2", "--pair", "1", "--k", "1",
          "--samples", "5", "--out", str(tmp_path / "p.json")]
    assert main(ok) == 0
    assert main(["simulate", "--space", "hopf:1", "--pair", "1,2,3"]) == 2
    assert main(["simulate", "--space", "hopf:1", "--pair", "a,b"]) == 2


def test_reports_are_deterministic(tmp_path):
    argv = ["verify", "--space", "hopf:2", "--lambda", "1", "--lambda", "2",
            "--k", "1", "--samples", "7", "--seed", "3"]
    _, first = run_out(tmp_path, "a.json", argv)
    _, second = run_out(tmp_path, "b.json", argv)
    assert first.read_bytes() == second.read_bytes()
    argv = ["simulate", "--space", "hopf:2", "--k", "1", "--samples", "7",
            "--seed", "3"]
    _, first = run_out(tmp_path, "a.csv", argv)
    _, second = run_out(tmp_path, "b.csv", argv)
    assert first.read_bytes() == second.read_bytes()


def test_bare_invocations():
    assert main([]) == 2
    assert main(["--help"]) == 0
    assert main(["frobnicate"]) == 2
