"""End-to-end CLI behaviour: exit codes, output files, reproducibility."""

import json

import pytest

from weakinv.cli import main
from weakinv.scenarios import CSV_HEADER

EXPECTED_HEADER = ("t,exp_I,var_I,growth_formula,growth_fd,S_vn,S_renyi,"
                   "bound_vn,bound_renyi,trace_err,min_eig")


def _write(tmp_path, name, doc):
    p = tmp_path / name
    p.write_text(json.dumps(doc))
    return str(p)


def _spin_cfg(tmp_path, **over):
    doc = {"scenario": "spin", "t1": 0.05, "dt": 1e-3}
    doc.update(over)
    return _write(tmp_path, "spin.json", doc)


def test_header_constant_matches_contract():
    assert ",".join(CSV_HEADER) == EXPECTED_HEADER


def test_run_spin_writes_series_and_verdict(tmp_path):
    cfg = _spin_cfg(tmp_path)
    out = tmp_path / "out"
    assert main(["run", "--config", cfg, "--output-dir", str(out)]) == 0

    lines = (out / "series.csv").read_text().splitlines()
    assert lines[0] == EXPECTED_HEADER
    assert len(lines) == 1 + 51          # header + one row per grid node
    assert all(len(row.split(",")) == 11 for row in lines[1:])

    doc = json.loads((out / "verdict.json").read_text())
    assert doc["scenario"] == "spin"
    assert doc["all_pass"] is True
    names = {c["name"] for c in doc["checks"]}
    assert "mean_invariant_conserved" in names
    assert "growth_rate_equality" in names
    for c in doc["checks"]:
        assert set(c) == {"name", "law", "measured", "bound_or_target",
                          "tolerance", "pass"}
        assert c["pass"] is True


def test_runs_are_byte_identical(tmp_path):
    cfg = _spin_cfg(tmp_path)
    out_a, out_b = tmp_path / "a", tmp_path / "b"
    assert main(["run", "--config", cfg, "--output-dir", str(out_a)]) == 0
    assert main(["run", "--config", cfg, "--output-dir", str(out_b)]) == 0
    assert (out_a / "series.csv").read_bytes() == (out_b / "series.csv").read_bytes()
    assert (out_a / "verdict.json").read_bytes() == (out_b / "verdict.json").read_bytes()


def test_fuzz_runs_are_byte_identical(tmp_path, monkeypatch):
    cfg = _write(tmp_path, "fuzz.json", {
        "scenario": "channel_fuzz",
        "params": {"n_channels": 16, "max_dim": 4, "max_kraus": 3},
    })
    monkeypatch.setenv("WEAKINV_THREADS", "4")
    out_a, out_b = tmp_path / "a", tmp_path / "b"
    assert main(["run", "--config", cfg, "--output-dir", str(out_a)]) == 0
    monkeypatch.setenv("WEAKINV_THREADS", "1")   # parallelism must not leak in
    assert main(["run", "--config", cfg, "--output-dir", str(out_b)]) == 0
    assert (out_a / "series.csv").read_bytes() == (out_b / "series.csv").read_bytes()


def test_config_errors_exit_2(tmp_path, capsys):
    missing = str(tmp_path / "nope.json")
    assert main(["run", "--config", missing]) == 2

    bad = tmp_path / "bad.json"
    bad.write_text("{oops")
    assert main(["run", "--config", str(bad)]) == 2

    neg_dt = _write(tmp_path, "neg.json", {"scenario": "spin", "dt": -0.1})
    assert main(["run", "--config", neg_dt]) == 2
    assert "config error" in capsys.readouterr().err


def test_numerical_abort_exits_3(tmp_path, capsys):
    # decay < 0 makes the spring constant grow, which the schedule refuses
    cfg = _write(tmp_path, "osc.json", {
        "scenario": "oscillator",
        "params": {"decay": -0.5, "n_fock": 16},
    })
    assert main(["run", "--config", cfg, "--output-dir",
                 str(tmp_path / "o")]) == 3
    assert "numerical abort" in capsys.readouterr().err


def test_failed_check_exits_1(tmp_path):
    # grid too coarse for the finite-difference identity tolerance; the
    # engine itself stays healthy so this lands as a check failure
    cfg = _write(tmp_path, "thermo.json", {
        "scenario": "thermo_spin", "params": {"n_times": 65}})
    code = main(["run", "--config", cfg, "--output-dir", str(tmp_path / "o")])
    assert code == 1


def test_bad_thread_cap_exits_2(tmp_path, monkeypatch):
    cfg = _write(tmp_path, "fuzz.json", {
        "scenario": "channel_fuzz",
        "params": {"n_channels": 4, "max_dim": 3, "max_kraus": 2},
    })
    monkeypatch.setenv("WEAKINV_THREADS", "many")
    assert main(["run", "--config", cfg, "--output-dir",
                 str(tmp_path / "o")]) == 2


def test_scenarios_listing(capsys):
    assert main(["scenarios"]) == 0
    text = capsys.readouterr().out
    for name in ("spin", "oscillator", "channel_fuzz",
                 "thermo_spin", "fp_ou"):
        assert f"{name}:" in text


def test_seventeen_digit_floats(tmp_path):
    cfg = _spin_cfg(tmp_path)
    out = tmp_path / "out17"
    assert main(["run", "--config", cfg, "--output-dir", str(out)]) == 0
    lines = (out / "series.csv").read_text().splitlines()
    row = lines[2].split(",")
    # values round-trip: parse and re-render with the same format
    for cell in row:
        assert f"{float(cell):.17g}" == cell
