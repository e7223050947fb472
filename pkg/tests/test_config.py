"""Config schema: defaults, validation failures, JSON loading."""

import json

import pytest

from weakinv.config import (
    SCENARIOS,
    ConfigError,
    default_config,
    load_config,
    validate_config,
)


def test_every_scenario_has_valid_defaults():
    for name in SCENARIOS:
        cfg = default_config(name)
        assert cfg.scenario == name
        assert cfg.t1 > cfg.t0
        assert cfg.dt > 0.0
        assert cfg.output_dir == f"out_{name}"


def test_scenario_required():
    with pytest.raises(ConfigError):
        validate_config({})
    with pytest.raises(ConfigError):
        validate_config({"scenario": "unknown_thing"})


def test_unknown_keys_rejected_at_both_levels():
    with pytest.raises(ConfigError):
        validate_config({"scenario": "spin", "bogus": 1})
    with pytest.raises(ConfigError):
        validate_config({"scenario": "spin", "params": {"bogus": 1}})


def test_window_and_step_validation():
    with pytest.raises(ConfigError):
        validate_config({"scenario": "spin", "dt": -1e-3})
    with pytest.raises(ConfigError):
        validate_config({"scenario": "spin", "t0": 1.0, "t1": 0.5})
    with pytest.raises(ConfigError):
        validate_config({"scenario": "spin", "alpha": 0.0})
    with pytest.raises(ConfigError):
        validate_config({"scenario": "spin", "seed": True})


def test_param_kind_enforcement():
    with pytest.raises(ConfigError):
        validate_config({"scenario": "spin", "params": {"b0": [1.0, 2.0]}})
    with pytest.raises(ConfigError):
        validate_config({"scenario": "spin", "params": {"rate_c": -0.1}})
    with pytest.raises(ConfigError):
        validate_config({"scenario": "spin",
                         "params": {"initial_state": "sideways"}})
    with pytest.raises(ConfigError):
        validate_config({"scenario": "oscillator", "params": {"n_fock": 2.5}})
    # signed float: passes the schema, the engine decides (wrong-sign decay
    # must surface as a numerical abort, not a config error)
    cfg = validate_config({"scenario": "oscillator", "params": {"decay": -0.5}})
    assert cfg.params["decay"] == -0.5


def test_scenario_specific_window_defaults():
    assert default_config("spin").dt == pytest.approx(1e-3)
    fp = default_config("fp_ou")
    assert fp.t1 == pytest.approx(1.0)
    assert fp.dt == pytest.approx(1e-4)


def test_param_overrides_merge_with_defaults():
    cfg = validate_config(
        {"scenario": "spin", "params": {"rate_c": 0.2}})
    assert cfg.params["rate_c"] == 0.2
    assert tuple(cfg.params["b0"]) == (1.0, 2.0, 3.0)


def test_load_config_roundtrip(tmp_path):
    doc = {"scenario": "spin", "t1": 0.1, "params": {"rate_c": 0.05}}
    p = tmp_path / "cfg.json"
    p.write_text(json.dumps(doc))
    cfg = load_config(p)
    assert cfg.scenario == "spin"
    assert cfg.t1 == 0.1
    assert cfg.params["rate_c"] == 0.05


def test_load_config_failure_modes(tmp_path):
    with pytest.raises(ConfigError):
        load_config(tmp_path / "missing.json")
    bad = tmp_path / "bad.json"
    bad.write_text("{not json")
    with pytest.raises(ConfigError):
        load_config(bad)
