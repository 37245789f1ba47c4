"""Tests for config module."""
import copy
import json

import pytest

from satsir.config import RunConfig, bundled_configs, config_from_dict, load_config
from satsir.errors import ConfigError
from satsir.numerics import TimeGrid
from satsir.optctl import CostWeights, OcOptions
from satsir.params import ControlPair, ModelParams, SirState
from satsir.strategy import Strategy

MINIMAL = {
    "params": {"A": 100, "beta": 0.1, "alpha": 0.5, "d": 0.004, "delta": 0.02, "gamma": 0.7, "r": 0.4, "b": 0.05},
    "weights": {"a1": 0.01, "a2": 0.08, "b1": 0.8, "b2": 0.1},
    "initial": {"S": 50, "I": 4, "R": 0.01},
    "grid": {"t0": 0, "t1": 20, "n": 2000},
    "controls": {"u1": 0.5, "u2": 0.5},
}


def _make_config(**changes):
    data = copy.deepcopy(MINIMAL)
    for path, value in changes.items():
        section, _, key = path.partition("__")
        if key:
            data[section][key] = value
        else:
            data[section] = value
    return data


def test_bundled_table2():
    cfg = load_config("table2")
    assert cfg.params == ModelParams.table2()
    assert cfg.weights == CostWeights.table2()
    assert cfg.initial == SirState(50.0, 4.0, 0.01)
    assert cfg.grid == TimeGrid(0.0, 20.0, 2000)
    assert cfg.controls == ControlPair(0.5, 0.5)
    assert cfg.strategy is Strategy.BOTH
    assert cfg.source == "bundled:table2.json"


def test_bundled_figure1_has_scan():
    cfg = load_config("figure1.json")
    assert cfg.params == ModelParams.figure1()
    values = cfg.scan.values()
    assert len(values) == 41
    assert values[0] == pytest.approx(0.9)
    assert values[-1] == pytest.approx(1.1)
    assert set(bundled_configs()) >= {"table2", "figure1"}


def test_defaults_for_optional_sections():
    cfg = config_from_dict(_make_config())
    assert cfg.oc_options == OcOptions()
    assert cfg.scan is None
    assert cfg.output == "satsir_out"


def test_load_from_file(tmp_path):
    path = tmp_path / "run.json"
    path.write_text(json.dumps(_make_config(strategy="str1", output="out/run")))
    cfg = load_config(path)
    assert cfg.strategy is Strategy.STR1
    assert cfg.output == "out/run"
    assert cfg.source == str(path)


def test_zero_control_cost_names_field():
    with pytest.raises(ConfigError, match=r"weights\.b1 must be > 0"):
        config_from_dict(_make_config(weights__b1=0))


def test_odd_grid_cites_simpson():
    with pytest.raises(ConfigError, match=r"grid\.n must be even.*Simpson"):
        config_from_dict(_make_config(grid__n=2001))


def test_unknown_keys_fail_closed():
    with pytest.raises(ConfigError, match=r"params\.kappa"):
        config_from_dict(_make_config(params__kappa=1.0))
    with pytest.raises(ConfigError, match="unknown top-level"):
        config_from_dict(_make_config(extras={}))


def test_missing_keys_and_sections():
    data = _make_config()
    del data["initial"]["R"]
    with pytest.raises(ConfigError, match=r"initial\.R"):
        config_from_dict(data)
    data = _make_config()
    del data["weights"]
    with pytest.raises(ConfigError, match="missing required section 'weights'"):
        config_from_dict(data)


def test_booleans_rejected():
    with pytest.raises(ConfigError, match=r"controls\.u1 must be a number"):
        config_from_dict(_make_config(controls__u1=True))


def test_bad_strategy_and_output():
    with pytest.raises(ConfigError, match="unknown strategy"):
        config_from_dict(_make_config(strategy="all"))
    with pytest.raises(ConfigError, match="output"):
        config_from_dict(_make_config(output=""))


def test_scan_section_validated():
    with pytest.raises(ConfigError, match=r"scan\.r0_max must exceed r0_min"):
        config_from_dict(_make_config(scan={"r0_min": 1.0, "r0_max": 0.5, "points": 5}))


def test_invalid_json_and_missing_file(tmp_path):
    path = tmp_path / "broken.json"
    path.write_text("{not json")
    with pytest.raises(ConfigError, match="invalid JSON"):
        load_config(path)
    with pytest.raises(ConfigError, match="not found"):
        load_config(tmp_path / "absent.json")


def test_non_utf8_config_is_a_config_error(tmp_path):
    path = tmp_path / "latin1.json"
    path.write_bytes(b'{"params": "\xff\xfe"}')
    with pytest.raises(ConfigError, match="not valid UTF-8"):
        load_config(path)


def test_overrides_are_revalidated():
    cfg = config_from_dict(_make_config())
    changed = cfg.with_overrides(output="x", strategy="str2", grid_n=200)
    assert isinstance(changed, RunConfig)
    assert (changed.output, changed.strategy, changed.grid.n) == ("x", Strategy.STR2, 200)
    assert cfg.grid.n == 2000
    with pytest.raises(ConfigError, match=r"grid\.n"):
        cfg.with_overrides(grid_n=201)
