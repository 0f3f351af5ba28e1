import json

import pytest

from desc_entropy.experiments import ConfigError, ExperimentConfig, load_config, run


def test_unknown_key_rejected():
    with pytest.raises(ConfigError, match="unknown config key"):
        ExperimentConfig.from_dict({"experiment": "bounds", "colour": "red"})


def test_missing_experiment_and_bad_name():
    with pytest.raises(ConfigError):
        ExperimentConfig.from_dict({"seed": 1})
    with pytest.raises(ConfigError):
        ExperimentConfig.from_dict({"experiment": "nope"})


def test_randomized_needs_seed():
    with pytest.raises(ConfigError, match="seed"):
        ExperimentConfig.from_dict({"experiment": "game-bridge"})
    ExperimentConfig.from_dict({"experiment": "game-bridge", "seed": 3})


def test_cap_validation():
    with pytest.raises(ConfigError):
        ExperimentConfig.from_dict({"experiment": "bounds", "n_max": 0})
    with pytest.raises(ConfigError):
        ExperimentConfig.from_dict({"experiment": "game-bridge", "seed": 1, "max_pointed": 9})


def test_invalid_json(tmp_path):
    p = tmp_path / "c.json"
    p.write_text("{not json")
    with pytest.raises(ConfigError):
        load_config(str(p))
    p.write_text("[1, 2]")
    with pytest.raises(ConfigError):
        load_config(str(p))


def test_identity_experiment(tmp_path):
    [res] = run(ExperimentConfig(experiment="entropy-identity", out=str(tmp_path)))
    assert res.passed
    header = (tmp_path / "entropy.csv").read_text().splitlines()[0]
    assert header.endswith("identity_residual,boltzmann_ratio")
    assert (tmp_path / "summary.txt").read_text().startswith("entropy-identity | PASS")


def test_sandwich_experiment(tmp_path):
    [res] = run(ExperimentConfig(experiment="complexity-sandwich", out=str(tmp_path), n_min=2, n_max=4))
    assert res.passed
    lines = (tmp_path / "complexity.csv").read_text().splitlines()
    assert lines[0] == "dialect,k,n,class_id,c_lower,c_upper_phi1,c_upper_phi2,c_exact,witness"
    assert (tmp_path / "complexity.svg").exists()


def test_census_experiment(tmp_path):
    [res] = run(ExperimentConfig(experiment="fo-census", out=str(tmp_path)))
    assert res.passed
    assert "4,65536,3044,59136,231/256,1.11474609375" in (tmp_path / "census.csv").read_text()


def test_json_format(tmp_path):
    [res] = run(ExperimentConfig(experiment="fo-census", out=str(tmp_path), n_max=3), as_json=True)
    rows = json.loads((tmp_path / "census.json").read_text())
    assert rows[2]["iso"] == "104"


def test_bridge_is_seed_deterministic(tmp_path):
    cfg = dict(experiment="game-bridge", seed=5, trials=20)
    run(ExperimentConfig(out=str(tmp_path / "a"), **cfg))
    run(ExperimentConfig(out=str(tmp_path / "b"), **cfg))
    assert (tmp_path / "a" / "bridge.csv").read_bytes() == (tmp_path / "b" / "bridge.csv").read_bytes()
