import pytest

from config import config
from virlab.errors import ConfigError


def test_defaults():
    run = config.load_run_config(environ={})
    assert run.seed == config.SEED == 20240917
    assert run.min_class_samples == 1000
    assert run.shard_size > 0
    assert run.output_format == "md"


def test_precedence(tmp_path):
    path = tmp_path / "run.env"
    path.write_text("SAMPLES=1e5\nSEED=5\nWORKERS=2\n")
    environ = {"VLAB_SEED": "6", "VLAB_WORKERS": "3"}
    run = config.load_run_config({"workers": 4, "seed": None}, path, environ)
    assert run.samples == 100000
    assert run.seed == 6
    assert run.workers == 4


def test_unknown_keys_are_kept_as_extra(tmp_path):
    path = tmp_path / "run.env"
    path.write_text("NOTE=desk run\n")
    run = config.load_run_config(config_path=path, environ={})
    assert run.extra["note"] == "desk run"


def test_missing_file():
    with pytest.raises(ConfigError):
        config.load_run_config(config_path="/nonexistent/run.env", environ={})


def test_bad_value():
    with pytest.raises(ConfigError):
        config.load_run_config({"samples": "many"}, environ={})


def test_run_config_is_frozen():
    run = config.load_run_config(environ={})
    with pytest.raises(Exception):
        run.seed = 1
    assert run.to_dict()["seed"] == run.seed


def test_defaults_come_from_the_yaml_layers():
    layered = {**config.globalCONFIG, **config.profileCONFIG}
    assert config.SEED == int(layered["seed"])
    assert config.RunConfig().seed == config.SEED
    assert config.RunConfig().data_dir == str(layered["data_dir"])
    assert config.RunConfig().log_level == str(layered["log_level"])
