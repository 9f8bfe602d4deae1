from __future__ import annotations

import json

import numpy as np
import pytest

from twoproj_cli.config import RunConfig, config_hash
from twoproj_cli.cone import Orientation
from twoproj_cli.errors import ConfigurationError
from twoproj_cli.evolution import ApproximateSymbol, DirectSymbol
from twoproj_cli.utils import parse_floats, parse_range, parse_xi, resolve_output_dir


def test_defaults():
    config = RunConfig()
    data = config.to_dict()
    assert data["seed"] == 0
    assert data["packet"]["center"] == [3.0, 1.0, 0.0, 0.0]
    assert data["evolve"]["symbol"] == "exact"
    assert config.grid_spec().spacing == (0.125, 0.125)
    assert config.cone_config().orientation is Orientation.FUTURE


def test_round_trip_through_dict():
    config = RunConfig.from_dict(
        {"units": {"m": 2.0}, "evolve": {"symbol": "direct", "taus": [0.0, 1.0]}, "seed": 5}
    )
    assert config.units.m == 2.0
    assert config.evolve.taus == (0.0, 1.0)
    assert RunConfig.from_dict(config.to_dict()) == config
    assert isinstance(config.symbol(), DirectSymbol)


@pytest.mark.parametrize(
    "data",
    [
        {"unknown": 1},
        {"units": {"mass": 1.0}},
        {"units": []},
        {"evolve": {"symbol": "fast"}},
        {"seed": 1.5},
        {"seed": True},
        {"grid": {"points": "64"}},
        {"grid": {"points": 64.0}},
        {"units": {"m": "1"}},
        {"evolve": {"include_cone": 1}},
        {"evolve": {"taus": [0.0, "1"]}},
        {"packet": {"widths": 0.5}},
        {"quadrature": {"r_cutoff": "auto"}},
    ],
)
def test_invalid_configs(data):
    with pytest.raises(ConfigurationError):
        RunConfig.from_dict(data)


def test_type_errors_name_the_field():
    with pytest.raises(ConfigurationError, match=r"grid\.points must be an integer"):
        RunConfig.from_dict({"grid": {"points": "64"}})


def test_invalid_units_surface_when_used():
    config = RunConfig.from_dict({"units": {"orientation": "sideways"}})
    with pytest.raises(ConfigurationError):
        config.cone_config()


def test_from_file(tmp_path):
    path = tmp_path / "run.json"
    path.write_text(json.dumps({"evolve": {"symbol": "approximate", "include_cone": False}}))
    config = RunConfig.from_file(path)
    assert config.symbol() == ApproximateSymbol(include_cone=False)

    path.write_text("{not json")
    with pytest.raises(ConfigurationError):
        RunConfig.from_file(path)
    with pytest.raises(ConfigurationError):
        RunConfig.from_file(tmp_path / "missing.json")


def test_config_hash():
    base = config_hash(RunConfig())
    assert base == config_hash(RunConfig())
    assert len(base) == 64
    assert config_hash(RunConfig(seed=1)) != base


def test_initial_packet_from_defaults():
    packet = RunConfig().initial_packet()
    assert packet.grid.shape == (128, 128)
    assert packet.norm == pytest.approx(1.0, abs=1e-12)


def test_parse_range():
    np.testing.assert_allclose(parse_range("0:1:0.25"), [0.0, 0.25, 0.5, 0.75, 1.0])
    np.testing.assert_allclose(parse_range("2.5"), [2.5])
    np.testing.assert_allclose(parse_range("0:0.3:0.1"), [0.0, 0.1, 0.2, 0.3])
    for bad in ("a:b:c", "0:1", "1:0:0.1", "0:1:0"):
        with pytest.raises(ConfigurationError):
            parse_range(bad)


def test_parse_lists():
    assert parse_floats("1, 2.5,3") == [1.0, 2.5, 3.0]
    assert parse_xi("2,1") == (2.0, 1.0, 0.0, 0.0)
    with pytest.raises(ConfigurationError):
        parse_floats("1,x")
    with pytest.raises(ConfigurationError):
        parse_xi("1,2,3,4,5")


def test_output_dir_env_wins(tmp_path, monkeypatch):
    monkeypatch.setenv("TWOPROJ_OUTPUT_DIR", str(tmp_path / "env"))
    assert resolve_output_dir(str(tmp_path / "flag")) == tmp_path / "env"
    assert (tmp_path / "env").is_dir()
    monkeypatch.delenv("TWOPROJ_OUTPUT_DIR")
    assert resolve_output_dir(str(tmp_path / "flag")) == tmp_path / "flag"
