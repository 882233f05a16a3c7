import math

import pytest
from pydantic import ValidationError

from circle_uncertainty.config import Settings, load_experiment_config, resolve_experiment_config
from circle_uncertainty.exceptions import DomainError
from circle_uncertainty.schemas import Command, ExperimentConfig, Verb
from circle_uncertainty.utils import format_number, to_csv
from circle_uncertainty.validator import parse_grid, parse_int_range, require_open_interval, require_positive


class TestParsing:
    def test_grid_includes_both_ends(self):
        assert parse_grid("0:1:5") == pytest.approx([0.0, 0.25, 0.5, 0.75, 1.0])
        assert parse_grid("2:2:1") == [2.0]

    @pytest.mark.parametrize("text", ["0:1", "a:b:3", "0:1:0", "0:inf:3", ""])
    def test_bad_grid(self, text):
        with pytest.raises(ValueError):
            parse_grid(text)

    def test_int_range(self):
        assert parse_int_range("-8:8") == (-8, 8)
        with pytest.raises(ValueError):
            parse_int_range("1.5:2")

    def test_domain_helpers(self):
        assert require_positive("x", 1.0) == 1.0
        with pytest.raises(DomainError):
            require_positive("x", 0.0)
        with pytest.raises(DomainError):
            require_open_interval("eps", 2 * math.pi, 0.0, 2 * math.pi)


class TestExperimentConfig:
    def test_defaults(self):
        config = ExperimentConfig()
        assert len(config.lambda_grid) == 64
        assert len(config.epsilon_grid) == 16
        assert len(config.time_grid) == 256
        assert config.time_grid[-1] == pytest.approx(4 * math.pi)
        assert config.optimizer.seed == 42
        assert config.lattice((-64, 64)) == (-64, 64)

    def test_grid_strings_and_range(self):
        config = ExperimentConfig(lambda_grid="0:1:3", n_range="-3:5")
        assert config.lambda_grid == pytest.approx([0.0, 0.5, 1.0])
        assert config.lattice((-64, 64)) == (-3, 5)

    @pytest.mark.parametrize("data", [
        {"lambda_grid": []},
        {"n_range": "5:-5"},
        {"unknown": 1},
        {"optimizer": {"restarts": 0}},
        {"optimizer": {"method": "BFGS"}},
        {"hamiltonian_scale": 0.0},
    ])
    def test_rejects(self, data):
        with pytest.raises(ValidationError):
            ExperimentConfig(**data)

    def test_file_then_overrides(self, tmp_path):
        path = tmp_path / "experiment.toml"
        path.write_text('random_samples = 5\n[optimizer]\nrestarts = 3\nseed = 1\n')
        assert load_experiment_config(path).optimizer.restarts == 3
        config = resolve_experiment_config(path, {"optimizer": {"seed": 9}, "random_samples": None})
        assert config.optimizer.restarts == 3
        assert config.optimizer.seed == 9
        assert config.random_samples == 5

    def test_command_rejects_foreign_params(self):
        Command(verb=Verb.sweep, params={"epsilon": 1.0})
        with pytest.raises(ValidationError):
            Command(verb=Verb.sweep, params={"restarts": 3})


class TestSettings:
    def test_environment_override(self, monkeypatch):
        monkeypatch.setenv("CIRCLE_TAIL_TOL", "1e-9")
        monkeypatch.setenv("CIRCLE_N_MAX", "32")
        settings = Settings()
        assert settings.TAIL_TOL == 1e-9
        assert settings.N_MAX == 32
        assert settings.U2_ZERO_TOL == 1e-14


class TestFormatting:
    def test_numbers(self):
        assert format_number(0.1) == "0.10000000000000001"
        assert format_number(math.inf) == "inf"
        assert format_number(None) == ""
        assert format_number(True) == "true"
        assert format_number(3) == "3"

    def test_csv_line_endings(self):
        assert to_csv(["a", "b"], [[1.5, None]]) == "a,b\r\n1.5,\r\n"
