"""
Unit tests for QecConfig.

Tests in-code configuration, JSON persistence, environment overrides and the
budget checks that guard the exhaustive searches.
"""

import json

import pytest

from phantomqec.config import (
    CONFIG_ENV_VAR,
    SOLVER_ARGS_ENV_VAR,
    SOLVER_ENV_VAR,
    CutoffExceeded,
    QecConfig,
)


class TestConfigure:
    """Test suite for configure and get_config."""

    def test_defaults(self, config):
        """Test the search budgets start at their documented values."""
        assert config.distance_span_cutoff == 28
        assert config.class_enum_cutoff == 22
        assert config.bruteforce_max_n == 8
        assert config.clause_limit == 5_000_000
        assert config.solver_path == ""

    def test_known_setting(self, config):
        """Test known keys become attributes."""
        config.configure(jobs=4, solver_timeout=30)
        assert config.jobs == 4
        assert config.get_config("solver_timeout") == 30

    def test_custom_setting(self, config):
        """Test unknown keys are kept as custom settings."""
        config.configure(sweep_label="k2")
        assert config.get_config("sweep_label") == "k2"
        assert not hasattr(config, "sweep_label")

    def test_constructor_kwargs(self):
        """Test keyword arguments are applied at construction."""
        assert QecConfig(fold_max_n=10).fold_max_n == 10

    def test_get_all(self, config):
        """Test get_config without a key returns every setting."""
        values = config.get_config()
        assert values["enumerate_max_n"] == 8
        assert "config" not in values and "config_path" not in values

    def test_reserved_keys_ignored(self, config):
        """Test internal bookkeeping cannot be overwritten."""
        config.configure(config_path="/tmp/x")
        assert config.config_path == ""


class TestPersistence:
    """Test suite for load_config and save_config."""

    def test_round_trip(self, config, tmp_path):
        """Test saved settings load back."""
        path = tmp_path / "settings.json"
        config.configure(hamming_max_n=12, solver_args=["--quiet"])
        assert config.save_config(str(path))
        fresh = QecConfig()
        assert fresh.load_config(str(path))
        assert fresh.hamming_max_n == 12
        assert fresh.solver_args == ["--quiet"]
        assert fresh.config_path == str(path)

    def test_save_without_path(self, config):
        """Test saving needs a destination."""
        assert config.save_config() is False

    def test_load_missing(self, config, tmp_path):
        """Test a missing file is reported as failure."""
        assert config.load_config(str(tmp_path / "nope.json")) is False

    def test_load_non_object(self, config, tmp_path):
        """Test a JSON list is rejected."""
        path = tmp_path / "list.json"
        path.write_text(json.dumps([1, 2]))
        assert config.load_config(str(path)) is False


class TestEnvironment:
    """Test suite for environment-driven settings."""

    def test_solver_resolution_order(self, config, monkeypatch):
        """Test explicit path, then configured path, then environment."""
        monkeypatch.setenv(SOLVER_ENV_VAR, "/env/kissat")
        assert config.resolve_solver() == "/env/kissat"
        config.configure(solver_path="/cfg/cadical")
        assert config.resolve_solver() == "/cfg/cadical"
        assert config.resolve_solver("/cli/glucose") == "/cli/glucose"

    def test_internal_when_unset(self, config, monkeypatch):
        """Test no solver anywhere means the internal engine."""
        monkeypatch.delenv(SOLVER_ENV_VAR, raising=False)
        assert config.resolve_solver() is None

    def test_solver_args(self, config, monkeypatch):
        """Test environment arguments are shell-split unless configured."""
        monkeypatch.setenv(SOLVER_ARGS_ENV_VAR, "--quiet --time=10")
        assert config.resolve_solver_args() == ["--quiet", "--time=10"]
        config.configure(solver_args=["-q"])
        assert config.resolve_solver_args() == ["-q"]

    def test_from_env(self, tmp_path, monkeypatch):
        """Test PHANTOMQEC_CONFIG seeds a new config."""
        path = tmp_path / "settings.json"
        path.write_text(json.dumps({"jobs": 3}))
        monkeypatch.setenv(CONFIG_ENV_VAR, str(path))
        assert QecConfig.from_env().jobs == 3


class TestLimits:
    """Test suite for budget checks."""

    def test_within_limit(self, config):
        """Test sizes at the limit pass."""
        config.check_limit("enumeration", 8, "enumerate_max_n")

    def test_over_limit(self, config):
        """Test sizes above the limit raise with the details attached."""
        with pytest.raises(CutoffExceeded) as excinfo:
            config.check_limit("enumeration", 9, "enumerate_max_n")
        assert (excinfo.value.size, excinfo.value.limit) == (9, 8)
        assert "exceeds configured limit 8" in str(excinfo.value)

    def test_unset_limit(self, config):
        """Test a missing setting never refuses."""
        config.check_limit("anything", 10 ** 9, "no_such_limit")
