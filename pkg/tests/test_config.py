"""Tests for environment-driven configuration"""
from src import config as config_module
from src.config import Config, _env_int


def test_defaults_are_valid():
    assert Config.validate() == []
    assert Config.MAX_ROUNDS >= 1


def test_env_int_parses_underscores(monkeypatch):
    monkeypatch.setenv("CHIPFIRE_TEST_VALUE", "1_000")
    assert _env_int("CHIPFIRE_TEST_VALUE", 5) == 1000


def test_env_int_falls_back_and_remembers(monkeypatch):
    monkeypatch.setattr(config_module, "_INVALID", [])
    monkeypatch.setenv("CHIPFIRE_TEST_VALUE", "lots")
    assert _env_int("CHIPFIRE_TEST_VALUE", 5) == 5
    assert any("CHIPFIRE_TEST_VALUE" in problem for problem in Config.validate())


def test_nonpositive_budget_is_reported(monkeypatch):
    monkeypatch.setattr(Config, "MAX_ROUNDS", 0)
    assert "CHIPFIRE_MAX_ROUNDS must be positive" in Config.validate()


def test_bad_log_level(monkeypatch):
    monkeypatch.setattr(Config, "LOG_LEVEL", "LOUD")
    assert any("LOG_LEVEL" in problem for problem in Config.validate())
