"""Tests for settings loading."""

import pytest

from core.config import DEFAULT_CONFIG_PATH, Settings, load_settings


@pytest.fixture(autouse=True)
def clean_env(monkeypatch):
    monkeypatch.delenv("HALFLOOP_WORKERS", raising=False)
    monkeypatch.delenv("HALFLOOP_CONFIG", raising=False)


def test_shipped_config_loads():
    settings = load_settings(DEFAULT_CONFIG_PATH)
    assert settings.search.workers >= 1
    assert settings.sweep.max_order == 6
    assert settings.acceptance.seed == 1729
    assert settings.acceptance.count_orders == [5, 6]


def test_missing_file_falls_back(tmp_path):
    settings = load_settings(tmp_path / "absent.yaml")
    assert settings == Settings()


def test_partial_override(tmp_path):
    path = tmp_path / "custom.yaml"
    path.write_text("sweep:\n  max_order: 4\n")
    settings = load_settings(path)
    assert settings.sweep.max_order == 4
    assert settings.sweep.named_max_order == 16
    assert settings.search.order_filter is True


def test_invalid_values_fall_back(tmp_path):
    path = tmp_path / "bad.yaml"
    path.write_text("sweep:\n  max_order: 9\n")
    assert load_settings(path) == Settings()


def test_broken_yaml_falls_back(tmp_path):
    path = tmp_path / "broken.yaml"
    path.write_text("search: [unclosed\n")
    assert load_settings(path).search.workers == 1


def test_workers_from_environment(tmp_path, monkeypatch):
    monkeypatch.setenv("HALFLOOP_WORKERS", "3")
    assert load_settings(tmp_path / "absent.yaml").search.workers == 3
    monkeypatch.setenv("HALFLOOP_WORKERS", "many")
    assert load_settings(tmp_path / "absent.yaml").search.workers == 1


def test_config_path_from_environment(tmp_path, monkeypatch):
    path = tmp_path / "env.yaml"
    path.write_text("acceptance:\n  seed: 7\n")
    monkeypatch.setenv("HALFLOOP_CONFIG", str(path))
    assert load_settings().acceptance.seed == 7
