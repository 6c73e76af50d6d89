import pytest

from src.errors import MalformedInput, UsageError
from src.settings import VERTEX_CAP_ENV, Settings, load_settings, with_vertex_cap

from conftest import ROOT


@pytest.fixture(autouse=True)
def clean_env(monkeypatch):
    monkeypatch.delenv(VERTEX_CAP_ENV, raising=False)


def test_defaults_when_file_is_missing(no_config):
    settings = load_settings(no_config)
    assert settings == Settings()
    assert settings.limits.vertex_cap == 1_000_000
    assert settings.verify.max_vertices == 4096


def test_project_config_loads():
    settings = load_settings(str(ROOT / "config" / "config.yaml"))
    assert settings.paths.corpus_dir == "data/corpus"
    assert settings.limits.pm_max_vertices == 64


def test_values_from_yaml(tmp_path):
    config = tmp_path / "config.yaml"
    config.write_text("limits:\n  vertex_cap: 500\nverify:\n  max_vertices: 81\nunknown: 1\n")
    settings = load_settings(str(config))
    assert settings.limits.vertex_cap == 500
    assert settings.verify.max_vertices == 81
    assert settings.limits.bit_budget == 2 ** 20


def test_empty_yaml_gives_defaults(tmp_path):
    config = tmp_path / "config.yaml"
    config.write_text("")
    assert load_settings(str(config)) == Settings()


def test_invalid_values_are_rejected(tmp_path):
    config = tmp_path / "config.yaml"
    config.write_text("limits:\n  vertex_cap: -3\n")
    with pytest.raises(MalformedInput):
        load_settings(str(config))


def test_malformed_yaml_is_rejected(tmp_path):
    config = tmp_path / "config.yaml"
    config.write_text("limits: [unclosed\n  vertex_cap: 5\n")
    with pytest.raises(MalformedInput, match="Unreadable configuration"):
        load_settings(str(config))


def test_environment_overrides_file(monkeypatch, no_config):
    monkeypatch.setenv(VERTEX_CAP_ENV, "100")
    assert load_settings(no_config).limits.vertex_cap == 100


@pytest.mark.parametrize("raw", ["abc", "0", "-5"])
def test_bad_environment_value(monkeypatch, no_config, raw):
    monkeypatch.setenv(VERTEX_CAP_ENV, raw)
    with pytest.raises(UsageError):
        load_settings(no_config)


def test_with_vertex_cap_returns_a_copy():
    settings = Settings()
    capped = with_vertex_cap(settings, 10)
    assert capped.limits.vertex_cap == 10
    assert settings.limits.vertex_cap == 1_000_000
    assert capped.limits.bit_budget == settings.limits.bit_budget
