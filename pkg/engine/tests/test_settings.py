"""Tests for engine settings."""

from fractions import Fraction

import pytest
from pydantic import ValidationError

from src.settings import EngineSettings, get_settings


class TestSettings:
    def test_defaults(self) -> None:
        settings = get_settings()
        assert settings.initial_safe_radius == 4
        assert settings.min_separation_value == Fraction(1, 1000)
        assert settings.sample_denominator == 20000

    def test_environment_overrides(self, monkeypatch: pytest.MonkeyPatch) -> None:
        monkeypatch.setenv("STEREOLAB_INITIAL_SAFE_RADIUS", "8")
        monkeypatch.setenv("STEREOLAB_LOG_LEVEL", "DEBUG")
        settings = get_settings()
        assert settings.initial_safe_radius == 8
        assert settings.log_level == "DEBUG"

    def test_cached(self) -> None:
        assert get_settings() is get_settings()

    @pytest.mark.parametrize(
        "name,value",
        [
            pytest.param("STEREOLAB_MIN_SEPARATION", "0", id="zero_separation"),
            pytest.param("STEREOLAB_MIN_SEPARATION", "-1/3", id="negative_separation"),
            pytest.param("STEREOLAB_SAMPLE_DENOMINATOR", "10", id="coarse_denominator"),
            pytest.param("STEREOLAB_LOG_LEVEL", "LOUD", id="unknown_level"),
        ],
    )
    def test_invalid_values(self, monkeypatch: pytest.MonkeyPatch, name: str, value: str) -> None:
        monkeypatch.setenv(name, value)
        with pytest.raises(ValidationError):
            EngineSettings()

    def test_dotenv_file(self, monkeypatch: pytest.MonkeyPatch, tmp_path) -> None:
        (tmp_path / ".env").write_text("STEREOLAB_INITIAL_SAFE_RADIUS=16\nUNRELATED=1\n")
        monkeypatch.chdir(tmp_path)
        assert get_settings().initial_safe_radius == 16
