"""Tests for application settings."""

import pytest
from pydantic import ValidationError

from app.settings import Settings


class TestSettings:
    """Tests for Settings class."""

    def test_defaults(self) -> None:
        """Test default values when no env vars are set."""
        settings = Settings(
            _env_file=None,  # type: ignore[call-arg]
        )
        assert settings.environment == "dev"
        assert settings.cell_cache_size == 256
        assert settings.max_denominator == 10**6

    def test_reads_env_vars(self, monkeypatch: pytest.MonkeyPatch) -> None:
        """Test that settings reads from environment variables."""
        monkeypatch.setenv("ENVIRONMENT", "prod")
        monkeypatch.setenv("CELL_CACHE_SIZE", "16")
        monkeypatch.setenv("MAX_DENOMINATOR", "1000")

        settings = Settings(
            _env_file=None,  # type: ignore[call-arg]
        )
        assert settings.environment == "prod"
        assert settings.cell_cache_size == 16
        assert settings.max_denominator == 1000

    def test_negative_cache_size_rejected(self, monkeypatch: pytest.MonkeyPatch) -> None:
        monkeypatch.setenv("CELL_CACHE_SIZE", "-1")

        with pytest.raises(ValidationError, match="cell_cache_size"):
            Settings(
                _env_file=None,  # type: ignore[call-arg]
            )

    @pytest.mark.parametrize(
        ("raw", "expected"),
        [
            pytest.param("http://a.test", ["http://a.test"], id="single"),
            pytest.param("http://a.test, http://b.test", ["http://a.test", "http://b.test"], id="two"),
            pytest.param("http://a.test,,", ["http://a.test"], id="trailing-commas"),
        ],
    )
    def test_cors_origins(self, raw: str, expected: list[str]) -> None:
        settings = Settings(allowed_origins=raw, _env_file=None)  # type: ignore[call-arg]
        assert settings.cors_origins == expected
