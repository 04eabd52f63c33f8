"""Engine settings via pydantic-settings.

Reads ``STEREOLAB_*`` environment variables (and a local ``.env``) once and
caches the result.
Invalid values fail fast at first access.
"""

from fractions import Fraction
from functools import lru_cache
from typing import Literal

from pydantic import Field, field_validator
from pydantic_settings import BaseSettings, SettingsConfigDict


class EngineSettings(BaseSettings):
    """Engine configuration validated at startup."""

    model_config = SettingsConfigDict(env_prefix="STEREOLAB_", env_file=".env", extra="ignore")

    log_level: Literal["TRACE", "DEBUG", "INFO", "WARNING", "ERROR"] = "INFO"
    initial_safe_radius: int = Field(default=4, ge=1)
    min_separation: str = "1/1000"
    max_cosets: int = Field(default=2000, ge=1)
    sample_denominator: int = Field(default=20000, ge=100)
    default_samples: int = Field(default=25, ge=1)
    default_seed: int = 0
    output_dir: str = "out"

    @field_validator("min_separation")
    @classmethod
    def separation_is_positive_rational(cls, value: str) -> str:
        """Validate that min_separation parses as a positive rational."""
        if Fraction(value) <= 0:
            raise ValueError("min_separation must be positive")
        return value

    @property
    def min_separation_value(self) -> Fraction:
        """Minimum orbit separation as an exact rational."""
        return Fraction(self.min_separation)


@lru_cache(maxsize=1)
def get_settings() -> EngineSettings:
    """Return cached engine settings (created once, reused)."""
    return EngineSettings()
