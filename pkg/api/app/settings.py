"""Application settings via pydantic-settings.

Reads from environment variables at startup (no env prefix).
"""

from functools import lru_cache

from pydantic import Field
from pydantic_settings import BaseSettings


class Settings(BaseSettings):
    """Application configuration validated at startup."""

    environment: str = "dev"
    allowed_origins: str = "http://localhost:3000,http://localhost:5173"
    cell_cache_size: int = Field(default=256, ge=0)  # 0 disables the cell cache
    max_denominator: int = Field(default=10**6, ge=1)
    log_level: str = "INFO"

    @property
    def cors_origins(self) -> list[str]:
        """Parse comma-separated ALLOWED_ORIGINS into a list."""
        return [o.strip() for o in self.allowed_origins.split(",") if o.strip()]


@lru_cache(maxsize=1)
def get_settings() -> Settings:
    """Return cached application settings (created once, reused)."""
    return Settings()
