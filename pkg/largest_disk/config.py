"""
Runtime configuration.

Values come from the environment (prefix ``LARGEST_DISK_``) or a local
``.env`` file, falling back to the defaults below.
"""

from functools import lru_cache

from pydantic import Field, PositiveFloat
from pydantic_settings import BaseSettings, SettingsConfigDict

from largest_disk.models import Tolerance


class Settings(BaseSettings):
    model_config = SettingsConfigDict(
        env_prefix="LARGEST_DISK_",
        env_file=".env",
        env_file_encoding="utf-8",
        extra="ignore",
    )

    # Tolerances (coordinates are expected in [-1e6, 1e6])
    eps_g: PositiveFloat = 1e-9
    eps_r: PositiveFloat = 1e-7
    eps_c: PositiveFloat = 1e-7

    log_level: str = "WARNING"

    # Builders
    dc_base_case: int = Field(default=4, ge=1)

    # Instance generation
    gen_retries: int = Field(default=50, ge=1)

    # Safety bounds checked by tests and reported by bench
    union_edge_bound: int = 12
    locator_entry_bound: int = 40

    def tolerance(self) -> Tolerance:
        return Tolerance(eps_g=self.eps_g, eps_r=self.eps_r, eps_c=self.eps_c)


@lru_cache
def get_settings() -> Settings:
    """Process-wide settings, read once."""
    return Settings()


def default_tolerance() -> Tolerance:
    return get_settings().tolerance()
