"""
Configuration management for fillcheck.
Loads settings from environment variables (FILLCHECK_*) and an optional .env file.
"""
from pydantic import Field
from pydantic_settings import BaseSettings, SettingsConfigDict


class Settings(BaseSettings):
    """
    Application settings - automatically loaded from environment variables.
    Variable names are case-insensitive and prefixed (e.g., FILLCHECK_MAX_MU -> max_mu).
    """

    model_config = SettingsConfigDict(env_file=".env", env_prefix="FILLCHECK_", case_sensitive=False, extra="ignore")

    # Largest Milnor number accepted before building a Seifert matrix
    max_mu: int = Field(default=10000, ge=1)

    # Log level for the JSON logger (records go to stderr)
    log_level: str = "WARNING"

    # Thread pool size used by the batch command
    batch_workers: int = 4

    # Coefficient field used when a command does not name one
    default_field: str = "Q"


# Global settings instance - import this in other modules
settings = Settings()
