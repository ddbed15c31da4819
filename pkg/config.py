# config.py - segmenter settings
from functools import lru_cache

from pydantic import Field, ValidationError, field_validator
from pydantic_settings import BaseSettings, SettingsConfigDict
from dotenv import load_dotenv

from errors import UsageError

load_dotenv()


class Settings(BaseSettings):
    # Logging level for the CLI (SBD_LOG)
    log: str = Field("WARNING")

    # Trainer thresholds
    abbrev_threshold: float = Field(0.3, gt=0)
    colloc_threshold: float = Field(7.88, gt=0)
    starter_threshold: float = Field(30.0, gt=0)

    # Corpus handling
    split_ratio: float = Field(0.9, gt=0, lt=1)
    corpus_extension: str = Field(".txt")
    workers: int = Field(1, ge=1)

    # Segmentation behaviour
    ellipsis_breaks: bool = Field(False)
    enders: str = Field("?!؟")

    model_config = SettingsConfigDict(
        env_prefix="SBD_",
        env_file=".env",
        extra="ignore",  # Allow unrelated entries in .env
    )

    @field_validator("enders")
    @classmethod
    def _check_enders(cls, value: str) -> str:
        if not value or "." in value or any(ch.isspace() for ch in value):
            raise ValueError("enders must be non-empty and contain neither '.' nor whitespace")
        return value


@lru_cache(maxsize=1)
def get_settings() -> Settings:
    """Settings from SBD_* variables and .env, read on first use."""
    try:
        return Settings()
    except ValidationError as e:
        error = e.errors()[0]
        name = f"SBD_{str(error['loc'][0]).upper()}" if error["loc"] else "SBD_*"
        raise UsageError(f"{name}: {error['msg']}") from e
