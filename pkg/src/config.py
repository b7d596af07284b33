"""Application configuration."""

from pydantic_settings import BaseSettings
from functools import lru_cache


class Settings(BaseSettings):
    """Application settings loaded from environment variables."""

    # Oracle guards
    oracle_enumeration_limit: int = 10_000_000  # max fault sets per check
    oracle_subset_max_n: int = 10
    oracle_subset_max_f: int = 3
    oracle_prune_candidates: bool = False

    # Certification sweeps
    verify_n_max: int = 10
    verify_f_max: int = 3
    verify_instances: int = 1000
    verify_seed: int = 7
    verify_exhaustive_n: int = 5

    # Benchmark harness
    bench_n: int = 1_000_000
    bench_f: int = 4
    bench_marks: list[int] = [1000, 10000, 100000]
    bench_repeat: int = 5

    # Instance generation
    gen_seed: int = 0

    # Logging
    log_level: str = "INFO"

    class Config:
        env_file = ".env"
        case_sensitive = False

    def validate_ranges(self) -> None:
        """Reject settings no command could run with."""
        if self.oracle_enumeration_limit < 1:
            raise ValueError(
                f"oracle_enumeration_limit must be >= 1, got {self.oracle_enumeration_limit}"
            )
        if self.oracle_subset_max_n < 1 or self.oracle_subset_max_f < 1:
            raise ValueError("oracle subset guards must be >= 1")
        if self.verify_n_max < 1 or self.verify_f_max < 1:
            raise ValueError(
                f"verify bounds must be >= 1, got n_max={self.verify_n_max}, f_max={self.verify_f_max}"
            )
        if self.verify_instances < 0 or self.verify_exhaustive_n < 0:
            raise ValueError("verify instance counts must be >= 0")
        if self.bench_n < 1 or self.bench_f < 1 or self.bench_repeat < 1:
            raise ValueError("bench sizes must be >= 1")
        if not self.bench_marks or min(self.bench_marks) < 1:
            raise ValueError(f"bench_marks must be non-empty and positive, got {self.bench_marks}")


@lru_cache()
def get_settings() -> Settings:
    """Get cached settings instance."""
    settings = Settings()
    settings.validate_ranges()
    return settings
