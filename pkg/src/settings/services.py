from pydantic import Field
from pydantic_settings import BaseSettings, SettingsConfigDict


class SimulationSettings(BaseSettings):
    block_size: int = Field(
        4096,
        gt=0,
        description="Replications per substream block; fixes the random layout.",
    )
    default_reps: int = Field(
        1_000_000, gt=0, description="Replications when a caller gives none."
    )
    benchmark_reps: int = Field(
        10_000_000,
        gt=0,
        description="Monte Carlo replications for optimal-revenue benchmarks.",
    )
    jobs: int = Field(1, ge=1, description="Worker processes for replication blocks.")
    console_log_level: str = Field("INFO", description="The console logging level.")
    file_log_level: str = Field("DEBUG", description="The file logging level.")

    model_config = SettingsConfigDict(
        env_file=".env",
        env_file_encoding="utf-8",
        env_prefix="TFMLAB_",
        extra="ignore",
    )


class CliSettings(BaseSettings):
    cache_dir: str = Field(
        ".tfmlab_cache",
        description="Directory holding cached result records (TFMLAB_CACHE_DIR).",
    )
    tool_version: str = Field("0.1.0", description="Version stamped into records.")
    console_log_level: str = Field("INFO", description="The console logging level.")
    file_log_level: str = Field("DEBUG", description="The file logging level.")

    model_config = SettingsConfigDict(
        env_file=".env",
        env_file_encoding="utf-8",
        env_prefix="TFMLAB_",
        extra="ignore",
    )


simulation_settings = SimulationSettings()
cli_settings = CliSettings()
