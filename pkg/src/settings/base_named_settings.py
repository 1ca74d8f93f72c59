import re
from typing import Any, Self

from pydantic_settings import BaseSettings, SettingsConfigDict

from src.utils.logger import create_logger

settings_logger = create_logger("settings")


class BaseNamedSettings(BaseSettings):
    """Settings whose environment prefix follows the instance name.

    ``CheckerSettings(name="miner-simplicity")`` reads ``MINER_SIMPLICITY_REPS``
    and friends, so every checker can be tuned independently from `.env`.
    """

    name: str

    model_config = SettingsConfigDict(
        env_file=".env",
        env_file_encoding="utf-8",
        extra="ignore",
    )

    def __init__(self, **data):
        name = data.get("name", "default_name")
        super().__init__(_env_prefix=self.env_prefix_for(name), **data)

    @staticmethod
    def env_prefix_for(name: str) -> str:
        return re.sub(r"[^0-9A-Za-z]+", "_", name).upper().strip("_") + "_"

    def with_defaults(self, defaults: dict[str, Any]) -> Self:
        """Apply component defaults to fields neither passed nor set in the env."""
        update = {
            key: value
            for key, value in defaults.items()
            if key not in self.model_fields_set
        }
        if update:
            settings_logger.debug(
                "Applying component defaults", settings=self.name, fields=sorted(update)
            )
        return self.model_copy(update=update)
