import os
import tempfile
from pathlib import Path

from src.models.reports import ResultRecord
from src.settings import cli_settings
from src.utils.logger import create_logger

logger = create_logger(
    "cli",
    console_level=cli_settings.console_log_level,
    file_level=cli_settings.file_log_level,
)


class ResultCache:
    """Result records stored as ``<directory>/<scenario hash>.json``.

    Records for equal hashes are equal, so concurrent writers may race and the
    last one wins.
    """

    def __init__(self, directory: str | Path | None = None):
        self.directory = Path(directory or cli_settings.cache_dir)

    def path(self, scenario_hash: str) -> Path:
        return self.directory / f"{scenario_hash}.json"

    def load(self, scenario_hash: str) -> ResultRecord | None:
        path = self.path(scenario_hash)
        if not path.exists():
            logger.info("Cache miss", scenario_hash=scenario_hash)
            return None
        logger.info("Cache hit", scenario_hash=scenario_hash)
        return ResultRecord.model_validate_json(path.read_text(encoding="utf-8"))

    def store(self, record: ResultRecord) -> Path:
        self.directory.mkdir(parents=True, exist_ok=True)
        path = self.path(record.scenario_hash)
        with tempfile.NamedTemporaryFile(
            "w", encoding="utf-8", dir=self.directory, suffix=".tmp", delete=False
        ) as handle:
            handle.write(record.model_dump_json(indent=2))
        os.replace(handle.name, path)
        logger.debug("Stored result record", path=str(path))
        return path
