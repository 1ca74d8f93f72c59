import os
import sys
from datetime import datetime
from pathlib import Path

from loguru import logger as loguru_logger
from loguru._logger import Logger

_created_loggers: dict[str, Logger] = {}


def _render_extras(record) -> str:
    extras = [
        f"{key}={value}" for key, value in record["extra"].items() if key != "name"
    ]
    return " | ".join(extras)


def format_console_record(record):
    base = (
        "<green>{time:YYYY-MM-DD HH:mm:ss}</green> | "
        "<level>{level:<8}</level> | "
        "<cyan>{extra[name]}</cyan> | "
        "<level>{message}</level>"
    )
    extras = _render_extras(record)
    if extras:
        # braces in rendered values would be read as format fields
        escaped = extras.replace("{", "{{").replace("}", "}}")
        base += " | <magenta>" + escaped.replace("<", r"\<") + "</magenta>"
    return base + "\n{exception}"


def format_file_record(record):
    base = (
        "{time:YYYY-MM-DD HH:mm:ss} | "
        "{level:<8} | "
        "{extra[name]} | "
        "{function}:{line} | "
        "{message}"
    )
    extras = _render_extras(record)
    if extras:
        base += " | " + extras.replace("{", "{{").replace("}", "}}")
    return base + "\n{exception}"


def create_logger(
    logger_name: str,
    console_level: str = "INFO",
    file_level: str = "DEBUG",
    rotation_size: str = "64 MB",
    retention_count: int = 3,
    compression: str = "gz",
    log_root: str | Path | None = None,
) -> Logger:
    """
    Create a Loguru logger with a console (stderr) and a rotating file handler.

    Calling it twice with the same name returns the first logger, so modules can
    build their loggers at import time without stacking handlers.

    Args:
        logger_name: Name of the component; also the log sub-directory name
        console_level: Minimum level printed to stderr
        file_level: Minimum level written to the log file
        rotation_size: File size before rotation (e.g., "64 MB")
        retention_count: Number of rotated files to keep
        compression: Compression format for rotated files ("gz", "bz2", "xz")
        log_root: Root log directory, defaults to $TFMLAB_LOG_DIR or ./logs

    Returns:
        Configured Loguru logger instance
    """
    if logger_name in _created_loggers:
        return _created_loggers[logger_name]

    root = Path(log_root or os.environ.get("TFMLAB_LOG_DIR", "logs"))
    log_dir = root / logger_name
    log_dir.mkdir(parents=True, exist_ok=True)

    current_time = datetime.now().strftime("%Y%m%d_%H%M%S")
    log_filepath = log_dir / f"{logger_name}_{current_time}.log"

    try:
        loguru_logger.remove(0)
    except ValueError:
        # default handler is already gone
        pass

    new_logger = loguru_logger.bind(name=logger_name)

    def only_this_logger(record) -> bool:
        return record["extra"].get("name") == logger_name

    new_logger.add(
        sink=sys.stderr,
        level=console_level,
        format=format_console_record,
        colorize=True,
        filter=only_this_logger,
    )
    new_logger.add(
        sink=str(log_filepath),
        level=file_level,
        format=format_file_record,
        rotation=rotation_size,
        retention=retention_count,
        compression=compression,
        enqueue=False,
        backtrace=True,
        diagnose=False,
        filter=only_this_logger,
    )

    _created_loggers[logger_name] = new_logger
    return new_logger
