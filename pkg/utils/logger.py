import sys
from pathlib import Path
from typing import Optional

from loguru import logger

LEVELS = ("TRACE", "DEBUG", "INFO", "SUCCESS", "WARNING", "ERROR", "CRITICAL")


def _level(name: str) -> str:
    level = name.upper()
    if level not in LEVELS:
        raise ValueError(f"Unknown log level '{name}'; choose from {LEVELS}")
    return level


def setup_logger(log_file: str = "logs/gdof.log", level: str = "INFO", console_level: Optional[str] = None):
    """File sink at `level`, stderr sink at `console_level` (WARNING unless asked for more).

    stdout carries command output (JSON/CSV) and never receives log records.
    An empty `log_file` disables the file sink.
    """
    level = _level(level)
    console_level = _level(console_level or "WARNING")
    logger.remove()

    if log_file:
        Path(log_file).parent.mkdir(parents=True, exist_ok=True)
        logger.add(
            log_file,
            rotation="10 MB",
            retention="7 days",
            compression="zip",
            level=level,
            format="{time:YYYY-MM-DD HH:mm:ss} | {level:<8} | {module}:{function}:{line} | {message}",
            backtrace=True,
            diagnose=True,
            enqueue=True,
        )

    logger.add(
        sys.stderr,
        level=console_level,
        format="{time:HH:mm:ss} | {level} | {message}",
    )

    logger.debug(f"gdof logger initialized (file={log_file or 'none'} at {level}, stderr at {console_level})")
    return logger
