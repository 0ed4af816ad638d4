import logging
import re
import sys
from logging.handlers import RotatingFileHandler
from pathlib import Path
from typing import Literal

import structlog
from pydantic import Field, field_validator
from pydantic_settings import BaseSettings
from structlog.types import Processor

ANSI_ESCAPE = re.compile(r"\x1b\[[0-9;]*m")


class _LoggingSettings(BaseSettings):
    """LOG_* variables. Unrecognised values fall back to the defaults."""

    level: int = Field(default=logging.WARNING, alias="LOG_LEVEL")
    log_format: Literal["text", "json"] = Field(
        default="text", alias="LOG_FORMAT"
    )
    to_file: bool = Field(default=False, alias="LOG_TO_FILE")
    file_path: Path = Field(
        default=Path("logs/invconn.log"), alias="LOG_FILE_PATH"
    )

    @field_validator("level", mode="before")
    def parse_level(cls, value):
        if isinstance(value, int):
            return value
        level = logging.getLevelName(str(value).upper())
        return level if isinstance(level, int) else logging.WARNING

    @field_validator("log_format", mode="before")
    def parse_format(cls, value):
        value = str(value).lower()
        return value if value in ("text", "json") else "text"

    @field_validator("to_file", mode="before")
    def parse_to_file(cls, value):
        return str(value).lower() in ("1", "true", "yes")

    model_config = {
        "env_file": ".env",
        "env_file_encoding": "utf-8",
        "extra": "ignore",
    }


class _PlainFileFormatter(logging.Formatter):
    def format(self, record: logging.LogRecord) -> str:
        return ANSI_ESCAPE.sub("", super().format(record))


def configure_logging(settings: _LoggingSettings | None = None) -> None:
    """Route stdlib and structlog output to stderr, plus an optional
    rotating file. Reports own stdout."""
    settings = settings or _LoggingSettings()

    root_logger = logging.getLogger()
    for handler in root_logger.handlers[:]:
        root_logger.removeHandler(handler)

    stream_handler = logging.StreamHandler(sys.stderr)
    stream_handler.setFormatter(logging.Formatter("%(message)s"))
    stream_handler.setLevel(settings.level)
    root_logger.addHandler(stream_handler)

    if settings.to_file:
        settings.file_path.parent.mkdir(parents=True, exist_ok=True)
        file_handler = RotatingFileHandler(
            settings.file_path, maxBytes=10**6, backupCount=5
        )
        file_handler.setFormatter(_PlainFileFormatter("%(message)s"))
        file_handler.setLevel(logging.DEBUG)
        root_logger.addHandler(file_handler)

    root_logger.setLevel(logging.DEBUG)

    processors: list[Processor] = [
        structlog.stdlib.filter_by_level,
        structlog.contextvars.merge_contextvars,
        structlog.stdlib.add_logger_name,
        structlog.stdlib.add_log_level,
        structlog.processors.TimeStamper(fmt="iso"),
        structlog.processors.format_exc_info,
    ]
    if settings.log_format == "json":
        processors.append(structlog.processors.JSONRenderer())
    else:
        processors.append(
            structlog.dev.ConsoleRenderer(colors=sys.stderr.isatty())
        )

    structlog.configure(
        processors=processors,
        wrapper_class=structlog.stdlib.BoundLogger,
        logger_factory=structlog.stdlib.LoggerFactory(),
        context_class=dict,
        cache_logger_on_first_use=True,
    )


configure_logging()


def get_logger(name: str) -> structlog.stdlib.BoundLogger:
    return structlog.get_logger(name)


def bind_command_logging_context(**kwargs) -> None:
    """Attach the running subcommand (and similar) to every log line."""
    structlog.contextvars.bind_contextvars(**kwargs)
