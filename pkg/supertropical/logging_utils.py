"""Structured logging configuration.

Reports go to stdout and must stay byte-identical between runs, so every log record
and diagnostic is written to stderr.
"""

from __future__ import annotations

import logging
import sys
from typing import Optional

import structlog

_configured = False


def configure_logging(level: str = "WARNING") -> None:
    """Configure stdlib logging and structlog once per process; later calls only
    adjust the level."""
    global _configured
    numeric = getattr(logging, level.upper(), logging.WARNING)
    if _configured:
        logging.getLogger().setLevel(numeric)
        return

    logging.basicConfig(format="%(message)s", stream=sys.stderr, level=numeric)
    structlog.configure(
        processors=[
            structlog.stdlib.filter_by_level,
            structlog.stdlib.add_logger_name,
            structlog.stdlib.add_log_level,
            structlog.stdlib.PositionalArgumentsFormatter(),
            structlog.processors.TimeStamper(fmt="iso"),
            structlog.processors.StackInfoRenderer(),
            structlog.processors.format_exc_info,
            structlog.processors.UnicodeDecoder(),
            structlog.dev.ConsoleRenderer(colors=False),
        ],
        context_class=dict,
        logger_factory=structlog.stdlib.LoggerFactory(),
        cache_logger_on_first_use=True,
    )
    _configured = True


def setup_logging(name: Optional[str] = None) -> structlog.stdlib.BoundLogger:
    """Module logger; configures logging with defaults on first use."""
    if not _configured:
        configure_logging()
    return structlog.get_logger(name)


def log_err(msg: str) -> None:
    """Plain diagnostic line on stderr (usage and parse errors)."""
    sys.stderr.write(msg + "\n")
    sys.stderr.flush()
