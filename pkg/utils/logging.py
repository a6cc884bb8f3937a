import logging
import os
import sys
from dotenv import load_dotenv

# Read .env once at import; WEILAB_LOG_LEVEL and WEILAB_DIM_CAP live there
load_dotenv()

DEFAULT_LEVEL = "WARNING"
FORMATS = {
    'full': "%(asctime)s - %(levelname)s - [%(name)s] - %(message)s",
    'short': "%(levelname)s [%(name)s] %(message)s",
}


def _resolve_level() -> str:
    level = os.getenv("WEILAB_LOG_LEVEL", DEFAULT_LEVEL).upper()
    return level if isinstance(logging.getLevelName(level), int) else DEFAULT_LEVEL


def setup_logger(name: str) -> logging.Logger:
    """
    Set up a weilab logger with the specified name.

    Records go to stderr, stdout carries only command output. WEILAB_LOG_LEVEL picks the level
    (unknown names fall back to WARNING) and WEILAB_LOG_FORMAT picks 'full' or 'short' lines.

    :param name: Component name shown in brackets.
    :return: A configured logger instance.
    """
    log_level = _resolve_level()

    logger = logging.getLogger(f"weilab.{name}")
    logger.setLevel(log_level)

    # Handlers are attached once per component
    if logger.handlers:
        return logger

    handler = logging.StreamHandler(sys.stderr)
    fmt = FORMATS.get(os.getenv("WEILAB_LOG_FORMAT", "full").lower(), FORMATS['full'])
    handler.setFormatter(logging.Formatter(fmt))
    handler.setLevel(log_level)
    logger.addHandler(handler)

    logger.propagate = False

    return logger
