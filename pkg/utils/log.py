# utils/log.py

"""
Component-tagged diagnostics on stderr.
Messages look like "[RangeScanner] segment 3/24 done", so stdout stays
reserved for reports.
"""

import logging
import sys

from config.settings import LOG_LEVEL

_ROOT = "robinkit"
_configured = False


def _configure():
    global _configured
    if _configured:
        return
    handler = logging.StreamHandler(sys.stderr)
    handler.setFormatter(logging.Formatter("[%(component)s] %(message)s"))
    root = logging.getLogger(_ROOT)
    root.addHandler(handler)
    root.setLevel(LOG_LEVEL.upper())
    root.propagate = False
    _configured = True


def get_logger(component: str) -> logging.LoggerAdapter:
    """
    Return a logger whose records carry the component tag.
    """
    _configure()
    logger = logging.getLogger(f"{_ROOT}.{component}")
    return logging.LoggerAdapter(logger, {"component": component})


def set_level(level: str):
    _configure()
    logging.getLogger(_ROOT).setLevel(level.upper())
