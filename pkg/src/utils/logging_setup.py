"""
Logging configuration for command-line entry points
"""

import logging
import sys

LOG_FORMAT = '%(asctime)s - %(levelname)s - %(message)s'


def configure_logging(level: str = "WARNING"):
    """Send log records to stderr so stdout stays clean for reports"""
    logging.basicConfig(
        level=getattr(logging, level.upper(), logging.WARNING),
        format=LOG_FORMAT,
        stream=sys.stderr,
        force=True,
    )
