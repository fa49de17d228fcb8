"""
Command-line front end
"""

from .main import (
    ExitCode,
    build_parser,
    main,
)

__all__ = [
    'ExitCode',
    'build_parser',
    'main'
]
