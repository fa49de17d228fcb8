"""
Exhaustive reference enumeration of conforming architectures
"""

from .brute_force import (
    universe,
    brute_force,
)

__all__ = [
    'universe',
    'brute_force'
]
