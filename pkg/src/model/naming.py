"""
Identifier ordering and canonical instance naming
"""

import re
from typing import Optional, Tuple, Union

_DIGITS = re.compile(r"(\d+)")


def natural_key(identifier: str) -> Tuple[Union[int, str], ...]:
    """
    Sort key that orders embedded numbers numerically

    Args:
        identifier: Component or type identifier, e.g. "Slave#10"

    Returns:
        Tuple usable as a sort key ("Slave#2" sorts before "Slave#10")
    """
    parts = _DIGITS.split(identifier)
    return tuple(int(part) if part.isdigit() else part for part in parts)


def canonical_component_id(type_name: str, index: int) -> str:
    """Canonical id of the index-th (1-based) instance of a type"""
    return f"{type_name}#{index}"


def parse_canonical_id(component_id: str) -> Optional[Tuple[str, int]]:
    """
    Split a canonical id into type name and 1-based index

    Returns:
        (type_name, index), or None when the id is not of the form T#k
    """
    type_name, sep, index = component_id.rpartition("#")
    if not sep or not type_name or not index.isdigit() or int(index) < 1:
        return None
    return type_name, int(index)
