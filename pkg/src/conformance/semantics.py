"""
Direct reading of the conformance semantics, used to cross-check the staged checker
Searches every assignment of connectors to motifs; only meant for small architectures
"""

import logging
from collections import Counter
from itertools import product
from math import prod
from typing import Dict, List, Optional

from src.model.errors import OracleLimitError
from src.model.types import Architecture, Connector, ConnectorMotif, Diagram, GenericPortRef, TypedInterval
from src.utils.config import get_settings

logger = logging.getLogger(__name__)


def _generic_count(connector: Connector, port: GenericPortRef, typing: Dict[str, str]) -> int:
    return sum(
        1 for instance in connector.ports
        if typing.get(instance.component_id) == port.type_name and instance.port_name == port.port_name
    )


def _admits(values: List[int], interval: TypedInterval) -> bool:
    """Some choice of the interval accepts all values (sc: one shared value, mc: each independently)"""
    if not all(interval.contains(v) for v in values):
        return False
    return not interval.is_single_choice or len(set(values)) <= 1


def _part_conforms(part: List[Connector], motif: ConnectorMotif, a: Architecture, typing: Dict[str, str]) -> bool:
    for c in motif.constraints:
        multiplicities = [_generic_count(connector, c.port, typing) for connector in part]
        if not _admits(multiplicities, c.multiplicity):
            return False
        degrees = [
            sum(1 for connector in part if any(
                instance.component_id == component.id and instance.port_name == c.port.port_name
                for instance in connector.ports))
            for component in a.components if component.type_name == c.port.type_name
        ]
        if not _admits(degrees, c.degree):
            return False
    return True


def _fits_shape(connector: Connector, motif: ConnectorMotif, typing: Dict[str, str]) -> bool:
    ports = motif.port_set()
    for instance in connector.ports:
        if GenericPortRef(typing.get(instance.component_id, ""), instance.port_name) not in ports:
            return False
    return all(c.multiplicity.contains(_generic_count(connector, c.port, typing)) for c in motif.constraints)


def semantic_conforms(a: Architecture, d: Diagram, limit: Optional[int] = None) -> bool:
    """
    True iff some partition of the configuration into per-motif parts meets every constraint

    Args:
        a: Architecture
        d: Diagram
        limit: Maximum number of assignments to try (ARCHDIA_PARTITION_LIMIT by default)

    Returns:
        Conformance by exhaustive search

    Raises:
        OracleLimitError: The assignment space exceeds the limit
    """
    limit = get_settings().partition_limit if limit is None else limit
    typing = a.typing()
    counts = Counter(component.type_name for component in a.components)
    if any(d.component_type(name) is None for name in counts):
        return False
    if not all(d.cardinality_of(name).contains(counts[name]) for name in d.type_names):
        return False

    connectors = sorted(a.configuration, key=lambda c: c.sort_key)
    options = [[j for j, motif in enumerate(d.motifs) if _fits_shape(c, motif, typing)] for c in connectors]
    size = prod(len(o) for o in options)
    if size > limit:
        raise OracleLimitError("connector-to-motif assignment space", size, limit)
    for assignment in product(*options):
        parts = [[c for c, j in zip(connectors, assignment) if j == index] for index in range(len(d.motifs))]
        if all(_part_conforms(part, motif, a, typing) for part, motif in zip(parts, d.motifs)):
            return True
    return False
