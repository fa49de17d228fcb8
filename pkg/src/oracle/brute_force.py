"""
Brute-force oracle
Enumerates every subset of the candidate connector universe and keeps those the semantics accept
"""

import logging
from itertools import combinations, product
from typing import Dict, List, Mapping, Optional

from src.conformance.semantics import semantic_conforms
from src.model.errors import OracleLimitError
from src.model.instances import canonical_architecture, cardinality_assignments, port_instance
from src.model.types import Architecture, Connector, Diagram, sort_connectors
from src.utils.config import get_settings

logger = logging.getLogger(__name__)


def universe(d: Diagram, cards: Mapping[str, int]) -> List[Connector]:
    """
    Every connector any motif could contribute at fixed cardinalities

    Args:
        d: Diagram
        cards: Cardinality per type name

    Returns:
        Deduplicated candidate connectors in canonical order
    """
    candidates = set()
    for motif in d.motifs:
        counts_per_port = [
            [m for m in c.multiplicity.values() if m <= cards[c.port.type_name]]
            for c in motif.constraints
        ]
        for counts in product(*counts_per_port):
            if not any(counts):
                continue
            subsets_per_port = [
                combinations(range(1, cards[c.port.type_name] + 1), m)
                for c, m in zip(motif.constraints, counts)
            ]
            for subsets in product(*[list(s) for s in subsets_per_port]):
                instances = [
                    port_instance(c.port, k)
                    for c, subset in zip(motif.constraints, subsets)
                    for k in subset
                ]
                candidates.add(Connector(frozenset(instances)))
    return sort_connectors(candidates)


def _brute_force_at(d: Diagram, cards: Dict[str, int], limit: int) -> List[Architecture]:
    candidates = universe(d, cards)
    if len(candidates) > limit:
        raise OracleLimitError(f"connector universe of {d.name} at {cards}", len(candidates), limit)
    logger.info(f"Oracle: {d.name} at {cards}, universe of {len(candidates)} connectors")
    found = []
    for size in range(len(candidates) + 1):
        for subset in combinations(candidates, size):
            architecture = canonical_architecture(d, cards, subset)
            if semantic_conforms(architecture, d):
                found.append(architecture)
    return found


def brute_force(d: Diagram, cards: Optional[Mapping[str, int]] = None,
                limit: Optional[int] = None) -> List[Architecture]:
    """
    All conforming architectures, found by exhaustive subset search

    Args:
        d: Diagram
        cards: Cardinalities to fix; types left out range over their declared interval
        limit: Maximum universe size (ARCHDIA_ORACLE_LIMIT by default)

    Returns:
        Architectures with canonical ids, in canonical order

    Raises:
        OracleLimitError: Some universe is larger than the limit
    """
    limit = get_settings().oracle_limit if limit is None else limit
    assignments = list(cardinality_assignments(d, cards))
    found = []
    for assignment in assignments:
        found.extend(_brute_force_at(d, assignment, limit))
    return sorted(found, key=lambda a: a.sort_key())
