"""
Diagram-level synthesis
Combines motif configurations into complete conforming architectures for every cardinality assignment
"""

import logging
from itertools import product
from typing import Dict, List, Mapping, Optional, Sequence, Set

from src.model.errors import ConstraintError
from src.model.instances import canonical_architecture, cardinality_assignments
from src.model.types import Architecture, Connector, Diagram, configuration_key
from src.synthesis.fusion import MotifConfiguration, SynthesisConstraints, connector_parts, enumerate_motif

logger = logging.getLogger(__name__)


def _upper_cards(d: Diagram) -> Dict[str, int]:
    return {name: interval.hi for name, interval in d.cardinality.items()}


def _route_required(d: Diagram, cons: SynthesisConstraints) -> Dict[Connector, List[int]]:
    """Motifs able to build each required connector at the largest cardinalities"""
    upper = _upper_cards(d)
    if cons.cardinalities:
        upper.update(cons.cardinalities)
    routes = {}
    for connector in sorted(cons.required, key=lambda c: c.sort_key):
        fitting = [i for i, motif in enumerate(d.motifs) if connector_parts(connector, motif, upper) is not None]
        if not fitting:
            raise ConstraintError(f"constraint outside motif shape: {connector}")
        routes[connector] = fitting
    return routes


def _motif_constraints(d: Diagram, cards: Mapping[str, int], cons: SynthesisConstraints,
                       routes: Dict[Connector, List[int]]) -> Optional[List[SynthesisConstraints]]:
    """
    Per-motif constraints for one cardinality assignment

    A required connector that fits exactly one motif is forced there; one that
    fits several is checked on the combined result. None means some required
    connector cannot exist at these cardinalities.
    """
    per_motif = []
    for index, motif in enumerate(d.motifs):
        required = set()
        for connector, fitting in routes.items():
            live = [i for i in fitting if connector_parts(connector, d.motifs[i], cards) is not None]
            if not live:
                return None
            if live == [index]:
                required.add(connector)
        forbidden = {c for c in cons.forbidden if connector_parts(c, motif, cards) is not None}
        per_motif.append(SynthesisConstraints(frozenset(required), frozenset(forbidden)))
    return per_motif


def _combine(per_motif: Sequence[List[MotifConfiguration]]):
    """Cross product of motif configurations whose connector sets are pairwise disjoint"""
    for combination in product(*per_motif):
        union: Set[Connector] = set()
        disjoint = True
        for config in combination:
            if union & config.connectors:
                disjoint = False
                break
            union |= config.connectors
        if disjoint:
            yield frozenset(union)


def enumerate_diagram(d: Diagram, cons: Optional[SynthesisConstraints] = None) -> List[Architecture]:
    """
    All architectures conforming to a diagram

    Args:
        d: Validated diagram
        cons: Required / forbidden connectors and fixed cardinalities

    Returns:
        Distinct architectures with canonical component ids, in canonical order

    Raises:
        ConstraintError: A required connector fits no motif, or a fixed
            cardinality lies outside the declared interval
    """
    cons = cons or SynthesisConstraints()
    routes = _route_required(d, cons)
    found: Dict[tuple, Architecture] = {}
    for cards in cardinality_assignments(d, cons.cardinalities):
        per_motif_cons = _motif_constraints(d, cards, cons, routes)
        if per_motif_cons is None:
            continue
        per_motif = [enumerate_motif(motif, cards, mc) for motif, mc in zip(d.motifs, per_motif_cons)]
        for configuration in _combine(per_motif):
            if not cons.required <= configuration or cons.forbidden & configuration:
                continue
            architecture = canonical_architecture(d, cards, configuration)
            found.setdefault(architecture.sort_key(), architecture)
        logger.debug(f"{d.name} at {cards}: {len(found)} architectures so far")
    logger.info(f"Synthesized {len(found)} architectures for {d.name}")
    return [found[key] for key in sorted(found)]


def _collisions_possible(d: Diagram, routes: Dict[Connector, List[int]]) -> bool:
    if any(len(fitting) > 1 for fitting in routes.values()):
        return True
    return any(c.multiplicity.lo == 0 for motif in d.motifs for c in motif.constraints)


def count_configs(d: Diagram, cons: Optional[SynthesisConstraints] = None) -> int:
    """
    Number of architectures enumerate_diagram would return

    When every multiplicity lower bound is at least 1, connectors of distinct
    motifs never coincide and the count is a product of per-motif counts.

    Args:
        d: Validated diagram
        cons: Same constraints as for enumerate_diagram

    Returns:
        Architecture count
    """
    cons = cons or SynthesisConstraints()
    routes = _route_required(d, cons)
    if _collisions_possible(d, routes):
        keys = set()
        for cards in cardinality_assignments(d, cons.cardinalities):
            per_motif_cons = _motif_constraints(d, cards, cons, routes)
            if per_motif_cons is None:
                continue
            per_motif = [enumerate_motif(motif, cards, mc) for motif, mc in zip(d.motifs, per_motif_cons)]
            for configuration in _combine(per_motif):
                if cons.required <= configuration and not cons.forbidden & configuration:
                    keys.add((tuple(sorted(cards.items())), configuration_key(configuration)))
        return len(keys)

    total = 0
    for cards in cardinality_assignments(d, cons.cardinalities):
        per_motif_cons = _motif_constraints(d, cards, cons, routes)
        if per_motif_cons is None:
            continue
        count = 1
        for motif, mc in zip(d.motifs, per_motif_cons):
            count *= len(enumerate_motif(motif, cards, mc))
            if count == 0:
                break
        total += count
    logger.info(f"Counted {total} architectures for {d.name}")
    return total
