"""
Conformance checking of architectures against diagrams
Staged verification: cardinality, multiplicity partition, degree and single-choice uniformity
"""

import logging
from collections import Counter
from dataclasses import dataclass, field
from typing import Dict, FrozenSet, Iterable, List, Mapping, Optional, Sequence, Tuple

from src.model.types import (
    Architecture,
    Component,
    Connector,
    ConnectorMotif,
    Diagram,
    GenericPortRef,
    PortInstance,
    sort_connectors,
)
from src.model.validation import is_simple

logger = logging.getLogger(__name__)

CARDINALITY = 'cardinality'
MULTIPLICITY_PARTITION = 'multiplicity-partition'
DEGREE = 'degree'
SC_UNIFORMITY = 'sc-uniformity'
DISJOINT_PARTITION = 'disjoint-partition'

GREEDY = 'greedy'
BACKTRACKING = 'backtracking'

Partition = Dict[int, FrozenSet[Connector]]


@dataclass(frozen=True)
class Failure:
    """First failed verification stage with expected vs actual values"""
    stage: str
    message: str
    entity: Optional[str] = None
    expected: Optional[str] = None
    actual: Optional[str] = None
    motif: Optional[int] = None

    def to_dict(self) -> dict:
        return {
            'stage': self.stage,
            'message': self.message,
            'entity': self.entity,
            'expected': self.expected,
            'actual': self.actual,
            'motif': self.motif,
        }


@dataclass(frozen=True)
class ConformanceVerdict:
    conforms: bool
    failure: Optional[Failure] = None
    partition: Optional[Partition] = field(default=None, hash=False)
    strategy: str = GREEDY

    def to_dict(self, d: Optional[Diagram] = None) -> dict:
        partition = None
        if self.partition is not None:
            partition = {
                (d.motif_label(index) if d else str(index)): [str(c) for c in sort_connectors(connectors)]
                for index, connectors in sorted(self.partition.items())
            }
        return {
            'conforms': self.conforms,
            'strategy': self.strategy,
            'failure': self.failure.to_dict() if self.failure else None,
            'partition': partition,
        }


def _cardinality_failure(components: Iterable[Component], d: Diagram) -> Optional[Failure]:
    counts = Counter()
    for component in components:
        if d.component_type(component.type_name) is None:
            return Failure(CARDINALITY, f"component {component.id} has unknown type {component.type_name}",
                           component.id)
        counts[component.type_name] += 1
    for name, interval in d.cardinality.items():
        if not interval.contains(counts[name]):
            return Failure(CARDINALITY, f"{counts[name]} components of type {name}, expected {interval}",
                           name, str(interval), str(counts[name]))
    return None


def verify_cardinality(components: Iterable[Component], d: Diagram) -> bool:
    """
    Number of components per type lies in the diagram's cardinality

    Types absent from the architecture count as 0; a component of an unknown type fails.
    """
    return _cardinality_failure(components, d) is None


def port_counts(connector: Connector, typing: Mapping[str, str]) -> Optional[Counter]:
    """Instances per generic port in a connector; None if a component id is untyped"""
    counts = Counter()
    for instance in connector.ports:
        type_name = typing.get(instance.component_id)
        if type_name is None:
            return None
        counts[GenericPortRef(type_name, instance.port_name)] += 1
    return counts


def motif_matches(counts: Counter, motif: ConnectorMotif) -> bool:
    ports = motif.port_set()
    if any(port not in ports for port in counts):
        return False
    return all(c.multiplicity.contains(counts.get(c.port, 0)) for c in motif.constraints)


def motif_candidates(connector: Connector, motifs: Sequence[ConnectorMotif],
                     typing: Mapping[str, str]) -> List[int]:
    counts = port_counts(connector, typing)
    if counts is None:
        return []
    return [index for index, motif in enumerate(motifs) if motif_matches(counts, motif)]


def verify_multiplicity(configuration: Iterable[Connector], motifs: Sequence[ConnectorMotif],
                        typing: Mapping[str, str]) -> Optional[Partition]:
    """
    Partition connectors by the motif whose multiplicities they meet

    Each connector goes to its first matching motif; for well-formed simple
    diagrams a connector matches at most one motif.

    Args:
        configuration: Connectors of the architecture
        motifs: Motifs in diagram order
        typing: Component id -> type name

    Returns:
        Motif index -> connectors, or None when some connector matches no motif
    """
    partition = {index: [] for index in range(len(motifs))}
    for connector in configuration:
        candidates = motif_candidates(connector, motifs, typing)
        if not candidates:
            return None
        partition[candidates[0]].append(connector)
    return {index: frozenset(connectors) for index, connectors in partition.items()}


def _degrees(connectors: Iterable[Connector], motif: ConnectorMotif,
             instances: Mapping[str, List[str]]) -> Dict[GenericPortRef, Dict[str, int]]:
    """Degree of every instance of every motif port, zero-degree instances included"""
    occurrences = Counter(instance for connector in connectors for instance in connector.ports)
    return {
        c.port: {
            component_id: occurrences[PortInstance(component_id, c.port.port_name)]
            for component_id in instances.get(c.port.type_name, [])
        }
        for c in motif.constraints
    }


def _degree_failure(connectors: FrozenSet[Connector], motif: ConnectorMotif, index: int,
                    instances: Mapping[str, List[str]]) -> Optional[Failure]:
    degrees = _degrees(connectors, motif, instances)
    for c in motif.constraints:
        for component_id, degree in degrees[c.port].items():
            if not c.degree.contains(degree):
                return Failure(DEGREE, f"{component_id}.{c.port.port_name} is in {degree} connectors",
                               f"{component_id}.{c.port.port_name}", str(c.degree), str(degree), index)
    return None


def _degree_uniformity_failure(connectors: FrozenSet[Connector], motif: ConnectorMotif, index: int,
                               instances: Mapping[str, List[str]]) -> Optional[Failure]:
    degrees = _degrees(connectors, motif, instances)
    for c in motif.constraints:
        if c.degree.is_single_choice and not c.degree.is_singleton:
            values = set(degrees[c.port].values())
            if len(values) > 1:
                return Failure(SC_UNIFORMITY, f"instances of {c.port} have different degrees",
                               str(c.port), "one value", str(sorted(values)), index)
    return None


def _multiplicity_uniformity_failure(connectors: FrozenSet[Connector], motif: ConnectorMotif, index: int,
                                     typing: Mapping[str, str]) -> Optional[Failure]:
    for c in motif.constraints:
        if c.multiplicity.is_single_choice and not c.multiplicity.is_singleton:
            sizes = {port_counts(connector, typing).get(c.port, 0) for connector in connectors}
            if len(sizes) > 1:
                return Failure(SC_UNIFORMITY, f"connectors use different multiplicities of {c.port}",
                               str(c.port), "one value", str(sorted(sizes)), index)
    return None


def verify_degree(connectors: FrozenSet[Connector], motif: ConnectorMotif,
                  instances: Mapping[str, List[str]]) -> bool:
    """
    Degree constraints of one motif over its part of the configuration

    Args:
        connectors: Connectors assigned to the motif
        motif: The motif
        instances: Type name -> component ids (all instances, connected or not)

    Returns:
        True iff every instance's degree lies in the interval and sc degrees are uniform
    """
    return (_degree_failure(connectors, motif, 0, instances) is None
            and _degree_uniformity_failure(connectors, motif, 0, instances) is None)


def _part_failure(connectors: FrozenSet[Connector], motif: ConnectorMotif, index: int,
                  instances: Mapping[str, List[str]], typing: Mapping[str, str]) -> Optional[Failure]:
    return (_degree_failure(connectors, motif, index, instances)
            or _multiplicity_uniformity_failure(connectors, motif, index, typing)
            or _degree_uniformity_failure(connectors, motif, index, instances))


def _search(connectors: Sequence[Connector], candidates: Sequence[List[int]], d: Diagram,
            instances: Mapping[str, List[str]], typing: Mapping[str, str]) -> Optional[Partition]:
    """Backtracking over motif assignments of ambiguous connectors with degree upper-bound pruning"""
    assigned: Dict[int, List[Connector]] = {index: [] for index in range(len(d.motifs))}
    load: Dict[Tuple[int, PortInstance], int] = Counter()
    caps = {
        (index, c.port): c.degree.hi
        for index, motif in enumerate(d.motifs)
        for c in motif.constraints
    }

    def fits(connector: Connector, index: int) -> bool:
        return all(
            load[(index, instance)] < caps[(index, GenericPortRef(typing[instance.component_id], instance.port_name))]
            for instance in connector.ports
        )

    def backtrack(position: int) -> Optional[Partition]:
        if position == len(connectors):
            partition = {index: frozenset(parts) for index, parts in assigned.items()}
            for index, motif in enumerate(d.motifs):
                if _part_failure(partition[index], motif, index, instances, typing):
                    return None
            return partition
        connector = connectors[position]
        for index in candidates[position]:
            if not fits(connector, index):
                continue
            assigned[index].append(connector)
            for instance in connector.ports:
                load[(index, instance)] += 1
            result = backtrack(position + 1)
            if result is not None:
                return result
            assigned[index].pop()
            for instance in connector.ports:
                load[(index, instance)] -= 1
        return None

    return backtrack(0)


def verify(a: Architecture, d: Diagram) -> ConformanceVerdict:
    """
    Check whether an architecture conforms to a diagram

    Connectors matching exactly one motif are assigned greedily; only when
    some connector matches several motifs (possible with multiplicity lower
    bound 0) are assignments searched by backtracking.

    Args:
        a: Architecture resolved against the diagram's types
        d: Validated diagram

    Returns:
        ConformanceVerdict with the partition on success, the first failed stage otherwise
    """
    failure = _cardinality_failure(a.components, d)
    if failure:
        return ConformanceVerdict(False, failure)

    typing = a.typing()
    instances = a.instances()
    connectors = a.sorted_configuration()
    candidates = [motif_candidates(connector, d.motifs, typing) for connector in connectors]
    for connector, found in zip(connectors, candidates):
        if not found:
            counts = port_counts(connector, typing) or Counter()
            actual = ", ".join(f"{port}:{count}" for port, count in sorted(counts.items()))
            return ConformanceVerdict(False, Failure(
                MULTIPLICITY_PARTITION, f"connector {connector} matches no motif", str(connector),
                "a motif admitting these port counts", actual,
            ))

    if is_simple(d) or all(len(found) == 1 for found in candidates):
        partition = verify_multiplicity(connectors, d.motifs, typing)
        for index, motif in enumerate(d.motifs):
            failure = _part_failure(partition[index], motif, index, instances, typing)
            if failure:
                return ConformanceVerdict(False, failure, strategy=GREEDY)
        return ConformanceVerdict(True, partition=partition, strategy=GREEDY)

    logger.debug(f"{a.name}: {sum(len(found) > 1 for found in candidates)} ambiguous connectors, backtracking")
    partition = _search(connectors, candidates, d, instances, typing)
    if partition is None:
        return ConformanceVerdict(False, Failure(
            DISJOINT_PARTITION, "no assignment of connectors to motifs meets every degree constraint",
        ), strategy=BACKTRACKING)
    return ConformanceVerdict(True, partition=partition, strategy=BACKTRACKING)
