"""
Canonical component instances for a diagram at fixed cardinalities
Shared by synthesis and the oracle so their outputs compare equal
"""

from itertools import product
from typing import Dict, Iterable, Iterator, Mapping, Optional

from src.model.errors import ConstraintError
from src.model.naming import canonical_component_id
from src.model.types import Architecture, Component, Connector, Diagram, GenericPortRef, PortInstance


def port_instance(port: GenericPortRef, index: int) -> PortInstance:
    """Port instance of the index-th (1-based) canonical component of the port's type"""
    return PortInstance(canonical_component_id(port.type_name, index), port.port_name)


def canonical_components(d: Diagram, cards: Mapping[str, int]):
    return tuple(
        Component(canonical_component_id(t.name, i), t.name)
        for t in d.types
        for i in range(1, cards[t.name] + 1)
    )


def canonical_architecture(d: Diagram, cards: Mapping[str, int],
                           configuration: Iterable[Connector]) -> Architecture:
    """
    Build an architecture with components T#1..T#n for every type

    Args:
        d: Diagram the architecture is an instance of
        cards: Number of instances per type name
        configuration: Connectors over canonical port instances

    Returns:
        Architecture named after the diagram
    """
    return Architecture(
        name=f"{d.name}_instance",
        diagram_name=d.name,
        components=canonical_components(d, cards),
        configuration=frozenset(configuration),
    )


def cardinality_assignments(d: Diagram, fixed: Optional[Mapping[str, int]] = None) -> Iterator[Dict[str, int]]:
    """
    Every cardinality assignment of a diagram, in lexicographic order

    Args:
        d: Diagram with (possibly interval) cardinalities
        fixed: Optional overrides type name -> n; each must lie in the declared interval

    Returns:
        Iterator of dicts type name -> n
    """
    fixed = dict(fixed or {})
    for name, value in fixed.items():
        if d.component_type(name) is None:
            raise ConstraintError(f"cardinality given for unknown type {name}")
        if not d.cardinality_of(name).contains(value):
            raise ConstraintError(
                f"cardinality {name}={value} outside declared interval {d.cardinality_of(name)}")
    names = d.type_names
    ranges = [[fixed[name]] if name in fixed else list(d.cardinality_of(name).values()) for name in names]
    for values in product(*ranges):
        yield dict(zip(names, values))
