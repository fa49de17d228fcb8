"""
Core domain types for architecture diagrams and architectures
All values are immutable and normalized on construction, so structural equality is semantic equality
"""

from dataclasses import dataclass, field
from typing import Dict, FrozenSet, Iterable, List, Optional, Tuple

from src.model.naming import natural_key

SC = "sc"
MC = "mc"
INTERVAL_KINDS = (SC, MC)


@dataclass(frozen=True)
class Interval:
    """Plain closed interval of naturals, used for cardinalities"""
    lo: int
    hi: int

    @classmethod
    def exact(cls, value: int) -> "Interval":
        return cls(value, value)

    @property
    def is_singleton(self) -> bool:
        return self.lo == self.hi

    def values(self) -> range:
        return range(self.lo, self.hi + 1)

    def contains(self, value: int) -> bool:
        return self.lo <= value <= self.hi

    def __str__(self) -> str:
        return str(self.lo) if self.is_singleton else f"[{self.lo},{self.hi}]"


@dataclass(frozen=True)
class TypedInterval:
    """
    Multiplicity or degree constraint: a single-choice (sc) or multiple-choice (mc) interval

    Singleton intervals are stored as sc since both kinds mean the same thing there.
    """
    kind: str
    lo: int
    hi: int

    def __post_init__(self):
        if self.kind not in INTERVAL_KINDS:
            raise ValueError(f"unknown interval kind {self.kind!r}")
        if self.lo == self.hi and self.kind == MC:
            object.__setattr__(self, "kind", SC)

    @classmethod
    def exact(cls, value: int) -> "TypedInterval":
        return cls(SC, value, value)

    @property
    def is_singleton(self) -> bool:
        return self.lo == self.hi

    @property
    def is_single_choice(self) -> bool:
        return self.kind == SC

    def values(self) -> range:
        return range(self.lo, self.hi + 1)

    def contains(self, value: int) -> bool:
        return self.lo <= value <= self.hi

    def choices(self) -> List["TypedInterval"]:
        """
        Possible outputs of a choice function on this interval

        Returns:
            [self] for mc, one singleton per value for sc
        """
        if self.kind == MC:
            return [self]
        return [TypedInterval.exact(z) for z in self.values()]

    def __str__(self) -> str:
        if self.is_singleton:
            return str(self.lo)
        return f"{self.kind}[{self.lo},{self.hi}]"


@dataclass(frozen=True, order=True)
class GenericPortRef:
    """A port declared on a component type, qualified by the type name"""
    type_name: str
    port_name: str

    def __str__(self) -> str:
        return f"{self.type_name}.{self.port_name}"


@dataclass(frozen=True)
class ComponentType:
    """Component type with its generic ports (kept sorted)"""
    name: str
    ports: Tuple[str, ...]

    def __post_init__(self):
        object.__setattr__(self, "ports", tuple(sorted(self.ports, key=natural_key)))


@dataclass(frozen=True)
class PortConstraint:
    """Multiplicity and degree attached to one generic port of a motif"""
    port: GenericPortRef
    multiplicity: TypedInterval
    degree: TypedInterval

    def __str__(self) -> str:
        return f"{self.port} : {self.multiplicity} : {self.degree}"


def _port_order(port: GenericPortRef):
    return (natural_key(port.type_name), natural_key(port.port_name))


@dataclass(frozen=True)
class ConnectorMotif:
    """Generic-port set with per-port multiplicity and degree constraints"""
    constraints: Tuple[PortConstraint, ...]

    def __post_init__(self):
        ordered = sorted(self.constraints, key=lambda c: _port_order(c.port))
        object.__setattr__(self, "constraints", tuple(ordered))

    @property
    def ports(self) -> Tuple[GenericPortRef, ...]:
        return tuple(c.port for c in self.constraints)

    def port_set(self) -> FrozenSet[GenericPortRef]:
        return frozenset(self.ports)

    def constraint_for(self, port: GenericPortRef) -> Optional[PortConstraint]:
        for constraint in self.constraints:
            if constraint.port == port:
                return constraint
        return None

    def sort_key(self):
        return tuple(
            (_port_order(c.port), c.multiplicity.kind, c.multiplicity.lo, c.multiplicity.hi,
             c.degree.kind, c.degree.lo, c.degree.hi)
            for c in self.constraints
        )

    def __str__(self) -> str:
        return "{ " + ", ".join(str(c) for c in self.constraints) + " }"


@dataclass(frozen=True)
class Diagram:
    """
    Architecture diagram: component types, cardinalities and connector motifs

    Types are kept sorted by name and motifs in canonical order; motif indices
    used in reports refer to this order.
    """
    name: str
    types: Tuple[ComponentType, ...]
    cardinality: Dict[str, Interval] = field(hash=False)
    motifs: Tuple[ConnectorMotif, ...] = ()

    def __post_init__(self):
        object.__setattr__(self, "types", tuple(sorted(self.types, key=lambda t: natural_key(t.name))))
        ordered_card = {name: self.cardinality[name] for name in sorted(self.cardinality, key=natural_key)}
        object.__setattr__(self, "cardinality", ordered_card)
        object.__setattr__(self, "motifs", tuple(sorted(self.motifs, key=lambda m: m.sort_key())))

    @property
    def type_names(self) -> List[str]:
        return [t.name for t in self.types]

    def component_type(self, name: str) -> Optional[ComponentType]:
        for component_type in self.types:
            if component_type.name == name:
                return component_type
        return None

    def cardinality_of(self, type_name: str) -> Interval:
        return self.cardinality[type_name]

    def has_port(self, port: GenericPortRef) -> bool:
        component_type = self.component_type(port.type_name)
        return component_type is not None and port.port_name in component_type.ports

    def motif_label(self, index: int) -> str:
        return f"motif#{index + 1}"


@dataclass(frozen=True)
class PortInstance:
    """Port of one component instance"""
    component_id: str
    port_name: str

    @property
    def sort_key(self):
        return (natural_key(self.component_id), natural_key(self.port_name))

    def __str__(self) -> str:
        return f"{self.component_id}.{self.port_name}"


@dataclass(frozen=True)
class Connector:
    """Set of port instances that must interact"""
    ports: FrozenSet[PortInstance]

    def __post_init__(self):
        object.__setattr__(self, "ports", frozenset(self.ports))

    @classmethod
    def of(cls, *ports: PortInstance) -> "Connector":
        return cls(frozenset(ports))

    def sorted_ports(self) -> List[PortInstance]:
        return sorted(self.ports, key=lambda p: p.sort_key)

    @property
    def sort_key(self):
        return tuple(p.sort_key for p in self.sorted_ports())

    def __len__(self) -> int:
        return len(self.ports)

    def __str__(self) -> str:
        return ",".join(str(p) for p in self.sorted_ports())


def sort_connectors(connectors: Iterable[Connector]) -> List[Connector]:
    return sorted(connectors, key=lambda c: c.sort_key)


def configuration_key(connectors: Iterable[Connector]):
    """Canonical, totally ordered key of a configuration"""
    return tuple(c.sort_key for c in sort_connectors(connectors))


@dataclass(frozen=True)
class Component:
    """Component instance"""
    id: str
    type_name: str


@dataclass(frozen=True)
class Architecture:
    """Component instances plus a configuration (set of connectors)"""
    name: str
    diagram_name: str
    components: Tuple[Component, ...]
    configuration: FrozenSet[Connector]

    def __post_init__(self):
        ordered = sorted(self.components, key=lambda c: (natural_key(c.type_name), natural_key(c.id)))
        object.__setattr__(self, "components", tuple(ordered))
        object.__setattr__(self, "configuration", frozenset(self.configuration))

    def typing(self) -> Dict[str, str]:
        """Map component id -> type name"""
        return {c.id: c.type_name for c in self.components}

    def instances(self) -> Dict[str, List[str]]:
        """Map type name -> component ids of that type, in natural order"""
        grouped: Dict[str, List[str]] = {}
        for component in self.components:
            grouped.setdefault(component.type_name, []).append(component.id)
        return grouped

    def sorted_configuration(self) -> List[Connector]:
        return sort_connectors(self.configuration)

    def sort_key(self):
        return (
            tuple((natural_key(c.type_name), natural_key(c.id)) for c in self.components),
            configuration_key(self.configuration),
        )
