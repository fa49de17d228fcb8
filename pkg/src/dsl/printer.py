"""
Canonical printers for diagrams and architectures
Output is byte-stable: model values are already kept in canonical order
"""

from itertools import groupby
from typing import List

from src.model.types import Architecture, Diagram

INDENT = "    "


def print_diagram(d: Diagram) -> str:
    """Render a diagram in .archd syntax"""
    lines: List[str] = [f"diagram {d.name} {{"]
    for component_type in d.types:
        ports = ", ".join(component_type.ports)
        lines.append(f"{INDENT}type {component_type.name}({ports}) {d.cardinality_of(component_type.name)}")
    for motif in d.motifs:
        lines.append(f"{INDENT}motif {motif}")
    lines.append("}")
    return "\n".join(lines) + "\n"


def print_architecture(a: Architecture) -> str:
    """Render an architecture in .archa syntax, components grouped by type"""
    lines: List[str] = [f"architecture {a.name} of {a.diagram_name} {{"]
    for type_name, group in groupby(a.components, key=lambda c: c.type_name):
        ids = ", ".join(c.id for c in group)
        lines.append(f"{INDENT}component {ids} : {type_name}")
    for connector in a.sorted_configuration():
        members = ", ".join(str(p) for p in connector.sorted_ports())
        lines.append(f"{INDENT}connector {members}")
    lines.append("}")
    return "\n".join(lines) + "\n"
