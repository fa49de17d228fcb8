"""
Textual formats for diagrams and architectures: parser, canonical printer, JSON and DOT exporters
"""

from .parser import (
    parse_diagram,
    parse_architecture,
    load_diagram,
    load_architecture,
    parse_connector_literal,
    parse_interval_literal,
    architecture_diagram_name,
)

from .printer import (
    print_diagram,
    print_architecture,
)

from .exporters import (
    export_dot,
    diagram_to_json,
    architecture_to_json,
    configuration_to_json,
    export_corpus,
)

__all__ = [
    'parse_diagram',
    'parse_architecture',
    'load_diagram',
    'load_architecture',
    'parse_connector_literal',
    'parse_interval_literal',
    'architecture_diagram_name',
    'print_diagram',
    'print_architecture',
    'export_dot',
    'diagram_to_json',
    'architecture_to_json',
    'configuration_to_json',
    'export_corpus',
]
