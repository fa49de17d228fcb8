"""
Domain model for architecture diagrams, architectures and their well-formedness
"""

from .types import (
    SC,
    MC,
    Interval,
    TypedInterval,
    GenericPortRef,
    ComponentType,
    PortConstraint,
    ConnectorMotif,
    Diagram,
    PortInstance,
    Connector,
    Component,
    Architecture,
    sort_connectors,
    configuration_key,
)

from .validation import (
    Violation,
    ValidationReport,
    validate_diagram,
    is_simple,
    matching_factor,
)

from .instances import (
    port_instance,
    canonical_components,
    canonical_architecture,
    cardinality_assignments,
)

from .errors import (
    SourceSpan,
    ArchdiaError,
    ParseError,
    DiagramValidationError,
    ZeroMultiplicityError,
    NotSimpleDiagramError,
    ConstraintError,
    OracleLimitError,
)

__all__ = [
    # Types
    'SC',
    'MC',
    'Interval',
    'TypedInterval',
    'GenericPortRef',
    'ComponentType',
    'PortConstraint',
    'ConnectorMotif',
    'Diagram',
    'PortInstance',
    'Connector',
    'Component',
    'Architecture',
    'sort_connectors',
    'configuration_key',
    # Validation
    'Violation',
    'ValidationReport',
    'validate_diagram',
    'is_simple',
    'matching_factor',
    # Instances
    'port_instance',
    'canonical_components',
    'canonical_architecture',
    'cardinality_assignments',
    # Errors
    'SourceSpan',
    'ArchdiaError',
    'ParseError',
    'DiagramValidationError',
    'ZeroMultiplicityError',
    'NotSimpleDiagramError',
    'ConstraintError',
    'OracleLimitError',
]
