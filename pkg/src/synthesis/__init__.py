"""
Synthesis of conforming architectures from diagrams
"""

from .fusion import (
    SynthesisConstraints,
    FusionTensor,
    MotifConfiguration,
    connector_parts,
    enumerate_motif,
)

from .architectures import (
    enumerate_diagram,
    count_configs,
)

__all__ = [
    # Motif fusion
    'SynthesisConstraints',
    'FusionTensor',
    'MotifConfiguration',
    'connector_parts',
    'enumerate_motif',
    # Architectures
    'enumerate_diagram',
    'count_configs'
]
