"""
Conformance of architectures to diagrams
"""

from .checker import (
    CARDINALITY,
    MULTIPLICITY_PARTITION,
    DEGREE,
    SC_UNIFORMITY,
    DISJOINT_PARTITION,
    GREEDY,
    BACKTRACKING,
    Failure,
    ConformanceVerdict,
    verify,
    verify_cardinality,
    verify_multiplicity,
    verify_degree,
    motif_candidates,
)

from .semantics import (
    semantic_conforms,
)

__all__ = [
    # Stages and strategies
    'CARDINALITY',
    'MULTIPLICITY_PARTITION',
    'DEGREE',
    'SC_UNIFORMITY',
    'DISJOINT_PARTITION',
    'GREEDY',
    'BACKTRACKING',
    # Checker
    'Failure',
    'ConformanceVerdict',
    'verify',
    'verify_cardinality',
    'verify_multiplicity',
    'verify_degree',
    'motif_candidates',
    # Semantics
    'semantic_conforms'
]
