"""
Analysis of diagrams: consistency decisions and regular configurations of generic ports
"""

from .consistency import (
    PortChoice,
    MotifWitness,
    ConsistencyWitness,
    ConsistencyDiagnosis,
    ConsistencyReport,
    admissible_sizes,
    connector_bound,
    check_simple,
    check_interval,
    check_consistency,
)

from .regular_configs import (
    SupportIndex,
    IncidenceMatrix,
    RegularConfig,
    enumerate_supports,
    build_incidence,
    enumerate_regular,
    format_regular_table,
)

__all__ = [
    # Consistency
    'PortChoice',
    'MotifWitness',
    'ConsistencyWitness',
    'ConsistencyDiagnosis',
    'ConsistencyReport',
    'admissible_sizes',
    'connector_bound',
    'check_simple',
    'check_interval',
    'check_consistency',
    # Regular configurations
    'SupportIndex',
    'IncidenceMatrix',
    'RegularConfig',
    'enumerate_supports',
    'build_incidence',
    'enumerate_regular',
    'format_regular_table'
]
