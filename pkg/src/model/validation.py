"""
Structural well-formedness checks for diagrams
Violations are returned as data; nothing here raises on a malformed diagram
"""

import logging
from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations
from typing import List, Optional, Tuple

from src.model.errors import ZeroMultiplicityError
from src.model.types import Diagram, GenericPortRef, TypedInterval

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class Violation:
    """One broken well-formedness rule"""
    rule: str
    message: str
    motif: Optional[int] = None
    port: Optional[GenericPortRef] = None

    def to_dict(self) -> dict:
        return {
            'rule': self.rule,
            'message': self.message,
            'motif': self.motif,
            'port': str(self.port) if self.port else None,
        }


@dataclass(frozen=True)
class ValidationReport:
    violations: Tuple[Violation, ...] = ()

    @property
    def ok(self) -> bool:
        return not self.violations

    def rules(self) -> List[str]:
        return [v.rule for v in self.violations]

    def to_dict(self) -> dict:
        return {'ok': self.ok, 'violations': [v.to_dict() for v in self.violations]}


def _check_types(d: Diagram, violations: List[Violation]):
    seen = set()
    for component_type in d.types:
        if component_type.name in seen:
            violations.append(Violation('duplicate-type', f"type {component_type.name} declared twice"))
        seen.add(component_type.name)
        if not component_type.ports:
            violations.append(Violation('empty-ports', f"type {component_type.name} has no ports"))
        if len(set(component_type.ports)) != len(component_type.ports):
            violations.append(Violation('duplicate-port-name',
                                        f"type {component_type.name} declares a port twice"))


def _check_cardinalities(d: Diagram, violations: List[Violation]):
    for name in d.type_names:
        if name not in d.cardinality:
            violations.append(Violation('missing-cardinality', f"type {name} has no cardinality"))
    for name, interval in d.cardinality.items():
        if d.component_type(name) is None:
            violations.append(Violation('unknown-type', f"cardinality given for unknown type {name}"))
        if interval.lo < 0 or interval.lo > interval.hi:
            violations.append(Violation('interval-order', f"cardinality of {name}: interval lo > hi"))


def _interval_ok(interval: TypedInterval) -> bool:
    return 0 <= interval.lo <= interval.hi


def _check_motifs(d: Diagram, violations: List[Violation]):
    for index, motif in enumerate(d.motifs):
        if not motif.constraints:
            violations.append(Violation('empty-motif', "motif must name at least one port", index))
            continue
        if len(motif.port_set()) != len(motif.constraints):
            violations.append(Violation('duplicate-port', "motif names a generic port twice", index))
        for constraint in motif.constraints:
            port = constraint.port
            if not d.has_port(port):
                violations.append(Violation('unresolved-port', f"{port} is not a declared port", index, port))
            for label, interval in (('multiplicity', constraint.multiplicity), ('degree', constraint.degree)):
                if not _interval_ok(interval):
                    violations.append(Violation('interval-order', f"{label} of {port}: interval lo > hi", index, port))
            if constraint.multiplicity.hi < 1:
                violations.append(Violation('multiplicity-hi', "multiplicity hi must be ≥ 1", index, port))


def _multiplicities_disjoint(a: TypedInterval, b: TypedInterval) -> bool:
    return a.hi < b.lo or b.hi < a.lo


def _check_distinguishability(d: Diagram, violations: List[Violation]):
    for (i, first), (j, second) in combinations(enumerate(d.motifs), 2):
        if first.port_set() != second.port_set() or not first.constraints:
            continue
        separated = any(
            _multiplicities_disjoint(c.multiplicity, second.constraint_for(c.port).multiplicity)
            for c in first.constraints
        )
        if not separated:
            violations.append(Violation(
                'motif-distinguishability',
                f"motifs #{i + 1} and #{j + 1} share their ports and no port has disjoint multiplicities",
                j,
            ))


def validate_diagram(d: Diagram) -> ValidationReport:
    """
    Check every well-formedness rule of a diagram

    Args:
        d: Diagram to check

    Returns:
        ValidationReport, ok when there are no violations
    """
    violations: List[Violation] = []
    _check_types(d, violations)
    _check_cardinalities(d, violations)
    if not d.motifs:
        violations.append(Violation('no-motifs', "diagram declares no connector motif"))
    _check_motifs(d, violations)
    _check_distinguishability(d, violations)
    if violations:
        logger.info(f"Diagram {d.name}: {len(violations)} violation(s)")
    return ValidationReport(tuple(violations))


def is_simple(d: Diagram) -> bool:
    """True iff every cardinality, multiplicity and degree interval is a singleton"""
    if not all(interval.is_singleton for interval in d.cardinality.values()):
        return False
    return all(
        c.multiplicity.is_singleton and c.degree.is_singleton
        for motif in d.motifs
        for c in motif.constraints
    )


def matching_factor(n_p: int, m_p: int, d_p: int) -> Fraction:
    """
    Matching factor s_p = n_p * d_p / m_p, kept exact

    Args:
        n_p: Cardinality of the port's type
        m_p: Multiplicity (must be >= 1)
        d_p: Degree

    Returns:
        Fraction, possibly non-integer
    """
    if m_p == 0:
        raise ZeroMultiplicityError()
    return Fraction(n_p * d_p, m_p)
