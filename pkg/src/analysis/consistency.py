"""
Consistency of architecture diagrams
Decides whether a diagram admits a conforming architecture, with a witness or a diagnosis
"""

import logging
import math
from dataclasses import dataclass, field
from fractions import Fraction
from itertools import product
from typing import Dict, List, Optional, Sequence, Tuple

from scipy.special import comb

from src.model.errors import NotSimpleDiagramError
from src.model.instances import cardinality_assignments, port_instance
from src.model.types import ConnectorMotif, Diagram, GenericPortRef, PortConstraint, TypedInterval, configuration_key
from src.model.validation import is_simple, matching_factor

logger = logging.getLogger(__name__)

MULTIPLICITY_VS_CARDINALITY = 'multiplicity-vs-cardinality'
MATCHING_FACTOR_MISMATCH = 'matching-factor-mismatch'
CONNECTOR_COUNT_BOUND = 'connector-count-bound'
UNREALIZABLE = 'unrealizable'


@dataclass(frozen=True)
class PortChoice:
    """Choice-function outputs for one port: the intervals actually used"""
    port: GenericPortRef
    multiplicity: TypedInterval
    degree: TypedInterval

    def to_dict(self) -> dict:
        return {'port': str(self.port), 'multiplicity': str(self.multiplicity), 'degree': str(self.degree)}


@dataclass(frozen=True)
class MotifWitness:
    motif: int
    choices: Tuple[PortChoice, ...]
    matching_factor: int

    def to_dict(self) -> dict:
        return {
            'motif': self.motif,
            'choices': [c.to_dict() for c in self.choices],
            'matching_factor': self.matching_factor,
        }


@dataclass(frozen=True)
class ConsistencyWitness:
    cardinalities: Dict[str, int] = field(hash=False)
    motifs: Tuple[MotifWitness, ...] = ()

    def to_dict(self) -> dict:
        return {'cardinalities': dict(self.cardinalities), 'motifs': [m.to_dict() for m in self.motifs]}


@dataclass(frozen=True)
class ConsistencyDiagnosis:
    condition: str
    motif: int
    message: str
    port: Optional[GenericPortRef] = None
    values: Dict[str, object] = field(default_factory=dict, hash=False)

    def to_dict(self) -> dict:
        return {
            'condition': self.condition,
            'motif': self.motif,
            'port': str(self.port) if self.port else None,
            'message': self.message,
            'values': dict(self.values),
        }


@dataclass(frozen=True)
class ConsistencyReport:
    """Exactly one of witness / diagnosis is present"""
    consistent: bool
    witness: Optional[ConsistencyWitness] = None
    diagnosis: Optional[ConsistencyDiagnosis] = None

    def to_dict(self) -> dict:
        return {
            'consistent': self.consistent,
            'witness': self.witness.to_dict() if self.witness else None,
            'diagnosis': self.diagnosis.to_dict() if self.diagnosis else None,
        }


def _format_factor(value: Fraction) -> str:
    return str(value.numerator) if value.denominator == 1 else f"{value.numerator}/{value.denominator}"


def admissible_sizes(n_p: int, mult: TypedInterval, deg: TypedInterval) -> List[int]:
    """
    Instance counts a port can contribute to one connector

    A port without instances, or whose degree upper bound is 0, never appears
    in a connector, so only a count of 0 remains (if the multiplicity allows it).
    """
    if n_p == 0 or deg.hi == 0:
        return [0] if mult.contains(0) else []
    return [m for m in mult.values() if m <= n_p]


def connector_bound(motif: ConnectorMotif, cards: Dict[str, int],
                    sizes: Optional[Sequence[Sequence[int]]] = None) -> int:
    """
    Number of distinct connectors a motif can build

    Args:
        motif: Connector motif
        cards: Cardinality per type
        sizes: Optional per-port instance counts replacing the declared ones

    Returns:
        Product over ports of the number of admissible instance subsets,
        minus the empty combination when every port may be absent
    """
    if sizes is None:
        sizes = [admissible_sizes(cards[c.port.type_name], c.multiplicity, c.degree) for c in motif.constraints]
    bound = 1
    for constraint, port_sizes in zip(motif.constraints, sizes):
        n_p = cards[constraint.port.type_name]
        bound *= sum(int(comb(n_p, m, exact=True)) for m in port_sizes)
    if all(0 in port_sizes for port_sizes in sizes):
        bound -= 1
    return max(bound, 0)


def _check_simple_motif(index: int, motif: ConnectorMotif, cards: Dict[str, int]):
    factors = [(c.port, matching_factor(cards[c.port.type_name], c.multiplicity.lo, c.degree.lo))
               for c in motif.constraints]
    if all(s == 0 for _, s in factors):
        # an empty motif part satisfies every port
        choices = tuple(PortChoice(c.port, c.multiplicity, c.degree) for c in motif.constraints)
        return MotifWitness(index, choices, 0), None
    for c in motif.constraints:
        n_p, m_p = cards[c.port.type_name], c.multiplicity.lo
        if m_p > n_p:
            return None, ConsistencyDiagnosis(
                MULTIPLICITY_VS_CARDINALITY, index,
                f"multiplicity {m_p} of {c.port} exceeds cardinality {n_p}",
                c.port, {'multiplicity': m_p, 'cardinality': n_p},
            )

    values = {str(port): _format_factor(s) for port, s in factors}
    distinct = []
    for _, s in factors:
        if s not in distinct:
            distinct.append(s)
    if len(distinct) > 1:
        message = "matching factors " + " ≠ ".join(_format_factor(s) for s in distinct)
        return None, ConsistencyDiagnosis(MATCHING_FACTOR_MISMATCH, index, message, factors[0][0],
                                          {'matching_factors': values})
    s = distinct[0]
    if s.denominator != 1:
        return None, ConsistencyDiagnosis(
            MATCHING_FACTOR_MISMATCH, index, f"matching factor {_format_factor(s)} is not an integer",
            factors[0][0], {'matching_factors': values},
        )

    bound = connector_bound(motif, cards)
    if s > bound:
        return None, ConsistencyDiagnosis(
            CONNECTOR_COUNT_BOUND, index,
            f"matching factor {s} exceeds the {bound} distinct connectors available",
            None, {'matching_factor': int(s), 'bound': bound},
        )
    choices = tuple(PortChoice(c.port, c.multiplicity, c.degree) for c in motif.constraints)
    return MotifWitness(index, choices, int(s)), None


def check_simple(d: Diagram) -> ConsistencyReport:
    """
    Consistency of a simple diagram

    Per motif: matching factor 0 everywhere (empty part), or multiplicities
    within cardinalities, equal integer matching factors, and no more
    connectors than distinct candidates.

    Args:
        d: Validated simple diagram

    Returns:
        ConsistencyReport; the diagnosis names the first failing motif
    """
    if not is_simple(d):
        raise NotSimpleDiagramError(f"diagram {d.name} has interval constraints")
    cards = {name: interval.lo for name, interval in d.cardinality.items()}
    witnesses = []
    for index, motif in enumerate(d.motifs):
        witness, diagnosis = _check_simple_motif(index, motif, cards)
        if diagnosis is not None:
            logger.info(f"{d.name}: inconsistent ({diagnosis.condition}, {d.motif_label(index)})")
            return ConsistencyReport(False, diagnosis=diagnosis)
        witnesses.append(witness)
    return ConsistencyReport(True, witness=ConsistencyWitness(cards, tuple(witnesses)))


def _matching_range(n_p: int, sizes: List[int], deg: TypedInterval) -> Tuple[int, Optional[int]]:
    """Naturals s for which s connectors can give the port its degrees; None as upper bound means unbounded"""
    top, low = max(sizes), min(sizes)
    lo = math.ceil(Fraction(n_p * deg.lo, top)) if top else 0
    if low == 0:
        return lo, None
    return lo, math.floor(Fraction(n_p * deg.hi, low))


def _choice_diagnosis(index: int, motif: ConnectorMotif, cards: Dict[str, int],
                      combo: Sequence[Tuple[TypedInterval, TypedInterval]]) -> Optional[ConsistencyDiagnosis]:
    """Necessary conditions for one combination of choice-function outputs; None when they hold"""
    constraints = motif.constraints
    if all(cards[c.port.type_name] == 0 or dg.lo == 0 for c, (_, dg) in zip(constraints, combo)):
        return None

    sizes = []
    for c, (m_choice, d_choice) in zip(constraints, combo):
        n_p = cards[c.port.type_name]
        port_sizes = admissible_sizes(n_p, m_choice, d_choice)
        if not port_sizes:
            return ConsistencyDiagnosis(
                MULTIPLICITY_VS_CARDINALITY, index,
                f"no multiplicity in {m_choice} of {c.port} fits cardinality {n_p} and degree {d_choice}",
                c.port, {'multiplicity': str(m_choice), 'cardinality': n_p},
            )
        if max(port_sizes) == 0 and n_p * d_choice.lo > 0:
            return ConsistencyDiagnosis(
                MULTIPLICITY_VS_CARDINALITY, index,
                f"{c.port} cannot appear in any connector but needs degree {d_choice}",
                c.port, {'multiplicity': str(m_choice), 'cardinality': n_p},
            )
        sizes.append(port_sizes)

    ranges = [_matching_range(cards[c.port.type_name], port_sizes, dg)
              for c, port_sizes, (_, dg) in zip(constraints, sizes, combo)]
    s_lo = max([1] + [lo for lo, _ in ranges])
    uppers = [hi for _, hi in ranges if hi is not None]
    if uppers and s_lo > min(uppers):
        return ConsistencyDiagnosis(
            MATCHING_FACTOR_MISMATCH, index,
            "matching factor ranges do not intersect: " + ", ".join(
                f"{c.port} [{lo},{'inf' if hi is None else hi}]" for c, (lo, hi) in zip(constraints, ranges)),
            constraints[0].port,
            {'ranges': {str(c.port): [lo, hi] for c, (lo, hi) in zip(constraints, ranges)}},
        )
    bound = connector_bound(motif, cards, sizes)
    if s_lo > bound:
        return ConsistencyDiagnosis(
            CONNECTOR_COUNT_BOUND, index,
            f"smallest common matching factor {s_lo} exceeds the {bound} distinct connectors available",
            None, {'matching_factor': s_lo, 'bound': bound},
        )
    return None


def _check_interval_motif(index: int, motif: ConnectorMotif, cards: Dict[str, int]) -> Optional[ConsistencyDiagnosis]:
    """First diagnosis when no combination of choice-function outputs passes; None otherwise"""
    options = [
        [(m_choice, d_choice) for m_choice in c.multiplicity.choices() for d_choice in c.degree.choices()]
        for c in motif.constraints
    ]
    first_diagnosis = None
    for combo in product(*options):
        diagnosis = _choice_diagnosis(index, motif, cards, combo)
        if diagnosis is None:
            return None
        if first_diagnosis is None:
            first_diagnosis = diagnosis
    return first_diagnosis


def _realize(d: Diagram, cards: Dict[str, int]):
    """
    Smallest motif configurations whose connector sets are pairwise disjoint

    Returns:
        (configurations, None) on success, (None, index of the motif that could not be placed) otherwise
    """
    # synthesis imports this package, so the import waits until it is needed
    from src.synthesis.fusion import enumerate_motif

    per_motif = []
    for index, motif in enumerate(d.motifs):
        configs = enumerate_motif(motif, cards)
        if not configs:
            return None, index
        per_motif.append(sorted(configs, key=lambda c: (len(c.connectors), configuration_key(c.connectors))))

    deepest = 0

    def search(index: int, used: frozenset):
        nonlocal deepest
        deepest = max(deepest, index)
        if index == len(per_motif):
            return []
        for config in per_motif[index]:
            if used & config.connectors:
                continue
            rest = search(index + 1, used | config.connectors)
            if rest is not None:
                return [config] + rest
        return None

    chosen = search(0, frozenset())
    return (chosen, None) if chosen is not None else (None, deepest)


def _realized_choice(constraint: PortConstraint, connectors, n_p: int) -> PortChoice:
    """Choice-function outputs read off a motif configuration"""
    instances = [port_instance(constraint.port, k) for k in range(1, n_p + 1)]
    counts = sorted({sum(1 for p in instances if p in connector.ports) for connector in connectors})
    degrees = sorted({sum(1 for connector in connectors if p in connector.ports) for p in instances})
    mult, deg = constraint.multiplicity, constraint.degree
    if mult.is_single_choice and counts:
        mult = TypedInterval.exact(counts[0])
    if deg.is_single_choice and degrees:
        deg = TypedInterval.exact(degrees[0])
    return PortChoice(constraint.port, mult, deg)


def _witness_of(index: int, motif: ConnectorMotif, connectors, cards: Dict[str, int]) -> MotifWitness:
    choices = tuple(_realized_choice(c, connectors, cards[c.port.type_name]) for c in motif.constraints)
    return MotifWitness(index, choices, len(connectors))


def check_interval(d: Diagram) -> ConsistencyReport:
    """
    Consistency of an interval diagram

    Cardinalities are chosen once for the whole diagram, choice-function
    outputs per motif and port. The matching-factor conditions rule out
    assignments quickly; an assignment that passes them is confirmed by
    building one configuration per motif with pairwise disjoint connectors,
    since interval bounds alone do not guarantee a realization.

    Args:
        d: Validated diagram (simple diagrams are their own singleton embedding)

    Returns:
        ConsistencyReport whose witness is read off the smallest realization
        at the first consistent assignment, or the diagnosis found for the
        first cardinality assignment
    """
    first_diagnosis = None
    for cards in cardinality_assignments(d):
        failure = None
        for index, motif in enumerate(d.motifs):
            failure = _check_interval_motif(index, motif, cards)
            if failure is not None:
                break
        if failure is None:
            configs, blocked = _realize(d, cards)
            if configs is not None:
                witnesses = tuple(_witness_of(i, motif, config.connectors, cards)
                                  for i, (motif, config) in enumerate(zip(d.motifs, configs)))
                return ConsistencyReport(True, witness=ConsistencyWitness(cards, witnesses))
            failure = ConsistencyDiagnosis(
                UNREALIZABLE, blocked,
                f"no configuration of {d.motif_label(blocked)} is realizable "
                f"alongside the other motifs at these cardinalities",
            )
        logger.debug(f"{d.name} at {cards}: {failure.condition}")
        if first_diagnosis is None:
            first_diagnosis = ConsistencyDiagnosis(
                failure.condition, failure.motif, failure.message, failure.port,
                {**failure.values, 'cardinalities': dict(cards)},
            )
    logger.info(f"{d.name}: no cardinality assignment is consistent")
    return ConsistencyReport(False, diagnosis=first_diagnosis)


def check_consistency(d: Diagram) -> ConsistencyReport:
    """Dispatch to the simple or interval decision procedure"""
    return check_simple(d) if is_simple(d) else check_interval(d)
