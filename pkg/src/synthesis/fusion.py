"""
Motif-level synthesis
Fuses per-port regular configurations into connector sets through a 0/1 fusion tensor E
"""

import logging
from dataclasses import dataclass, field
from itertools import product
from typing import Dict, FrozenSet, Iterator, List, Mapping, Optional, Sequence, Tuple

import numpy as np

from src.analysis.regular_configs import RegularConfig, SupportIndex, enumerate_regular
from src.model.errors import ConstraintError
from src.model.instances import port_instance
from src.model.naming import parse_canonical_id
from src.model.types import Connector, ConnectorMotif, GenericPortRef, configuration_key

logger = logging.getLogger(__name__)

Entry = Tuple[int, ...]
Parts = Tuple[Tuple[int, ...], ...]


@dataclass(frozen=True)
class SynthesisConstraints:
    """
    Connectors that must (required) or must not (forbidden) appear, plus optional fixed cardinalities
    """
    required: FrozenSet[Connector] = frozenset()
    forbidden: FrozenSet[Connector] = frozenset()
    cardinalities: Optional[Dict[str, int]] = field(default=None, hash=False)

    def __post_init__(self):
        object.__setattr__(self, "required", frozenset(self.required))
        object.__setattr__(self, "forbidden", frozenset(self.forbidden))
        clash = self.required & self.forbidden
        if clash:
            listed = ", ".join(sorted(str(c) for c in clash))
            raise ConstraintError(f"connector both required and forbidden: {listed}")


@dataclass(frozen=True)
class FusionTensor:
    """
    0/1 tensor of shape w^1 x ... x w^v

    Entry (i_1, ..., i_v) = 1 fuses support i_j of every port j into one connector.
    """
    E: np.ndarray = field(compare=False)
    forced: Dict[Entry, int] = field(default_factory=dict, compare=False)

    def marginal(self, axis: int) -> np.ndarray:
        others = tuple(k for k in range(self.E.ndim) if k != axis)
        return self.E.sum(axis=others)

    @property
    def total(self) -> int:
        return int(self.E.sum())

    def selected(self) -> List[Entry]:
        return [tuple(int(i) for i in entry) for entry in np.argwhere(self.E == 1)]


@dataclass(frozen=True)
class MotifConfiguration:
    """A configuration specified by one motif; equality is by connector set only"""
    connectors: FrozenSet[Connector]
    s: int = field(default=0, compare=False)
    vectors: Tuple[RegularConfig, ...] = field(default=(), compare=False)
    tensor: Optional[FusionTensor] = field(default=None, compare=False)

    def sorted_connectors(self) -> List[Connector]:
        return sorted(self.connectors, key=lambda c: c.sort_key)


def connector_parts(connector: Connector, motif: ConnectorMotif, cards: Mapping[str, int]) -> Optional[Parts]:
    """
    Split a connector over canonical ids into per-port supports of a motif

    Args:
        connector: Connector whose components are named T#k
        motif: Motif giving the port order
        cards: Cardinality per type

    Returns:
        One sorted support per motif port, or None when the connector cannot be
        built by the motif (foreign port, instance beyond cardinality, or a
        per-port count outside the multiplicity interval)
    """
    ports = {c.port: [] for c in motif.constraints}
    for instance in connector.ports:
        parsed = parse_canonical_id(instance.component_id)
        if parsed is None:
            return None
        type_name, index = parsed
        generic = GenericPortRef(type_name, instance.port_name)
        if generic not in ports or index > cards.get(type_name, 0):
            return None
        ports[generic].append(index)
    parts = []
    for constraint in motif.constraints:
        support = tuple(sorted(ports[constraint.port]))
        if not constraint.multiplicity.contains(len(support)):
            return None
        parts.append(support)
    return tuple(parts)


def _connector_of(motif: ConnectorMotif, indices: Sequence[SupportIndex], entry: Entry) -> Connector:
    instances = [
        port_instance(constraint.port, k)
        for constraint, index, i in zip(motif.constraints, indices, entry)
        for k in index.supports[i]
    ]
    return Connector(frozenset(instances))


def _matching_factors(vectors: Sequence[RegularConfig]) -> List[int]:
    """Connector counts s compatible with the chosen per-port vectors"""
    counts = [v.nonempty_count() for v in vectors]
    strict = {c for v, c in zip(vectors, counts) if not v.supports.has_empty_support()}
    if len(strict) > 1:
        return []
    if strict:
        s = strict.pop()
        return [s] if all(c <= s for c in counts) else []
    return list(range(max(counts, default=0), sum(counts) + 1))


def _fill(shape: Tuple[int, ...], targets: List[List[int]], fixed: Dict[Entry, int],
          empty_entry: Optional[Entry]) -> Iterator[np.ndarray]:
    """
    Every 0/1 tensor with the given axis marginals, respecting forced entries

    Entries are visited in np.ndindex order; an axis index whose last entry has
    been passed must have met its marginal exactly.
    """
    entries = list(np.ndindex(*shape))
    last_seen: Dict[Tuple[int, int], int] = {}
    for t, entry in enumerate(entries):
        for axis, i in enumerate(entry):
            last_seen[(axis, i)] = t
    closing = [
        [(axis, i) for axis, i in enumerate(entry) if last_seen[(axis, i)] == t]
        for t, entry in enumerate(entries)
    ]
    remaining = [list(target) for target in targets]
    E = np.zeros(shape, dtype=np.int64)

    def open_at(t: int) -> bool:
        return any(remaining[axis][i] for axis, i in closing[t])

    def backtrack(t: int) -> Iterator[np.ndarray]:
        while t < len(entries):
            entry = entries[t]
            forced = fixed.get(entry)
            can_take = entry != empty_entry and all(remaining[axis][i] > 0 for axis, i in enumerate(entry))
            if forced == 1 and not can_take:
                return
            if forced == 1 or (can_take and forced is None):
                break
            if open_at(t):
                return
            t += 1
        if t == len(entries):
            yield E.copy()
            return
        entry = entries[t]
        for value in ((1,) if fixed.get(entry) == 1 else (0, 1)):
            if value:
                E[entry] = 1
                for axis, i in enumerate(entry):
                    remaining[axis][i] -= 1
            if not open_at(t):
                yield from backtrack(t + 1)
            if value:
                E[entry] = 0
                for axis, i in enumerate(entry):
                    remaining[axis][i] += 1

    yield from backtrack(0)


def _fuse(motif: ConnectorMotif, vectors: Sequence[RegularConfig], required: Sequence[Parts],
          forbidden: Sequence[Parts]) -> Iterator[MotifConfiguration]:
    indices = [v.supports for v in vectors]
    shape = tuple(index.w for index in indices)
    fixed: Dict[Entry, int] = {}
    for parts in forbidden:
        entry = tuple(index.index_of(support) for index, support in zip(indices, parts))
        if None not in entry:
            fixed[entry] = 0
    for parts in required:
        entry = tuple(index.index_of(support) for index, support in zip(indices, parts))
        if None in entry:
            return
        fixed[entry] = 1
    empty_entry = (0,) * len(shape) if all(index.has_empty_support() for index in indices) else None

    for s in _matching_factors(vectors):
        targets = []
        for v in vectors:
            target = list(v.x)
            if v.supports.has_empty_support():
                target[0] = s - v.nonempty_count()
            targets.append(target)
        for E in _fill(shape, targets, fixed, empty_entry):
            tensor = FusionTensor(E, dict(fixed))
            for axis, target in enumerate(targets):
                assert np.array_equal(tensor.marginal(axis), np.array(target)), "fusion marginal mismatch"
            assert tensor.total == s, "fusion total mismatch"
            connectors = frozenset(_connector_of(motif, indices, entry) for entry in tensor.selected())
            yield MotifConfiguration(connectors, s, tuple(vectors), tensor)


def enumerate_motif(motif: ConnectorMotif, cards: Mapping[str, int],
                    cons: Optional[SynthesisConstraints] = None) -> List[MotifConfiguration]:
    """
    All configurations a single motif specifies at fixed cardinalities

    Args:
        motif: Validated connector motif
        cards: Cardinality per type name
        cons: Required / forbidden connectors (canonical ids T#k)

    Returns:
        Distinct MotifConfigurations in canonical order; empty when unsatisfiable

    Raises:
        ConstraintError: A required connector cannot be built by this motif
    """
    cons = cons or SynthesisConstraints()
    required = []
    for connector in sorted(cons.required, key=lambda c: c.sort_key):
        parts = connector_parts(connector, motif, cards)
        if parts is None:
            raise ConstraintError(f"constraint outside motif shape: {connector}")
        required.append(parts)
    forbidden = [p for p in (connector_parts(c, motif, cards) for c in cons.forbidden) if p is not None]

    per_port = [
        enumerate_regular(cards[c.port.type_name], c.multiplicity, c.degree)
        for c in motif.constraints
    ]
    found: Dict[tuple, MotifConfiguration] = {}
    for vectors in product(*per_port):
        for config in _fuse(motif, vectors, required, forbidden):
            found.setdefault(configuration_key(config.connectors), config)
    logger.debug(f"enumerate_motif({motif}, {dict(cards)}): {len(found)} configurations")
    return [found[key] for key in sorted(found)]
