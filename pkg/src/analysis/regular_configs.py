"""
Regular configurations of one generic port
Canonical connector supports, the incidence matrix G and all nonnegative integer solutions of GX = D
"""

import logging
from dataclasses import dataclass
from functools import lru_cache
from itertools import combinations
from typing import Iterator, List, Optional, Sequence, Tuple

import numpy as np

from src.model.types import SC, TypedInterval

logger = logging.getLogger(__name__)

Support = Tuple[int, ...]


@dataclass(frozen=True)
class SupportIndex:
    """
    Ordered connector supports over instances 1..n of one generic port

    Supports are ordered by size, then lexicographically by members; this
    order fixes the meaning of every vector index X[j].
    """
    n: int
    supports: Tuple[Support, ...]

    @property
    def w(self) -> int:
        return len(self.supports)

    def index_of(self, support: Sequence[int]) -> Optional[int]:
        key = tuple(sorted(support))
        try:
            return self.supports.index(key)
        except ValueError:
            return None

    def has_empty_support(self) -> bool:
        return () in self.supports


@dataclass(frozen=True)
class IncidenceMatrix:
    """0/1 matrix with g[i, j] = 1 iff instance i+1 belongs to support j"""
    G: np.ndarray

    @property
    def shape(self) -> Tuple[int, int]:
        return self.G.shape

    def equations(self, rhs: str = "d") -> List[str]:
        """Row equations of GX = D, e.g. 'x1+x2+x3 = d'"""
        rows = []
        for row in self.G:
            terms = [f"x{j + 1}" for j in np.flatnonzero(row)]
            rows.append(f"{'+'.join(terms) if terms else '0'} = {rhs}")
        return rows


@dataclass(frozen=True)
class RegularConfig:
    """Occurrence vector X over a support index; D = GX is the per-instance degree"""
    supports: SupportIndex
    x: Tuple[int, ...]

    @property
    def degrees(self) -> Tuple[int, ...]:
        G = incidence_of(self.supports).G
        return tuple(int(v) for v in G @ np.array(self.x, dtype=np.int64)) if self.supports.w else (0,) * self.supports.n

    @property
    def connector_count(self) -> int:
        return sum(self.x)

    def nonempty_count(self) -> int:
        return sum(v for v, support in zip(self.x, self.supports.supports) if support)

    def __str__(self) -> str:
        if all(v < 10 for v in self.x):
            return "[" + "".join(str(v) for v in self.x) + "]"
        return "[" + ",".join(str(v) for v in self.x) + "]"


def enumerate_supports(n: int, mult: TypedInterval) -> SupportIndex:
    """
    Canonical connector supports for n instances and a multiplicity

    Args:
        n: Number of instances of the port
        mult: Multiplicity; mc intervals span every size in [lo, hi],
            sc intervals must already be fixed to one size

    Returns:
        SupportIndex ordered by (size, members)
    """
    if mult.kind == SC and not mult.is_singleton:
        raise ValueError("single-choice multiplicity must be split into one index per size")
    supports = tuple(
        support
        for m in mult.values()
        for support in combinations(range(1, n + 1), m)
    )
    return SupportIndex(n, supports)


def build_incidence(n: int, supports) -> IncidenceMatrix:
    """
    Incidence matrix of a support list

    Args:
        n: Number of instances (rows)
        supports: SupportIndex or sequence of supports (columns)

    Returns:
        IncidenceMatrix of shape n x w
    """
    columns = supports.supports if isinstance(supports, SupportIndex) else tuple(supports)
    G = np.zeros((n, len(columns)), dtype=np.int64)
    for j, support in enumerate(columns):
        for i in support:
            G[i - 1, j] = 1
    return IncidenceMatrix(G)


@lru_cache(maxsize=256)
def incidence_of(index: SupportIndex) -> IncidenceMatrix:
    return build_incidence(index.n, index)


def _solve(index: SupportIndex, lo: int, hi: int) -> Iterator[Tuple[int, ...]]:
    """
    All X >= 0 with lo <= (GX)_i <= hi for every instance, x_empty = 0

    Depth-first over columns in index order with ascending values, so solutions
    come out in lexicographic order.
    """
    n, w = index.n, index.w
    columns = index.supports
    last_column = [-1] * (n + 1)
    for j, support in enumerate(columns):
        for i in support:
            last_column[i] = j
    if any(last_column[i] == -1 for i in range(1, n + 1)) and lo > 0:
        return
    current = [0] * (n + 1)
    x = [0] * w

    def backtrack(j: int) -> Iterator[Tuple[int, ...]]:
        if j == w:
            yield tuple(x)
            return
        support = columns[j]
        if not support:
            x[j] = 0
            yield from backtrack(j + 1)
            return
        cap = min(hi - current[i] for i in support)
        closing = [i for i in support if last_column[i] == j]
        for value in range(cap + 1):
            if any(current[i] + value < lo for i in closing):
                continue
            if any(current[i] + value > hi for i in closing):
                break
            for i in support:
                current[i] += value
            x[j] = value
            yield from backtrack(j + 1)
            for i in support:
                current[i] -= value
        x[j] = 0

    yield from backtrack(0)


def _support_variants(n: int, mult: TypedInterval) -> List[SupportIndex]:
    if mult.kind == SC:
        return [enumerate_supports(n, TypedInterval.exact(m)) for m in mult.values()]
    return [enumerate_supports(n, mult)]


def enumerate_regular(n: int, mult: TypedInterval, deg: TypedInterval) -> List[RegularConfig]:
    """
    All regular configurations of a port with n instances

    Single-choice multiplicity is the union over each fixed size; multiple-choice
    multiplicity is one system over the combined index. Single-choice degree
    forces one common degree d in the interval; multiple-choice lets each
    instance pick its own.

    Args:
        n: Number of instances
        mult: Multiplicity interval
        deg: Degree interval

    Returns:
        RegularConfig list, grouped by support index, lexicographic in X
    """
    results: List[RegularConfig] = []
    for index in _support_variants(n, mult):
        seen = set()
        if deg.is_single_choice:
            bounds = [(d, d) for d in deg.values()]
        else:
            bounds = [(deg.lo, deg.hi)]
        found: List[Tuple[int, ...]] = []
        for lo, hi in bounds:
            for x in _solve(index, lo, hi):
                if x not in seen:
                    seen.add(x)
                    found.append(x)
        results.extend(RegularConfig(index, x) for x in sorted(found))
    logger.debug(f"enumerate_regular(n={n}, mult={mult}, deg={deg}): {len(results)} solutions")
    return results


def format_regular_table(configs: Sequence[RegularConfig]) -> List[str]:
    """One line per configuration: the vector, its connector count and degrees"""
    return [
        f"{config}  connectors={config.connector_count}  degrees={list(config.degrees)}"
        for config in configs
    ]
