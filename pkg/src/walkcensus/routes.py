"""Exact route-time arithmetic.

A route's passage time is a non-negative integer combination of edge
lengths.  Representing times as multiplicity vectors keeps identity exact:
under the standing general-position assumption two route times coincide
precisely when their vectors coincide, so equality never touches floating
point.  Floats enter only when a time is compared against a threshold.
"""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass, field
from typing import Iterable, Mapping

from .errors import ArgumentError, StructureError
from .graphs import MetricDigraph, SpernerCertificate, back_edge_order, require_sperner, simple_chain


@dataclass(frozen=True)
class TimeVector:
    """Sparse map edge id -> multiplicity, canonicalized for exact equality."""

    items: tuple[tuple[str, int], ...] = ()

    @staticmethod
    def from_multiplicities(mults: Mapping[str, int]) -> "TimeVector":
        cleaned = []
        for eid, m in mults.items():
            if not isinstance(m, int) or isinstance(m, bool):
                raise ArgumentError(f"multiplicity of edge {eid!r} must be an integer")
            if m < 0:
                raise ArgumentError(f"multiplicity of edge {eid!r} must be non-negative")
            if m:
                cleaned.append((eid, m))
        cleaned.sort()
        return TimeVector(tuple(cleaned))

    @staticmethod
    def unit(edge_id: str) -> "TimeVector":
        return TimeVector(((edge_id, 1),))

    def multiplicity(self, edge_id: str) -> int:
        for eid, m in self.items:
            if eid == edge_id:
                return m
        return 0

    def plus(self, other: "TimeVector") -> "TimeVector":
        acc = Counter(dict(self.items))
        acc.update(dict(other.items))
        return TimeVector(tuple(sorted(acc.items())))

    def plus_edge(self, edge_id: str, n: int = 1) -> "TimeVector":
        if n < 0:
            raise ArgumentError("cannot add a negative multiplicity")
        return self.plus(TimeVector(((edge_id, n),))) if n else self

    def scaled(self, n: int) -> "TimeVector":
        if n < 0:
            raise ArgumentError("cannot scale by a negative factor")
        if n == 0:
            return TimeVector()
        return TimeVector(tuple((eid, m * n) for eid, m in self.items))

    def as_dict(self) -> dict[str, int]:
        return dict(self.items)

    def __bool__(self) -> bool:
        return bool(self.items)


ZERO = TimeVector()


def evaluate(tv: TimeVector, g: MetricDigraph) -> float:
    """Numeric route time: sum of multiplicity * edge length."""
    total = 0.0
    for eid, m in tv.items:
        total += m * g.length(eid)  # raises StructureError on unknown ids
    return total


@dataclass(frozen=True)
class Cycle:
    index: int  # 1-based, ordered by back-edge input order
    edge_ids: tuple[str, ...]
    time_vector: TimeVector
    back_edge: str
    time: float


@dataclass(frozen=True)
class Chain:
    vertex: str
    edge_ids: tuple[str, ...]
    time_vector: TimeVector
    time: float


@dataclass(frozen=True, eq=False)
class CycleBasis:
    """Elementary cycles (one per back edge) plus the chain table for every vertex."""

    cycles: tuple[Cycle, ...]
    chains: Mapping[str, Chain] = field(default_factory=dict)

    @property
    def beta(self) -> int:
        return len(self.cycles)

    def cycle(self, index: int) -> Cycle:
        if not (1 <= index <= len(self.cycles)):
            raise IndexError(f"cycle index {index!r} out of range 1..{len(self.cycles)}")
        return self.cycles[index - 1]


def build_cycle_basis(g: MetricDigraph, cert: SpernerCertificate) -> CycleBasis:
    """Chains for every vertex and one elementary cycle per back edge.

    Cycle i is the tree chain to the back edge's tail followed by the back
    edge itself; cycles are numbered in back-edge input order.
    """
    require_sperner(cert)
    chains: dict[str, Chain] = {}
    for v in g.vertices:
        edge_ids = tuple(simple_chain(g, cert, v))
        tv = TimeVector.from_multiplicities(Counter(edge_ids))
        chains[v] = Chain(v, edge_ids, tv, evaluate(tv, g))
    cycles = []
    for i, back_id in enumerate(back_edge_order(g, cert), start=1):
        tail = g.edge(back_id).tail
        edge_ids = chains[tail].edge_ids + (back_id,)
        tv = chains[tail].time_vector.plus_edge(back_id)
        cycles.append(Cycle(i, edge_ids, tv, back_id, evaluate(tv, g)))
    return CycleBasis(tuple(cycles), chains)


@dataclass(frozen=True)
class CollisionWarning:
    """Two distinct route-time vectors whose float values are closer than epsilon."""

    value_a: float
    value_b: float
    vector_a: TimeVector
    vector_b: TimeVector

    @property
    def gap(self) -> float:
        return abs(self.value_b - self.value_a)


def realized_times(g: MetricDigraph, basis: CycleBasis, horizon: float) -> list[tuple[float, TimeVector]]:
    """All route times up to the horizon, as (value, vector) pairs sorted by value.

    A route time is a chain time plus any non-negative combination of
    elementary cycle times; the pairs are exactly the arrival times the
    census jump stream realizes.
    """
    out: list[tuple[float, TimeVector]] = []
    cycles = basis.cycles

    def extend(start: int, tv: TimeVector, val: float) -> None:
        out.append((val, tv))
        for j in range(start, len(cycles)):
            c = cycles[j]
            nval = val + c.time
            if nval <= horizon:
                extend(j, tv.plus(c.time_vector), nval)

    for v in g.vertices:
        chain = basis.chains[v]
        if chain.time <= horizon:
            extend(0, chain.time_vector, chain.time)
    out.sort(key=lambda pair: (pair[0], pair[1].items))
    return out


def general_position_audit(
    g: MetricDigraph, basis: CycleBasis, horizon: float, epsilon: float
) -> list[CollisionWarning]:
    """Report pairs of distinct route-time vectors within epsilon of each other.

    An empty result means no near-violation of general position was detected
    among the route times realized up to the horizon; threshold comparisons
    against those times are then trustworthy at the epsilon scale.
    """
    if horizon <= 0:
        raise ArgumentError("audit horizon must be positive")
    if epsilon <= 0:
        raise ArgumentError("audit epsilon must be positive")
    times = realized_times(g, basis, horizon)
    warnings: list[CollisionWarning] = []
    n = len(times)
    for i in range(n):
        val_a, tv_a = times[i]
        for j in range(i + 1, n):
            val_b, tv_b = times[j]
            if val_b - val_a >= epsilon:
                break
            if tv_a != tv_b:
                warnings.append(CollisionWarning(val_a, val_b, tv_a, tv_b))
    return warnings


def edge_sum_identity_holds(g: MetricDigraph, basis: CycleBasis) -> bool:
    """Exact-integer check of the edge-sum identity.

    As multiplicity vectors, the sum of all edge units equals the sum of the
    elementary cycle vectors minus sum over vertices of
    (out-degree - in-degree) times the chain vector.  Degrees are taken in
    the full graph; the intermediate arithmetic is signed.
    """
    lhs = Counter({e.id: 1 for e in g.edges})
    rhs: Counter[str] = Counter()
    for c in basis.cycles:
        rhs.update(dict(c.time_vector.items))
    for v in g.vertices:
        d = len(g.out_edges(v)) - len(g.in_edges(v))
        if d:
            for eid, m in basis.chains[v].time_vector.items:
                rhs[eid] -= d * m
    lhs_clean = {k: n for k, n in lhs.items() if n}
    rhs_clean = {k: n for k, n in rhs.items() if n}
    return lhs_clean == rhs_clean
