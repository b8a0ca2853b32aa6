"""Brute-force endpoint enumeration by explicit route search.

This is the independent check on the census: no cycle decomposition, no
counting formulas, just a depth-first walk over (vertex, accumulated
multiplicity vector) states.  A point of the graph is occupiable at time T
exactly when some route arrives at an edge's tail at time <= T and the
leftover T - arrival is shorter than the edge; distinct (edge, arrival
vector) pairs are distinct points under general position.

Works on any finite digraph with a designated source, one-way Sperner or
not, as long as the walk never strands (every reachable vertex has a way
out).  Search cost grows with the number of distinct arrival vectors under
T, so keep T at desk scale.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

import numpy as np

from .errors import ArgumentError, ModelError
from .graphs import MetricDigraph
from .lattice import DEFAULT_EPSILON
from .routes import TimeVector


@dataclass(frozen=True)
class EndpointKey:
    """A reachable point at query time: partway along ``edge``, having left its
    tail at the route time ``arrival``."""

    edge: str
    arrival: TimeVector


class _ArrivalSearch:
    """One DFS over arrival states, shared by the single- and multi-T queries.

    Arrival vectors are packed into a single integer (fixed-width field per
    edge), which keeps state hashing cheap and equality exact; the field
    width is sized from T so multiplicities cannot collide.
    """

    def __init__(self, g: MetricDigraph, horizon: float, epsilon: float) -> None:
        if not (horizon >= 0):
            raise ArgumentError("oracle needs T >= 0")
        self.g = g
        self.limit = horizon + epsilon

        reachable = {g.source}
        stack = [g.source]
        while stack:
            u = stack.pop()
            for e in g.out_edges(u):
                if e.head not in reachable:
                    reachable.add(e.head)
                    stack.append(e.head)
        for v in g.vertices:
            if v in reachable and not g.out_edges(v):
                raise ModelError(f"vertex {v!r} is reachable but has no outgoing edge; the walk is undefined past it")

        min_len = min((e.length for e in g.edges), default=1.0)
        self.shift = max(4, int(self.limit / min_len + 2).bit_length() + 1)
        self.eidx = {e.id: i for i, e in enumerate(g.edges)}

        adj: list[list[tuple[int, float, int]]] = [[] for _ in g.vertices]
        for i, e in enumerate(g.edges):
            adj[g.vertex_index(e.tail)].append((g.vertex_index(e.head), e.length, 1 << (self.shift * i)))

        src = g.vertex_index(g.source)
        seen: list[set[int]] = [set() for _ in g.vertices]
        states: list[list[tuple[int, float]]] = [[] for _ in g.vertices]
        seen[src].add(0)
        states[src].append((0, 0.0))
        work = [(src, 0, 0.0)]
        limit = self.limit
        while work:
            u, code, val = work.pop()
            for head, ln, inc in adj[u]:
                nval = val + ln
                if nval <= limit:
                    ncode = code + inc
                    bucket = seen[head]
                    if ncode not in bucket:
                        bucket.add(ncode)
                        states[head].append((ncode, nval))
                        work.append((head, ncode, nval))
        self.states = states

    def decode(self, code: int) -> TimeVector:
        mask = (1 << self.shift) - 1
        mults = {}
        for eid, i in self.eidx.items():
            m = code >> (self.shift * i) & mask
            if m:
                mults[eid] = m
        return TimeVector.from_multiplicities(mults)

    def value_arrays(self) -> list[np.ndarray]:
        return [np.sort(np.array([val for _code, val in bucket], dtype=np.float64)) for bucket in self.states]


def enumerate_endpoints(g: MetricDigraph, T: float, epsilon: float = DEFAULT_EPSILON) -> frozenset[EndpointKey]:
    """All distinct (edge, arrival vector) endpoints at time T."""
    search = _ArrivalSearch(g, T, epsilon)
    keys = []
    for e in g.edges:
        cutoff = search.limit - e.length
        for code, val in search.states[g.vertex_index(e.tail)]:
            if val > cutoff:
                keys.append(EndpointKey(e.id, search.decode(code)))
    return frozenset(keys)


def endpoint_positions(g: MetricDigraph, T: float, epsilon: float = DEFAULT_EPSILON) -> list[tuple[str, float]]:
    """(edge id, offset from the edge's tail) for every endpoint, sorted."""
    search = _ArrivalSearch(g, T, epsilon)
    positions = []
    for e in g.edges:
        cutoff = search.limit - e.length
        for _code, val in search.states[g.vertex_index(e.tail)]:
            if val > cutoff:
                positions.append((e.id, T - val))
    positions.sort()
    return positions


def count_endpoints(g: MetricDigraph, T: float, epsilon: float = DEFAULT_EPSILON) -> int:
    """|enumerate_endpoints| without materializing the keys."""
    search = _ArrivalSearch(g, T, epsilon)
    total = 0
    for e in g.edges:
        cutoff = search.limit - e.length
        total += sum(1 for _code, val in search.states[g.vertex_index(e.tail)] if val > cutoff)
    return total


def count_endpoints_many(
    g: MetricDigraph, times: Sequence[float], epsilon: float = DEFAULT_EPSILON
) -> list[int]:
    """Endpoint counts at several query times from a single route search.

    One DFS runs to max(times); each query then reduces to counting, per
    edge, the tail arrivals inside the window (T + eps - length, T + eps],
    which is the same predicate the single-T path applies state by state.
    """
    if not times:
        return []
    for t in times:
        if not (t >= 0):
            raise ArgumentError("oracle needs T >= 0")
    search = _ArrivalSearch(g, max(times), epsilon)
    arrays = search.value_arrays()
    tails = [(g.vertex_index(e.tail), e.length) for e in g.edges]
    counts = []
    for t in times:
        window_hi = t + epsilon
        total = 0
        for tail, length in tails:
            vals = arrays[tail]
            hi = int(np.searchsorted(vals, window_hi, side="right"))
            lo = int(np.searchsorted(vals, window_hi - length, side="right"))
            total += hi - lo
        counts.append(total)
    return counts
