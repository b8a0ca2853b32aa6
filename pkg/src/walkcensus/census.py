"""Endpoint census for one-way Sperner graphs.

The number of distinct points a walker can occupy at time T is a signed sum
over (vertex, cycle subset) pairs: each pair contributes its jump
coefficient (out-degree of the vertex minus its in-degree in the chain-plus-
cycles subgraph) times the number of natural solutions of the corresponding
route-time inequality.  ``exact_count`` evaluates that sum directly;
``jump_stream`` materializes the individual discontinuities instead, which
costs memory proportional to N(T) and is meant for plots and audits.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Iterator, Optional

from .errors import ArgumentError
from .graphs import MetricDigraph, SpernerCertificate, degrees, formula_subgraph, require_sperner
from .lattice import DEFAULT_EPSILON, CountingProblem, EpsilonGuard, count
from .routes import CycleBasis, TimeVector, edge_sum_identity_holds, evaluate


@dataclass(frozen=True)
class JumpEvent:
    """One discontinuity of N: at ``time_value`` the count changes by ``jump``."""

    time_vector: TimeVector
    time_value: float
    jump: int
    vertex: str
    cycle_set: frozenset[int]


@dataclass(frozen=True)
class CensusReport:
    T: float
    n_exact: int
    beta: int
    leading_coefficient: float
    handshake_ok: bool
    edge_sum_ok: bool


def _terms(
    g: MetricDigraph,
    cert: SpernerCertificate,
    basis: CycleBasis,
    T: float,
    guard: EpsilonGuard,
) -> Iterator[tuple[str, tuple[int, ...], int, float]]:
    """Yield (vertex, cycle subset, jump coefficient, chain time) for subsets
    whose minimal route time fits under T.  Subsets are grown depth-first;
    growing a subset only raises its minimal time, so pruning is exact."""
    k = basis.beta
    cycle_times = [c.time for c in basis.cycles]
    for v in g.vertices:
        chain_time = basis.chains[v].time
        rho_out = len(g.out_edges(v))
        if not guard.le(chain_time, T):
            continue

        def grow(next_pos: int, chosen: tuple[int, ...], min_time: float) -> Iterator:
            sub = formula_subgraph(g, cert, v, chosen)
            coeff = rho_out - degrees(g, sub, v).rho_in
            if coeff:
                yield v, chosen, coeff, chain_time
            for pos in range(next_pos, k):
                nt = min_time + cycle_times[pos]
                if guard.le(nt, T):
                    yield from grow(pos + 1, chosen + (pos + 1,), nt)

        yield from grow(0, (), chain_time)


def exact_count(
    g: MetricDigraph,
    cert: SpernerCertificate,
    basis: CycleBasis,
    T: float,
    epsilon: float = DEFAULT_EPSILON,
    guard: Optional[EpsilonGuard] = None,
) -> int:
    """N(T): how many distinct points of the graph the walker can occupy at time T."""
    require_sperner(cert)
    if math.isnan(T):
        raise ArgumentError("T must be a number")
    if T < 0:
        return 0
    if guard is None:
        guard = EpsilonGuard(epsilon)
    total = 0
    for _v, chosen, coeff, chain_time in _terms(g, cert, basis, T, guard):
        if chosen:
            problem = CountingProblem.natural([basis.cycle(i).time for i in chosen], T - chain_time)
            inner = count(problem, guard=guard)
        else:
            inner = 1  # chain time already fits under T
        total += coeff * inner
    return total


def jump_stream(
    g: MetricDigraph,
    cert: SpernerCertificate,
    basis: CycleBasis,
    T: float,
    epsilon: float = DEFAULT_EPSILON,
) -> list[JumpEvent]:
    """Every discontinuity of N up to time T, sorted by time.

    The running sum of jumps reproduces ``exact_count`` at every prefix
    time.  Event count grows like N(T); keep T small.
    """
    require_sperner(cert)
    if not (T >= 0):
        raise ArgumentError("jump stream needs T >= 0")
    guard = EpsilonGuard(epsilon)
    events: list[JumpEvent] = []
    for v, chosen, coeff, _chain_time in _terms(g, cert, basis, T, guard):
        chain = basis.chains[v]
        cycle_set = frozenset(chosen)

        def emit(pos: int, tv: TimeVector, val: float) -> None:
            if pos == len(chosen):
                events.append(JumpEvent(tv, evaluate(tv, g), coeff, v, cycle_set))
                return
            c = basis.cycle(chosen[pos])
            n = 1
            cur_tv = tv.plus(c.time_vector)
            while guard.le(val + n * c.time, T):
                emit(pos + 1, cur_tv, val + n * c.time)
                n += 1
                cur_tv = cur_tv.plus(c.time_vector)

        emit(0, chain.time_vector, chain.time)
    events.sort(key=lambda e: (e.time_value, g.vertex_index(e.vertex), tuple(sorted(e.cycle_set)), e.time_vector.items))
    return events


def asymptotic_coefficient(
    g: MetricDigraph, cert: SpernerCertificate, basis: CycleBasis
) -> tuple[int, float]:
    """(beta, A) with N(T) ~ A * T^(beta-1): A = sum of edge lengths over
    ((beta-1)! * product of elementary cycle times)."""
    require_sperner(cert)
    beta = basis.beta
    denom = math.factorial(beta - 1)
    for c in basis.cycles:
        denom *= c.time
    return beta, g.total_length() / denom


def handshake_sum(g: MetricDigraph) -> int:
    """Sum over vertices of (out-degree - in-degree); zero for every digraph."""
    total = 0
    for v in g.vertices:
        d = degrees(g, [e.id for e in g.edges], v)
        total += d.rho_out - d.rho_in
    return total


def check_identities(
    g: MetricDigraph, cert: SpernerCertificate, basis: CycleBasis
) -> tuple[bool, bool]:
    """(handshake holds, edge-sum identity holds), both with exact integers."""
    handshake_ok = handshake_sum(g) == 0
    edge_sum_ok = cert.is_sperner and edge_sum_identity_holds(g, basis)
    return handshake_ok, edge_sum_ok


def census_report(
    g: MetricDigraph,
    cert: SpernerCertificate,
    basis: CycleBasis,
    T: float,
    epsilon: float = DEFAULT_EPSILON,
) -> CensusReport:
    beta, coeff = asymptotic_coefficient(g, cert, basis)
    handshake_ok, edge_sum_ok = check_identities(g, cert, basis)
    return CensusReport(
        T=T,
        n_exact=exact_count(g, cert, basis, T, epsilon),
        beta=beta,
        leading_coefficient=coeff,
        handshake_ok=handshake_ok,
        edge_sum_ok=edge_sum_ok,
    )
