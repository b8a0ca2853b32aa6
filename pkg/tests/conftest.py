"""Shared graph builders and independent reference implementations.

The reference functions here are deliberately naive (exhaustive loops,
explicit route search by definition) so they can serve as oracles for the
package's cleverer code paths.
"""

from __future__ import annotations

import itertools
import math
import random

import pytest

from walkcensus import MetricDigraph, star_loops, truncated_surd

# primes between 101 and 199 give surd lengths in a tight band (~10..14.1),
# which keeps random-corpus search spaces moderate
_POOL_PRIMES = [
    101, 103, 107, 109, 113, 127, 131, 137, 139, 149,
    151, 157, 163, 167, 173, 179, 181, 191, 193, 197,
]


def two_self_loops(a: str = "1.0", b: str = "1.4142135623730951") -> MetricDigraph:
    return MetricDigraph(["s"], [("a", "s", "s", a), ("b", "s", "s", b)], "s")


def one_cycle_path() -> MetricDigraph:
    return MetricDigraph(["s", "v"], [("sv", "s", "v", "1.5"), ("vs", "v", "s", "2.25")], "s")


def single_self_loop(length: str = "2.5") -> MetricDigraph:
    return MetricDigraph(["s"], [("loop", "s", "s", length)], "s")


def random_sperner_graph(rng: random.Random, max_vertices: int = 8, n_back: int | None = None) -> MetricDigraph:
    """Random out-tree plus back edges, guaranteed in-class.

    Every tree leaf gets a back edge (otherwise it could not reach the
    source), so trees are rejection-sampled until their leaf count fits the
    requested number of back edges.
    """
    n = rng.randint(3, max_vertices)
    target_back = n_back if n_back is not None else rng.randint(1, 4)
    while True:
        parents = [rng.randrange(i) for i in range(1, n)]
        children: list[list[int]] = [[] for _ in range(n)]
        for child, parent in enumerate(parents, start=1):
            children[parent].append(child)
        leaves = [i for i in range(1, n) if not children[i]]
        if leaves and len(leaves) <= target_back:
            break
    tails = leaves + [rng.randrange(n) for _ in range(target_back - len(leaves))]

    names = ["s"] + [f"w{i}" for i in range(1, n)]
    surds = [truncated_surd(p) for p in rng.sample(_POOL_PRIMES, n - 1 + len(tails))]
    edges = []
    for child, parent in enumerate(parents, start=1):
        edges.append((f"t{child}", names[parent], names[child], surds[child - 1]))
    for j, tail in enumerate(tails):
        edges.append((f"b{j + 1}", names[tail], "s", surds[n - 1 + j]))
    return MetricDigraph(names, edges, "s")


def random_weak_digraph(rng: random.Random, max_vertices: int = 8) -> MetricDigraph:
    """Random weakly connected digraph (no class guarantees); for degree identities."""
    n = rng.randint(1, max_vertices)
    names = [f"x{i}" for i in range(n)]
    edges = []
    for i in range(1, n):
        other = rng.randrange(i)
        pair = (names[other], names[i]) if rng.random() < 0.5 else (names[i], names[other])
        edges.append((f"c{i}", pair[0], pair[1], f"{rng.randint(1, 9)}.{rng.randint(0, 99):02d}"))
    for j in range(rng.randint(0, 6)):
        u, v = rng.choice(names), rng.choice(names)
        edges.append((f"r{j}", u, v, f"{rng.randint(1, 9)}.{rng.randint(0, 99):02d}"))
    if n == 1 and not edges:
        edges.append(("r0", names[0], names[0], "1.0"))
    return MetricDigraph(names, edges, names[0])


def sperner_corpus() -> list[MetricDigraph]:
    """The acceptance corpus: star-loops 1..5 plus 15 seeded random graphs."""
    rng = random.Random(20260810)
    graphs = [star_loops(k) for k in range(1, 6)]
    for i in range(15):
        graphs.append(random_sperner_graph(rng, n_back=i % 4 + 1))
    return graphs


@pytest.fixture(scope="session")
def corpus() -> list[MetricDigraph]:
    return sperner_corpus()


# --- reference implementations --------------------------------------------


def brute_count(coeffs: list[float], threshold: float, lower_bounds: list[int]) -> int:
    """Exhaustive enumeration over a bounding box; the counting oracle."""
    if not coeffs:
        return 1 if threshold >= 0 else 0
    ranges = []
    for a, lb in zip(coeffs, lower_bounds):
        top = int(threshold // a) + 1 if threshold >= 0 else lb
        ranges.append(range(lb, max(lb, top) + 1))
    total = 0
    for tup in itertools.product(*ranges):
        if sum(n * a for n, a in zip(tup, coeffs)) <= threshold:
            total += 1
    return total


def brute_route_census(g: MetricDigraph, T: float) -> int:
    """Route search straight from the definition, kept independent of the
    packaged oracle: plain dict-of-multiplicities states, no packing."""
    out = {v: [] for v in g.vertices}
    for e in g.edges:
        out[e.tail].append(e)
    seen: dict[str, set] = {v: set() for v in g.vertices}
    start = frozenset()
    seen[g.source].add(start)
    work = [(g.source, {}, 0.0)]
    n = 0
    while work:
        u, mults, val = work.pop()
        for e in out[u]:
            nval = val + e.length
            if nval <= T + 1e-9:
                nm = dict(mults)
                nm[e.id] = nm.get(e.id, 0) + 1
                key = frozenset(nm.items())
                if key not in seen[e.head]:
                    seen[e.head].add(key)
                    work.append((e.head, nm, nval))
            else:
                n += 1
    return n


def simple_source_avoiding_routes(g: MetricDigraph, target: str) -> list[tuple[str, ...]]:
    """All simple routes source -> target that never traverse an edge into the source."""
    routes = []

    def walk(u: str, visited: frozenset[str], path: tuple[str, ...]) -> None:
        if u == target and path:
            routes.append(path)
            return
        for e in g.out_edges(u):
            if e.head == g.source or e.head in visited:
                continue
            walk(e.head, visited | {e.head}, path + (e.id,))

    if target == g.source:
        return [()]
    walk(g.source, frozenset({g.source}), ())
    return routes


def brute_sperner_check(g: MetricDigraph) -> bool:
    """Class membership by definition: strongly connected, a unique
    source-avoiding simple route to every vertex, and every non-back edge is
    the final edge of the route to its head (rules out stray edges such as
    self-loops away from the source)."""
    reach = {g.source}
    work = [g.source]
    while work:
        u = work.pop()
        for e in g.out_edges(u):
            if e.head not in reach:
                reach.add(e.head)
                work.append(e.head)
    if len(reach) != len(g.vertices):
        return False
    back_reach = {g.source}
    work = [g.source]
    while work:
        u = work.pop()
        for e in g.in_edges(u):
            if e.tail not in back_reach:
                back_reach.add(e.tail)
                work.append(e.tail)
    if len(back_reach) != len(g.vertices):
        return False
    if any(not g.out_edges(v) for v in g.vertices):
        return False

    route_to: dict[str, tuple[str, ...]] = {}
    for v in g.vertices:
        routes = simple_source_avoiding_routes(g, v)
        if v == g.source:
            continue
        if len(routes) != 1:
            return False
        route_to[v] = routes[0]
    for e in g.edges:
        if e.head == g.source:
            continue
        if route_to[e.head][-1] != e.id:
            return False
    return True
