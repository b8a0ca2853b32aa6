"""Built-in example graphs.

Default lengths are square roots of distinct primes truncated to 12
decimals: printable, reproducible, and close enough to general position
that the audit finds no desk-scale collisions.
"""

from __future__ import annotations

from decimal import ROUND_DOWN, Decimal, localcontext
from typing import Optional, Sequence

from .errors import ArgumentError
from .graphs import MetricDigraph

# primes feeding the default surd lengths; the star generator walks this list
# from the front so bigger loops come first (cheapest order for the census)
_STAR_PRIMES = [53, 47, 43, 41, 37, 31, 29, 23, 19, 17, 13, 11, 7, 5, 3]
_PATH_PRIMES = [2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37]
_CHORD_PRIMES = [2, 3, 5, 7, 11]  # f1, f2, f3, t1, t2


def truncated_surd(prime: int) -> str:
    """sqrt(prime) truncated (not rounded) to 12 decimal places, as a string."""
    with localcontext() as ctx:
        ctx.prec = 40
        root = Decimal(prime).sqrt()
        return str(root.quantize(Decimal("1.000000000000"), rounding=ROUND_DOWN))


def _resolve_lengths(lengths: Optional[Sequence[str]], needed: int, primes: Sequence[int]) -> list[str]:
    if lengths is not None:
        got = [str(x) for x in lengths]
        if len(got) != needed:
            raise ArgumentError(f"expected {needed} lengths, got {len(got)}")
        return got
    if needed > len(primes):
        raise ArgumentError(f"at most {len(primes)} default lengths available")
    return [truncated_surd(p) for p in primes[:needed]]


def star_loops(k: int, lengths: Optional[Sequence[str]] = None) -> MetricDigraph:
    """k two-vertex loops through the source: s -> v_i -> s, both edges of
    loop i sharing length q_i.  The directed analogue of an undirected star."""
    if k < 1:
        raise ArgumentError("star-loops needs k >= 1")
    qs = _resolve_lengths(lengths, k, _STAR_PRIMES)
    vertices = ["s"] + [f"v{i}" for i in range(1, k + 1)]
    edges = []
    for i, q in enumerate(qs, start=1):
        edges.append((f"out{i}", "s", f"v{i}", q))
        edges.append((f"back{i}", f"v{i}", "s", q))
    return MetricDigraph(vertices, edges, "s")


def path_cycle(n: int, lengths: Optional[Sequence[str]] = None) -> MetricDigraph:
    """A single directed cycle of n vertices through the source: the smallest
    graphs with one elementary cycle and nontrivial chains."""
    if n < 1:
        raise ArgumentError("path-cycle needs n >= 1")
    ls = _resolve_lengths(lengths, n, _PATH_PRIMES)
    vertices = ["s"] + [f"u{i}" for i in range(1, n)]
    edges = []
    for i in range(n - 1):
        edges.append((f"e{i + 1}", vertices[i], vertices[i + 1], ls[i]))
    edges.append((f"e{n}", vertices[-1], "s", ls[-1]))
    return MetricDigraph(vertices, edges, "s")


def circle_chords(lengths: Optional[Sequence[str]] = None) -> MetricDigraph:
    """Directed circle A -> C -> B -> A with two chords A -> B and A -> C.

    Not one-way Sperner (C has two incoming non-back edges), but strongly
    connected; the go-to example beyond the class.  Lengths are
    (f1, f2, f3, t1, t2) for arcs f1: B->A, f2: C->B, f3: A->C and chords
    t1: A->B, t2: A->C.
    """
    f1, f2, f3, t1, t2 = _resolve_lengths(lengths, 5, _CHORD_PRIMES)
    vertices = ["A", "B", "C"]
    edges = [
        ("f3", "A", "C", f3),
        ("f2", "C", "B", f2),
        ("f1", "B", "A", f1),
        ("t1", "A", "B", t1),
        ("t2", "A", "C", t2),
    ]
    return MetricDigraph(vertices, edges, "A")


EXAMPLE_NAMES = ("star-loops", "path-cycle", "circle-chords")


def build_example(name: str, k: int = 3, n: int = 3, lengths: Optional[Sequence[str]] = None) -> MetricDigraph:
    """Dispatch by example name; ``k`` sizes star-loops, ``n`` sizes path-cycle."""
    if name == "star-loops":
        return star_loops(k, lengths)
    if name == "path-cycle":
        return path_cycle(n, lengths)
    if name == "circle-chords":
        return circle_chords(lengths)
    raise ArgumentError(f"unknown example {name!r}; choose from {', '.join(EXAMPLE_NAMES)}")
