"""Directed metric graphs and the one-way Sperner class check.

A one-way Sperner graph is a strongly connected digraph whose edges split
into a spanning out-tree rooted at the source plus "back" edges that all
point into the source.  Every walk-counting operation in this package is
built on that structure.
"""

from __future__ import annotations

from dataclasses import dataclass
from decimal import Decimal, InvalidOperation
from typing import Iterable, Mapping, Optional, Sequence

from .errors import ClassError, StructureError


@dataclass(frozen=True)
class Edge:
    """One directed edge with a positive traversal time.

    ``length_text`` preserves the decimal string the edge was entered with;
    ``length`` is its 64-bit float value, used for ordering and thresholds
    only (identity questions are settled with integer multiplicity vectors,
    never with these floats).
    """

    id: str
    tail: str
    head: str
    length: float
    length_text: str


def _parse_length(raw: object, edge_id: str) -> tuple[float, str]:
    if isinstance(raw, bool):
        raise StructureError(f"edge {edge_id!r}: length must be a positive decimal")
    if isinstance(raw, (int, float)):
        text = repr(raw)
    elif isinstance(raw, Decimal):
        text = str(raw)
    elif isinstance(raw, str):
        text = raw.strip()
    else:
        raise StructureError(
            f"edge {edge_id!r}: length must be a decimal string, got {type(raw).__name__}"
        )
    try:
        dec = Decimal(text)
    except InvalidOperation as exc:
        raise StructureError(f"edge {edge_id!r}: length {text!r} is not a decimal") from exc
    if not dec.is_finite() or dec <= 0:
        raise StructureError(f"edge {edge_id!r}: length {text!r} is not positive")
    value = float(dec)
    if value <= 0.0 or value == float("inf"):
        raise StructureError(f"edge {edge_id!r}: length {text!r} is outside the usable float range")
    return value, text


class MetricDigraph:
    """Finite directed graph with positive edge lengths and a designated source.

    Vertices and edges keep their input order, which makes every derived
    iteration (cycles, chains, reports) deterministic.  Instances are
    immutable after construction and safe to share between threads.
    """

    __slots__ = ("_vertices", "_edges", "_source", "_vindex", "_eindex", "_out", "_in")

    def __init__(
        self,
        vertices: Sequence[str],
        edges: Iterable[tuple[str, str, str, object]],
        source: str,
    ) -> None:
        vs = list(vertices)
        if not vs:
            raise StructureError("graph needs at least one vertex")
        vindex: dict[str, int] = {}
        for v in vs:
            if not isinstance(v, str) or not v:
                raise StructureError(f"vertex id {v!r} must be a non-empty string")
            if v in vindex:
                raise StructureError(f"duplicate vertex id {v!r}")
            vindex[v] = len(vindex)
        if source not in vindex:
            raise StructureError(f"source {source!r} is not a vertex")

        built: list[Edge] = []
        eindex: dict[str, int] = {}
        out: dict[str, list[Edge]] = {v: [] for v in vs}
        incoming: dict[str, list[Edge]] = {v: [] for v in vs}
        for spec in edges:
            try:
                eid, tail, head, raw_len = spec
            except (TypeError, ValueError) as exc:
                raise StructureError(f"edge record {spec!r} must be (id, tail, head, length)") from exc
            if not isinstance(eid, str) or not eid:
                raise StructureError(f"edge id {eid!r} must be a non-empty string")
            if eid in eindex:
                raise StructureError(f"duplicate edge id {eid!r}")
            if tail not in vindex:
                raise StructureError(f"edge {eid!r}: unknown tail vertex {tail!r}")
            if head not in vindex:
                raise StructureError(f"edge {eid!r}: unknown head vertex {head!r}")
            length, text = _parse_length(raw_len, eid)
            e = Edge(eid, tail, head, length, text)
            eindex[eid] = len(built)
            built.append(e)
            out[tail].append(e)
            incoming[head].append(e)

        self._vertices = tuple(vs)
        self._edges = tuple(built)
        self._source = source
        self._vindex = vindex
        self._eindex = eindex
        self._out = {v: tuple(lst) for v, lst in out.items()}
        self._in = {v: tuple(lst) for v, lst in incoming.items()}
        self._check_weakly_connected()

    def _check_weakly_connected(self) -> None:
        if len(self._vertices) == 1:
            return
        adj: dict[str, set[str]] = {v: set() for v in self._vertices}
        for e in self._edges:
            adj[e.tail].add(e.head)
            adj[e.head].add(e.tail)
        seen = {self._source}
        stack = [self._source]
        while stack:
            u = stack.pop()
            for w in adj[u]:
                if w not in seen:
                    seen.add(w)
                    stack.append(w)
        if len(seen) != len(self._vertices):
            missing = next(v for v in self._vertices if v not in seen)
            raise StructureError(f"graph is not weakly connected: vertex {missing!r} is isolated from the source component")

    # -- read API ------------------------------------------------------

    @property
    def vertices(self) -> tuple[str, ...]:
        return self._vertices

    @property
    def edges(self) -> tuple[Edge, ...]:
        return self._edges

    @property
    def source(self) -> str:
        return self._source

    def vertex_index(self, v: str) -> int:
        try:
            return self._vindex[v]
        except KeyError:
            raise StructureError(f"unknown vertex {v!r}") from None

    def has_vertex(self, v: str) -> bool:
        return v in self._vindex

    def edge(self, edge_id: str) -> Edge:
        try:
            return self._edges[self._eindex[edge_id]]
        except KeyError:
            raise StructureError(f"unknown edge {edge_id!r}") from None

    def length(self, edge_id: str) -> float:
        return self.edge(edge_id).length

    def out_edges(self, v: str) -> tuple[Edge, ...]:
        self.vertex_index(v)
        return self._out[v]

    def in_edges(self, v: str) -> tuple[Edge, ...]:
        self.vertex_index(v)
        return self._in[v]

    def total_length(self) -> float:
        return sum(e.length for e in self._edges)

    # -- JSON wire format ----------------------------------------------

    @classmethod
    def from_dict(cls, data: Mapping) -> "MetricDigraph":
        """Build a graph from the JSON object schema used by the CLI and service."""
        if not isinstance(data, Mapping):
            raise StructureError("graph document must be a JSON object")
        for key in ("vertices", "source", "edges"):
            if key not in data:
                raise StructureError(f"graph document is missing {key!r}")
        raw_edges = data["edges"]
        if not isinstance(raw_edges, Sequence) or isinstance(raw_edges, (str, bytes)):
            raise StructureError("'edges' must be an array")
        edges = []
        for rec in raw_edges:
            if not isinstance(rec, Mapping):
                raise StructureError(f"edge record {rec!r} must be an object")
            for key in ("id", "from", "to", "length"):
                if key not in rec:
                    raise StructureError(f"edge record {dict(rec)!r} is missing {key!r}")
            edges.append((rec["id"], rec["from"], rec["to"], rec["length"]))
        return cls(data["vertices"], edges, data["source"])

    def to_dict(self) -> dict:
        return {
            "vertices": list(self._vertices),
            "source": self._source,
            "edges": [
                {"id": e.id, "from": e.tail, "to": e.head, "length": e.length_text}
                for e in self._edges
            ],
        }

    def __repr__(self) -> str:
        return f"MetricDigraph({len(self._vertices)} vertices, {len(self._edges)} edges, source={self._source!r})"


@dataclass(frozen=True)
class SpernerCertificate:
    """Result of the one-way Sperner class check.

    When ``is_sperner`` holds, ``tree_edges`` form the spanning out-tree from
    the source and ``back_edges`` are exactly the edges whose head is the
    source; together they partition the edge set.
    """

    is_sperner: bool
    tree_edges: frozenset[str]
    back_edges: frozenset[str]
    violation: Optional[str] = None


@dataclass(frozen=True)
class DegreePair:
    rho_in: int
    rho_out: int


def validate_sperner(g: MetricDigraph) -> SpernerCertificate:
    """Decide membership in the one-way Sperner class.

    Checks, in order: the non-back edges form a spanning out-tree from the
    source (at most one incoming non-back edge per vertex, all vertices
    reached), every vertex can keep walking (positive out-degree), and the
    graph is strongly connected.  The first failure is reported with a
    witness edge or vertex.
    """
    src = g.source
    back = frozenset(e.id for e in g.edges if e.head == src)
    tree = frozenset(e.id for e in g.edges if e.head != src)

    def fail(reason: str) -> SpernerCertificate:
        return SpernerCertificate(False, tree, back, reason)

    parent: dict[str, Edge] = {}
    for e in g.edges:
        if e.head == src:
            continue
        if e.head in parent:
            return fail(
                f"vertex {e.head!r} has a second incoming non-back edge {e.id!r}; no out-tree partition exists"
            )
        parent[e.head] = e

    # walk the candidate tree from the source
    children: dict[str, list[str]] = {v: [] for v in g.vertices}
    for v, e in parent.items():
        children[e.tail].append(v)
    reached = {src}
    stack = [src]
    while stack:
        u = stack.pop()
        for w in children[u]:
            if w not in reached:
                reached.add(w)
                stack.append(w)
    if len(reached) != len(g.vertices):
        missing = next(v for v in g.vertices if v not in reached)
        return fail(f"vertex {missing!r} is not reached by the out-tree from the source")

    for v in g.vertices:
        if not g.out_edges(v):
            return fail(f"vertex {v!r} has no outgoing edge, so the walk halts there")

    # forward reachability holds via the tree; check that everything reaches
    # the source to settle strong connectivity
    rev_reached = {src}
    stack = [src]
    while stack:
        u = stack.pop()
        for e in g.in_edges(u):
            if e.tail not in rev_reached:
                rev_reached.add(e.tail)
                stack.append(e.tail)
    if len(rev_reached) != len(g.vertices):
        missing = next(v for v in g.vertices if v not in rev_reached)
        return fail(f"vertex {missing!r} cannot reach the source; graph is not strongly connected")

    return SpernerCertificate(True, tree, back, None)


def require_sperner(cert: SpernerCertificate) -> None:
    if not cert.is_sperner:
        raise ClassError(f"operation requires a one-way Sperner graph: {cert.violation}")


def simple_chain(g: MetricDigraph, cert: SpernerCertificate, v: str) -> list[str]:
    """Edge ids of the unique tree route from the source to ``v`` (empty for the source)."""
    require_sperner(cert)
    g.vertex_index(v)
    parent = {g.edge(eid).head: g.edge(eid) for eid in cert.tree_edges}
    path: list[str] = []
    cur = v
    while cur != g.source:
        e = parent[cur]
        path.append(e.id)
        cur = e.tail
    path.reverse()
    return path


def degrees(g: MetricDigraph, edge_subset: Iterable[str], v: str) -> DegreePair:
    """In/out degree of ``v`` counted over the given subset of edge ids."""
    g.vertex_index(v)
    rho_in = 0
    rho_out = 0
    for eid in set(edge_subset):
        e = g.edge(eid)
        if e.head == v:
            rho_in += 1
        if e.tail == v:
            rho_out += 1
    return DegreePair(rho_in=rho_in, rho_out=rho_out)


def back_edge_order(g: MetricDigraph, cert: SpernerCertificate) -> list[str]:
    """Back edges in graph input order; position i hosts elementary cycle i+1."""
    return [e.id for e in g.edges if e.id in cert.back_edges]


def formula_subgraph(
    g: MetricDigraph, cert: SpernerCertificate, v: str, cycle_indices: Iterable[int]
) -> frozenset[str]:
    """Union of the chain to ``v`` with the elementary cycles named by 1-based indices."""
    require_sperner(cert)
    backs = back_edge_order(g, cert)
    chosen = set()
    for i in cycle_indices:
        if not isinstance(i, int) or not (1 <= i <= len(backs)):
            raise IndexError(f"cycle index {i!r} out of range 1..{len(backs)}")
        chosen.add(i)
    edge_ids = set(simple_chain(g, cert, v))
    for i in sorted(chosen):
        b = backs[i - 1]
        edge_ids.update(simple_chain(g, cert, g.edge(b).tail))
        edge_ids.add(b)
    return frozenset(edge_ids)
