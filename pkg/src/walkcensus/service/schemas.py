"""Request/response models for the HTTP service."""

from __future__ import annotations

from typing import Optional

from pydantic import BaseModel, ConfigDict, Field

from ..graphs import MetricDigraph


class EdgeModel(BaseModel):
    model_config = ConfigDict(populate_by_name=True)

    id: str
    tail: str = Field(alias="from")
    head: str = Field(alias="to")
    length: str | float


class GraphModel(BaseModel):
    vertices: list[str]
    source: str
    edges: list[EdgeModel]

    def to_graph(self) -> MetricDigraph:
        return MetricDigraph(
            self.vertices,
            [(e.id, e.tail, e.head, e.length) for e in self.edges],
            self.source,
        )

    @classmethod
    def from_graph(cls, g: MetricDigraph) -> "GraphModel":
        return cls.model_validate(g.to_dict())


class CycleModel(BaseModel):
    index: int
    edges: list[str]
    time: float
    time_vector: dict[str, int]


class ChainModel(BaseModel):
    vertex: str
    edges: list[str]
    time: float


class ValidateRequest(BaseModel):
    graph: GraphModel


class ValidateResponse(BaseModel):
    sperner: bool
    violation: Optional[str] = None
    tree_edges: list[str]
    back_edges: list[str]
    k: Optional[int] = None
    beta: Optional[int] = None
    cycles: Optional[list[CycleModel]] = None
    chains: Optional[list[ChainModel]] = None
    handshake_ok: bool
    edge_sum_ok: Optional[bool] = None


class CountRequest(BaseModel):
    graph: GraphModel
    time: float = Field(ge=0)
    oracle: bool = False
    oracle_only: bool = False
    epsilon: float = Field(default=1e-9, gt=0)


class CountResponse(BaseModel):
    exact: Optional[int] = None
    oracle: Optional[int] = None
    match: Optional[bool] = None


class JumpsRequest(BaseModel):
    graph: GraphModel
    time: float = Field(ge=0)
    epsilon: float = Field(default=1e-9, gt=0)


class JumpEventModel(BaseModel):
    time: float
    vertex: str
    cycles: list[int]
    jump: int
    time_vector: dict[str, int]
    running_total: int


class JumpsResponse(BaseModel):
    events: list[JumpEventModel]
    total: int


class AsymptoticsRequest(BaseModel):
    graph: GraphModel


class AsymptoticsResponse(BaseModel):
    beta: int
    coefficient: float


class SweepRequest(BaseModel):
    graph: GraphModel
    t_max: float = Field(gt=0)
    steps: int = Field(ge=2)
    oracle: bool = False
    epsilon: float = Field(default=1e-9, gt=0)


class SweepRowModel(BaseModel):
    t: float
    n_exact: int
    n_oracle: Optional[int] = None
    asymptotic: float
    ratio: float


class SweepResponse(BaseModel):
    beta: int
    coefficient: float
    rows: list[SweepRowModel]


class EndpointsRequest(BaseModel):
    graph: GraphModel
    time: float = Field(ge=0)
    epsilon: float = Field(default=1e-9, gt=0)


class PositionModel(BaseModel):
    edge: str
    offset: float


class EndpointsResponse(BaseModel):
    count: int
    positions: list[PositionModel]


class AuditRequest(BaseModel):
    graph: GraphModel
    horizon: float = Field(gt=0)
    epsilon: float = Field(default=1e-9, gt=0)


class CollisionModel(BaseModel):
    value_a: float
    value_b: float
    gap: float
    vector_a: dict[str, int]
    vector_b: dict[str, int]


class AuditResponse(BaseModel):
    warnings: list[CollisionModel]


class ExamplesRequest(BaseModel):
    name: str
    k: int = 3
    n: int = 3
    lengths: Optional[list[str]] = None


class ExamplesResponse(BaseModel):
    graph: GraphModel


class HealthResponse(BaseModel):
    status: str
