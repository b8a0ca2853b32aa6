"""FastAPI application wrapping the census library.

Error mapping: malformed graphs or bad arguments come back as 422, requests
that are well-formed but semantically impossible (non-Sperner graph where
the class is required, undefined walk) as 409.  The CLI translates those
into its exit-code contract.
"""

from __future__ import annotations

from fastapi import FastAPI, Request
from fastapi.responses import JSONResponse

from .. import census, generators, oracle
from ..errors import ArgumentError, ClassError, CountRangeError, ModelError, StructureError
from ..graphs import MetricDigraph, validate_sperner
from ..routes import build_cycle_basis, general_position_audit
from . import schemas


def create_app() -> FastAPI:
    app = FastAPI(
        title="walkcensus",
        description="Endpoint census for random walks on directed metric graphs.",
        version="0.1.0",
    )

    @app.exception_handler(StructureError)
    @app.exception_handler(ArgumentError)
    async def _bad_input(request: Request, exc: Exception) -> JSONResponse:
        return JSONResponse(status_code=422, content={"detail": str(exc)})

    @app.exception_handler(ClassError)
    @app.exception_handler(ModelError)
    @app.exception_handler(CountRangeError)
    async def _semantic(request: Request, exc: Exception) -> JSONResponse:
        return JSONResponse(status_code=409, content={"detail": str(exc)})

    @app.get("/api/health", response_model=schemas.HealthResponse)
    def health() -> schemas.HealthResponse:
        return schemas.HealthResponse(status="ok")

    @app.post("/api/validate", response_model=schemas.ValidateResponse)
    def validate(req: schemas.ValidateRequest) -> schemas.ValidateResponse:
        g = req.graph.to_graph()
        cert = validate_sperner(g)
        handshake_ok = census.handshake_sum(g) == 0
        tree = sorted(cert.tree_edges)
        back = sorted(cert.back_edges)
        if not cert.is_sperner:
            return schemas.ValidateResponse(
                sperner=False,
                violation=cert.violation,
                tree_edges=tree,
                back_edges=back,
                handshake_ok=handshake_ok,
            )
        basis = build_cycle_basis(g, cert)
        _, edge_sum_ok = census.check_identities(g, cert, basis)
        return schemas.ValidateResponse(
            sperner=True,
            tree_edges=tree,
            back_edges=back,
            k=basis.beta,
            beta=basis.beta,
            cycles=[
                schemas.CycleModel(
                    index=c.index,
                    edges=list(c.edge_ids),
                    time=c.time,
                    time_vector=c.time_vector.as_dict(),
                )
                for c in basis.cycles
            ],
            chains=[
                schemas.ChainModel(vertex=v, edges=list(basis.chains[v].edge_ids), time=basis.chains[v].time)
                for v in g.vertices
            ],
            handshake_ok=handshake_ok,
            edge_sum_ok=edge_sum_ok,
        )

    @app.post("/api/count", response_model=schemas.CountResponse)
    def count_endpoint(req: schemas.CountRequest) -> schemas.CountResponse:
        g = req.graph.to_graph()
        if req.oracle_only:
            return schemas.CountResponse(oracle=oracle.count_endpoints(g, req.time, req.epsilon))
        cert = validate_sperner(g)
        if not cert.is_sperner:
            raise ClassError(f"graph is not one-way Sperner: {cert.violation}")
        basis = build_cycle_basis(g, cert)
        exact = census.exact_count(g, cert, basis, req.time, req.epsilon)
        if not req.oracle:
            return schemas.CountResponse(exact=exact)
        observed = oracle.count_endpoints(g, req.time, req.epsilon)
        return schemas.CountResponse(exact=exact, oracle=observed, match=exact == observed)

    @app.post("/api/jumps", response_model=schemas.JumpsResponse)
    def jumps(req: schemas.JumpsRequest) -> schemas.JumpsResponse:
        g = req.graph.to_graph()
        cert = validate_sperner(g)
        if not cert.is_sperner:
            raise ClassError(f"graph is not one-way Sperner: {cert.violation}")
        basis = build_cycle_basis(g, cert)
        events = census.jump_stream(g, cert, basis, req.time, req.epsilon)
        rows = []
        running = 0
        for ev in events:
            running += ev.jump
            rows.append(
                schemas.JumpEventModel(
                    time=ev.time_value,
                    vertex=ev.vertex,
                    cycles=sorted(ev.cycle_set),
                    jump=ev.jump,
                    time_vector=ev.time_vector.as_dict(),
                    running_total=running,
                )
            )
        return schemas.JumpsResponse(events=rows, total=running)

    @app.post("/api/asymptotics", response_model=schemas.AsymptoticsResponse)
    def asymptotics(req: schemas.AsymptoticsRequest) -> schemas.AsymptoticsResponse:
        g = req.graph.to_graph()
        cert = validate_sperner(g)
        if not cert.is_sperner:
            raise ClassError(f"graph is not one-way Sperner: {cert.violation}")
        basis = build_cycle_basis(g, cert)
        beta, coeff = census.asymptotic_coefficient(g, cert, basis)
        return schemas.AsymptoticsResponse(beta=beta, coefficient=coeff)

    @app.post("/api/sweep", response_model=schemas.SweepResponse)
    def sweep(req: schemas.SweepRequest) -> schemas.SweepResponse:
        g = req.graph.to_graph()
        cert = validate_sperner(g)
        if not cert.is_sperner:
            raise ClassError(f"graph is not one-way Sperner: {cert.violation}")
        basis = build_cycle_basis(g, cert)
        beta, coeff = census.asymptotic_coefficient(g, cert, basis)
        ts = [k * req.t_max / req.steps for k in range(1, req.steps + 1)]
        oracle_counts = oracle.count_endpoints_many(g, ts, req.epsilon) if req.oracle else None
        rows = []
        for i, t in enumerate(ts):
            n_exact = census.exact_count(g, cert, basis, t, req.epsilon)
            asymptotic = coeff * t ** (beta - 1)
            rows.append(
                schemas.SweepRowModel(
                    t=t,
                    n_exact=n_exact,
                    n_oracle=None if oracle_counts is None else oracle_counts[i],
                    asymptotic=asymptotic,
                    ratio=n_exact / asymptotic,
                )
            )
        return schemas.SweepResponse(beta=beta, coefficient=coeff, rows=rows)

    @app.post("/api/endpoints", response_model=schemas.EndpointsResponse)
    def endpoints(req: schemas.EndpointsRequest) -> schemas.EndpointsResponse:
        g = req.graph.to_graph()
        positions = oracle.endpoint_positions(g, req.time, req.epsilon)
        return schemas.EndpointsResponse(
            count=len(positions),
            positions=[schemas.PositionModel(edge=e, offset=off) for e, off in positions],
        )

    @app.post("/api/audit", response_model=schemas.AuditResponse)
    def audit(req: schemas.AuditRequest) -> schemas.AuditResponse:
        g = req.graph.to_graph()
        cert = validate_sperner(g)
        if not cert.is_sperner:
            raise ClassError(f"graph is not one-way Sperner: {cert.violation}")
        basis = build_cycle_basis(g, cert)
        warnings = general_position_audit(g, basis, req.horizon, req.epsilon)
        return schemas.AuditResponse(
            warnings=[
                schemas.CollisionModel(
                    value_a=w.value_a,
                    value_b=w.value_b,
                    gap=w.gap,
                    vector_a=w.vector_a.as_dict(),
                    vector_b=w.vector_b.as_dict(),
                )
                for w in warnings
            ]
        )

    @app.post("/api/examples", response_model=schemas.ExamplesResponse)
    def examples(req: schemas.ExamplesRequest) -> schemas.ExamplesResponse:
        g = generators.build_example(req.name, k=req.k, n=req.n, lengths=req.lengths)
        return schemas.ExamplesResponse(graph=schemas.GraphModel.from_graph(g))

    return app


app = create_app()
