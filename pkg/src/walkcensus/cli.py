"""Command-line front end.

The CLI is a thin client of the HTTP service: every subcommand posts to the
API and formats the response.  By default it talks to an in-process
instance of the app, so no server needs to be running; pass --server to
target a live deployment instead.

Exit codes: 0 success (and oracle match), 1 semantic failure (out-of-class
graph, count mismatch), 2 usage, I/O or parse failure.
"""

from __future__ import annotations

import json
import sys
from typing import Optional

import click
import httpx


def _fmt(x: float) -> str:
    """Reals with 12 significant digits; integral floats still show as reals."""
    return f"{x:.12g}"


def _make_client(server: Optional[str]) -> httpx.Client:
    if server:
        return httpx.Client(base_url=server, timeout=300.0)
    import warnings

    with warnings.catch_warnings():
        # starlette's sync ASGI bridge warns about its httpx pin; harmless here
        warnings.simplefilter("ignore", DeprecationWarning)
        from fastapi.testclient import TestClient

    from .service.app import create_app

    return TestClient(create_app())


def _load_graph_doc(path: str) -> dict:
    try:
        with open(path, "r", encoding="utf-8") as fh:
            doc = json.load(fh)
    except OSError as exc:
        click.echo(f"error: cannot read {path}: {exc}", err=True)
        raise SystemExit(2)
    except json.JSONDecodeError as exc:
        click.echo(f"error: {path}: invalid JSON at line {exc.lineno} column {exc.colno}: {exc.msg}", err=True)
        raise SystemExit(2)
    if not isinstance(doc, dict):
        click.echo(f"error: {path}: graph document must be a JSON object", err=True)
        raise SystemExit(2)
    return doc


def _detail(payload: object) -> str:
    if isinstance(payload, dict) and "detail" in payload:
        detail = payload["detail"]
        if isinstance(detail, str):
            return detail
        if isinstance(detail, list):  # pydantic validation errors
            parts = []
            for item in detail:
                loc = ".".join(str(p) for p in item.get("loc", []))
                parts.append(f"{loc}: {item.get('msg', 'invalid')}")
            return "; ".join(parts)
    return str(payload)


def _post(client: httpx.Client, path: str, payload: dict) -> dict:
    try:
        resp = client.post(path, json=payload)
    except httpx.HTTPError as exc:
        click.echo(f"error: request failed: {exc}", err=True)
        raise SystemExit(2)
    if resp.status_code == 200:
        return resp.json()
    try:
        body = resp.json()
    except ValueError:
        body = resp.text
    msg = _detail(body)
    click.echo(f"error: {msg}", err=True)
    raise SystemExit(1 if resp.status_code == 409 else 2)


def _nonnegative(ctx: click.Context, param: click.Parameter, value: Optional[float]) -> Optional[float]:
    if value is not None and value < 0:
        raise click.UsageError(f"--{param.name} must be >= 0")
    return value


def _positive(ctx: click.Context, param: click.Parameter, value: Optional[float]) -> Optional[float]:
    if value is not None and value <= 0:
        raise click.UsageError(f"--{param.name} must be > 0")
    return value


GRAPH_FILE = click.Path(exists=True, dir_okay=False)


@click.group()
@click.option("--server", default=None, metavar="URL", help="Base URL of a running service; default is in-process.")
@click.pass_context
def main(ctx: click.Context, server: Optional[str]) -> None:
    """Endpoint census for random walks on directed metric graphs."""
    ctx.obj = server


@main.command()
@click.argument("graph_file", type=GRAPH_FILE)
@click.pass_obj
def validate(server: Optional[str], graph_file: str) -> None:
    """Class check: report the Sperner partition, cycles, chains and identities."""
    doc = _load_graph_doc(graph_file)
    with _make_client(server) as client:
        body = _post(client, "/api/validate", {"graph": doc})
    click.echo(f"sperner: {'true' if body['sperner'] else 'false'}")
    if not body["sperner"]:
        click.echo(f"violation: {body['violation']}")
        click.echo(f"handshake: {'ok' if body['handshake_ok'] else 'FAIL'}")
        raise SystemExit(1)
    click.echo(f"k: {body['k']}")
    click.echo(f"beta: {body['beta']}")
    for cyc in body["cycles"]:
        click.echo(f"cycle {cyc['index']}: {','.join(cyc['edges'])} time={_fmt(cyc['time'])}")
    for chain in body["chains"]:
        edges = ",".join(chain["edges"]) if chain["edges"] else "-"
        click.echo(f"chain {chain['vertex']}: {edges} time={_fmt(chain['time'])}")
    click.echo(f"handshake: {'ok' if body['handshake_ok'] else 'FAIL'}")
    click.echo(f"edge-sum: {'ok' if body['edge_sum_ok'] else 'FAIL'}")
    if not (body["handshake_ok"] and body["edge_sum_ok"]):
        raise SystemExit(1)


@main.command()
@click.argument("graph_file", type=GRAPH_FILE)
@click.option("--time", "time_", type=float, required=True, callback=_nonnegative, help="Query time T.")
@click.option("--oracle", is_flag=True, help="Also run the brute-force oracle and compare.")
@click.option("--oracle-only", is_flag=True, help="Skip the formula; brute-force count only (works off-class).")
@click.option("--epsilon", type=float, default=1e-9, show_default=True, callback=_positive, help="Threshold guard.")
@click.pass_obj
def count(server: Optional[str], graph_file: str, time_: float, oracle: bool, oracle_only: bool, epsilon: float) -> None:
    """N(T): number of occupiable points at time T."""
    doc = _load_graph_doc(graph_file)
    payload = {"graph": doc, "time": time_, "oracle": oracle, "oracle_only": oracle_only, "epsilon": epsilon}
    with _make_client(server) as client:
        body = _post(client, "/api/count", payload)
    if oracle_only:
        click.echo(f"oracle={body['oracle']}")
        return
    if not oracle:
        click.echo(f"exact={body['exact']}")
        return
    verdict = "MATCH" if body["match"] else "MISMATCH"
    click.echo(f"exact={body['exact']} oracle={body['oracle']} {verdict}")
    if not body["match"]:
        raise SystemExit(1)


@main.command()
@click.argument("graph_file", type=GRAPH_FILE)
@click.option("--time", "time_", type=float, required=True, callback=_nonnegative, help="Horizon T.")
@click.option("--epsilon", type=float, default=1e-9, show_default=True, callback=_positive)
@click.pass_obj
def jumps(server: Optional[str], graph_file: str, time_: float, epsilon: float) -> None:
    """Table of the discontinuities of N up to time T."""
    doc = _load_graph_doc(graph_file)
    with _make_client(server) as client:
        body = _post(client, "/api/jumps", {"graph": doc, "time": time_, "epsilon": epsilon})
    click.echo("time vertex cycles jump total")
    for ev in body["events"]:
        cycles = ",".join(str(i) for i in ev["cycles"]) if ev["cycles"] else "-"
        click.echo(f"{_fmt(ev['time'])} {ev['vertex']} {cycles} {ev['jump']:+d} {ev['running_total']}")
    click.echo(f"n_exact: {body['total']}")


@main.command()
@click.argument("graph_file", type=GRAPH_FILE)
@click.pass_obj
def asympt(server: Optional[str], graph_file: str) -> None:
    """Growth degree and leading coefficient: N(T) ~ coefficient * T^(beta-1)."""
    doc = _load_graph_doc(graph_file)
    with _make_client(server) as client:
        body = _post(client, "/api/asymptotics", {"graph": doc})
    click.echo(f"beta={body['beta']}")
    click.echo(f"coefficient={_fmt(body['coefficient'])}")


@main.command()
@click.argument("graph_file", type=GRAPH_FILE)
@click.option("--t-max", type=float, required=True, callback=_positive, help="Largest T in the sweep.")
@click.option("--steps", type=int, required=True, help="Number of rows (T = k*t_max/steps).")
@click.option("--out", "out_path", type=click.Path(dir_okay=False, writable=False), required=True, help="CSV output path.")
@click.option("--oracle", is_flag=True, help="Fill the N_oracle column via the brute-force search.")
@click.option("--epsilon", type=float, default=1e-9, show_default=True, callback=_positive)
@click.pass_obj
def sweep(server: Optional[str], graph_file: str, t_max: float, steps: int, out_path: str, oracle: bool, epsilon: float) -> None:
    """Write a CSV of N(T) against the asymptotic prediction over a T grid."""
    if steps < 2:
        raise click.UsageError("--steps must be >= 2")
    doc = _load_graph_doc(graph_file)
    payload = {"graph": doc, "t_max": t_max, "steps": steps, "oracle": oracle, "epsilon": epsilon}
    with _make_client(server) as client:
        body = _post(client, "/api/sweep", payload)
    lines = ["T,N_exact,N_oracle,asymptotic,ratio"]
    for row in body["rows"]:
        n_oracle = "" if row["n_oracle"] is None else str(row["n_oracle"])
        lines.append(
            f"{_fmt(row['t'])},{row['n_exact']},{n_oracle},{_fmt(row['asymptotic'])},{_fmt(row['ratio'])}"
        )
    try:
        with open(out_path, "w", encoding="utf-8", newline="") as fh:
            fh.write("\n".join(lines) + "\n")
    except OSError as exc:
        click.echo(f"error: cannot write {out_path}: {exc}", err=True)
        raise SystemExit(2)
    click.echo(f"wrote {out_path} ({len(body['rows'])} rows)")


@main.command()
@click.argument("name")
@click.option("--k", type=int, default=3, show_default=True, help="Loop count for star-loops.")
@click.option("--n", type=int, default=3, show_default=True, help="Vertex count for path-cycle.")
@click.option("--lengths", default=None, help="Comma-separated decimal lengths (defaults: truncated surds).")
@click.option("--out", "out_path", type=click.Path(dir_okay=False), required=True, help="Graph JSON output path.")
@click.pass_obj
def examples(server: Optional[str], name: str, k: int, n: int, lengths: Optional[str], out_path: str) -> None:
    """Generate a named example graph file (star-loops, path-cycle, circle-chords)."""
    payload: dict = {"name": name, "k": k, "n": n}
    if lengths is not None:
        payload["lengths"] = [piece.strip() for piece in lengths.split(",")]
    with _make_client(server) as client:
        body = _post(client, "/api/examples", payload)
    try:
        with open(out_path, "w", encoding="utf-8") as fh:
            json.dump(body["graph"], fh, indent=2)
            fh.write("\n")
    except OSError as exc:
        click.echo(f"error: cannot write {out_path}: {exc}", err=True)
        raise SystemExit(2)
    click.echo(f"wrote {out_path}")


@main.command()
@click.argument("graph_file", type=GRAPH_FILE)
@click.option("--horizon", type=float, required=True, callback=_positive, help="Enumerate route times up to here.")
@click.option("--epsilon", type=float, default=1e-9, show_default=True, callback=_positive)
@click.pass_obj
def audit(server: Optional[str], graph_file: str, horizon: float, epsilon: float) -> None:
    """Report route-time pairs closer than epsilon (general-position audit)."""
    doc = _load_graph_doc(graph_file)
    with _make_client(server) as client:
        body = _post(client, "/api/audit", {"graph": doc, "horizon": horizon, "epsilon": epsilon})
    warnings = body["warnings"]
    click.echo(f"collisions: {len(warnings)}")
    for w in warnings:
        click.echo(f"{_fmt(w['value_a'])} ~ {_fmt(w['value_b'])} gap={_fmt(w['gap'])}")


@main.command()
@click.option("--host", default="127.0.0.1", show_default=True)
@click.option("--port", type=int, default=8000, show_default=True)
def serve(host: str, port: int) -> None:
    """Run the HTTP service."""
    import uvicorn

    from .service.app import create_app

    uvicorn.run(create_app(), host=host, port=port)


if __name__ == "__main__":
    main(sys.argv[1:])
