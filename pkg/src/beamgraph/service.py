"""HTTP API over one shared graph: writes, perspective-tuned queries, exports.

The perspective always travels with the request and is never stored
server-side — the consumer of the information owns the interpretation rules.
Writes serialize through a single lock and append to the event log before
returning; queries run against an immutable snapshot and every response
carries the graph version it was computed against.
"""

from __future__ import annotations

import threading
from pathlib import Path
from typing import Any

from fastapi import FastAPI, Query, Request
from fastapi.middleware.cors import CORSMiddleware
from fastapi.responses import JSONResponse

from . import eventlog
from .core import Agency, Kind, KnowledgeGraph, Polarity, Paradigm, Timestamp, ViewpointType
from .errors import (
    AgencyMismatch,
    BeamGraphError,
    DuplicateId,
    InvalidPerspective,
    IoFailure,
    KindMismatch,
    NonAgentEmitter,
    SameResource,
    SelfLoop,
    TimeTravel,
    UnknownResource,
)
from .export import map_to_json_obj
from .perspective import build_map, perspective_from_json
from .query import k_nearest, neighborhood, shortest_paths
from .session import FeedbackEvent, record_feedback

_STATUS: list[tuple[type[BeamGraphError], int]] = [
    (UnknownResource, 404),
    (DuplicateId, 409),
    (SelfLoop, 422),
    (NonAgentEmitter, 422),
    (KindMismatch, 422),
    (SameResource, 422),
    (TimeTravel, 422),
    (AgencyMismatch, 422),
    (InvalidPerspective, 400),
    (IoFailure, 500),
]


def _status_for(exc: BeamGraphError) -> int:
    for etype, code in _STATUS:
        if isinstance(exc, etype):
            return code
    return 400


class GraphService:
    """Mutable server state: the live graph plus its append-only log."""

    def __init__(self, log_path: str | Path | None = None):
        self.log_path = Path(log_path) if log_path else None
        self.write_lock = threading.Lock()
        if self.log_path is not None and self.log_path.exists():
            self.graph = eventlog.replay(self.log_path)
        else:
            self.graph = KnowledgeGraph()
        self.log = eventlog.EventLog(self.log_path, last_seq=self.graph.version) if self.log_path else None

    def append_new_events(self, since: int) -> None:
        if self.log is None:
            return
        for record in eventlog.tail_records(self.graph.events(), since):
            self.log.append_event(record)

    def default_now(self) -> Timestamp:
        return self.graph.latest_timestamp()


def _perspective_of(body: dict[str, Any]):
    return perspective_from_json(body.get("perspective", "neutral"))


def _now_of(body: dict[str, Any], state: GraphService) -> Timestamp:
    now = body.get("now")
    return state.default_now() if now is None else int(now)


def create_app(log_path: str | Path | None = None, cors_origins: list[str] | None = None) -> FastAPI:
    """Build the application; state lives for the lifetime of the app."""
    app = FastAPI(title="beamgraph", version="0.1.0")
    app.add_middleware(
        CORSMiddleware,
        allow_origins=cors_origins or ["*"],
        allow_methods=["*"],
        allow_headers=["*"],
    )
    state = GraphService(log_path)
    app.state.service = state

    @app.exception_handler(BeamGraphError)
    async def domain_error(request: Request, exc: BeamGraphError):
        return JSONResponse(
            status_code=_status_for(exc),
            content={"error": type(exc).__name__, "detail": str(exc)},
        )

    @app.exception_handler(KeyError)
    async def missing_field(request: Request, exc: KeyError):
        return JSONResponse(status_code=400, content={"error": "InvalidBody", "detail": f"missing field {exc}"})

    @app.exception_handler(ValueError)
    async def bad_value(request: Request, exc: ValueError):
        return JSONResponse(status_code=400, content={"error": "InvalidBody", "detail": str(exc)})

    @app.post("/resources")
    def add_resource(body: dict[str, Any]):
        with state.write_lock:
            before = state.graph.version
            rid = state.graph.add_resource(
                kind=Kind(body["kind"]),
                label=body.get("label", body.get("id", "")),
                agency=Agency(body["agency"]) if body.get("agency") is not None else None,
                id=body.get("id"),
                at=int(body.get("at", state.default_now())),
            )
            state.append_new_events(before)
            return {"id": rid, "version": state.graph.version}

    @app.post("/viewpoints")
    def add_viewpoint(body: dict[str, Any]):
        with state.write_lock:
            before = state.graph.version
            vid = state.graph.add_viewpoint(
                emitter=body["emitter"],
                r2=body["r2"],
                r3=body["r3"],
                vtype=ViewpointType(Paradigm(body["paradigm"]), Polarity(int(body["polarity"]))),
                at=int(body.get("at", state.default_now())),
            )
            state.append_new_events(before)
            return {"id": vid, "version": state.graph.version}

    @app.post("/feedback")
    def feedback(body: dict[str, Any]):
        with state.write_lock:
            before = state.graph.version
            ids = record_feedback(
                state.graph,
                FeedbackEvent(
                    agent=body["agent"],
                    document=body["document"],
                    topic=body.get("topic"),
                    polarity=Polarity(int(body.get("polarity", 1))),
                    at=int(body.get("at", state.default_now())),
                ),
            )
            state.append_new_events(before)
            return {"ids": ids, "version": state.graph.version}

    @app.post("/query/paths")
    def query_paths(body: dict[str, Any]):
        with state.write_lock:
            snapshot = state.graph.snapshot()
        kmap = build_map(snapshot, _perspective_of(body), _now_of(body, state))
        answer = shortest_paths(kmap, body["source"], body["target"])
        return {"version": snapshot.version, **answer.to_json()}

    @app.post("/query/near")
    def query_near(body: dict[str, Any]):
        with state.write_lock:
            snapshot = state.graph.snapshot()
        kmap = build_map(snapshot, _perspective_of(body), _now_of(body, state))
        kind = Kind(body["kind"]) if body.get("kind") else None
        hits = k_nearest(kmap, body["origin"], k=int(body.get("k", 1)), kind_filter=kind)
        return {
            "version": snapshot.version,
            "origin": body["origin"],
            "nearest": [{"id": rid, "distance": d} for rid, d in hits],
        }

    @app.post("/query/neighborhood")
    def query_neighborhood(body: dict[str, Any]):
        with state.write_lock:
            snapshot = state.graph.snapshot()
        kmap = build_map(snapshot, _perspective_of(body), _now_of(body, state))
        sub = neighborhood(kmap, body["origin"], float(body.get("radius", 1.0)))
        return {"origin": body["origin"], **map_to_json_obj(sub)}

    @app.get("/map")
    def get_map(perspective: str = Query(default="neutral"), now: int | None = Query(default=None)):
        with state.write_lock:
            snapshot = state.graph.snapshot()
        kmap = build_map(
            snapshot,
            perspective_from_json(perspective),
            state.default_now() if now is None else now,
        )
        return map_to_json_obj(kmap)

    @app.get("/events")
    def get_events(since: int = Query(default=0)):
        with state.write_lock:
            snapshot = state.graph.snapshot()
        records = eventlog.tail_records(snapshot.events(), since)
        return {
            "version": snapshot.version,
            "events": [{"seq": r.seq, "kind": r.kind, **r.payload} for r in records],
        }

    @app.get("/version")
    def get_version():
        return {"version": state.graph.version}

    @app.get("/resources")
    def list_resources():
        with state.write_lock:
            snapshot = state.graph.snapshot()
        rows = [
            {"id": r.id, "kind": r.kind.value, "label": r.label, **({"agency": r.agency.value} if r.agency else {})}
            for r in sorted(snapshot.resources.values(), key=lambda r: r.id)
        ]
        return {"version": snapshot.version, "resources": rows}

    return app


def serve(log_path: str | Path | None, host: str, port: int, cors_origins: list[str] | None = None) -> None:
    """Run the API under uvicorn (blocking)."""
    import uvicorn

    uvicorn.run(create_app(log_path, cors_origins), host=host, port=port, log_level="warning")
