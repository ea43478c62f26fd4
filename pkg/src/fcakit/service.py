"""Local HTTP/JSON service over a workspace directory.

The app is stateless between requests: every handler reloads what it
needs from disk and every mutation is persisted before the response
goes out, so killing the process never loses more than the request in
flight.  Concurrent mutations of the same context or session are
refused with 409 instead of queued; this is a desk tool, not a server
farm.
"""

from __future__ import annotations

import json
import threading
from contextlib import contextmanager
from pathlib import Path
from typing import Optional

from fastapi import FastAPI, HTTPException, Request
from pydantic import BaseModel

from . import __version__
from .bitsets import mask_of
from .context import FormalContext, count_concepts, set_incidence
from .cxt import from_json_table, parse_cxt, to_json_table
from .errors import (
    CxtParseError,
    DuplicateName,
    FcaError,
    IndexOutOfRange,
    InvalidName,
    NoPendingQuestion,
    NotACounterexample,
    UnknownContext,
    ViolatesAcceptedImplication,
)
from .exploration import (
    ExplorationSession,
    accept,
    accept_event,
    counterexample_event,
    reject_with_counterexample,
    replay_events,
    start_event,
)
from .implications import (
    ImplicationReport,
    display_attribute_order,
    displayed_conclusion,
    format_implication,
    report_for,
    stem_base,
    supported_rows,
)
from .lattice import build_lattice
from .layout import build_scene, intent_key, scene_to_dict
from .workspace import Workspace, valid_slug

DEFAULT_CONCEPT_CAP = 50_000


class CellEdit(BaseModel):
    object: int
    attribute: int
    value: bool


class Position(BaseModel):
    x: float
    y: float


class CounterexampleBody(BaseModel):
    name: str
    attributes: list[int]


class SaveBody(BaseModel):
    name: str


class _LockTable:
    """Named non-blocking locks; contention surfaces as 409."""

    def __init__(self) -> None:
        self._master = threading.Lock()
        self._locks: dict[str, threading.Lock] = {}

    @contextmanager
    def held(self, key: str):
        with self._master:
            lock = self._locks.setdefault(key, threading.Lock())
        if not lock.acquire(blocking=False):
            raise HTTPException(
                status_code=409,
                detail="another request is modifying this resource")
        try:
            yield
        finally:
            lock.release()


def _names(ctx: FormalContext, attribute_set: int) -> list[str]:
    return [ctx.attributes[m]
            for m in display_attribute_order(ctx, attribute_set)]


def _implication_json(ctx: FormalContext, report: ImplicationReport) -> dict:
    imp = report.implication
    return {
        "id": report.id,
        "support": report.support,
        "valid": report.valid,
        "premise": _names(ctx, imp.premise),
        "conclusion": _names(ctx, displayed_conclusion(imp)),
        "text": format_implication(ctx, report),
    }


def _session_json(sid: str, session: ExplorationSession) -> dict:
    ctx = session.working_context
    accepted = [_implication_json(ctx, report_for(ctx, imp, id=i + 1))
                for i, imp in enumerate(session.accepted)]
    if session.current_question is None:
        question = None
    else:
        q = session.current_question
        question = {
            "premise": _names(ctx, q.premise),
            "conclusion": _names(ctx, q.conclusion),
        }
    return {
        "session": sid,
        "finished": session.finished,
        "question": question,
        "accepted": accepted,
        "context": to_json_table(ctx),
    }


def create_app(root: str | Path,
               concept_cap: int = DEFAULT_CONCEPT_CAP,
               static_dir: str | Path | None = None) -> FastAPI:
    """Build the app over the workspace at ``root``."""
    ws = Workspace(root)
    locks = _LockTable()
    app = FastAPI(title="fcakit", version=__version__)
    app.state.workspace = ws
    app.state.locks = locks
    app.state.concept_cap = concept_cap

    def check_slug(name: str) -> None:
        if not valid_slug(name):
            raise HTTPException(status_code=400,
                                detail=f"invalid name {name!r}")

    def load_context(name: str) -> FormalContext:
        check_slug(name)
        try:
            return ws.load_context(name)
        except UnknownContext:
            raise HTTPException(status_code=404,
                                detail=f"no context named {name!r}")
        except CxtParseError as exc:
            raise HTTPException(status_code=500,
                                detail=f"stored context is damaged: {exc}")

    def load_session(sid: str) -> ExplorationSession:
        if not ws.has_session(sid):
            raise HTTPException(status_code=404,
                                detail=f"no session {sid!r}")
        return replay_events(ws.read_events(sid))

    def lattice_under_cap(name: str, ctx: FormalContext):
        count = count_concepts(ctx, limit=concept_cap)
        if count is None:
            raise HTTPException(
                status_code=503,
                detail={
                    "error": "concept lattice too large to draw",
                    "context": name,
                    "concepts_exceed": concept_cap,
                })
        return build_lattice(ctx), count

    # -- meta -------------------------------------------------------------

    @app.get("/api/health")
    def health() -> dict:
        return {"status": "ok", "version": __version__}

    # -- contexts ---------------------------------------------------------

    @app.get("/api/contexts")
    def list_contexts() -> dict:
        entries = []
        for name in ws.list_contexts():
            entry: dict = {"name": name}
            try:
                ctx = ws.load_context(name)
                entry["objects"] = ctx.n_objects
                entry["attributes"] = ctx.n_attributes
                entry["crosses"] = ctx.cross_count
            except CxtParseError as exc:
                entry["error"] = str(exc)
            entries.append(entry)
        return {"contexts": entries}

    @app.put("/api/contexts/{name}")
    async def put_context(name: str, request: Request,
                          mode: str = "upsert") -> dict:
        check_slug(name)
        if mode not in ("upsert", "create"):
            raise HTTPException(status_code=400,
                                detail=f"unknown mode {mode!r}")
        raw = await request.body()
        try:
            text = raw.decode("utf-8")
        except UnicodeDecodeError as exc:
            raise HTTPException(status_code=400, detail=f"not UTF-8: {exc}")
        content_type = request.headers.get("content-type", "")
        try:
            if "json" in content_type or text.lstrip().startswith("{"):
                ctx = from_json_table(json.loads(text))
            else:
                ctx = parse_cxt(text)
        except (CxtParseError, FcaError, ValueError) as exc:
            raise HTTPException(status_code=400, detail=str(exc))
        with locks.held(f"context:{name}"):
            created = not ws.has_context(name)
            if mode == "create" and not created:
                raise HTTPException(
                    status_code=409,
                    detail=f"context {name!r} already exists")
            ws.save_context(name, ctx)
        return {
            "name": name,
            "created": created,
            "objects": ctx.n_objects,
            "attributes": ctx.n_attributes,
            "concepts": count_concepts(ctx, limit=concept_cap),
        }

    @app.get("/api/contexts/{name}")
    def get_context(name: str) -> dict:
        return to_json_table(load_context(name))

    @app.post("/api/contexts/{name}/cell")
    def edit_cell(name: str, body: CellEdit) -> dict:
        with locks.held(f"context:{name}"):
            ctx = load_context(name)
            try:
                ctx = set_incidence(ctx, body.object, body.attribute,
                                    body.value)
            except IndexOutOfRange as exc:
                raise HTTPException(status_code=400, detail=str(exc))
            ws.save_context(name, ctx)
        return {
            "table": to_json_table(ctx),
            "concepts": count_concepts(ctx, limit=concept_cap),
        }

    # -- lattice ----------------------------------------------------------

    @app.get("/api/contexts/{name}/lattice")
    def get_lattice(name: str) -> dict:
        ctx = load_context(name)
        lat, count = lattice_under_cap(name, ctx)
        scene = build_scene(lat, pins=ws.load_layout(name))
        out = scene_to_dict(scene)
        out["concepts"] = count
        return out

    @app.post("/api/contexts/{name}/lattice/positions")
    def post_positions(name: str, body: dict[str, Position]) -> dict:
        with locks.held(f"context:{name}"):
            ctx = load_context(name)
            lat, _ = lattice_under_cap(name, ctx)
            known = {intent_key(ctx, c.intent) for c in lat.concepts}
            for key in body:
                if key not in known:
                    raise HTTPException(
                        status_code=400,
                        detail={"error": "no node has this intent",
                                "intent": key})
            pins = ws.load_layout(name)
            for key, pos in body.items():
                pins[key] = {"x": pos.x, "y": pos.y}
            ws.save_layout(name, pins)
        return {"pins": pins}

    # -- implications ------------------------------------------------------

    @app.get("/api/contexts/{name}/implications")
    def get_implications(name: str, all: bool = False) -> dict:
        ctx = load_context(name)
        base = stem_base(ctx)
        rows = base if all else supported_rows(base)
        return {
            "implications": [_implication_json(ctx, r) for r in rows],
            "base_size": len(base),
        }

    # -- exploration -------------------------------------------------------

    @app.post("/api/explore/{name}/start")
    def explore_start(name: str) -> dict:
        ctx = load_context(name)
        sid = ws.new_session_id()
        with locks.held(f"session:{sid}"):
            ws.append_event(sid, start_event(ctx))
            session = replay_events(ws.read_events(sid))
        return _session_json(sid, session)

    @app.get("/api/explore/{sid}")
    def explore_state(sid: str) -> dict:
        return _session_json(sid, load_session(sid))

    @app.post("/api/explore/{sid}/accept")
    def explore_accept(sid: str) -> dict:
        with locks.held(f"session:{sid}"):
            session = load_session(sid)
            try:
                session = accept(session)
            except NoPendingQuestion as exc:
                raise HTTPException(status_code=409, detail=str(exc))
            ws.append_event(sid, accept_event())
        return _session_json(sid, session)

    @app.post("/api/explore/{sid}/counterexample")
    def explore_counterexample(sid: str, body: CounterexampleBody) -> dict:
        with locks.held(f"session:{sid}"):
            session = load_session(sid)
            ctx = session.working_context
            for m in body.attributes:
                if not 0 <= m < ctx.n_attributes:
                    raise HTTPException(
                        status_code=422,
                        detail=f"attribute index {m} out of range")
            intent = mask_of(body.attributes)
            try:
                session = reject_with_counterexample(session, body.name,
                                                     intent)
            except ViolatesAcceptedImplication as exc:
                imp = exc.implication
                raise HTTPException(status_code=422, detail={
                    "error": str(exc),
                    "violated": {
                        "premise": _names(ctx, imp.premise),
                        "conclusion": _names(ctx, displayed_conclusion(imp)),
                    },
                })
            except (NotACounterexample, DuplicateName, InvalidName) as exc:
                raise HTTPException(status_code=422, detail=str(exc))
            except NoPendingQuestion as exc:
                raise HTTPException(status_code=409, detail=str(exc))
            ws.append_event(sid, counterexample_event(body.name, intent))
        return _session_json(sid, session)

    @app.post("/api/explore/{sid}/save")
    def explore_save(sid: str, body: SaveBody) -> dict:
        check_slug(body.name)
        session = load_session(sid)
        if not session.finished:
            raise HTTPException(status_code=409,
                                detail="exploration still has open questions")
        with locks.held(f"context:{body.name}"):
            if ws.has_context(body.name):
                raise HTTPException(
                    status_code=409,
                    detail=f"context {body.name!r} already exists")
            ws.save_context(body.name, session.working_context)
        ctx = session.working_context
        return {
            "name": body.name,
            "objects": ctx.n_objects,
            "attributes": ctx.n_attributes,
        }

    if static_dir is not None and Path(static_dir).is_dir():
        from fastapi.staticfiles import StaticFiles
        app.mount("/", StaticFiles(directory=static_dir, html=True),
                  name="ui")

    return app
