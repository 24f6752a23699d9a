"""JSON-over-HTTP session API for the browser UI and other clients.

Sessions live in memory; the durable artifacts are exported journals and
the retained source files. Mutations on one session are serialized with
a per-session lock; distinct sessions are fully independent. Rendered
states always travel as PNG (lossless, and every client can decode it).

Error bodies are ``{"code": ..., "message": ..., "seq": ...}`` with
``seq`` present when the failure is tied to a journal entry.
"""

from __future__ import annotations

import base64
import threading
import time
from dataclasses import dataclass

from fastapi import FastAPI, Request, Response, UploadFile
from fastapi.exceptions import RequestValidationError
from fastapi.responses import JSONResponse, PlainTextResponse
from fastapi.staticfiles import StaticFiles

from . import codecs_io, replay
from . import journal as journal_mod
from .errors import CodecError, NothingToRedo, NothingToUndo, SwiimError
from .session import Session

DEFAULT_MAX_UPLOAD = 32 * 1024 * 1024
DEFAULT_TTL_SECONDS = 3600.0


@dataclass
class ServiceConfig:
    max_upload_bytes: int = DEFAULT_MAX_UPLOAD
    session_ttl_seconds: float = DEFAULT_TTL_SECONDS
    static_dir: str | None = None  # serve the browser UI from here if set


class SessionStore:
    """In-memory sessions with idle expiry and per-session mutation locks."""

    def __init__(self, ttl_seconds: float):
        self._ttl = ttl_seconds
        self._sessions: dict[str, Session] = {}
        self._locks: dict[str, threading.Lock] = {}
        self._last_used: dict[str, float] = {}
        self._mutex = threading.Lock()

    def add(self, session: Session) -> None:
        with self._mutex:
            self._sessions[session.id] = session
            self._locks[session.id] = threading.Lock()
            self._last_used[session.id] = time.monotonic()

    def get(self, session_id: str) -> tuple[Session, threading.Lock]:
        with self._mutex:
            self._sweep()
            if session_id not in self._sessions:
                raise KeyError(session_id)
            self._last_used[session_id] = time.monotonic()
            return self._sessions[session_id], self._locks[session_id]

    def _sweep(self) -> None:
        now = time.monotonic()
        for sid, last in list(self._last_used.items()):
            if now - last > self._ttl:
                self._sessions.pop(sid, None)
                self._locks.pop(sid, None)
                self._last_used.pop(sid, None)


def _error(status: int, code: str, message: str, seq: int | None = None) -> JSONResponse:
    body: dict = {"code": code, "message": message}
    if seq is not None:
        body["seq"] = seq
    return JSONResponse(body, status_code=status)


def _session_resource(s: Session) -> dict:
    return {
        "id": s.id,
        "width": s.current.width,
        "height": s.current.height,
        "journal": s.journal_text(),
        "history_length": s.history_length,
        "undo_depth": s.undo_depth,
    }


def create_app(config: ServiceConfig | None = None) -> FastAPI:
    config = config or ServiceConfig()
    app = FastAPI(title="swiim session service")
    store = SessionStore(config.session_ttl_seconds)
    app.state.store = store
    app.state.config = config

    @app.exception_handler(SwiimError)
    async def swiim_error_handler(request: Request, exc: SwiimError):
        seq = getattr(exc, "seq", None)
        code = type(exc).__name__
        if isinstance(exc, (NothingToUndo, NothingToRedo)):
            return _error(409, code, str(exc))
        if isinstance(exc, CodecError):
            return _error(400, code, str(exc))
        return _error(422, code, str(exc), seq=seq)

    @app.exception_handler(RequestValidationError)
    async def validation_error_handler(request: Request, exc: RequestValidationError):
        return _error(422, "BadRequest", str(exc.errors()[:1]))

    def _load_session(session_id: str) -> tuple[Session, threading.Lock]:
        return store.get(session_id)

    @app.post("/sessions", status_code=201)
    async def create_session(file: UploadFile):
        data = await file.read()
        if len(data) > config.max_upload_bytes:
            return _error(413, "TooLarge",
                          f"upload exceeds {config.max_upload_bytes} byte cap")
        raster, fmt, warnings = codecs_io.import_image(data)
        s = Session(raster, file.filename or "upload")
        store.add(s)
        resource = _session_resource(s)
        resource["format"] = fmt
        resource["warnings"] = warnings
        return JSONResponse(resource, status_code=201)

    @app.post("/sessions/{session_id}/ops")
    async def apply_op(session_id: str, body: dict):
        try:
            s, lock = _load_session(session_id)
        except KeyError:
            return _error(404, "UnknownSession", f"no session {session_id}")
        op = body.get("op", "")
        params = body.get("params") or {}
        insert = None
        if isinstance(params, dict) and "image_b64" in params:
            params = dict(params)
            try:
                raw = base64.b64decode(params.pop("image_b64"))
            except Exception:
                return _error(422, "BadRequest", "image_b64 is not valid base64")
            insert, _, _ = codecs_io.import_image(raw)
        with lock:
            s.apply(str(op), params, insert=insert)
            return _session_resource(s)

    @app.post("/sessions/{session_id}/undo")
    async def undo(session_id: str):
        try:
            s, lock = _load_session(session_id)
        except KeyError:
            return _error(404, "UnknownSession", f"no session {session_id}")
        with lock:
            s.undo()
            return _session_resource(s)

    @app.post("/sessions/{session_id}/redo")
    async def redo(session_id: str):
        try:
            s, lock = _load_session(session_id)
        except KeyError:
            return _error(404, "UnknownSession", f"no session {session_id}")
        with lock:
            s.redo()
            return _session_resource(s)

    @app.get("/sessions/{session_id}/journal")
    async def get_journal(session_id: str):
        try:
            s, _ = _load_session(session_id)
        except KeyError:
            return _error(404, "UnknownSession", f"no session {session_id}")
        return PlainTextResponse(s.journal_text())

    @app.get("/sessions/{session_id}/image")
    async def get_image(session_id: str, state: int | None = None):
        try:
            s, _ = _load_session(session_id)
        except KeyError:
            return _error(404, "UnknownSession", f"no session {session_id}")
        if state is None:
            raster = s.current
        else:
            raster = replay.step(s.journal, s.source, state,
                                 assets=s.replay_assets())
        return Response(codecs_io.export_image(raster, codecs_io.PNG),
                        media_type="image/png")

    @app.post("/sessions/{session_id}/export")
    async def export(session_id: str, body: dict):
        try:
            s, lock = _load_session(session_id)
        except KeyError:
            return _error(404, "UnknownSession", f"no session {session_id}")
        fmt = str(body.get("format", codecs_io.PNG))
        quality = int(body.get("quality", codecs_io.DEFAULT_JPEG_QUALITY))
        name = str(body.get("file") or f"export.{fmt}")
        with lock:
            data = s.export(name, fmt, quality)
            return {
                "file": name,
                "format": codecs_io.normalize_format(fmt),
                "quality": quality,
                "data_b64": base64.b64encode(data).decode("ascii"),
                "journal": s.journal_text(),
            }

    @app.post("/verify")
    async def verify_endpoint(source: UploadFile, journal: UploadFile,
                              claimed: UploadFile,
                              assets: list[UploadFile] | None = None):
        src_raster, _, _ = codecs_io.import_image(await source.read())
        claimed_raster, _, _ = codecs_io.import_image(await claimed.read())
        text = (await journal.read()).decode("utf-8")
        j = journal_mod.parse(text)
        asset_map = {}
        for up in assets or []:
            raster, _, _ = codecs_io.import_image(await up.read())
            asset_map[codecs_io.content_hash(raster)] = raster
        verdict, rep, d = replay.verify(j, src_raster, claimed_raster, asset_map)
        return {
            "verdict": verdict,
            "replay": rep.to_dict(),
            "diff": d.to_dict(),
            "report_text": rep.render_text(),
        }

    if config.static_dir:
        app.mount("/", StaticFiles(directory=config.static_dir, html=True),
                  name="ui")

    return app
