"""Stateless JSON HTTP facade over the caption checker.

Sessions hold uploaded series plus their latest spec and caption in an
in-memory LRU store; every response is recomputed from stored inputs, so
identical inputs always produce identical bodies.
"""

from __future__ import annotations

import json
import threading
import uuid
from collections import OrderedDict
from dataclasses import dataclass, field

import click
from fastapi import FastAPI, Request, Response
from fastapi.middleware.cors import CORSMiddleware

from .chart import (ChartSpec, EmptyChartError, SeriesFormatError, TimeSeries,
                    clip, detect_granularity, normalize)
from .lexicon import Lexicon, LexiconSimilarity, WordVectorSimilarity
from .matching import check
from .prominence import enumerate_features, point_persistence
from .refs import DEFAULT_SIM_THRESHOLD

MAX_POINTS = 1_000_000
SESSION_CAPACITY = 256


@dataclass
class Session:
    session_id: str
    series: TimeSeries
    spec: ChartSpec
    caption: str = ""


class SessionStore:
    """Thread-safe LRU mapping of session ids to sessions."""

    def __init__(self, capacity: int = SESSION_CAPACITY):
        self._capacity = capacity
        self._lock = threading.Lock()
        self._sessions: OrderedDict[str, Session] = OrderedDict()

    def put(self, session: Session) -> None:
        with self._lock:
            self._sessions[session.session_id] = session
            self._sessions.move_to_end(session.session_id)
            while len(self._sessions) > self._capacity:
                self._sessions.popitem(last=False)

    def get(self, session_id: str) -> Session | None:
        with self._lock:
            session = self._sessions.get(session_id)
            if session is not None:
                self._sessions.move_to_end(session_id)
            return session

    def __len__(self) -> int:
        with self._lock:
            return len(self._sessions)


@dataclass
class ServiceSettings:
    lexicon_path: str | None = None
    vectors_path: str | None = None
    sim_threshold: float = DEFAULT_SIM_THRESHOLD
    cors_origin: str | None = None


def _error(status: int, message: str) -> Response:
    return Response(content=json.dumps({"error": message}),
                    status_code=status, media_type="application/json")


def _json_response(payload: dict) -> Response:
    return Response(content=json.dumps(payload, separators=(", ", ": ")),
                    media_type="application/json")


def create_app(settings: ServiceSettings | None = None) -> FastAPI:
    settings = settings or ServiceSettings()
    lexicon = Lexicon.load(settings.lexicon_path) if settings.lexicon_path else Lexicon.default()
    if settings.vectors_path:
        sim = WordVectorSimilarity.load(settings.vectors_path)
    else:
        sim = LexiconSimilarity(lexicon)

    app = FastAPI(title="captioncheck service")
    store = SessionStore()
    app.state.store = store

    if settings.cors_origin:
        app.add_middleware(CORSMiddleware, allow_origins=[settings.cors_origin],
                           allow_methods=["*"], allow_headers=["*"])

    @app.post("/api/series")
    async def upload_series(request: Request):
        body = await request.body()
        content_type = request.headers.get("content-type", "")
        text = body.decode("utf-8", errors="replace")
        try:
            if "json" in content_type or text.lstrip().startswith("{"):
                series = TimeSeries.from_json(text)
            else:
                series = TimeSeries.from_csv(text)
        except SeriesFormatError as exc:
            return _error(400, str(exc))
        if len(series) > MAX_POINTS:
            return _error(413, f"series exceeds {MAX_POINTS} points")
        session = Session(session_id=uuid.uuid4().hex, series=series,
                          spec=ChartSpec.default_for(series))
        store.put(session)
        return _json_response({
            "sessionId": session.session_id,
            "pointCount": len(series),
            "granularity": detect_granularity(series).value,
            "defaultSpec": session.spec.to_json_dict(),
        })

    @app.post("/api/sessions/{session_id}/check")
    async def check_caption(session_id: str, request: Request):
        session = store.get(session_id)
        if session is None:
            return _error(404, "unknown session")
        try:
            payload = json.loads(await request.body())
        except json.JSONDecodeError:
            return _error(400, "request body must be JSON")
        if not isinstance(payload, dict) or not isinstance(payload.get("caption"), str):
            return _error(400, 'request needs a string "caption"')
        if "spec" in payload:
            try:
                session.spec = ChartSpec.from_json(payload["spec"])
            except SeriesFormatError as exc:
                return _error(400, str(exc))
        session.caption = payload["caption"]
        try:
            result = check(session.series, session.spec, session.caption,
                           lexicon=lexicon, sim=sim,
                           sim_threshold=settings.sim_threshold)
        except EmptyChartError as exc:
            return _error(422, str(exc))
        store.put(session)
        return _json_response(result.to_json_dict())

    @app.get("/api/sessions/{session_id}/features")
    async def session_features(session_id: str):
        session = store.get(session_id)
        if session is None:
            return _error(404, "unknown session")
        try:
            visible = clip(session.series, session.spec)
        except EmptyChartError as exc:
            return _error(422, str(exc))
        profile = point_persistence(normalize(visible, session.spec))
        features = enumerate_features(profile)
        return _json_response({"features": [f.to_json_dict() for f in features]})

    return app


@click.command()
@click.option("--port", default=8080, show_default=True, help="listen port")
@click.option("--host", default="127.0.0.1", show_default=True, help="bind address")
@click.option("--lexicon", "lexicon_path", type=click.Path(exists=True),
              help="alternative description lexicon (TSV)")
@click.option("--vectors", "vectors_path", type=click.Path(exists=True),
              help="static word-vector file for similarity scoring")
@click.option("--sim-threshold", default=DEFAULT_SIM_THRESHOLD, show_default=True,
              help="similarity admission threshold")
@click.option("--cors-origin", default=None, help="origin allowed for CORS")
def main(port, host, lexicon_path, vectors_path, sim_threshold, cors_origin):
    """Run the caption-check HTTP service."""
    import uvicorn

    settings = ServiceSettings(lexicon_path=lexicon_path, vectors_path=vectors_path,
                               sim_threshold=sim_threshold, cors_origin=cors_origin)
    uvicorn.run(create_app(settings), host=host, port=port)


if __name__ == "__main__":
    main()
