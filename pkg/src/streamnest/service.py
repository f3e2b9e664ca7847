"""Local HTTP render service.

POST /render  {"dataset": <document>, "params": {...}} -> SVG bytes
POST /layout  same body -> per-timestep bands as JSON
GET  /health  liveness probe

Malformed bodies and invalid parameters answer 400; datasets rejected by
validation answer 400 with the error class and message; under
{"strict": true} a layout with feasibility violations answers 422 with the
violation list.  Renders that succeed despite violations carry them in an
X-Feasibility header so clients can warn without a second request.

The service is stateless apart from a small cache of parsed datasets keyed
by content hash; layout mutates node sizes in place, so each cached forest
carries a lock serializing pipelines over it.
"""

from __future__ import annotations

import hashlib
import json
import threading
from collections import OrderedDict

from fastapi import FastAPI, Request
from fastapi.responses import JSONResponse, Response

from .model import DatasetError, TemporalForest, canonical_document_text, \
    forest_from_document, link_across_time
from .pipeline import config_from_params, layout_as_json, run_pipeline
from .layout import violations_as_json

_CACHE_SIZE = 8


class _ForestCache:
    def __init__(self, size: int = _CACHE_SIZE) -> None:
        self._size = size
        self._lock = threading.Lock()
        self._entries: OrderedDict[str, tuple[TemporalForest, threading.Lock]]
        self._entries = OrderedDict()

    def get(self, document: dict) -> tuple[TemporalForest, threading.Lock]:
        key = hashlib.sha256(
            canonical_document_text(document).encode("utf-8")).hexdigest()
        with self._lock:
            entry = self._entries.get(key)
            if entry is not None:
                self._entries.move_to_end(key)
                return entry
        forest = link_across_time(forest_from_document(document))
        entry = (forest, threading.Lock())
        with self._lock:
            self._entries[key] = entry
            while len(self._entries) > self._size:
                self._entries.popitem(last=False)
        return entry


def _bad_request(detail: str, error: str = "malformed body") -> JSONResponse:
    return JSONResponse(status_code=400, content={"error": error, "detail": detail})


async def _parse_body(request: Request):
    try:
        body = json.loads(await request.body())
    except (json.JSONDecodeError, UnicodeDecodeError) as exc:
        return None, _bad_request(f"body is not valid JSON: {exc}")
    if not isinstance(body, dict):
        return None, _bad_request("body must be a JSON object")
    dataset = body.get("dataset")
    if not isinstance(dataset, dict):
        return None, _bad_request("body must carry a 'dataset' object")
    params = body.get("params")
    if params is not None and not isinstance(params, dict):
        return None, _bad_request("'params' must be an object")
    return (dataset, params), None


def create_app() -> FastAPI:
    app = FastAPI(title="streamnest render service")
    cache = _ForestCache()

    def pipeline_for(dataset: dict, params: dict | None):
        cfg, style, strict = config_from_params(params)
        forest, lock = cache.get(dataset)
        with lock:
            result = run_pipeline(forest, cfg, style)
        return result, strict

    @app.get("/health")
    async def health():
        return {"status": "ok"}

    @app.post("/render")
    async def render(request: Request):
        parsed, err = await _parse_body(request)
        if err is not None:
            return err
        dataset, params = parsed
        try:
            result, strict = pipeline_for(dataset, params)
        except ValueError as exc:
            if isinstance(exc, DatasetError):
                return _bad_request(str(exc), error=type(exc).__name__)
            return _bad_request(str(exc), error="invalid params")
        if strict and result.violations:
            return JSONResponse(
                status_code=422,
                content={"error": "infeasible layout",
                         "violations": violations_as_json(result.violations)})
        headers = {}
        if result.violations:
            headers["X-Feasibility"] = json.dumps(
                violations_as_json(result.violations), separators=(",", ":"))
        return Response(content=result.svg.to_bytes(),
                        media_type="image/svg+xml", headers=headers)

    @app.post("/layout")
    async def layout(request: Request):
        parsed, err = await _parse_body(request)
        if err is not None:
            return err
        dataset, params = parsed
        try:
            result, strict = pipeline_for(dataset, params)
        except ValueError as exc:
            if isinstance(exc, DatasetError):
                return _bad_request(str(exc), error=type(exc).__name__)
            return _bad_request(str(exc), error="invalid params")
        if strict and result.violations:
            return JSONResponse(
                status_code=422,
                content={"error": "infeasible layout",
                         "violations": violations_as_json(result.violations)})
        return JSONResponse(content=layout_as_json(result))

    return app
