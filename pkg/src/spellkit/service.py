"""HTTP service exposing the checking pipeline under /v1.

Request and response schemas ship in ``spellkit/schemas``; errors are
machine-readable ``{"error": {"code", "message"}}`` objects.  The engine
is immutable after startup, so request handling is safely concurrent.
"""

from __future__ import annotations

import json

from fastapi import FastAPI, Request
from fastapi.responses import JSONResponse

from .engine import Engine, EngineConfig
from .errors import ContractViolation

CHECK_OPTION_KEYS = {"max_dist", "margin", "top_k", "perto"}


def _error(status: int, code: str, message: str) -> JSONResponse:
    return JSONResponse(
        status_code=status,
        content={"error": {"code": code, "message": message}},
    )


async def _read_json(request: Request, limit: int):
    body = await request.body()
    if len(body) > limit:
        return None, _error(
            413, "request_too_large", f"request exceeds {limit} bytes"
        )
    try:
        return json.loads(body), None
    except (json.JSONDecodeError, UnicodeDecodeError):
        return None, _error(400, "invalid_json", "request body is not valid JSON")


def create_app(engine: Engine) -> FastAPI:
    app = FastAPI(title="spellkit", docs_url=None, redoc_url=None)
    limit = engine.cfg.request_bytes_limit

    @app.post("/v1/check")
    async def check(request: Request):
        payload, err = await _read_json(request, limit)
        if err:
            return err
        if not isinstance(payload, dict) or not isinstance(payload.get("text"), str):
            return _error(400, "invalid_request", 'body must be {"text": str, ...}')
        options = payload.get("options", {})
        if not isinstance(options, dict) or set(options) - CHECK_OPTION_KEYS:
            return _error(
                400,
                "invalid_request",
                f"options keys must be within {sorted(CHECK_OPTION_KEYS)}",
            )
        try:
            result = engine.check(payload["text"], options)
        except ContractViolation as exc:
            return _error(400, "invalid_request", str(exc))
        sentences = result["sentences"]
        if sentences and all("error" in s for s in sentences):
            return _error(503, "scorer_unavailable", sentences[0]["error"])
        return JSONResponse(content=result)

    @app.post("/v1/apply")
    async def apply(request: Request):
        payload, err = await _read_json(request, limit)
        if err:
            return err
        if (
            not isinstance(payload, dict)
            or not isinstance(payload.get("text"), str)
            or not isinstance(payload.get("corrections"), list)
        ):
            return _error(
                400,
                "invalid_request",
                'body must be {"text": str, "corrections": [...]}',
            )
        try:
            result = engine.apply(payload["text"], payload["corrections"])
        except ContractViolation as exc:
            return _error(400, "invalid_correction", str(exc))
        return JSONResponse(content=result)

    @app.get("/v1/health")
    async def health():
        return JSONResponse(content=engine.health())

    @app.get("/v1/config")
    async def config():
        return JSONResponse(content=engine.config_dict())

    return app


def serve(cfg: EngineConfig, bind: str = "127.0.0.1:8000") -> None:
    """Run the service until interrupted."""
    import uvicorn

    host, _, port = bind.rpartition(":")
    app = create_app(Engine.from_config(cfg))
    uvicorn.run(app, host=host or "127.0.0.1", port=int(port), log_level="warning")
