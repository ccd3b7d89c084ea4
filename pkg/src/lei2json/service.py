"""Stateless HTTP validation endpoint.

Routes::

    POST /validate?schema=NAME   body: JSON array of events
    GET  /health

Schemas are loaded once from a directory at startup and named by file
stem. Request handling touches no shared mutable state.
"""

from __future__ import annotations

import json
import logging
import os
from dataclasses import dataclass
from pathlib import Path
from types import MappingProxyType
from typing import Mapping

from fastapi import FastAPI, Request
from fastapi.concurrency import run_in_threadpool
from fastapi.responses import JSONResponse

from .errors import SchemaError
from .schema_model import SchemaDocument, load_schema
from .schema_validator import validate_events

log = logging.getLogger(__name__)

DEFAULT_MAX_BODY = 16 * 1024 * 1024
DEFAULT_PORT = 8080


@dataclass(frozen=True)
class ServiceConfig:
    schema_dir: Path
    port: int = DEFAULT_PORT
    max_body_bytes: int = DEFAULT_MAX_BODY

    @classmethod
    def from_env(cls, env: Mapping[str, str] = os.environ) -> ServiceConfig:
        return cls(
            schema_dir=Path(env.get("SCHEMA_DIR", "schemas")),
            port=int(env.get("PORT", DEFAULT_PORT)),
        )


class NoSchemasError(SchemaError):
    code = "NO_SCHEMAS"


def load_schema_dir(directory: str | os.PathLike) -> Mapping[str, SchemaDocument]:
    """Load every ``*.json`` file in ``directory``.

    Files that fail to load are logged and skipped. Raises ``OSError`` if the
    directory is unreadable and :class:`NoSchemasError` if nothing loads.
    """
    directory = Path(directory)
    if not directory.is_dir():
        raise FileNotFoundError(f"schema directory not found: {directory}")
    schemas = {}
    for path in sorted(directory.glob("*.json")):
        try:
            schemas[path.stem] = load_schema(path)
        except (SchemaError, OSError, UnicodeDecodeError) as exc:
            log.warning("skipping %s: %s", path.name, exc)
    if not schemas:
        raise NoSchemasError(f"no loadable schema in {directory}")
    return MappingProxyType(schemas)


def _error(status: int, message: str) -> tuple[int, dict]:
    return status, {"error": message}


def handle_validate(
    schemas: Mapping[str, SchemaDocument],
    schema_name: str | None,
    body: bytes,
    max_body_bytes: int = DEFAULT_MAX_BODY,
) -> tuple[int, dict]:
    """Status code and JSON payload for one ``POST /validate`` request."""
    if len(body) > max_body_bytes:
        return _error(413, f"body exceeds {max_body_bytes} bytes")
    if not schema_name:
        return _error(400, "missing 'schema' query parameter")
    doc = schemas.get(schema_name)
    if doc is None:
        return _error(404, f"unknown schema '{schema_name}'")
    try:
        events = json.loads(body.decode("utf-8-sig"))
    except (UnicodeDecodeError, json.JSONDecodeError) as exc:
        return _error(400, f"malformed JSON body: {exc}")
    if not isinstance(events, list):
        return _error(400, "body must be a JSON array of events")
    report = validate_events(events, doc)
    return (200 if report.valid else 422), report.to_dict()


def handle_health(schemas: Mapping[str, SchemaDocument]) -> tuple[int, dict]:
    return 200, {"schemas": sorted(schemas)}


def create_app(schemas: Mapping[str, SchemaDocument], max_body_bytes: int = DEFAULT_MAX_BODY):
    app = FastAPI(title="lei2json validator")

    @app.post("/validate")
    async def validate(request: Request):
        declared = request.headers.get("content-length")
        if declared and declared.isdigit() and int(declared) > max_body_bytes:
            status, payload = _error(413, f"body exceeds {max_body_bytes} bytes")
        else:
            body = await request.body()
            status, payload = await run_in_threadpool(
                handle_validate, schemas, request.query_params.get("schema"), body, max_body_bytes
            )
        return JSONResponse(payload, status_code=status)

    @app.get("/health")
    async def health():
        status, payload = handle_health(schemas)
        return JSONResponse(payload, status_code=status)

    return app


def run_server(schemas: Mapping[str, SchemaDocument], config: ServiceConfig, host: str = "0.0.0.0") -> None:
    import uvicorn

    log.info("serving schemas: %s", ", ".join(sorted(schemas)))
    uvicorn.run(create_app(schemas, config.max_body_bytes), host=host, port=config.port)
