"""HTTP service: registration, retrieval, preview, metadata download, query.

Request and response bodies mirror the definition JSON shapes one to one.
Errors use a uniform JSON body {httpStatus, code, message, details?} where
the code is a validation-violation code or a service error code. GET
endpoints content-negotiate between application/json and text/turtle.
"""

from __future__ import annotations

import json
from pathlib import Path
from typing import Any, Optional

from fastapi import FastAPI, Request, Response
from fastapi.responses import JSONResponse, PlainTextResponse
from fastapi.staticfiles import StaticFiles
from starlette.concurrency import run_in_threadpool

from .metadata import generate_metadata, render
from .ontology import (
    BadSlug,
    InvalidInstance,
    InvalidType,
    ShapeError,
    Violation,
    instance_from_json,
    instance_to_graph,
    type_from_json,
    type_to_graph,
)
from .query import evaluate, parse_query
from .rdf import ParseError, serialize_turtle
from .registry import (
    KIND_INSTANCE,
    KIND_TYPE,
    AlreadyExists,
    ConflictInUse,
    NotFound,
    Registry,
    RegistryEntry,
    UnknownType,
)

TURTLE_MEDIA = "text/turtle; charset=utf-8"


class ApiError(Exception):
    def __init__(self, status: int, code: str, message: str, details: Optional[list[Violation]] = None):
        super().__init__(message)
        self.status = status
        self.code = code
        self.message = message
        self.details = details


def _error_response(err: ApiError) -> JSONResponse:
    body: dict[str, Any] = {"httpStatus": err.status, "code": err.code, "message": err.message}
    if err.details:
        body["details"] = [{"code": v.code, "message": v.message} for v in err.details]
    return JSONResponse(status_code=err.status, content=body)


def _violations_error(violations: list[Violation]) -> ApiError:
    return ApiError(422, violations[0].code, violations[0].message, violations)


async def _json_body(request: Request) -> Any:
    content_type = request.headers.get("content-type", "")
    if content_type.split(";")[0].strip().lower() != "application/json":
        raise ApiError(415, "UNSUPPORTED_MEDIA_TYPE", "request body must be application/json")
    raw = await request.body()
    try:
        return json.loads(raw)
    except json.JSONDecodeError as exc:
        raise ApiError(422, "BAD_JSON", f"request body is not valid JSON: {exc.msg} (line {exc.lineno})")


def _negotiate(request: Request) -> str:
    """Pick 'json' or 'turtle' from the Accept header, first supported item wins."""
    accept = request.headers.get("accept")
    if not accept:
        return "json"
    for item in accept.split(","):
        media = item.split(";")[0].strip().lower()
        if media in ("application/json", "*/*", "application/*"):
            return "json"
        if media in ("text/turtle", "text/*"):
            return "turtle"
    raise ApiError(
        415, "UNSUPPORTED_MEDIA_TYPE", f"cannot produce {accept!r}; supported: application/json, text/turtle"
    )


def _entry_json(entry: RegistryEntry) -> dict[str, Any]:
    return {
        "kind": entry.kind,
        "id": entry.id,
        "iri": entry.iri.value,
        "graphIri": entry.graph_iri.value,
        "registeredAt": entry.registered_at,
        "tripleCount": len(entry.graph),
        "definition": entry.definition_json(),
    }


def _created_json(entry: RegistryEntry) -> dict[str, Any]:
    return {
        "id": entry.id,
        "iri": entry.iri.value,
        "graphIri": entry.graph_iri.value,
        "tripleCount": len(entry.graph),
    }


def _union_turtle(entries: list[RegistryEntry]) -> str:
    graph = None
    for entry in entries:
        graph = entry.graph if graph is None else graph.union(entry.graph)
    return serialize_turtle(graph) if graph is not None else ""


def create_app(registry: Registry, static_dir: Optional[Path] = None) -> FastAPI:
    app = FastAPI(title="ssnforge", version="0.1.0", docs_url=None, redoc_url=None)

    @app.exception_handler(ApiError)
    async def handle_api_error(_request: Request, exc: ApiError) -> JSONResponse:
        return _error_response(exc)

    def _collection_endpoint(kind: str):
        async def endpoint(request: Request):
            wants = _negotiate(request)
            entries = registry.list(kind)
            if wants == "turtle":
                return Response(content=_union_turtle(entries), media_type=TURTLE_MEDIA)
            return [_entry_json(e) for e in entries]

        return endpoint

    def _item_endpoint(kind: str):
        async def endpoint(request: Request, entry_id: str):
            wants = _negotiate(request)
            try:
                entry = registry.get(kind, entry_id)
            except NotFound as exc:
                raise ApiError(404, "NOT_FOUND", str(exc))
            if wants == "turtle":
                return Response(content=serialize_turtle(entry.graph), media_type=TURTLE_MEDIA)
            return _entry_json(entry)

        return endpoint

    app.get("/api/types")(_collection_endpoint(KIND_TYPE))
    app.get("/api/instances")(_collection_endpoint(KIND_INSTANCE))
    app.get("/api/types/{entry_id}")(_item_endpoint(KIND_TYPE))
    app.get("/api/instances/{entry_id}")(_item_endpoint(KIND_INSTANCE))

    @app.post("/api/types", status_code=201)
    async def create_type(request: Request):
        data = await _json_body(request)
        try:
            t = type_from_json(data)
        except ShapeError as exc:
            raise ApiError(422, "BAD_SHAPE", str(exc))
        try:
            entry = await run_in_threadpool(registry.register_type, t)
        except InvalidType as exc:
            raise _violations_error(exc.violations)
        except AlreadyExists as exc:
            raise ApiError(409, "ALREADY_EXISTS", str(exc))
        return _created_json(entry)

    @app.put("/api/types/{entry_id}")
    async def update_type(request: Request, entry_id: str):
        data = await _json_body(request)
        try:
            t = type_from_json(data)
        except ShapeError as exc:
            raise ApiError(422, "BAD_SHAPE", str(exc))
        if t.id != entry_id:
            raise ApiError(422, "ID_MISMATCH", f"body id {t.id!r} does not match path id {entry_id!r}")
        try:
            entry = await run_in_threadpool(registry.update_type, t)
        except InvalidType as exc:
            raise _violations_error(exc.violations)
        except NotFound as exc:
            raise ApiError(404, "NOT_FOUND", str(exc))
        except ConflictInUse as exc:
            raise ApiError(409, "CONFLICT_IN_USE", str(exc))
        return _created_json(entry)

    @app.delete("/api/types/{entry_id}", status_code=204)
    async def delete_type(entry_id: str):
        try:
            await run_in_threadpool(registry.remove, KIND_TYPE, entry_id)
        except NotFound as exc:
            raise ApiError(404, "NOT_FOUND", str(exc))
        except ConflictInUse as exc:
            raise ApiError(409, "CONFLICT_IN_USE", str(exc))
        return Response(status_code=204)

    @app.post("/api/instances", status_code=201)
    async def create_instance(request: Request):
        data = await _json_body(request)
        try:
            i = instance_from_json(data)
        except ShapeError as exc:
            raise ApiError(422, "BAD_SHAPE", str(exc))
        try:
            entry = await run_in_threadpool(registry.register_instance, i)
        except UnknownType as exc:
            raise ApiError(422, "UNKNOWN_TYPE", str(exc))
        except InvalidInstance as exc:
            raise _violations_error(exc.violations)
        except AlreadyExists as exc:
            raise ApiError(409, "ALREADY_EXISTS", str(exc))
        return _created_json(entry)

    @app.delete("/api/instances/{entry_id}", status_code=204)
    async def delete_instance(entry_id: str):
        try:
            await run_in_threadpool(registry.remove, KIND_INSTANCE, entry_id)
        except NotFound as exc:
            raise ApiError(404, "NOT_FOUND", str(exc))
        return Response(status_code=204)

    @app.get("/api/instances/{entry_id}/metadata")
    async def instance_metadata(entry_id: str):
        try:
            instance_entry = registry.get(KIND_INSTANCE, entry_id)
            type_entry = registry.get(KIND_TYPE, instance_entry.definition.type_id)
        except NotFound as exc:
            raise ApiError(404, "NOT_FOUND", str(exc))
        try:
            config = generate_metadata(instance_entry.definition, type_entry.definition, registry.namespaces)
        except InvalidInstance as exc:
            # the type was widened after this instance registered
            raise _violations_error(exc.violations)
        return PlainTextResponse(render(config))

    @app.post("/api/preview/type")
    async def preview_type(request: Request):
        data = await _json_body(request)
        try:
            t = type_from_json(data)
            graph = type_to_graph(t, registry.namespaces)
        except ShapeError as exc:
            raise ApiError(422, "BAD_SHAPE", str(exc))
        except InvalidType as exc:
            raise _violations_error(exc.violations)
        except BadSlug as exc:
            raise ApiError(422, "BAD_SLUG", str(exc))
        return Response(content=serialize_turtle(graph), media_type=TURTLE_MEDIA)

    @app.post("/api/preview/instance")
    async def preview_instance(request: Request):
        data = await _json_body(request)
        try:
            i = instance_from_json(data)
        except ShapeError as exc:
            raise ApiError(422, "BAD_SHAPE", str(exc))
        try:
            type_entry = registry.get(KIND_TYPE, i.type_id)
        except NotFound:
            raise ApiError(422, "UNKNOWN_TYPE", f"instance references unregistered type {i.type_id!r}")
        try:
            graph = instance_to_graph(i, type_entry.definition, registry.namespaces)
        except InvalidInstance as exc:
            raise _violations_error(exc.violations)
        except BadSlug as exc:
            raise ApiError(422, "BAD_SLUG", str(exc))
        return Response(content=serialize_turtle(graph), media_type=TURTLE_MEDIA)

    @app.post("/api/query")
    async def query(request: Request):
        content_type = request.headers.get("content-type", "")
        if content_type.split(";")[0].strip().lower() != "text/plain":
            raise ApiError(415, "UNSUPPORTED_MEDIA_TYPE", "query body must be text/plain")
        raw = await request.body()
        try:
            text = raw.decode("utf-8")
        except UnicodeDecodeError:
            raise ApiError(400, "SYNTAX_ERROR", "query body is not valid UTF-8")
        try:
            q = parse_query(text)
        except ParseError as exc:
            raise ApiError(400, "SYNTAX_ERROR", str(exc))
        result = await run_in_threadpool(evaluate, q, registry.dataset)
        return result.to_json()

    @app.get("/health")
    async def health():
        types, instances = registry.counts()
        return {"status": "ok", "types": types, "instances": instances}

    if static_dir is not None:
        app.mount("/", StaticFiles(directory=static_dir, html=True), name="editor")

    return app
