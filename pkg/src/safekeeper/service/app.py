"""HTTP service: submission, retrieval, overview, chain head, tool roster.

Five endpoints, JSON bodies, strict parsing:

    POST /api/log         signed envelope in, receipt out (no bearer token)
    GET  /api/log         filtered page of records (any role, force-scoped)
    GET  /api/overview    seven-day stats for the calling owner
    GET  /api/chain/head  current head hash and length (admin)
    POST /api/tools       register a submitting tool (admin)

plus GET /api/health for liveness probes. Errors come back as
``{"error": <class>, "detail": <text>}``; submission rejections keep the
verifier's reason string in ``error`` so clients can tell them apart.
"""

from __future__ import annotations

import dataclasses
from typing import Any, Optional

from fastapi import Body, FastAPI, Request, Response
from fastapi.exceptions import RequestValidationError
from fastapi.middleware.cors import CORSMiddleware
from fastapi.responses import JSONResponse

from safekeeper.auth.envelope import (
    SKEW_WINDOW_S,
    EnvelopeRejected,
    RejectReason,
    verify_envelope,
)
from safekeeper.auth.nonces import NonceCache
from safekeeper.auth.principals import Principal, Role, TokenTable
from safekeeper.auth.tools import DuplicateToolError, ToolIdentity, ToolRegistry
from safekeeper.core.query import DEFAULT_PAGE_SIZE, QueryFilter, query
from safekeeper.core.stats import compute_overview
from safekeeper.core.timeutil import from_unix, utc_now
from safekeeper.service import wire
from safekeeper.service.config import ServiceConfig
from safekeeper.service.storage import TOOLS_FILE, LogStore, recover_on_startup
from safekeeper.service.wire import WireError

_REJECT_STATUS = {
    RejectReason.UNKNOWN_TOOL: 401,
    RejectReason.INVALID_SIGNATURE: 401,
    RejectReason.STALE_TIMESTAMP: 403,
    RejectReason.REPLAYED_NONCE: 409,
}

_FILTER_PARAMS = (
    "owner",
    "responsible",
    "tool",
    "kind",
    "text",
    "from",
    "to",
    "page_index",
    "page_size",
)


class ApiError(Exception):
    def __init__(self, status: int, error: str, detail: str) -> None:
        super().__init__(f"{error}: {detail}")
        self.status = status
        self.error = error
        self.detail = detail


def create_app(
    store: LogStore,
    registry: ToolRegistry,
    nonces: NonceCache,
    tokens: TokenTable,
    skew_window_s: int = SKEW_WINDOW_S,
) -> FastAPI:
    app = FastAPI(title="safekeeper", docs_url=None, redoc_url=None, openapi_url=None)
    app.state.store = store
    app.state.registry = registry
    app.state.nonces = nonces
    app.state.tokens = tokens

    # The dashboard is served from a different origin during development.
    app.add_middleware(
        CORSMiddleware,
        allow_origins=["*"],
        allow_methods=["GET", "POST"],
        allow_headers=["Authorization", "Content-Type"],
    )

    @app.exception_handler(ApiError)
    def _api_error(_request: Request, exc: ApiError) -> JSONResponse:
        return JSONResponse(
            status_code=exc.status, content={"error": exc.error, "detail": exc.detail}
        )

    @app.exception_handler(RequestValidationError)
    def _validation_error(_request: Request, exc: RequestValidationError) -> JSONResponse:
        return JSONResponse(
            status_code=400,
            content={"error": "malformed", "detail": "request body is not valid JSON"},
        )

    @app.exception_handler(Exception)
    def _unhandled(_request: Request, exc: Exception) -> JSONResponse:
        return JSONResponse(
            status_code=500,
            content={"error": "internal", "detail": exc.__class__.__name__},
        )

    def _principal(request: Request) -> Principal:
        header = request.headers.get("authorization", "")
        scheme, _, token = header.partition(" ")
        if scheme.lower() != "bearer" or not token:
            raise ApiError(401, "unauthorized", "missing bearer token")
        principal = tokens.authenticate(token)
        if principal is None:
            raise ApiError(401, "unauthorized", "unrecognized token")
        return principal

    def _require_role(principal: Principal, role: Role) -> None:
        if principal.role is not role:
            raise ApiError(403, "forbidden", f"requires {role.value} role")

    @app.get("/api/health")
    def health() -> dict[str, str]:
        return {"status": "ok"}

    @app.post("/api/log")
    def submit(payload: Any = Body(None)) -> dict[str, Any]:
        try:
            envelope = wire.envelope_from_wire(payload)
        except WireError as exc:
            raise ApiError(400, "malformed", str(exc)) from exc
        try:
            verify_envelope(
                envelope, registry.lookup_key, nonces, skew_window_s=skew_window_s
            )
        except EnvelopeRejected as exc:
            raise ApiError(
                _REJECT_STATUS[exc.reason], exc.reason.value, exc.detail
            ) from exc
        try:
            receipt = store.submit(envelope)
        except OSError as exc:
            raise ApiError(500, "storage-failure", "entry was not recorded") from exc
        return wire.receipt_to_wire(receipt)

    def _parse_filter(request: Request) -> QueryFilter:
        params = request.query_params
        unknown = [key for key in params.keys() if key not in _FILTER_PARAMS]
        if unknown:
            raise ApiError(
                400, "malformed", f"unknown query parameters: {', '.join(sorted(unknown))}"
            )

        def text_param(name: str) -> Optional[str]:
            value = params.get(name)
            if value is None:
                return None
            if not value:
                raise ApiError(400, "malformed", f"{name} must be non-empty")
            return value

        def int_param(name: str) -> Optional[int]:
            value = params.get(name)
            if value is None:
                return None
            try:
                return int(value, 10)
            except ValueError as exc:
                raise ApiError(400, "malformed", f"{name} must be an integer") from exc

        try:
            ts_from = int_param("from")
            ts_to = int_param("to")
            page_index = int_param("page_index")
            page_size = int_param("page_size")
            return QueryFilter(
                owner=text_param("owner"),
                responsible=text_param("responsible"),
                tool=text_param("tool"),
                kind=text_param("kind"),
                text=text_param("text"),
                ts_from=None if ts_from is None else from_unix(ts_from),
                ts_to=None if ts_to is None else from_unix(ts_to),
                page_index=0 if page_index is None else page_index,
                page_size=DEFAULT_PAGE_SIZE if page_size is None else page_size,
            )
        except ApiError:
            raise
        except (ValueError, OverflowError, OSError) as exc:
            raise ApiError(400, "malformed", str(exc)) from exc

    def _scoped(criteria: QueryFilter, principal: Principal) -> QueryFilter:
        # Scope is imposed, not negotiated: whatever filter a caller sends,
        # owners only ever see entries about their data and consumers only
        # entries they are responsible for.
        if principal.role is Role.OWNER:
            return dataclasses.replace(criteria, owner=principal.subject)
        if principal.role is Role.CONSUMER:
            return dataclasses.replace(criteria, responsible=principal.subject)
        return criteria

    @app.get("/api/log")
    def get_log(request: Request) -> dict[str, Any]:
        principal = _principal(request)
        criteria = _scoped(_parse_filter(request), principal)
        page = query(store.records(), criteria)
        return {
            "items": [wire.record_to_wire(record) for record in page.records],
            "total": page.total,
            "page_index": page.page_index,
            "page_size": page.page_size,
        }

    @app.get("/api/overview")
    def get_overview(request: Request) -> dict[str, Any]:
        principal = _principal(request)
        _require_role(principal, Role.OWNER)
        stats = compute_overview(store.records(), owner=principal.subject)
        return wire.overview_to_wire(stats)

    @app.get("/api/chain/head")
    def get_chain_head(request: Request) -> dict[str, Any]:
        principal = _principal(request)
        _require_role(principal, Role.ADMIN)
        return wire.chain_head_to_wire(store.state)

    @app.post("/api/tools")
    def register_tool(request: Request, payload: Any = Body(None)) -> dict[str, Any]:
        principal = _principal(request)
        _require_role(principal, Role.ADMIN)
        try:
            tool_id, display_name, key = wire.tool_registration_from_wire(payload)
            identity = ToolIdentity(
                tool_id=tool_id, display_name=display_name, verification_key=key
            )
        except WireError as exc:
            raise ApiError(400, "malformed", str(exc)) from exc
        try:
            registry.register(identity)
        except DuplicateToolError as exc:
            raise ApiError(409, "duplicate-tool", str(exc)) from exc
        return {
            "tool_id": identity.tool_id,
            "display_name": identity.display_name,
            "verification_key": identity.verification_key.hex(),
        }

    return app


def build_service(config: ServiceConfig) -> FastAPI:
    """Wire a full service from config: fail-closed recovery, then app.

    Startup refuses to serve a store that fails verification. The replay
    cache is rebuilt from the surviving records so a restart cannot be
    used to slip a captured envelope back in.
    """
    registry = ToolRegistry(config.data_dir / TOOLS_FILE)
    store = recover_on_startup(config.data_dir, registry.lookup_key)
    nonces = NonceCache(retention_s=config.nonce_retention_s)
    nonces.seed(
        (
            (
                record.envelope.payload.tool_id,
                record.envelope.payload.nonce,
                record.envelope.payload.sent_at,
            )
            for record in store.records()
        ),
        now=utc_now(),
    )
    tokens = TokenTable(
        (entry.token, entry.subject, entry.role) for entry in config.tokens
    )
    return create_app(
        store, registry, nonces, tokens, skew_window_s=config.skew_window_s
    )
