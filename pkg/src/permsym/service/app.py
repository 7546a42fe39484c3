"""FastAPI application wrapping the command layer.

Domain errors map to structured JSON bodies with a stable ``error`` tag
that clients translate into exit codes: ``validation`` (422),
``degenerate_geometry`` (400) and ``budget_exceeded`` (400).
"""

from __future__ import annotations

from fastapi import FastAPI, Request
from fastapi.responses import JSONResponse

from .. import __version__, commands
from ..errors import BudgetExceeded, GeometryError, PermsymError, ValidationError
from .models import (
    CspRequest,
    ExchangeRequest,
    Health,
    Report,
    SearchRequest,
    VerifyRequest,
)


def _error_response(status: int, tag: str, exc: Exception) -> JSONResponse:
    return JSONResponse(status_code=status, content={"error": tag, "detail": str(exc)})


def create_app() -> FastAPI:
    app = FastAPI(title="permsym", version=__version__)

    @app.exception_handler(PermsymError)
    async def _domain_error(request: Request, exc: PermsymError) -> JSONResponse:
        if isinstance(exc, ValidationError):
            return _error_response(422, "validation", exc)
        if isinstance(exc, GeometryError):
            return _error_response(400, "degenerate_geometry", exc)
        if isinstance(exc, BudgetExceeded):
            return _error_response(400, "budget_exceeded", exc)
        return _error_response(500, "internal", exc)

    @app.get("/health", response_model=Health)
    async def health() -> Health:
        return Health(status="ok", version=__version__)

    @app.post("/verify", response_model=Report)
    async def verify(request: VerifyRequest) -> Report:
        return Report.model_validate(
            commands.cmd_verify(request.config.as_config_data(), request.tolerance)
        )

    @app.post("/exchange", response_model=Report)
    async def exchange(request: ExchangeRequest) -> Report:
        return Report.model_validate(
            commands.cmd_exchange(
                request.config.as_config_data(), request.pair, request.tolerance
            )
        )

    @app.post("/csp", response_model=Report)
    async def csp(request: CspRequest) -> Report:
        return Report.model_validate(
            commands.cmd_csp(request.config.as_config_data(), request.tolerance)
        )

    @app.post("/search", response_model=Report)
    async def search(request: SearchRequest) -> Report:
        return Report.model_validate(
            commands.cmd_search(
                request.config.as_config_data(), request.max_rank, request.tolerance
            )
        )

    @app.get("/impossibility", response_model=Report)
    async def impossibility() -> Report:
        return Report.model_validate(commands.cmd_impossibility())

    @app.get("/breakdown", response_model=Report)
    async def breakdown() -> Report:
        return Report.model_validate(commands.cmd_breakdown())

    return app


app = create_app()
