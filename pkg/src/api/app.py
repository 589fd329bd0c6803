# src/api/app.py
import logging

from fastapi import FastAPI, Request
from fastapi.encoders import jsonable_encoder
from fastapi.exceptions import RequestValidationError
from fastapi.responses import JSONResponse
from starlette.exceptions import HTTPException as StarletteHTTPException

from ..errors import AdminLabError
from ..logging_config import configure_logging
from .api_response import APIResponse, admin_error_response, error_response
from .router import metrics_router, runs_router

logger = logging.getLogger(__name__)


# ----------------------------------------------------
# FastAPI приложение
# ----------------------------------------------------
def create_app() -> FastAPI:
    configure_logging()
    application = FastAPI(
        title="admin-lab API",
        version="0.1.0",
        description="HTTP API над мерами зависимости и сохранёнными прогонами",
    )
    _install_handlers(application)
    application.include_router(metrics_router)
    application.include_router(runs_router)

    @application.get("/health", response_model=APIResponse)
    async def health_check() -> APIResponse:
        return APIResponse(ok=True, data={"status": "ok"})

    return application


# ----------------------------------------------------
# Глобальные обработчики ошибок
# ----------------------------------------------------
def _install_handlers(application: FastAPI) -> None:

    @application.exception_handler(AdminLabError)
    async def admin_lab_error_handler(request: Request, exc: AdminLabError):
        status_code, body = admin_error_response(exc)
        if status_code >= 500:
            logger.error("Numeric failure in API: %s", exc.message)
        else:
            logger.warning("Rejected request %s: %s", request.url.path, exc.message)
        return JSONResponse(status_code=status_code, content=jsonable_encoder(body))

    @application.exception_handler(Exception)
    async def unhandled_exception_handler(request: Request, exc: Exception):
        logger.exception("Unhandled exception in API", exc_info=exc)
        return JSONResponse(
            status_code=500,
            content=error_response("internal_error", "Internal server error"),
        )

    @application.exception_handler(StarletteHTTPException)
    async def http_exception_handler(request: Request, exc: StarletteHTTPException):
        if exc.status_code == 404:
            return JSONResponse(
                status_code=404,
                content=error_response("not_found", "Resource not found", {"path": request.url.path}),
            )
        return JSONResponse(
            status_code=exc.status_code,
            content=error_response("http_error", str(exc.detail), {"status_code": exc.status_code}),
        )

    @application.exception_handler(RequestValidationError)
    async def validation_exception_handler(request: Request, exc: RequestValidationError):
        logger.warning("Validation error in API: %s", request.url.path)
        return JSONResponse(
            status_code=422,
            content=jsonable_encoder(
                error_response("validation_error", "Request validation error", {"errors": exc.errors()})
            ),
        )


app = create_app()

# Локальный запуск:
# uvicorn src.api.app:app --reload   (или: python main.py serve)
