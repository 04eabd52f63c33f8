"""FastAPI application.

Initializes the FastAPI app with CORS, request tracing, and routers.
"""

from collections.abc import AsyncGenerator
from contextlib import asynccontextmanager

from fastapi import FastAPI
from fastapi.middleware.cors import CORSMiddleware

from app import __version__
from app.dependencies import build_cell_cache, get_cell_cache
from app.logger import logger
from app.middleware import add_request_id_header
from app.routers import bounds, cells, groups, health
from app.settings import get_settings


@asynccontextmanager
async def lifespan(app: FastAPI) -> AsyncGenerator[None, None]:
    """Wire the cell cache dependency once at startup."""
    settings = get_settings()
    logger.info("Starting up", environment=settings.environment)
    cache = build_cell_cache(settings.cell_cache_size)
    app.dependency_overrides[get_cell_cache] = lambda: cache
    yield
    app.dependency_overrides.clear()


app = FastAPI(
    title="Stereolab API",
    version=__version__,
    description="Dirichlet stereohedra and facet bounds of the full cubic space groups",
    lifespan=lifespan,
)

app.add_middleware(
    CORSMiddleware,
    allow_origins=get_settings().cors_origins,
    allow_credentials=True,
    allow_methods=["GET", "POST"],
    allow_headers=["*"],
)

app.middleware("http")(add_request_id_header)

app.include_router(health.router, prefix="/api")
app.include_router(groups.router, prefix="/api")
app.include_router(bounds.router, prefix="/api")
app.include_router(cells.router, prefix="/api")
