"""Health check endpoint."""

from fastapi import APIRouter

from app import __version__

from .schemas import HealthResponse

router = APIRouter(tags=["health"])


@router.get("/health", response_model=HealthResponse)
async def health_check() -> HealthResponse:
    return HealthResponse(status="healthy", service="stereolab-api", version=__version__)
