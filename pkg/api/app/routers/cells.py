"""On-demand Dirichlet stereohedra."""

from fastapi import APIRouter, Depends, HTTPException
from fastapi.concurrency import run_in_threadpool

from app.cache import CellCache, hash_cell_request, normalize_cell_request
from app.dependencies import get_cell_cache
from app.logger import logger
from app.settings import Settings, get_settings
from src.catalog import catalog
from src.dirichlet import dirichlet_cell
from src.errors import (
    InvalidConfiguration,
    NontrivialStabilizer,
    OnSubdomainBoundary,
    StereolabError,
    UnknownGroup,
)
from src.geometry import Point3

from .schemas import CellRequest, CellResponse, ErrorResponse

router = APIRouter(tags=["cells"])


@router.post(
    "/cells",
    response_model=CellResponse,
    responses={
        404: {"model": ErrorResponse},
        409: {"model": ErrorResponse},
        422: {"model": ErrorResponse},
        500: {"model": ErrorResponse},
    },
)
async def create_cell(
    request_body: CellRequest,
    cache: CellCache = Depends(get_cell_cache),
    settings: Settings = Depends(get_settings),
) -> CellResponse:
    """Compute the Dirichlet stereohedron of a base point.

    Results are cached by the normalized request, so equal rationals written
    differently share one entry.

    Raises:
        HTTPException: 404 for an unknown group, 409 for a base point with a
            nontrivial stabilizer or on a subdomain boundary, 422 for a
            coordinate denominator above ``max_denominator``.
    """
    point = request_body.coordinates()
    if any(c.denominator > settings.max_denominator for c in point):
        raise HTTPException(
            status_code=422,
            detail=f"Coordinate denominators must not exceed {settings.max_denominator}",
        )
    try:
        spec = catalog(request_body.group)
    except UnknownGroup as e:
        raise HTTPException(status_code=404, detail=str(e)) from e

    key = hash_cell_request(normalize_cell_request(spec.name, point))
    cached = cache.get(key)
    if cached is not None:
        logger.info("Cell cache hit", group=spec.name, key=key[:12])
        return CellResponse(**cached.model_dump(), cached=True)

    try:
        report = await run_in_threadpool(dirichlet_cell, spec, Point3(*point))
    except (NontrivialStabilizer, OnSubdomainBoundary) as e:
        raise HTTPException(status_code=409, detail=str(e)) from e
    except InvalidConfiguration as e:
        raise HTTPException(status_code=422, detail=str(e)) from e
    except StereolabError as e:
        logger.exception("Cell computation failed", group=spec.name)
        raise HTTPException(status_code=500, detail="Cell computation failed") from e

    document = report.to_document()
    cache.put(key, document)
    logger.info("Cell computed", group=spec.name, facets=report.facet_count)
    return CellResponse(**document.model_dump(), cached=False)
