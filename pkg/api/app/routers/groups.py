"""Catalog endpoints."""

from fastapi import APIRouter, HTTPException

from app.logger import logger
from src.catalog import CATALOG, catalog, group_document
from src.errors import UnknownGroup
from src.schemas import GroupDocument

from .schemas import ErrorResponse, GroupSummary

router = APIRouter(tags=["groups"])


@router.get("/groups", response_model=list[GroupSummary])
async def list_groups() -> list[GroupSummary]:
    """List the 27 full cubic groups."""
    return [
        GroupSummary(
            name=spec.name,
            lattice=spec.lattice,
            s=spec.s,
            m=spec.m,
            has_reflections=spec.has_reflections,
            published_bound=spec.published_bound,
            family=spec.family,
        )
        for spec in CATALOG.values()
    ]


@router.get(
    "/groups/{name:path}",
    response_model=GroupDocument,
    responses={404: {"model": ErrorResponse}},
)
async def get_group(name: str) -> GroupDocument:
    """Group-exchange document of one group.

    The path accepts names with a slash, e.g. ``/api/groups/F2/d-3``.

    Raises:
        HTTPException: 404 if the group is not in the catalog.
    """
    try:
        spec = catalog(name)
    except UnknownGroup as e:
        logger.info("Unknown group requested", name=name)
        raise HTTPException(status_code=404, detail=str(e)) from e
    return group_document(spec)
