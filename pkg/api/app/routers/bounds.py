"""Bound ledger endpoint."""

from functools import lru_cache

from fastapi import APIRouter

from src.bounds import bound_ledger, first_bound
from src.catalog import CATALOG

from .schemas import BoundEntry

router = APIRouter(tags=["bounds"])


@lru_cache(maxsize=1)
def _bound_entries() -> tuple[BoundEntry, ...]:
    entries = []
    for spec in CATALOG.values():
        ledger = bound_ledger(spec)
        entries.append(
            BoundEntry(
                group_name=spec.name,
                first_bound=first_bound(spec.s, spec.m),
                refined_bound=ledger.bound if spec.family is not None else None,
                bound=ledger.bound,
                published_bound=spec.published_bound,
                provenance=ledger.provenance,
            )
        )
    return tuple(entries)


@router.get("/bounds", response_model=list[BoundEntry])
async def list_bounds() -> list[BoundEntry]:
    """Facet bounds of every catalog group, computed once per process."""
    return list(_bound_entries())
