"""Dependency injection for the cell cache.

``build_cell_cache()`` is called once at startup; ``get_cell_cache()`` is a
stub that lifespan overrides via ``app.dependency_overrides``.
"""

from app.cache import CellCache
from app.logger import logger


def build_cell_cache(max_size: int) -> CellCache:
    """Create the process-wide cell cache (called once at startup)."""
    logger.info("Cell cache ready", max_size=max_size)
    return CellCache(max_size)


def get_cell_cache() -> CellCache:
    """Dependency stub, overridden by lifespan at startup."""
    raise RuntimeError("get_cell_cache() called before lifespan wired the dependency")
