"""Shared test fixtures for API tests."""

from collections.abc import Generator

import pytest
from fastapi.testclient import TestClient

from app.cache import CellCache
from app.dependencies import get_cell_cache
from app.main import app

# Interior point of T^A (weights 4:3:2:1 on v1, m12, m13, m24), upper half.
GENERIC_POINT = ["23/40", "-11/40", "3/8"]


@pytest.fixture
def cell_cache() -> CellCache:
    """A small, empty cell cache per test."""
    return CellCache(max_size=4)


@pytest.fixture
def client(cell_cache: CellCache) -> Generator[TestClient, None, None]:
    """Test client whose cell cache is owned by the test.

    Yields:
        TestClient instance with overridden dependency.
    """
    # Create test client first (lifespan wires the real cache),
    # then override so each test starts from an empty one.
    with TestClient(app) as test_client:
        app.dependency_overrides[get_cell_cache] = lambda: cell_cache
        yield test_client

    app.dependency_overrides.clear()
