"""Root conftest.py with shared fixtures for all tests."""

from fractions import Fraction

import pytest

from src.catalog import FullGroupSpec, catalog
from src.geometry import Point3
from src.lattice import V1, V2, V3, V4
from src.regions import RegionFamily, computed_region
from src.settings import get_settings

# Interior points of T^A on either side of the plane z = 1/4.
UPPER_POINT = Point3.of("23/40", "-11/40", "3/8")
LOWER_POINT = Point3.of("11/20", "-1/10", "3/20")

UNIT_CUBE = (
    Point3.of(0, 0, 0),
    Point3.of(1, 0, 0),
    Point3.of(0, 1, 0),
    Point3.of(0, 0, 1),
    Point3.of(1, 1, 0),
    Point3.of(1, 0, 1),
    Point3.of(0, 1, 1),
    Point3.of(1, 1, 1),
)


@pytest.fixture(autouse=True)
def _fresh_settings():
    """Drop cached settings so monkeypatched env vars take effect."""
    get_settings.cache_clear()
    yield
    get_settings.cache_clear()


@pytest.fixture
def base_vertices() -> tuple[Point3, Point3, Point3, Point3]:
    """Vertices v1..v4 of the base tetrahedron T."""
    return (V1, V2, V3, V4)


@pytest.fixture
def upper_point() -> Point3:
    return UPPER_POINT


@pytest.fixture
def lower_point() -> Point3:
    return LOWER_POINT


@pytest.fixture
def eighth() -> Fraction:
    return Fraction(1, 8)


@pytest.fixture
def p4232() -> FullGroupSpec:
    return catalog("P4_232")


@pytest.fixture
def p23() -> FullGroupSpec:
    return catalog("P23")


@pytest.fixture
def i23() -> FullGroupSpec:
    return catalog("I23")


@pytest.fixture
def f23() -> FullGroupSpec:
    return catalog("F23")


@pytest.fixture(scope="session")
def order4_region() -> RegionFamily:
    """Influence region of the order-four family (computed once per session)."""
    return computed_region("order4")


@pytest.fixture(scope="session")
def transversal_region() -> RegionFamily:
    """Influence region of the transversal order-two family."""
    return computed_region("transversal_order2")
