"""Pydantic schemas for API request and response models."""

from fractions import Fraction

from pydantic import BaseModel, Field, field_validator

from src.schemas import CellDocument, RegionFamilyName


class HealthResponse(BaseModel):
    """Response model for health check endpoint.

    Attributes:
        status: Health status (e.g., "healthy")
        service: Service name
        version: Service version
    """

    status: str = Field(..., description="Health status")
    service: str = Field(..., description="Service name")
    version: str = Field(..., description="Service version")

    model_config = {
        "json_schema_extra": {
            "example": {
                "status": "healthy",
                "service": "stereolab-api",
                "version": "0.1.0",
            }
        }
    }


class GroupSummary(BaseModel):
    """One catalog row."""

    name: str = Field(..., description="Catalog name, e.g. P4_232")
    lattice: str = Field(..., description="Bravais lattice type (P, I or F)")
    s: int = Field(..., description="Order of the stabilizer of the base tetrahedron")
    m: int = Field(..., description="1 if the group mixes the two tetrahedron colors")
    has_reflections: bool
    published_bound: int | None = Field(None, description="Published facet bound, if any")
    family: RegionFamilyName | None = Field(None, description="Influence-region family")


class BoundEntry(BaseModel):
    """Facet bounds of one catalog group.

    Attributes:
        group_name: Catalog name.
        first_bound: (7 + 4m) s + 3.
        refined_bound: Influence-region bound, when a region family applies.
        bound: The best bound the engine certifies.
        published_bound: Published value, if any.
        provenance: How ``bound`` was obtained.
    """

    group_name: str
    first_bound: int
    refined_bound: int | None = None
    bound: int
    published_bound: int | None = None
    provenance: str


class CellRequest(BaseModel):
    """Request model for the cells endpoint."""

    group: str = Field(..., min_length=1, description="Catalog name of the group")
    point: list[str] = Field(
        ...,
        min_length=3,
        max_length=3,
        description='Base point as three rationals, e.g. ["1/2", "1/8", "3/8"]',
    )

    model_config = {
        "json_schema_extra": {"example": {"group": "P23", "point": ["3/5", "-1/10", "3/10"]}}
    }

    @field_validator("point")
    @classmethod
    def coordinates_rational(cls, value: list[str]) -> list[str]:
        """Validate that every coordinate parses as a rational number."""
        for text in value:
            try:
                Fraction(text)
            except (ValueError, ZeroDivisionError) as e:
                raise ValueError(f"Not a rational number: {text!r}") from e
        return value

    def coordinates(self) -> tuple[Fraction, Fraction, Fraction]:
        x, y, z = (Fraction(text) for text in self.point)
        return (x, y, z)


class CellResponse(CellDocument):
    """Serialized Dirichlet stereohedron plus cache status."""

    cached: bool = Field(False, description="Whether this cell was served from cache")


class ErrorResponse(BaseModel):
    """Response model for error responses.

    Attributes:
        detail: Error message or description
    """

    detail: str = Field(..., description="Error message or description")

    model_config = {"json_schema_extra": {"example": {"detail": "Unknown group: P99"}}}
