"""Data schemas for the stereolab engine.

This module contains the shared type aliases and the pydantic models used at
the outward-facing boundary (experiment configuration, exchange documents):
- Type aliases (Letter, Color, RegionFamilyName, HalfFilter, ...)
- Validated parameter models (ExperimentConfig, HelixParams)
- JSON exchange documents (GroupDocument, CellDocument, LedgerDocument, ...)

Exact rationals cross the boundary as "num/den" strings.
"""

from fractions import Fraction
from typing import Literal

from pydantic import BaseModel, ConfigDict, Field, field_validator, model_validator

# Fundamental subdomain letters, cyclic around the base tetrahedron
Letter = Literal["A", "B", "C", "D", "E", "F", "G", "H"]
LETTERS: tuple[Letter, ...] = ("A", "B", "C", "D", "E", "F", "G", "H")

Color = Literal["black", "white"]

RegionFamilyName = Literal["order4", "transversal_order2"]

# Side of the plane bisecting the base tetrahedron between edges v1v3 and v2v4
HalfFilter = Literal["all", "upper", "lower"]

NeighborStatus = Literal["always", "sometimes", "never"]

CandidateSourceName = Literal["influence_region", "safe_radius"]

OutputFormat = Literal["json", "csv", "off"]

SpecialOrbitGroup = Literal["F4_132", "F2/d-3"]


def _parse_rational(value: str) -> Fraction:
    try:
        return Fraction(value)
    except (ValueError, ZeroDivisionError) as e:
        raise ValueError(f"Not a rational number: {value!r}") from e


class ExperimentConfig(BaseModel):
    """Parameters of a seeded sampling experiment."""

    model_config = ConfigDict(frozen=True)

    group_name: str = Field(description="Catalog name of the group", examples=["P4_232"])
    sample_count: int = Field(default=25, ge=1, description="Number of base points")
    seed: int = Field(
        default=0,
        ge=-(2**63),
        lt=2**63,
        description="Seed of the deterministic rational sampler",
    )
    denominator: int = Field(
        default=20000, ge=100, description="Common denominator of sampled coordinates"
    )
    halfspace_filter: HalfFilter = Field(
        default="all", description="Restrict base points to one side of the bisecting plane"
    )


class HelixParams(BaseModel):
    """Base point (alpha, -beta, h) of the helix orbit, in the shifted helix frame."""

    model_config = ConfigDict(frozen=True)

    alpha: str = Field(description="First horizontal coordinate", examples=["1/8"])
    beta: str = Field(description="Second horizontal coordinate (negated)", examples=["1/4"])
    h: str = Field(description="Height above the horizontal mirror plane", examples=["1/8"])

    @field_validator("alpha", "beta", "h")
    @classmethod
    def must_be_rational(cls, value: str) -> str:
        _parse_rational(value)
        return value

    @model_validator(mode="after")
    def check_generic_strip(self) -> "HelixParams":
        alpha, beta, h = self.values()
        if not 0 < h < Fraction(1, 4):
            raise ValueError("h must satisfy 0 < h < 1/4")
        if not 0 < alpha < beta:
            raise ValueError("alpha and beta must satisfy 0 < alpha < beta")
        return self

    def values(self) -> tuple[Fraction, Fraction, Fraction]:
        return (
            _parse_rational(self.alpha),
            _parse_rational(self.beta),
            _parse_rational(self.h),
        )


class IsometryDocument(BaseModel):
    """An isometry as twelve "num/den" strings (row-major linear part, then translation)."""

    entries: list[str] = Field(min_length=12, max_length=12)
    text: str = Field(description="Symbolic image of (x, y, z)", examples=["(1-x, -y, z)"])


class GroupDocument(BaseModel):
    """Group-exchange document of one catalog entry."""

    name: str
    s: int = Field(description="Order of the stabilizer of the base tetrahedron")
    m: int = Field(description="1 if the group mixes the two tetrahedron colors")
    has_reflections: bool
    lattice: Literal["P", "I", "F"]
    translation_basis: list[list[str]]
    generators: list[IsometryDocument]
    occupied_letters_base: list[Letter]
    occupied_letters_neighbor: list[Letter]

    model_config = ConfigDict(
        json_schema_extra={
            "examples": [
                {
                    "name": "I23",
                    "s": 2,
                    "m": 1,
                    "has_reflections": False,
                    "lattice": "I",
                    "translation_basis": [["-1/2", "1/2", "1/2"]],
                    "generators": [],
                    "occupied_letters_base": ["A", "E"],
                    "occupied_letters_neighbor": ["C", "G"],
                }
            ]
        }
    )


class NeighborDocument(BaseModel):
    """One facet-owning orbit point of a Dirichlet stereohedron."""

    point: list[str]
    label: str | None = Field(description="Fundamental subdomain label, None on a boundary")
    witness: IsometryDocument
    halfspace: list[int] = Field(description="Bisector as integers (a, b, c, d): a.x <= d")


class CellDocument(BaseModel):
    """Serialized Dirichlet stereohedron report."""

    group_name: str
    base_point: list[str]
    facet_count: int
    candidate_source: CandidateSourceName
    safe_radius: str | None = None
    vertices: list[list[str]]
    facets: list[list[int]]
    neighbors: list[NeighborDocument]


class LedgerRow(BaseModel):
    """One letter-orbit line of a bound ledger."""

    letters: str
    count: int
    pair_reductions: int
    contribution: int


class LedgerDocument(BaseModel):
    """Serialized bound ledger."""

    group_name: str
    family: RegionFamilyName | None
    rows: list[LedgerRow]
    reduction_pairs: list[list[str]]
    bound: int
    provenance: str


class SampleDocument(BaseModel):
    """One base point of a sampling experiment."""

    sample_id: int
    point: list[str]
    half: Literal["upper", "lower"]
    facet_count: int
    neighbor_labels: list[str]


class ExperimentDocument(BaseModel):
    """Serialized sampling experiment."""

    config: ExperimentConfig
    histogram: dict[int, int] = Field(description="Facet count -> number of samples")
    classification: dict[str, NeighborStatus]
    per_half: dict[str, dict[str, NeighborStatus]]
    lemma_checks: dict[str, bool]
    findings: list[str]
    deviation: bool = Field(default=False, description="An experimental expectation failed")
    samples: list[SampleDocument]


class HelixNeighborDocument(BaseModel):
    """One neighbour of the helix base point, in the standard frame."""

    name: str = Field(description="Orbit point name, e.g. q-4 or p1")
    point: list[str]
    label: str | None


class HelixDocument(BaseModel):
    """Serialized helix-subgroup verification."""

    params: HelixParams
    base_point: list[str]
    facet_count: int
    neighbors: list[HelixNeighborDocument]
    stated_labels: list[str]
    label_discrepancies: list[str]
    stated_facet_count: int
    delaunay_families: dict[str, bool]
    generator_agreement: bool
    involution_consistent: bool


class BoundTableRow(BaseModel):
    """Computed against published facet bound of one group."""

    group_name: str
    computed: int
    published: int | None
    provenance: str
    matches: bool


class FirstBoundRow(BaseModel):
    s: int
    m: int
    bound: int
    groups: list[str]


class LetterRowDocument(BaseModel):
    """Influence subdomains of one letter: T family count, pairs, bound column, T_i count."""

    letter: Letter
    count: int
    pairs: int
    bound: int
    neighbor_count: int


class LedgerSumRow(BaseModel):
    group_name: str
    expression: str
    bound: int


class TablesDocument(BaseModel):
    """Every reproduced table."""

    bounds: list[BoundTableRow]
    first_bounds: list[FirstBoundRow]
    letters: dict[RegionFamilyName, list[LetterRowDocument]]
    sums: list[LedgerSumRow]
