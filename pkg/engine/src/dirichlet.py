"""Dirichlet stereohedra: the Voronoi cell of one point of a crystallographic orbit.

The cell of ``p`` is the intersection of the bisector halfspaces between ``p``
and the other orbit points. Two candidate strategies are supported:

- ``safe_radius``: every orbit point within radius r, with a clipping box of
  half-width r/2. The cell is certified once all its vertices lie within r/2
  of ``p`` and no box facet survives; otherwise r is doubled.
- ``influence_region``: only the orbit points inside the influence region of
  the group's region family. The cell must then lie inside VorExt.
"""

import math
from dataclasses import dataclass
from fractions import Fraction

from src.catalog import FullGroupSpec, isometry_document
from src.errors import (
    CandidateSetIncomplete,
    InvalidConfiguration,
    NontrivialStabilizer,
    OnSubdomainBoundary,
)
from src.geometry import ConvexPolyhedron, Halfspace, Location, Point3, PolytopeBuilder, covered_by
from src.groups import GroupPresentation, OrbitPoint
from src.isometry import Isometry
from src.lattice import BASE, SubdomainLabel, classify_subdomain, subdomain_geometry
from src.logger import logger
from src.regions import (
    RegionFamily,
    computed_region,
    infl_union_contains,
    vorext_pieces,
)
from src.schemas import CandidateSourceName, CellDocument, NeighborDocument
from src.settings import get_settings

T_A = SubdomainLabel(BASE, "A")

# Orbit points farther than this from a base point in T cannot lie in the
# fifteen-tetrahedron complex.
_COMPLEX_REACH = 3
_INFLUENCE_BOX = Fraction(2)


@dataclass(frozen=True)
class Neighbor:
    """An orbit point owning a facet of the cell."""

    point: Point3
    label: SubdomainLabel | None
    witness: Isometry
    halfspace: Halfspace


@dataclass(frozen=True)
class StereohedronReport:
    """A computed Dirichlet stereohedron.

    Attributes:
        group_name: Name of the group whose orbit was used.
        base_point: The point ``p`` the cell belongs to.
        cell: The exact cell; its halfspaces align with ``neighbors``.
        neighbors: One entry per facet, in the order of ``cell.halfspaces``.
        candidate_source: Which strategy produced the candidates.
        safe_radius: The certified radius (safe-radius strategy only).
        candidates: Every orbit point that was offered to the cutting loop.
    """

    group_name: str
    base_point: Point3
    cell: ConvexPolyhedron
    neighbors: tuple[Neighbor, ...]
    candidate_source: CandidateSourceName
    safe_radius: Fraction | None
    candidates: tuple[OrbitPoint, ...]

    @property
    def facet_count(self) -> int:
        return self.cell.facet_count

    def neighbor_labels(self) -> list[SubdomainLabel]:
        return [n.label for n in self.neighbors if n.label is not None]

    def has_neighbor(self, label: SubdomainLabel) -> bool:
        return any(n.label == label for n in self.neighbors)

    def neighbor_points(self) -> frozenset[Point3]:
        return frozenset(n.point for n in self.neighbors)

    @property
    def candidate_radius(self) -> Fraction:
        """Radius of a ball around the base point that holds every candidate."""
        if self.safe_radius is not None:
            return self.safe_radius
        farthest = max(
            (item.point.distance2(self.base_point) for item in self.candidates),
            default=Fraction(0),
        )
        return Fraction(math.isqrt(math.ceil(farthest)) + 1)

    def facet_planes(self) -> frozenset[Halfspace]:
        return frozenset(self.cell.halfspaces)

    def to_document(self) -> CellDocument:
        return CellDocument(
            group_name=self.group_name,
            base_point=self.base_point.as_strings(),
            facet_count=self.facet_count,
            candidate_source=self.candidate_source,
            safe_radius=None if self.safe_radius is None else str(self.safe_radius),
            vertices=[v.as_strings() for v in self.cell.vertices],
            facets=[list(polygon) for polygon in self.cell.facet_adjacency],
            neighbors=[
                NeighborDocument(
                    point=n.point.as_strings(),
                    label=None if n.label is None else str(n.label),
                    witness=isometry_document(n.witness),
                    halfspace=[n.halfspace.a, n.halfspace.b, n.halfspace.c, n.halfspace.d],
                )
                for n in self.neighbors
            ],
        )


def neighbor_label(q: Point3) -> SubdomainLabel | None:
    """Subdomain label of an orbit point, None when it lies on a wall."""
    try:
        return classify_subdomain(q)
    except OnSubdomainBoundary:
        return None


def _presentation(group: FullGroupSpec | GroupPresentation) -> GroupPresentation:
    return group.presentation if isinstance(group, FullGroupSpec) else group


def _sorted_candidates(orbit: list[OrbitPoint], p: Point3) -> list[OrbitPoint]:
    others = [item for item in orbit if item.point != p]
    others.sort(key=lambda item: (item.point.distance2(p), tuple(item.point)))
    return others


def _cut_all(builder: PolytopeBuilder, p: Point3, candidates: list[OrbitPoint]) -> None:
    for index, item in enumerate(candidates):
        # Once |q - p| >= 2R every remaining bisector misses the ball of radius R.
        if item.point.distance2(p) >= 4 * builder.max_distance2(p):
            break
        builder.cut(Halfspace.bisector(p, item.point), owner=index)
    logger.debug("Candidates cut", candidates=len(candidates), vertices=len(builder.vertices))


def _has_box_facet(builder: PolytopeBuilder) -> bool:
    return any(isinstance(owner, tuple) for owner in builder.surviving_owners())


def _safe_radius_cell(
    presentation: GroupPresentation, p: Point3
) -> tuple[PolytopeBuilder, list[OrbitPoint], Fraction]:
    radius = Fraction(get_settings().initial_safe_radius)
    while True:
        candidates = _sorted_candidates(presentation.orbit_in_ball(p, radius), p)
        builder = PolytopeBuilder.box(p, radius / 2)
        _cut_all(builder, p, candidates)
        if builder.max_distance2(p) <= radius * radius / 4 and not _has_box_facet(builder):
            return builder, candidates, radius
        logger.info("Safe radius doubled", group=presentation.name, radius=str(2 * radius))
        radius *= 2


def _influence_cell(
    presentation: GroupPresentation, p: Point3, region: RegionFamily
) -> tuple[PolytopeBuilder, list[OrbitPoint]]:
    if subdomain_geometry(T_A).locate(p) is not Location.INTERIOR:
        raise InvalidConfiguration(
            f"Influence-region candidates need a base point interior to T^A, got {p}"
        )
    orbit = presentation.orbit_in_ball(p, _COMPLEX_REACH)
    candidates = [
        item for item in _sorted_candidates(orbit, p) if infl_union_contains(region, item.point)
    ]
    builder = PolytopeBuilder.box(p, _INFLUENCE_BOX)
    _cut_all(builder, p, candidates)
    if _has_box_facet(builder):
        raise CandidateSetIncomplete(f"Cell of {p} is not closed by influence-region candidates")
    return builder, candidates


def dirichlet_cell(
    group: FullGroupSpec | GroupPresentation,
    p: Point3,
    source: CandidateSourceName = "safe_radius",
    *,
    appendix_mode: bool = False,
    region: RegionFamily | None = None,
) -> StereohedronReport:
    """Compute the Dirichlet stereohedron of ``p`` for ``group``.

    Args:
        group: A catalog group or any presentation (e.g. a pure lattice).
        p: Base point with rational coordinates.
        source: Candidate strategy.
        appendix_mode: Accept base points with a nontrivial stabilizer.
        region: Region family for the influence-region strategy; defaults to
            the group's own family.

    Raises:
        NontrivialStabilizer: If ``p`` is fixed by a non-identity element and
            ``appendix_mode`` is off.
        CandidateSetIncomplete: If influence-region candidates give a cell that
            escapes VorExt.
        InvalidConfiguration: If the influence-region strategy gets a group without
            a region family, or a base point not interior to T^A.
    """
    presentation = _presentation(group)
    stabilizer = presentation.stabilizer(p)
    if len(stabilizer) > 1 and not appendix_mode:
        raise NontrivialStabilizer(f"{p} is fixed by {len(stabilizer) - 1} non-identity elements")

    safe_radius: Fraction | None = None
    if source == "safe_radius":
        builder, candidates, safe_radius = _safe_radius_cell(presentation, p)
    else:
        if region is None:
            if not isinstance(group, FullGroupSpec) or group.family is None:
                raise InvalidConfiguration(f"Group {presentation.name} has no region family")
            region = computed_region(group.family)
        builder, candidates = _influence_cell(presentation, p, region)

    cell, owners = builder.build()
    if source == "influence_region" and region is not None:
        if not covered_by(cell, vorext_pieces(region)):
            raise CandidateSetIncomplete(f"Cell of {p} escapes VorExt ({region.family})")

    neighbors = []
    for h, owner in zip(cell.halfspaces, owners, strict=True):
        item = candidates[owner]  # type: ignore[index]
        neighbors.append(Neighbor(item.point, neighbor_label(item.point), item.witness, h))
    if len({n.halfspace.plane_key() for n in neighbors}) != len(neighbors):
        raise AssertionError(f"Two orbit points share a bisector plane at {p}")
    if cell.locate(p) is not Location.INTERIOR:
        raise AssertionError(f"Base point {p} is not interior to its cell")

    logger.debug(
        "Cell computed",
        group=presentation.name,
        facets=cell.facet_count,
        source=source,
        candidates=len(candidates),
    )
    return StereohedronReport(
        group_name=presentation.name,
        base_point=p,
        cell=cell,
        neighbors=tuple(neighbors),
        candidate_source=source,
        safe_radius=safe_radius,
        candidates=tuple(candidates),
    )


def same_facets(a: StereohedronReport, b: StereohedronReport) -> bool:
    """Whether two reports found the same irredundant bisector halfspaces."""
    return a.facet_planes() == b.facet_planes()
