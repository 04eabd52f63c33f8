"""Orbits with an order-two stabilizer in F4_132 and F2/d-3.

The base point sits on the edge v1v3 of T, near v1. Its orbit splits into two
orbits of the index-two subgroup F23; the facets of its Dirichlet stereohedron
are counted separately towards each of them.
"""

import random
from dataclasses import dataclass
from fractions import Fraction
from typing import cast, get_args

from src.catalog import catalog
from src.dirichlet import dirichlet_cell
from src.errors import InvalidConfiguration
from src.geometry import Point3
from src.lattice import V1, V3
from src.logger import logger
from src.schemas import SpecialOrbitGroup
from src.settings import get_settings

SUBGROUP_NAME = "F23"
MAX_FACETS = 12
MAX_OWN = 8
MAX_OTHER = 4
# Halfway between v1 and the midpoint of v1v3 a second rotation fixes the point.
DEGENERATE_T = Fraction(1, 4)


def edge_point(t: Fraction) -> Point3:
    """The point v1 + t (v3 - v1)."""
    return V1 + (V3 - V1).scale(t)


def _check_parameter(t: Fraction) -> None:
    if not 0 < t < Fraction(1, 2) or t == DEGENERATE_T:
        raise InvalidConfiguration(f"Edge parameter must satisfy 0 < t < 1/2, t != 1/4; got {t}")


@dataclass(frozen=True)
class SpecialOrbitRow:
    """Facet counts of one special base point.

    Attributes:
        t: Edge parameter.
        point: The base point.
        facet_count: Facets of the Dirichlet stereohedron in the full orbit.
        own_orbit: Facets towards points of the base point's F23-orbit.
        other_orbit: Facets towards the other F23-orbit.
        subgroup_facets: Facets of the cell in the F23-orbit alone.
    """

    t: Fraction
    point: Point3
    facet_count: int
    own_orbit: int
    other_orbit: int
    subgroup_facets: int

    @property
    def within_bounds(self) -> bool:
        return (
            self.facet_count <= MAX_FACETS
            and self.own_orbit <= MAX_OWN
            and self.other_orbit <= MAX_OTHER
        )


@dataclass(frozen=True)
class SpecialOrbitReport:
    group_name: str
    rows: tuple[SpecialOrbitRow, ...]

    @property
    def within_bounds(self) -> bool:
        return all(row.within_bounds for row in self.rows)

    @property
    def max_facets(self) -> int:
        return max(row.facet_count for row in self.rows)


def evaluate_special_point(group_name: SpecialOrbitGroup, t: Fraction) -> SpecialOrbitRow:
    """Stereohedron of the orbit of the point at parameter ``t`` on v1v3.

    Raises:
        InvalidConfiguration: If ``t`` is out of range or the stabilizer is not of order two.
    """
    _check_parameter(t)
    spec = catalog(group_name)
    p = edge_point(t)
    stabilizer = spec.presentation.stabilizer(p)
    if len(stabilizer) != 2:
        raise InvalidConfiguration(f"{p} has stabilizer of order {len(stabilizer)} in {spec.name}")

    report = dirichlet_cell(spec, p, appendix_mode=True)
    subgroup = catalog(SUBGROUP_NAME).presentation
    radius = report.safe_radius or Fraction(get_settings().initial_safe_radius)
    own_points = {item.point for item in subgroup.orbit_in_ball(p, radius)}
    own = sum(1 for n in report.neighbors if n.point in own_points)
    subgroup_cell = dirichlet_cell(subgroup, p, appendix_mode=True)
    row = SpecialOrbitRow(
        t=t,
        point=p,
        facet_count=report.facet_count,
        own_orbit=own,
        other_orbit=report.facet_count - own,
        subgroup_facets=subgroup_cell.facet_count,
    )
    if not row.within_bounds:
        logger.warning(
            "Special orbit exceeds the facet bounds",
            group=spec.name,
            t=str(t),
            facets=row.facet_count,
            own=row.own_orbit,
            other=row.other_orbit,
        )
    return row


def run_special_orbit_experiment(
    group_name: str,
    t: Fraction | None = None,
    samples: int = 1,
    seed: int = 0,
) -> SpecialOrbitReport:
    """Evaluate the special orbit at ``t``, or at ``samples`` seeded random parameters.

    Raises:
        InvalidConfiguration: If the group is not F4_132 or F2/d-3, or ``t`` is invalid.
    """
    if group_name not in get_args(SpecialOrbitGroup):
        raise InvalidConfiguration(f"Special orbits live in F4_132 and F2/d-3, not {group_name}")
    name = cast(SpecialOrbitGroup, group_name)
    if t is not None:
        parameters = [t]
    else:
        if samples < 1:
            raise InvalidConfiguration("At least one sample is required")
        rng = random.Random(seed)
        denominator = get_settings().sample_denominator
        parameters = []
        while len(parameters) < samples:
            candidate = Fraction(rng.randint(1, denominator // 2 - 1), denominator)
            if candidate != DEGENERATE_T:
                parameters.append(candidate)
    logger.info("Special orbit experiment started", group=group_name, points=len(parameters))
    rows = tuple(evaluate_special_point(name, value) for value in parameters)
    report = SpecialOrbitReport(group_name=group_name, rows=rows)
    logger.info(
        "Special orbit experiment finished",
        group=group_name,
        max_facets=report.max_facets,
        within_bounds=report.within_bounds,
    )
    return report
