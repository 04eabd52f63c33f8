"""Delaunay structure around a base point of the group P4_232.

For a generic base point p in T^A the orbit of P4_232 has a fixed local
structure: two octahedral Delaunay cells around the midpoints of v1v2 and
v1v4, a Delaunay tetrahedron around the centroid of T, and a Delaunay
tetrahedron around the midpoint of v1v3 or v2v4 depending on the side of the
bisecting plane. Each cell is checked here with an empty-sphere test, and the
neighbour claims that follow from it are checked against the computed cell.
"""

from collections.abc import Mapping, Sequence
from typing import TYPE_CHECKING

from src.bounds import HALF_EXCLUSIONS
from src.catalog import catalog
from src.dirichlet import StereohedronReport
from src.errors import StructureViolation
from src.geometry import Point3, barycenter, midpoint
from src.lattice import BASE_VERTICES, SubdomainLabel, half_of
from src.logger import logger

if TYPE_CHECKING:
    from src.experiments.sampling import SampleRecord, SubdomainClassification

GROUP_NAME = "P4_232"

_parse = SubdomainLabel.parse


def _expand(tetra: str, letters: str) -> list[SubdomainLabel]:
    return [_parse(f"{tetra}^{x}") for x in letters]


# The subdomains that can hold a neighbour of a base point in T^A.
P4232_CANDIDATES: tuple[SubdomainLabel, ...] = (
    *_expand("T0", "BEF"),
    *_expand("T13", "ABEF"),
    *_expand("T24", "ABEF"),
    *_expand("T12", "E"),
    *_expand("T21", "EF"),
    *_expand("T14", "ABEF"),
    *_expand("T41", "ABEF"),
    *_expand("T23", "ABEF"),
    *_expand("T32", "ABEF"),
    *_expand("T34", "ABE"),
    *_expand("T43", "ABEF"),
)

ALWAYS_NEIGHBOURS: tuple[SubdomainLabel, ...] = tuple(
    _parse(text) for text in ("T34^A", "T43^A", "T0^B", "T23^A", "T32^A", "T0^F", "T0^E")
)

# Experimentally never neighbours; not proved.
EXPECTED_NEVER: tuple[SubdomainLabel, ...] = tuple(
    _parse(text) for text in ("T34^E", "T43^E", "T12^E", "T21^E", "T14^E", "T23^E")
)

# In the lower half these become the apexes opposite T^A in the two octahedra.
LOWER_HALF_APEXES: tuple[SubdomainLabel, ...] = (_parse("T43^B"), _parse("T23^F"))

# Listed neither as candidate nor as excluded.
UNLISTED_CANDIDATE = _parse("T12^F")

EXPECTED_FACET_RANGE = (14, 17)

_V1, _V2, _V3, _V4 = BASE_VERTICES


def _orbit_point(report: StereohedronReport, label: SubdomainLabel) -> Point3:
    """The orbit point of the base point lying in ``label``."""
    g = label.to_subdomain
    if not catalog(GROUP_NAME).presentation.contains(g):
        raise StructureViolation(str(label), "subdomain is not occupied by the orbit")
    return g.apply(report.base_point)


def _is_delaunay_cell(
    report: StereohedronReport, centre: Point3, labels: Sequence[SubdomainLabel]
) -> bool:
    """Whether the orbit points in ``labels`` are equidistant from ``centre`` with no
    other orbit point at that distance or closer."""
    members = {_orbit_point(report, label) for label in labels}
    radii = {centre.distance2(q) for q in members}
    if len(radii) != 1:
        return False
    radius2 = radii.pop()
    return all(
        centre.distance2(item.point) > radius2
        for item in report.candidates
        if item.point not in members
    )


def _structure_clauses(report: StereohedronReport) -> dict[str, bool]:
    neighbours = report.neighbor_points()

    def neighbour(text: str) -> bool:
        return _orbit_point(report, _parse(text)) in neighbours

    half = half_of(report.base_point)
    if half == "upper":
        half_centre, half_labels = midpoint(_V1, _V3), ("T0^A", "T0^E", "T24^A", "T24^E")
    else:
        half_centre, half_labels = midpoint(_V2, _V4), ("T0^A", "T0^E", "T13^A", "T13^E")

    return {
        "octahedron_v1v2": _is_delaunay_cell(
            report,
            midpoint(_V1, _V2),
            [_parse(t) for t in ("T0^A", "T34^A", "T43^A", "T0^B", "T34^B", "T43^B")],
        ),
        "octahedron_v1v4": _is_delaunay_cell(
            report,
            midpoint(_V1, _V4),
            [_parse(t) for t in ("T0^A", "T23^A", "T32^A", "T0^F", "T23^F", "T32^F")],
        ),
        "tetrahedron_centroid": _is_delaunay_cell(
            report,
            barycenter(BASE_VERTICES),
            [_parse(t) for t in ("T0^A", "T0^B", "T0^E", "T0^F")],
        ),
        f"tetrahedron_{half}_half": _is_delaunay_cell(
            report, half_centre, [_parse(t) for t in half_labels]
        ),
        "always_neighbours": all(neighbour(str(label)) for label in ALWAYS_NEIGHBOURS),
        "one_of_T34B_T43B": neighbour("T34^B") != neighbour("T43^B"),
        "one_of_T23F_T32F": neighbour("T23^F") != neighbour("T32^F"),
        "half_pair_neighbours": all(neighbour(t) for t in half_labels[2:]),
    }


def check_p4232_structure(report: StereohedronReport, strict: bool = True) -> dict[str, bool]:
    """Check the Delaunay cells and neighbour claims around a P4_232 base point.

    Args:
        report: Safe-radius stereohedron of a base point interior to T^A.
        strict: Raise on the first failed clause instead of returning it.

    Returns:
        Clause name -> whether it holds.

    Raises:
        ValueError: If the report belongs to another group or the base point
            lies on the bisecting plane.
        StructureViolation: In strict mode, naming the failed clause.
    """
    if report.group_name != GROUP_NAME:
        raise ValueError(f"Structure checks apply to {GROUP_NAME}, not {report.group_name}")
    if half_of(report.base_point) is None:
        raise ValueError(f"{report.base_point} lies on the bisecting plane")
    clauses = _structure_clauses(report)
    for clause, holds in clauses.items():
        if holds:
            continue
        if strict:
            raise StructureViolation(clause, f"fails at {report.base_point}")
        logger.warning("Structure clause failed", clause=clause, point=str(report.base_point))
    return clauses


def p4232_findings(
    records: Sequence["SampleRecord"], per_half: Mapping[str, "SubdomainClassification"]
) -> list[str]:
    """Compare an experiment with the experimental expectations for P4_232.

    Deviations are logged as warnings; every result is returned as a finding.
    """
    findings = []
    low, high = EXPECTED_FACET_RANGE
    outside = sorted({r.facet_count for r in records if not low <= r.facet_count <= high})
    if outside:
        logger.warning("Facet counts outside the expected range", counts=outside)
        findings.append(f"facet counts {outside} outside the expected range [{low}, {high}]")
    else:
        findings.append(f"all {len(records)} facet counts within [{low}, {high}]")

    unlisted = [r.sample_id for r in records if str(UNLISTED_CANDIDATE) in r.labels]
    if unlisted:
        logger.warning("Neighbour in an unlisted subdomain", label=str(UNLISTED_CANDIDATE))
        findings.append(f"{UNLISTED_CANDIDATE} holds a neighbour in samples {unlisted}")

    seen_never = sorted(
        str(label)
        for label in EXPECTED_NEVER
        if any(str(label) in r.labels for r in records)
    )
    if seen_never:
        logger.warning("Expected never-neighbours observed", labels=seen_never)
        findings.append(f"expected never-neighbours observed: {', '.join(seen_never)}")
    else:
        findings.append("no neighbour in " + ", ".join(str(x) for x in EXPECTED_NEVER))

    lower = [r for r in records if r.half == "lower"]
    if lower:
        apexes = [str(label) for label in LOWER_HALF_APEXES]
        if any(label in r.labels for r in lower for label in apexes):
            findings.append(f"lower half: {' or '.join(apexes)} sometimes a neighbour")
        else:
            findings.append(f"lower half: {' and '.join(apexes)} are octahedron apexes")

    known = {str(label) for label in EXPECTED_NEVER}
    for half, classification in sorted(per_half.items()):
        excluded = known | {str(label) for label in HALF_EXCLUSIONS[GROUP_NAME][half]}
        extra = [
            label for label in classification.with_status("never") if label not in excluded
        ]
        findings.append(f"{half} half: {len(extra)} further never-neighbours: {', '.join(extra)}")
    return findings


def p4232_deviates(records: Sequence["SampleRecord"]) -> bool:
    """Whether an experiment contradicts an experimental expectation."""
    low, high = EXPECTED_FACET_RANGE
    unexpected = {str(UNLISTED_CANDIDATE), *(str(label) for label in EXPECTED_NEVER)}
    return any(
        not low <= r.facet_count <= high or unexpected.intersection(r.labels) for r in records
    )
