"""Voronoi cells of the helix subgroup of P4_232.

The subgroup G' of P4_232 preserving the vertical axis of T (the line through
the midpoints of v1v3 and v2v4) is a rod group: every orbit is a double helix
p_i, q_i winding around that axis. This module works in a frame centred at the
centroid of T with the axis as z axis, where

    v1 = (0, -1/2, 1/4), v2 = (1/2, 0, -1/4), v3 = (0, 1/2, 1/4), v4 = (-1/2, 0, -1/4),

computes the Voronoi cell of a generic base point (alpha, -beta, h) against its
G'-orbit and checks it against the stated list of eleven neighbours. Points
are converted to the standard frame only in ``HelixReport.to_document``.
"""

from collections import deque
from dataclasses import dataclass
from fractions import Fraction

from src.errors import CandidateSetIncomplete, DegenerateSimplex, TheoremMismatch
from src.geometry import Halfspace, Point3, PolytopeBuilder, circumcenter
from src.isometry import Isometry
from src.logger import logger
from src.schemas import HelixDocument, HelixNeighborDocument, HelixParams

HALF = Fraction(1, 2)
QUARTER = Fraction(1, 4)
UP = Point3.of(0, 0, 1)

# Centroid of T in the standard frame.
HELIX_ORIGIN = Point3(HALF, Fraction(0), QUARTER)

# Rotations of order two generating G': the vertical axis, the two diagonal
# horizontal axes at height 0, and the edges v1v3 and v2v4.
HELIX_GENERATORS: tuple[Isometry, ...] = (
    Isometry.from_map(lambda u: Point3(-u.x, -u.y, u.z)),
    Isometry.from_map(lambda u: Point3(-u.y, -u.x, -u.z)),
    Isometry.from_map(lambda u: Point3(u.y, u.x, -u.z)),
    Isometry.from_map(lambda u: Point3(-u.x, u.y, HALF - u.z)),
    Isometry.from_map(lambda u: Point3(u.x, -u.y, -HALF - u.z)),
)
EDGE13_ROTATION = HELIX_GENERATORS[3]
EDGE24_ROTATION = HELIX_GENERATORS[4]

EXPECTED_NEIGHBOURS: tuple[str, ...] = (
    "q-4", "q-3", "q-2", "q-1", "q0", "q1", "q2", "q3", "q4", "p-1", "p1",
)  # fmt: skip
STATED_LABELS: tuple[str, ...] = (
    "T13^E", "T13^F", "T0^B", "T0^E", "T0^F", "T24^A", "T24^E", "T24^F", "T+^A", "T-^A", "T+^F",
)  # fmt: skip
STATED_FACET_COUNT = 9

# Names of subdomains when the base point moves from the upper to the lower half.
_TETRA_SWAP = {"0": "0", "13": "24", "24": "13", "+": "-", "-": "+"}
_LETTER_SWAP = {"A": "E", "E": "A", "B": "F", "F": "B"}

ORBIT_HEIGHT = 3
_BOX_START = Fraction(2)
_BOX_LIMIT = Fraction(64)


# ---------------------------------------------------------------------------
# Orbit
# ---------------------------------------------------------------------------


def _formula_pair(i: int, alpha: Fraction, beta: Fraction, h: Fraction) -> tuple[Point3, Point3]:
    """(p_i, q_i) from the closed formulas, extended by p_{i+4} = q_i + up, q_{i+4} = p_i + up."""
    table = {
        -3: (Point3(alpha, beta, -h - HALF), Point3(-alpha, -beta, -h - HALF)),
        -2: (Point3(beta, alpha, h - HALF), Point3(-beta, -alpha, h - HALF)),
        -1: (Point3(beta, -alpha, -h), Point3(-beta, alpha, -h)),
        0: (Point3(alpha, -beta, h), Point3(-alpha, beta, h)),
        1: (Point3(-alpha, -beta, -h + HALF), Point3(alpha, beta, -h + HALF)),
        2: (Point3(-beta, -alpha, h + HALF), Point3(beta, alpha, h + HALF)),
        3: (Point3(-beta, alpha, -h + 1), Point3(beta, -alpha, -h + 1)),
        4: (Point3(-alpha, beta, h + 1), Point3(alpha, -beta, h + 1)),
    }
    if i in table:
        return table[i]
    if i > 4:
        p, q = _formula_pair(i - 4, alpha, beta, h)
        return q + UP, p + UP
    p, q = _formula_pair(i + 4, alpha, beta, h)
    return q - UP, p - UP


def helix_points(
    alpha: Fraction, beta: Fraction, h: Fraction, height: int = ORBIT_HEIGHT
) -> dict[str, Point3]:
    """Named orbit points p_i, q_i with |z - h| <= ``height``."""
    reach = 4 * height + 4
    named: dict[str, Point3] = {}
    for i in range(-reach, reach + 1):
        p, q = _formula_pair(i, alpha, beta, h)
        for name, point in ((f"p{i}", p), (f"q{i}", q)):
            if abs(point.z - h) <= height:
                named[name] = point
    return named


def orbit_from_generators(base: Point3, height: int = ORBIT_HEIGHT) -> frozenset[Point3]:
    """Orbit points with |z - z0| <= ``height``, closed under the generating rotations."""
    margin = height + 1
    seen = {base}
    queue = deque([base])
    while queue:
        u = queue.popleft()
        for g in HELIX_GENERATORS:
            v = g.apply(u)
            if v not in seen and abs(v.z - base.z) <= margin:
                seen.add(v)
                queue.append(v)
    return frozenset(v for v in seen if abs(v.z - base.z) <= height)


# ---------------------------------------------------------------------------
# Labels
# ---------------------------------------------------------------------------


def _sector_letter(u: Point3) -> str | None:
    x, y = u.x, u.y
    if 0 in (x, y, x + y, x - y):
        return None
    if x > 0 and y < 0:
        return "A" if x + y < 0 else "B"
    if x > 0:
        return "C" if x > y else "D"
    if y > 0:
        return "E" if x + y > 0 else "F"
    return "H" if x > y else "G"


def helix_label(u: Point3) -> str | None:
    """Extended subdomain label (T0, T13, T24, T+ or T-) of a point, None off the sectors."""
    doubled = 2 * (u.z + QUARTER)
    if doubled.denominator == 1:
        return None
    layer = doubled.numerator // doubled.denominator
    if layer == 0:
        name, base = "0", u
    elif layer == 1:
        name, base = "24", EDGE13_ROTATION.apply(u)
    elif layer == -1:
        name, base = "13", EDGE24_ROTATION.apply(u)
    elif layer == 2:
        name, base = "+", u - UP
    elif layer == -2:
        name, base = "-", u + UP
    else:
        return None
    letter = _sector_letter(base)
    return None if letter is None else f"T{name}^{letter}"


def involuted_label(label: str) -> str:
    """Name of the subdomain a label maps to when switching between the two halves."""
    tetra, _, letter = label[1:].partition("^")
    if tetra in ("13", "24"):
        letter = _LETTER_SWAP.get(letter, letter)
    return f"T{_TETRA_SWAP[tetra]}^{letter}"


# ---------------------------------------------------------------------------
# Cells
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class HelixNeighbor:
    name: str
    point: Point3
    label: str | None


def _neighbours_in_box(base: Point3, others: list[Point3], half_width: Fraction) -> list[Point3]:
    builder = PolytopeBuilder.box(base, half_width)
    for index, q in enumerate(others):
        builder.cut(Halfspace.bisector(base, q), owner=index)
    return [others[owner] for owner in builder.surviving_owners() if isinstance(owner, int)]


def helix_neighbours(base: Point3, orbit: frozenset[Point3]) -> list[Point3]:
    """Neighbours of ``base`` in the Voronoi diagram of ``orbit``.

    The cell is unbounded horizontally, so it is clipped with a cube whose size
    doubles until the set of neighbours stops changing.

    Raises:
        CandidateSetIncomplete: If the set has not settled at the largest cube.
    """
    others = sorted((q for q in orbit if q != base), key=lambda q: q.distance2(base))
    width = _BOX_START
    found = _neighbours_in_box(base, others, width)
    while width < _BOX_LIMIT:
        width *= 2
        wider = _neighbours_in_box(base, others, width)
        if set(wider) == set(found):
            return found
        found = wider
    raise CandidateSetIncomplete(f"Helix neighbours of {base} did not settle")


def _empty_sphere(centre: Point3, members: list[Point3], orbit: frozenset[Point3]) -> bool:
    radii = {centre.distance2(q) for q in members}
    if len(radii) != 1:
        return False
    radius2 = radii.pop()
    return all(centre.distance2(q) > radius2 for q in orbit if q not in members)


def delaunay_families(
    alpha: Fraction, beta: Fraction, h: Fraction, orbit: frozenset[Point3], layers: range
) -> dict[str, bool]:
    """Empty-sphere checks of the three tetrahedron families around each layer i.

    - {p_{i-1}, q_{i-1}, p_i, q_i} around (0, 0, i/4)
    - {q_{i-2}, q_{i-1}, p_i, p_{i+1}} around its circumcentre
    - {p_{i-2}, p_{i-1}, q_i, q_{i+1}} around its circumcentre
    """

    def pair(i: int) -> tuple[Point3, Point3]:
        return _formula_pair(i, alpha, beta, h)

    results = {"axis_centred": True, "q_q_p_p": True, "p_p_q_q": True}
    for i in layers:
        (pa, qa), (pb, qb) = pair(i - 1), pair(i)
        centre = Point3(Fraction(0), Fraction(0), Fraction(i, 4))
        results["axis_centred"] &= _empty_sphere(centre, [pa, qa, pb, qb], orbit)
        for key, members in (
            ("q_q_p_p", [pair(i - 2)[1], qa, pb, pair(i + 1)[0]]),
            ("p_p_q_q", [pair(i - 2)[0], pa, qb, pair(i + 1)[1]]),
        ):
            try:
                centre = circumcenter(*members)
            except DegenerateSimplex:
                results[key] = False
                continue
            results[key] &= _empty_sphere(centre, members, orbit)
    return results


# ---------------------------------------------------------------------------
# Verification
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class HelixReport:
    """Outcome of checking the helix neighbour theorem for one base point.

    Attributes:
        params: The base point parameters.
        base_point: (alpha, -beta, h) in the helix frame.
        neighbors: Computed neighbours with their names and labels.
        label_discrepancies: Stated labels that differ from the computed ones.
        delaunay_families: Empty-sphere results per tetrahedron family.
        generator_agreement: The formula orbit equals the generated orbit.
        involution_consistent: The mirrored base point has the involuted labels.
    """

    params: HelixParams
    base_point: Point3
    neighbors: tuple[HelixNeighbor, ...]
    label_discrepancies: tuple[str, ...]
    delaunay_families: dict[str, bool]
    generator_agreement: bool
    involution_consistent: bool

    @property
    def facet_count(self) -> int:
        return len(self.neighbors)

    def labels(self) -> list[str]:
        return sorted(n.label or "?" for n in self.neighbors)

    def to_document(self) -> HelixDocument:
        return HelixDocument(
            params=self.params,
            base_point=(self.base_point + HELIX_ORIGIN).as_strings(),
            facet_count=self.facet_count,
            neighbors=[
                HelixNeighborDocument(
                    name=n.name, point=(n.point + HELIX_ORIGIN).as_strings(), label=n.label
                )
                for n in self.neighbors
            ],
            stated_labels=list(STATED_LABELS),
            label_discrepancies=list(self.label_discrepancies),
            stated_facet_count=STATED_FACET_COUNT,
            delaunay_families=self.delaunay_families,
            generator_agreement=self.generator_agreement,
            involution_consistent=self.involution_consistent,
        )


def _label_discrepancies(computed: list[str]) -> list[str]:
    stated = sorted(STATED_LABELS)
    missing = [label for label in stated if label not in computed]
    extra = [label for label in computed if label not in stated]
    found = [f"stated {a}, computed {b}" for a, b in zip(missing, extra, strict=False)]
    found += [f"stated {a}, not computed" for a in missing[len(extra) :]]
    found += [f"computed {b}, not stated" for b in extra[len(missing) :]]
    return found


def _neighbour_labels(alpha: Fraction, beta: Fraction, h: Fraction) -> list[str]:
    named = helix_points(alpha, beta, h)
    base = named["p0"]
    neighbours = helix_neighbours(base, frozenset(named.values()))
    return sorted(helix_label(q) or "?" for q in neighbours)


def verify_helix_theorem(params: HelixParams) -> HelixReport:
    """Compute the neighbours of (alpha, -beta, h) in its G'-orbit and compare with the theorem.

    Raises:
        TheoremMismatch: If the neighbours are not exactly q_-4 .. q_4, p_-1 and p_1.
    """
    alpha, beta, h = params.values()
    named = helix_points(alpha, beta, h)
    base = named["p0"]
    orbit = frozenset(named.values())
    generator_agreement = orbit == orbit_from_generators(base)
    if not generator_agreement:
        logger.warning("Formula orbit differs from the generated orbit", alpha=str(alpha))

    names = {point: name for name, point in named.items()}
    computed = helix_neighbours(base, orbit)
    computed_names = {names[q] for q in computed}
    missing = sorted(set(EXPECTED_NEIGHBOURS) - computed_names)
    extra = sorted(computed_names - set(EXPECTED_NEIGHBOURS))
    if missing or extra:
        raise TheoremMismatch(missing, extra)

    neighbours = tuple(
        HelixNeighbor(name, named[name], helix_label(named[name])) for name in EXPECTED_NEIGHBOURS
    )
    labels = sorted(n.label or "?" for n in neighbours)
    discrepancies = _label_discrepancies(labels)
    if discrepancies:
        logger.warning("Helix labels differ from the stated list", discrepancies=discrepancies)
    if len(neighbours) != STATED_FACET_COUNT:
        logger.warning(
            "Helix facet count differs from the stated count",
            computed=len(neighbours),
            stated=STATED_FACET_COUNT,
        )

    mirrored = sorted(involuted_label(label) for label in labels)
    involution_consistent = _neighbour_labels(alpha, beta, -h) == mirrored
    families = delaunay_families(alpha, beta, h, orbit, range(-2, 3))
    logger.info(
        "Helix theorem checked",
        facets=len(neighbours),
        families=families,
        involution=involution_consistent,
    )
    return HelixReport(
        params=params,
        base_point=base,
        neighbors=neighbours,
        label_discrepancies=tuple(discrepancies),
        delaunay_families=families,
        generator_agreement=generator_agreement,
        involution_consistent=involution_consistent,
    )
