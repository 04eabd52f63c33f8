"""Runtime checks of the structural lemmas on computed stereohedra.

Each check takes a finished ``StereohedronReport`` and answers with booleans;
nothing here raises on a failed property, so experiments can tally failures.
"""

import random
from dataclasses import dataclass
from fractions import Fraction

from src.bounds import delone_bound
from src.catalog import FullGroupSpec
from src.dirichlet import T_A, StereohedronReport, dirichlet_cell
from src.errors import InvalidConfiguration, NontrivialStabilizer
from src.geometry import ConvexPolyhedron, Halfspace, Location, Point3, barycenter, covered_by
from src.isometry import Isometry
from src.lattice import COMPLEX, NEIGHBORS, base_tetrahedron, subdomain_geometry, tetra_geometry
from src.logger import logger
from src.settings import get_settings

# ---------------------------------------------------------------------------
# Rotation lemma
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class RotationAxis:
    """A point on the axis and a direction vector."""

    point: Point3
    direction: Point3


def rotation_axis(rho: Isometry) -> RotationAxis:
    """Axis of a rotation of finite order (not a screw rotation).

    Raises:
        ValueError: If ``rho`` is not a pure rotation.
    """
    if not rho.is_rotation_like():
        raise ValueError(f"{rho} is not a rotation")
    order = rho.linear_order()
    if not rho.power(order).is_identity():
        raise ValueError(f"{rho} is a screw rotation")
    # The centroid of the orbit of the origin is fixed by rho.
    point = barycenter([rho.power(k).apply(Point3.zero()) for k in range(order)])
    e = (Point3.of(1, 0, 0), Point3.of(0, 1, 0), Point3.of(0, 0, 1))
    rows = [rho.apply_linear(v) - v for v in e]
    # Columns of L - I span the plane orthogonal to the axis.
    for a, b in ((0, 1), (0, 2), (1, 2)):
        direction = rows[a].cross(rows[b])
        if not direction.is_zero():
            return RotationAxis(point, direction)
    raise ValueError(f"{rho} has no axis")


def _radial(axis: RotationAxis, u: Point3) -> Point3:
    w = u - axis.point
    d = axis.direction
    return w - d.scale(w.dot(d) / d.norm2())


def _nearest_by_angle(axis: RotationAxis, p: Point3, members: list[Point3]) -> set[Point3]:
    """Members making the smallest dihedral angle with p on each side.

    Within one orbit all radial vectors have equal length, so comparing dot
    products with p's radial vector compares angles.
    """
    wp = _radial(axis, p)
    allowed: set[Point3] = set()
    sides: dict[int, tuple[Fraction, list[Point3]]] = {}
    for u in members:
        wu = _radial(axis, u)
        turn = axis.direction.dot(wp.cross(wu))
        dot = wp.dot(wu)
        if turn == 0 and dot > 0:
            allowed.add(u)
            continue
        for side in (1, -1) if turn == 0 else ((1 if turn > 0 else -1),):
            best = sides.get(side)
            if best is None or dot > best[0]:
                sides[side] = (dot, [u])
            elif dot == best[0]:
                best[1].append(u)
    for _, points in sides.values():
        allowed.update(points)
    return allowed


def check_rotation_lemma(report: StereohedronReport, rho: Isometry) -> bool:
    """At most two points of each <rho>-orbit are neighbours, the angularly nearest ones.

    Raises:
        ValueError: If ``rho`` is not a pure rotation.
    """
    axis = rotation_axis(rho)
    p = report.base_point
    if _radial(axis, p).is_zero():
        return True
    powers = [rho.power(k) for k in range(rho.linear_order())]
    neighbors = report.neighbor_points()
    seen: set[frozenset[Point3]] = set()
    for q in neighbors:
        key = frozenset(g.apply(q) for g in powers)
        if key in seen:
            continue
        seen.add(key)
        if _radial(axis, q).is_zero():
            continue
        chosen = [u for u in key if u in neighbors]
        if len(chosen) > 2:
            logger.debug("Rotation orbit with too many neighbours", rho=str(rho), count=len(chosen))
            return False
        allowed = _nearest_by_angle(axis, p, [u for u in key if u != p])
        if not set(chosen) <= allowed:
            logger.debug("Neighbour not angularly nearest", rho=str(rho))
            return False
    return True


# ---------------------------------------------------------------------------
# Containment lemmas
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class ContainmentCheck:
    """Whether the cell lies in T and its neighbours, and where neighbours lie.

    Attributes:
        inside_window: The cell is inside T plus its four neighbours, with no facet on
            the outer boundary of that union.
        neighbors_in_complex: Every neighbour is interior to one of the fifteen tetrahedra.
    """

    inside_window: bool
    neighbors_in_complex: bool


def _outer_faces() -> list[tuple[ConvexPolyhedron, Halfspace]]:
    """The twelve faces of T1..T4 not shared with T, as (tetrahedron, face halfspace)."""
    faces = []
    for address in NEIGHBORS:
        tetra = tetra_geometry(address)
        for j, vertex in enumerate(tetra.vertices, start=1):
            if j == address.i:
                continue
            face = next(h for h in tetra.polyhedron.halfspaces if h.slack(vertex) > 0)
            faces.append((tetra.polyhedron, face))
    return faces


def _on_face(poly: ConvexPolyhedron, face: Halfspace, u: Point3) -> bool:
    return face.slack(u) == 0 and poly.locate(u) is not Location.OUTSIDE


def check_containment(report: StereohedronReport) -> ContainmentCheck:
    cell = report.cell
    union = [base_tetrahedron().polyhedron, *(tetra_geometry(a).polyhedron for a in NEIGHBORS)]
    inside = covered_by(cell, union)
    if inside:
        centroids = [barycenter(cell.facet_polygon(i)) for i in range(cell.facet_count)]
        faces = _outer_faces()
        inside = not any(_on_face(poly, face, c) for c in centroids for poly, face in faces)
    neighbours_placed = all(
        any(
            tetra_geometry(address).polyhedron.locate(n.point) is Location.INTERIOR
            for address in COMPLEX
        )
        for n in report.neighbors
    )
    return ContainmentCheck(inside_window=inside, neighbors_in_complex=neighbours_placed)


def within_delone_ceiling(report: StereohedronReport, aspects: int) -> bool:
    return report.facet_count <= delone_bound(3, aspects)


# ---------------------------------------------------------------------------
# Perturbation probe
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class PerturbationReport:
    """Facet counts at a base point and at random nearby points."""

    base_count: int
    counts: tuple[int, ...]
    epsilon: Fraction

    @property
    def minimum(self) -> int:
        return min(self.counts, default=self.base_count)

    @property
    def maximum(self) -> int:
        return max(self.counts, default=self.base_count)

    @property
    def violation(self) -> bool:
        return any(c < self.base_count for c in self.counts)


def perturbation_monotonicity_probe(
    spec: FullGroupSpec,
    p: Point3,
    trials: int,
    epsilon: Fraction,
    seed: int = 0,
    max_redraws: int = 100,
) -> PerturbationReport:
    """Compare the facet count at ``p`` with counts at random points within ``epsilon``.

    The box p +- epsilon must stay inside the closed subdomain T^A. A trial whose
    perturbed point keeps hitting a nontrivial stabilizer is redrawn up to
    ``max_redraws`` times.

    Raises:
        NontrivialStabilizer: If ``p`` has a nontrivial stabilizer, or a trial used up
            its redraws.
        InvalidConfiguration: If the perturbation box leaves T^A.
    """
    if epsilon <= 0 or trials < 0:
        raise InvalidConfiguration("Perturbation needs epsilon > 0 and trials >= 0")
    subdomain = subdomain_geometry(T_A)
    corners = [
        p + Point3(Fraction(sx), Fraction(sy), Fraction(sz)).scale(epsilon)
        for sx in (-1, 1)
        for sy in (-1, 1)
        for sz in (-1, 1)
    ]
    if any(subdomain.locate(c) is Location.OUTSIDE for c in corners):
        raise InvalidConfiguration(f"Perturbation box of size {epsilon} leaves T^A")

    base_count = dirichlet_cell(spec, p).facet_count
    rng = random.Random(seed)
    denominator = get_settings().sample_denominator
    scale = epsilon / denominator
    counts = []
    for _ in range(trials):
        for _ in range(max_redraws):
            delta = Point3(
                *(scale * rng.randint(-denominator, denominator) for _ in range(3))
            )
            try:
                counts.append(dirichlet_cell(spec, p + delta).facet_count)
                break
            except NontrivialStabilizer:
                continue
        else:
            raise NontrivialStabilizer(
                f"No perturbed point with trivial stabilizer after {max_redraws} redraws"
            )
    report = PerturbationReport(base_count=base_count, counts=tuple(counts), epsilon=epsilon)
    if report.violation:
        logger.warning("Perturbation decreased the facet count", group=spec.name, base=base_count)
    return report


def pure_rotations(spec: FullGroupSpec, p: Point3, radius: Fraction | int) -> list[Isometry]:
    """Pure rotations whose axes pass within ``radius`` of ``p``, one per cyclic subgroup."""
    seen: set[frozenset[Isometry]] = set()
    found = []
    for rho in spec.presentation.rotations_near(p, radius):
        key = frozenset(rho.power(k) for k in range(1, rho.linear_order()))
        if key not in seen:
            seen.add(key)
            found.append(rho)
    return found
