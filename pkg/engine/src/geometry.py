"""Exact rational geometry kernel.

Points, halfspaces and bounded convex polyhedra over ``fractions.Fraction``.
No floating point is used in any decision; floats appear only when a caller
renders coordinates for display (see ``src.export``).

Polyhedra are built by incremental cutting (``PolytopeBuilder``): a box or
tetrahedron is intersected with one halfspace at a time, keeping the
vertex/facet incidences and the edge graph exact.
"""

import math
import random
from collections.abc import Callable, Hashable, Iterable, Iterator, Sequence
from dataclasses import dataclass
from enum import StrEnum
from fractions import Fraction
from itertools import combinations

from src.errors import DegenerateSimplex, EmptyOrDegenerate, UnboundedInput
from src.logger import logger

RationalLike = int | str | Fraction


def rational(value: RationalLike) -> Fraction:
    """Parse an int, a Fraction or a "num/den" string into a Fraction."""
    if isinstance(value, Fraction):
        return value
    return Fraction(value)


def format_rational(value: Fraction) -> str:
    """Render a rational as the exchange string "num/den"."""
    return f"{value.numerator}/{value.denominator}"


@dataclass(frozen=True, slots=True)
class Point3:
    """A point (or vector) of rational 3-space."""

    x: Fraction
    y: Fraction
    z: Fraction

    def __post_init__(self) -> None:
        for name in ("x", "y", "z"):
            value = getattr(self, name)
            if not isinstance(value, Fraction):
                object.__setattr__(self, name, Fraction(value))

    @classmethod
    def of(cls, x: RationalLike, y: RationalLike, z: RationalLike) -> "Point3":
        """Build a point from ints, Fractions or "num/den" strings."""
        return cls(rational(x), rational(y), rational(z))

    @classmethod
    def zero(cls) -> "Point3":
        return cls(Fraction(0), Fraction(0), Fraction(0))

    def __iter__(self) -> Iterator[Fraction]:
        yield self.x
        yield self.y
        yield self.z

    def __add__(self, other: "Point3") -> "Point3":
        return Point3(self.x + other.x, self.y + other.y, self.z + other.z)

    def __sub__(self, other: "Point3") -> "Point3":
        return Point3(self.x - other.x, self.y - other.y, self.z - other.z)

    def __neg__(self) -> "Point3":
        return Point3(-self.x, -self.y, -self.z)

    def scale(self, k: Fraction | int) -> "Point3":
        return Point3(self.x * k, self.y * k, self.z * k)

    def dot(self, other: "Point3") -> Fraction:
        return self.x * other.x + self.y * other.y + self.z * other.z

    def cross(self, other: "Point3") -> "Point3":
        return Point3(
            self.y * other.z - self.z * other.y,
            self.z * other.x - self.x * other.z,
            self.x * other.y - self.y * other.x,
        )

    def norm2(self) -> Fraction:
        return self.dot(self)

    def distance2(self, other: "Point3") -> Fraction:
        return (self - other).norm2()

    def is_zero(self) -> bool:
        return not (self.x or self.y or self.z)

    def as_strings(self) -> list[str]:
        """Coordinates as "num/den" exchange strings."""
        return [format_rational(c) for c in self]

    def __str__(self) -> str:
        return "(" + ", ".join(str(c) for c in self) + ")"


Vector3 = Point3


def midpoint(a: Point3, b: Point3) -> Point3:
    return (a + b).scale(Fraction(1, 2))


def barycenter(points: Sequence[Point3]) -> Point3:
    """Average of a non-empty point sequence."""
    total = Point3.zero()
    for p in points:
        total = total + p
    return total.scale(Fraction(1, len(points)))


def det3(a: Point3, b: Point3, c: Point3) -> Fraction:
    """Determinant of the matrix with rows a, b, c."""
    return a.dot(b.cross(c))


def solve3(rows: Sequence[Point3], rhs: Sequence[Fraction]) -> Point3 | None:
    """Solve the 3x3 system rows[i] . x = rhs[i] exactly (Cramer's rule).

    Returns None when the system is singular.
    """
    r0, r1, r2 = rows
    d = det3(r0, r1, r2)
    if d == 0:
        return None
    # Columns of the coefficient matrix, used to replace one column at a time.
    cx = Point3(r0.x, r1.x, r2.x)
    cy = Point3(r0.y, r1.y, r2.y)
    cz = Point3(r0.z, r1.z, r2.z)
    b = Point3(*rhs)
    # det(M) == det(M^T), so column triples can go straight into det3.
    return Point3(det3(b, cy, cz) / d, det3(cx, b, cz) / d, det3(cx, cy, b) / d)


def orientation(a: Point3, b: Point3, c: Point3, d: Point3) -> int:
    """Sign of the oriented volume of the tetrahedron (a, b, c, d)."""
    value = det3(b - a, c - a, d - a)
    return (value > 0) - (value < 0)


# ---------------------------------------------------------------------------
# Halfspaces
# ---------------------------------------------------------------------------


@dataclass(frozen=True, slots=True)
class Halfspace:
    """Closed halfspace ``{u : normal . u <= offset}`` with coprime integer coefficients.

    Use ``Halfspace.of`` to build one from rational data; the stored form is
    canonical, so equal halfspaces compare and hash equal.
    """

    a: int
    b: int
    c: int
    d: int

    @classmethod
    def of(cls, normal: Point3, offset: RationalLike) -> "Halfspace":
        """Normalize ``normal . u <= offset`` by a positive factor to coprime integers."""
        if normal.is_zero():
            raise ValueError("Halfspace normal must be non-zero")
        values = (*normal, rational(offset))
        common = math.lcm(*(v.denominator for v in values))
        ints = [int(v * common) for v in values]
        g = math.gcd(*ints)
        return cls(*(i // g for i in ints))

    @classmethod
    def bisector(cls, p: Point3, q: Point3) -> "Halfspace":
        """Points at least as close to ``p`` as to ``q``."""
        return cls.of(q - p, (q.norm2() - p.norm2()) / 2)

    @property
    def normal(self) -> Point3:
        return Point3(Fraction(self.a), Fraction(self.b), Fraction(self.c))

    def value(self, u: Point3) -> Fraction:
        return self.a * u.x + self.b * u.y + self.c * u.z

    def slack(self, u: Point3) -> Fraction:
        """Offset minus normal . u; non-negative exactly on the halfspace."""
        return self.d - self.a * u.x - self.b * u.y - self.c * u.z

    def contains(self, u: Point3) -> bool:
        return self.slack(u) >= 0

    def complement(self) -> "Halfspace":
        """The opposite closed halfspace sharing the same plane."""
        return Halfspace(-self.a, -self.b, -self.c, -self.d)

    def plane_key(self) -> tuple[int, int, int, int]:
        """Sense-free key of the supporting plane (first non-zero normal entry positive)."""
        lead = next(v for v in (self.a, self.b, self.c) if v)
        sign = 1 if lead > 0 else -1
        return (sign * self.a, sign * self.b, sign * self.c, sign * self.d)

    def __str__(self) -> str:
        return f"{self.a}x + {self.b}y + {self.c}z <= {self.d}"


class Location(StrEnum):
    """Exact position of a point relative to a polyhedron."""

    INTERIOR = "interior"
    BOUNDARY = "boundary"
    OUTSIDE = "outside"


# ---------------------------------------------------------------------------
# Polyhedra
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class ConvexPolyhedron:
    """Bounded full-dimensional convex polyhedron in H- and V-representation.

    Attributes:
        halfspaces: Irredundant facet halfspaces.
        vertices: Extreme points.
        facet_adjacency: Per facet, its vertex indices in cyclic order,
            counter-clockwise when seen from outside.
        edges: Vertex index pairs (i < j) of the edge graph.
    """

    halfspaces: tuple[Halfspace, ...]
    vertices: tuple[Point3, ...]
    facet_adjacency: tuple[tuple[int, ...], ...]
    edges: tuple[tuple[int, int], ...]

    @property
    def facet_count(self) -> int:
        return len(self.halfspaces)

    def facet_polygon(self, index: int) -> list[Point3]:
        return [self.vertices[i] for i in self.facet_adjacency[index]]

    def vertex_centroid(self) -> Point3:
        """Average of the vertices (an interior point of the polyhedron)."""
        return barycenter(self.vertices)

    def volume(self) -> Fraction:
        """Exact volume by coning every facet triangle fan to an interior point."""
        apex = self.vertex_centroid()
        total = Fraction(0)
        for polygon in self.facet_adjacency:
            first = self.vertices[polygon[0]]
            for i, j in zip(polygon[1:-1], polygon[2:], strict=True):
                total += abs(det3(first - apex, self.vertices[i] - apex, self.vertices[j] - apex))
        return total / 6

    def bounding_box(self) -> tuple[Point3, Point3]:
        xs = [v.x for v in self.vertices]
        ys = [v.y for v in self.vertices]
        zs = [v.z for v in self.vertices]
        return Point3(min(xs), min(ys), min(zs)), Point3(max(xs), max(ys), max(zs))

    def locate(self, p: Point3) -> Location:
        return locate_point(self, p)

    def map_affine(
        self, point_map: Callable[[Point3], Point3], halfspace_map: Callable[[Halfspace], Halfspace]
    ) -> "ConvexPolyhedron":
        """Image under an affine isometry given its action on points and halfspaces.

        Orientation-reversing maps reverse each facet's cyclic order.
        """
        vertices = tuple(point_map(v) for v in self.vertices)
        halfspaces = tuple(halfspace_map(h) for h in self.halfspaces)
        polygons = tuple(
            _orient_polygon(list(poly), vertices, h)
            for poly, h in zip(self.facet_adjacency, halfspaces, strict=True)
        )
        return ConvexPolyhedron(halfspaces, vertices, polygons, self.edges)

    def translate(self, t: Point3) -> "ConvexPolyhedron":
        return self.map_affine(
            lambda v: v + t,
            lambda h: Halfspace.of(h.normal, h.d + h.normal.dot(t)),
        )

    def vertex_key(self) -> frozenset[Point3]:
        return frozenset(self.vertices)


def locate_point(poly: ConvexPolyhedron, p: Point3) -> Location:
    """Classify ``p`` by the signs of its slack in every facet halfspace."""
    on_boundary = False
    for h in poly.halfspaces:
        s = h.slack(p)
        if s < 0:
            return Location.OUTSIDE
        if s == 0:
            on_boundary = True
    return Location.BOUNDARY if on_boundary else Location.INTERIOR


class PolytopeBuilder:
    """Mutable incremental-cutting state for a bounded polyhedron.

    Each facet carries an owner tag supplied by the caller (for example the
    orbit point whose bisector produced it). Facets left with fewer than
    three vertices after a cut are dropped together with their tags.
    """

    def __init__(
        self,
        vertices: list[Point3],
        vertex_facets: list[frozenset[int]],
        edges: set[tuple[int, int]],
        facets: dict[int, Halfspace],
        owners: dict[int, Hashable],
    ) -> None:
        self.vertices = vertices
        self.vertex_facets = vertex_facets
        self.edges = edges
        self.facets = facets
        self.owners = owners
        self._next_id = max(facets, default=-1) + 1

    @classmethod
    def box(cls, center: Point3, half_width: Fraction, tag: str = "box") -> "PolytopeBuilder":
        """Axis-parallel cube; its facets are tagged ``(tag, axis, sign)``."""
        facets: dict[int, Halfspace] = {}
        owners: dict[int, Hashable] = {}
        axes = (Point3.of(1, 0, 0), Point3.of(0, 1, 0), Point3.of(0, 0, 1))
        for axis_index, axis in enumerate(axes):
            for sign in (1, -1):
                fid = len(facets)
                normal = axis.scale(sign)
                facets[fid] = Halfspace.of(normal, normal.dot(center) + half_width)
                owners[fid] = (tag, axis_index, sign)
        vertices: list[Point3] = []
        vertex_facets: list[frozenset[int]] = []
        for sx in (1, -1):
            for sy in (1, -1):
                for sz in (1, -1):
                    offset = Point3(Fraction(sx), Fraction(sy), Fraction(sz)).scale(half_width)
                    vertices.append(center + offset)
                    vertex_facets.append(
                        frozenset({0 if sx > 0 else 1, 2 if sy > 0 else 3, 4 if sz > 0 else 5})
                    )
        builder = cls(vertices, vertex_facets, set(), facets, owners)
        builder.edges = builder._edges_from_incidence(range(len(vertices)))
        return builder

    @classmethod
    def from_polyhedron(cls, poly: ConvexPolyhedron, owner: Hashable = None) -> "PolytopeBuilder":
        facets = dict(enumerate(poly.halfspaces))
        owners: dict[int, Hashable] = dict.fromkeys(facets, owner)
        incidence: list[set[int]] = [set() for _ in poly.vertices]
        for fid, polygon in enumerate(poly.facet_adjacency):
            for v in polygon:
                incidence[v].add(fid)
        return cls(
            list(poly.vertices),
            [frozenset(s) for s in incidence],
            set(poly.edges),
            facets,
            owners,
        )

    def _edges_from_incidence(self, indices: Iterable[int]) -> set[tuple[int, int]]:
        found: set[tuple[int, int]] = set()
        for u, v in combinations(sorted(indices), 2):
            if len(self.vertex_facets[u] & self.vertex_facets[v]) >= 2:
                found.add((u, v))
        return found

    def cut(self, h: Halfspace, owner: Hashable = None) -> bool:
        """Intersect with ``h``.

        Returns:
            True if ``h`` became a facet, False if it was redundant.

        Raises:
            EmptyOrDegenerate: If the intersection has empty interior.
        """
        slacks = [h.slack(v) for v in self.vertices]
        if all(s >= 0 for s in slacks):
            return False
        if all(s <= 0 for s in slacks):
            raise EmptyOrDegenerate(f"Halfspace {h} leaves an empty interior")

        fid = self._next_id
        self._next_id += 1
        remap: dict[int, int] = {}
        vertices: list[Point3] = []
        vertex_facets: list[frozenset[int]] = []
        on_plane: list[int] = []
        for i, (v, s) in enumerate(zip(self.vertices, slacks, strict=True)):
            if s < 0:
                continue
            remap[i] = len(vertices)
            vertices.append(v)
            if s == 0:
                vertex_facets.append(self.vertex_facets[i] | {fid})
                on_plane.append(remap[i])
            else:
                vertex_facets.append(self.vertex_facets[i])

        edges: set[tuple[int, int]] = set()
        for a, b in self.edges:
            sa, sb = slacks[a], slacks[b]
            if sa >= 0 and sb >= 0:
                edges.add(_edge(remap[a], remap[b]))
            elif (sa > 0 > sb) or (sb > 0 > sa):
                keep, drop = (a, b) if sa > 0 else (b, a)
                sk, sd = slacks[keep], slacks[drop]
                kv = self.vertices[keep]
                w = kv + (self.vertices[drop] - kv).scale(sk / (sk - sd))
                index = len(vertices)
                vertices.append(w)
                vertex_facets.append((self.vertex_facets[a] & self.vertex_facets[b]) | {fid})
                edges.add(_edge(remap[keep], index))
                on_plane.append(index)

        self.vertices = vertices
        self.vertex_facets = vertex_facets
        self.facets[fid] = h
        self.owners[fid] = owner
        edges |= self._edges_from_incidence(on_plane)
        self.edges = edges
        self._drop_thin_facets()
        logger.debug("Cut applied", halfspace=str(h), vertices=len(self.vertices))
        return fid in self.facets

    def _drop_thin_facets(self) -> None:
        counts = dict.fromkeys(self.facets, 0)
        for fs in self.vertex_facets:
            for f in fs:
                counts[f] += 1
        thin = {f for f, n in counts.items() if n < 3}
        if not thin:
            return
        for f in thin:
            del self.facets[f]
            del self.owners[f]
        self.vertex_facets = [fs - thin for fs in self.vertex_facets]

    def max_distance2(self, p: Point3) -> Fraction:
        return max(v.distance2(p) for v in self.vertices)

    def surviving_owners(self) -> list[Hashable]:
        return [self.owners[f] for f in sorted(self.facets)]

    def build(self) -> tuple[ConvexPolyhedron, list[Hashable]]:
        """Freeze the current state.

        Returns:
            The polyhedron and, aligned with its halfspaces, the facet owner tags.
        """
        order = sorted(self.facets)
        halfspaces = tuple(self.facets[f] for f in order)
        polygons = []
        for f, h in zip(order, halfspaces, strict=True):
            members = [i for i, fs in enumerate(self.vertex_facets) if f in fs]
            polygons.append(_orient_polygon(self._cycle(members), self.vertices, h))
        poly = ConvexPolyhedron(
            halfspaces=halfspaces,
            vertices=tuple(self.vertices),
            facet_adjacency=tuple(polygons),
            edges=tuple(sorted(self.edges)),
        )
        return poly, [self.owners[f] for f in order]

    def _cycle(self, members: list[int]) -> list[int]:
        member_set = set(members)
        neighbours: dict[int, list[int]] = {m: [] for m in members}
        for a, b in self.edges:
            if a in member_set and b in member_set:
                neighbours[a].append(b)
                neighbours[b].append(a)
        # Every vertex of a convex polygon has exactly two polygon neighbours.
        start = members[0]
        cycle = [start]
        previous, current = start, neighbours[start][0]
        while current != start:
            cycle.append(current)
            a, b = neighbours[current]
            previous, current = current, (b if a == previous else a)
        return cycle


def _edge(a: int, b: int) -> tuple[int, int]:
    return (a, b) if a < b else (b, a)


def _orient_polygon(
    polygon: list[int], vertices: Sequence[Point3], h: Halfspace
) -> tuple[int, ...]:
    """Order a convex facet polygon counter-clockwise around its outward normal."""
    a, b, c = (vertices[i] for i in polygon[:3])
    if (b - a).cross(c - a).dot(h.normal) < 0:
        polygon = [polygon[0], *reversed(polygon[1:])]
    return tuple(polygon)


# ---------------------------------------------------------------------------
# Constructions
# ---------------------------------------------------------------------------


def halfspace_intersection(halfspaces: Sequence[Halfspace]) -> ConvexPolyhedron:
    """Intersect a finite family of halfspaces.

    The search box is sized by a Hadamard bound on the vertex coordinates, so a
    box facet that survives every cut proves the region unbounded.

    Raises:
        UnboundedInput: If the intersection is not bounded.
        EmptyOrDegenerate: If the intersection has empty interior.
    """
    if not halfspaces:
        raise UnboundedInput("No halfspaces given")
    row_norm = max(abs(h.a) + abs(h.b) + abs(h.c) + abs(h.d) for h in halfspaces)
    half_width = Fraction(row_norm**3 + 1)
    builder = PolytopeBuilder.box(Point3.zero(), half_width)
    for index, h in enumerate(halfspaces):
        builder.cut(h, owner=index)
    poly, owners = builder.build()
    if any(isinstance(o, tuple) and o and o[0] == "box" for o in owners):
        raise UnboundedInput("Intersection is not bounded")
    return poly


def tetrahedron(a: Point3, b: Point3, c: Point3, d: Point3) -> ConvexPolyhedron:
    """Tetrahedron with vertices in the given order.

    Raises:
        DegenerateSimplex: If the four points are coplanar.
    """
    pts = (a, b, c, d)
    if orientation(a, b, c, d) == 0:
        raise DegenerateSimplex("Tetrahedron vertices are coplanar")
    halfspaces = []
    polygons = []
    for skip in range(4):
        face = [i for i in range(4) if i != skip]
        p, q, r = (pts[i] for i in face)
        normal = (q - p).cross(r - p)
        if normal.dot(pts[skip] - p) > 0:
            normal = -normal
        h = Halfspace.of(normal, normal.dot(p))
        halfspaces.append(h)
        polygons.append(_orient_polygon(face, pts, h))
    edges = tuple(combinations(range(4), 2))
    return ConvexPolyhedron(tuple(halfspaces), pts, tuple(polygons), edges)


def convex_hull(points: Iterable[Point3]) -> ConvexPolyhedron:
    """Exact convex hull of a finite point set spanning 3-space.

    Facet planes are the planes through three input points with every input
    point on one side.

    Raises:
        DegenerateSimplex: If the points do not span 3-space.
    """
    pts = list(dict.fromkeys(points))
    found: dict[Halfspace, None] = {}
    for i, j, k in combinations(range(len(pts)), 3):
        p, q, r = pts[i], pts[j], pts[k]
        normal = (q - p).cross(r - p)
        if normal.is_zero():
            continue
        offset = normal.dot(p)
        values = [normal.dot(s) - offset for s in pts]
        if all(v <= 0 for v in values):
            found[Halfspace.of(normal, offset)] = None
        elif all(v >= 0 for v in values):
            found[Halfspace.of(-normal, -offset)] = None
    if len(found) < 4:
        raise DegenerateSimplex("Points do not span 3-space")
    return halfspace_intersection(list(found))


def interiors_overlap(a: ConvexPolyhedron, b: ConvexPolyhedron) -> bool:
    """True iff the intersection of ``a`` and ``b`` is full-dimensional."""
    lo_a, hi_a = a.bounding_box()
    lo_b, hi_b = b.bounding_box()
    for la, ha, lb, hb in zip(lo_a, hi_a, lo_b, hi_b, strict=True):
        if ha <= lb or hb <= la:
            return False
    if a.vertex_key() == b.vertex_key():
        return True
    builder = PolytopeBuilder.from_polyhedron(a)
    try:
        for h in b.halfspaces:
            builder.cut(h)
    except EmptyOrDegenerate:
        return False
    return True


def circumcenter(p1: Point3, p2: Point3, p3: Point3, p4: Point3) -> Point3:
    """The point equidistant from four affinely independent points.

    Raises:
        DegenerateSimplex: If the points are coplanar.
    """
    rows = [p2 - p1, p3 - p1, p4 - p1]
    rhs = [(p.norm2() - p1.norm2()) / 2 for p in (p2, p3, p4)]
    center = solve3(rows, rhs)
    if center is None:
        raise DegenerateSimplex("Circumcenter of coplanar points is undefined")
    return center


# ---------------------------------------------------------------------------
# Volumes and sampling
# ---------------------------------------------------------------------------


def intersection_volume(a: ConvexPolyhedron, b: ConvexPolyhedron) -> Fraction:
    """Exact volume of ``a`` intersected with ``b`` (0 when the interiors are disjoint)."""
    builder = PolytopeBuilder.from_polyhedron(a)
    try:
        for h in b.halfspaces:
            builder.cut(h)
    except EmptyOrDegenerate:
        return Fraction(0)
    poly, _ = builder.build()
    return poly.volume()


def covered_by(poly: ConvexPolyhedron, pieces: Iterable[ConvexPolyhedron]) -> bool:
    """Whether ``poly`` lies inside the union of interior-disjoint ``pieces``.

    Exact: the volumes of the intersections with the pieces must add up to the
    volume of ``poly``.
    """
    total = poly.volume()
    covered = Fraction(0)
    for piece in pieces:
        covered += intersection_volume(poly, piece)
        if covered >= total:
            break
    return covered == total


def sample_interior_point(
    poly: ConvexPolyhedron,
    rng: random.Random,
    denominator: int,
    accept: Callable[[Point3], bool] | None = None,
    max_attempts: int = 100_000,
) -> Point3:
    """Uniform rational point of the grid ``Z^3 / denominator`` interior to ``poly``.

    Rejection sampling over the bounding box; points on the boundary, and points
    refused by ``accept``, are redrawn.

    Raises:
        EmptyOrDegenerate: If no point is accepted within ``max_attempts`` draws.
    """
    lo, hi = poly.bounding_box()
    bounds = [
        (math.ceil(a * denominator), math.floor(b * denominator))
        for a, b in zip(lo, hi, strict=True)
    ]
    for _ in range(max_attempts):
        p = Point3(*(Fraction(rng.randint(a, b), denominator) for a, b in bounds))
        if poly.locate(p) is not Location.INTERIOR:
            continue
        if accept is None or accept(p):
            return p
    raise EmptyOrDegenerate(f"No interior grid point accepted after {max_attempts} draws")

