"""Combinatorial scaffolding of the body-centred cubic lattice I.

The Delaunay tetrahedra of I near the base tetrahedron T are addressed as
T, T_i (neighbour across the face opposite v_i) and T_ij (neighbour of T_i
across its face opposite v_j). Each tetrahedron carries labelled vertices
v1..v4 (images of T's vertices under the reflections that produce it) and
splits into eight fundamental subdomains A..H.

Letters are (vertex a, edge ab) pairs: T^X = conv(v_a, m_ab, m13, m24).
"""

from dataclasses import dataclass, field
from fractions import Fraction
from functools import cache, cached_property

from src.errors import OnSubdomainBoundary
from src.geometry import (
    ConvexPolyhedron,
    Location,
    Point3,
    barycenter,
    midpoint,
    orientation,
    tetrahedron,
)
from src.isometry import Isometry
from src.schemas import LETTERS, Color, Letter

HALF = Fraction(1, 2)

# Base tetrahedron, ordered so that v_i lies in F_i.
V1 = Point3(HALF, -HALF, HALF)
V2 = Point3.of(1, 0, 0)
V3 = Point3(HALF, HALF, HALF)
V4 = Point3.zero()
BASE_VERTICES: tuple[Point3, Point3, Point3, Point3] = (V1, V2, V3, V4)

# Opposite vertex of each vertex across the two right-angled edges v1v3 and v2v4.
_PARTNER = {1: 3, 3: 1, 2: 4, 4: 2}

LETTER_EDGES: dict[Letter, tuple[int, int]] = {
    "A": (1, 2),
    "B": (2, 1),
    "C": (2, 3),
    "D": (3, 2),
    "E": (3, 4),
    "F": (4, 3),
    "G": (4, 1),
    "H": (1, 4),
}
_EDGE_LETTERS = {edge: letter for letter, edge in LETTER_EDGES.items()}


# ---------------------------------------------------------------------------
# Lattice points
# ---------------------------------------------------------------------------


def f_class(p: Point3) -> int:
    """Index i of the sublattice F_i containing ``p``.

    Raises:
        ValueError: If ``p`` is not a point of I.
    """
    doubled = [2 * c for c in p]
    if any(c.denominator != 1 for c in doubled) or len({int(c) % 2 for c in doubled}) != 1:
        raise ValueError(f"{p} is not a point of the lattice I")
    i = int(sum(doubled)) % 4
    return i or 4


@dataclass(frozen=True, slots=True)
class LatticePoint:
    """A point of I together with its sublattice index."""

    coords: Point3

    def __post_init__(self) -> None:
        f_class(self.coords)

    @property
    def f_class(self) -> int:
        return f_class(self.coords)


def is_lattice_point(p: Point3) -> bool:
    try:
        f_class(p)
    except ValueError:
        return False
    return True


# ---------------------------------------------------------------------------
# Reflections and named rotations
# ---------------------------------------------------------------------------


@cache
def face_reflection(i: int) -> Isometry:
    """Mirror reflection sigma_i in the face of T opposite v_i."""
    face = [v for k, v in enumerate(BASE_VERTICES, start=1) if k != i]
    return Isometry.reflection_through(*face)


@cache
def letter_element(letter: Letter) -> Isometry:
    """The symmetry of T sending T^A to T^letter (an element of T's dihedral group)."""
    a, b = LETTER_EDGES[letter]
    images = [a, b, _PARTNER[a], _PARTNER[b]]
    return Isometry.from_points(BASE_VERTICES, [BASE_VERTICES[k - 1] for k in images])


def letter_of_symmetry(g: Isometry) -> Letter:
    """Letter X with g(T^A) = T^X for a symmetry ``g`` of T."""
    index = {v: k for k, v in enumerate(BASE_VERTICES, start=1)}
    a = index[g.apply(V1)]
    b = index[g.apply(V2)]
    return _EDGE_LETTERS[(a, b)]


# Order-2 rotation about the common perpendicular of v1v3 and v2v4.
RHO_0 = Isometry.from_map(lambda u: Point3(1 - u.x, -u.y, u.z))
# Order-4 rotations about the lines v1v3 and v2v4.
RHO_13 = Isometry.from_map(lambda u: Point3(1 - u.z, u.y, u.x))
RHO_24 = Isometry.from_map(lambda u: Point3(u.x, -u.z, u.y))
# Order-2 rotations about the lines v1v3 and v2v4.
EDGE13_TWOFOLD = Isometry.from_map(lambda u: Point3(1 - u.x, u.y, 1 - u.z))
EDGE24_TWOFOLD = Isometry.from_map(lambda u: Point3(u.x, -u.y, -u.z))
# Conjugates of RHO_0 by the two order-3 rotations, axes crossing T4/T2 and T3/T1.
RHO_0_T4 = Isometry.from_map(lambda u: Point3(u.x, -u.y, 1 - u.z))
RHO_0_T3 = Isometry.from_map(lambda u: Point3(1 - u.x, u.y, -u.z))


# ---------------------------------------------------------------------------
# Tetrahedron addresses
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class TetraAddress:
    """Address of a Delaunay tetrahedron near T.

    Attributes:
        i: First reflection index, or None for T itself.
        j: Second reflection index (T_ij), or None.
        anchor: Translation by a vector of I, for tetrahedra outside the
            fifteen-tetrahedron complex.
    """

    i: int | None = None
    j: int | None = None
    anchor: Point3 = field(default_factory=Point3.zero)

    def __post_init__(self) -> None:
        if self.i is None and self.j is not None:
            raise ValueError("T_ij needs a first index")
        for k in (self.i, self.j):
            if k is not None and k not in (1, 2, 3, 4):
                raise ValueError(f"Tetrahedron index {k} outside 1..4")
        if self.i is not None and self.i == self.j:
            raise ValueError("T_ii is T itself; use the base address")
        if (self.i, self.j) in ((3, 1), (4, 2)):
            # T_31 = T_13 and T_42 = T_24 as labelled tetrahedra.
            i, j = self.j, self.i
            object.__setattr__(self, "i", i)
            object.__setattr__(self, "j", j)
        if not is_lattice_point(self.anchor):
            raise ValueError(f"Anchor {self.anchor} is not a vector of I")

    @property
    def sort_key(self) -> tuple[int, int, int, tuple[Fraction, ...]]:
        return (
            0 if self.i is None else 1 if self.j is None else 2,
            self.i or 0,
            self.j or 0,
            tuple(self.anchor),
        )

    @property
    def kind(self) -> str:
        if self.i is None:
            return "base"
        return "neighbor" if self.j is None else "neighbor_of_neighbor"

    def swapped(self) -> "TetraAddress":
        """T_ji for T_ij."""
        if self.j is None:
            raise ValueError("Only T_ij addresses can be swapped")
        return TetraAddress(self.j, self.i, self.anchor)

    def with_anchor(self, anchor: Point3) -> "TetraAddress":
        return TetraAddress(self.i, self.j, anchor)

    @cached_property
    def from_base(self) -> Isometry:
        """Label-preserving isometry sending T onto this tetrahedron."""
        g = Isometry.identity()
        if self.i is not None:
            g = face_reflection(self.i)
        if self.j is not None:
            g = g.compose(face_reflection(self.j))
        if not self.anchor.is_zero():
            g = Isometry.pure_translation(self.anchor).compose(g)
        return g

    def __str__(self) -> str:
        digits = "".join(str(k) for k in (self.i, self.j) if k is not None)
        text = f"T{digits}" if digits else "T0"
        if not self.anchor.is_zero():
            text += f"+{self.anchor}"
        return text


BASE = TetraAddress()
NEIGHBORS: tuple[TetraAddress, ...] = tuple(TetraAddress(i) for i in range(1, 5))
NEIGHBORS_OF_NEIGHBORS: tuple[TetraAddress, ...] = tuple(
    dict.fromkeys(
        TetraAddress(i, j) for i in range(1, 5) for j in range(1, 5) if i != j
    )
)
# T and its four neighbours: the union containing every stereohedron based in T.
FIVE_TETRAHEDRA: tuple[TetraAddress, ...] = (BASE, *NEIGHBORS)
# The fifteen tetrahedra that can hold neighbours of a base point in T.
COMPLEX: tuple[TetraAddress, ...] = (*FIVE_TETRAHEDRA, *NEIGHBORS_OF_NEIGHBORS)


@dataclass(frozen=True)
class LabeledTetrahedron:
    """A Delaunay tetrahedron with its vertices in label order v1..v4."""

    address: TetraAddress
    vertices: tuple[Point3, Point3, Point3, Point3]
    polyhedron: ConvexPolyhedron


def base_tetrahedron() -> LabeledTetrahedron:
    return tetra_geometry(BASE)


@cache
def tetra_geometry(address: TetraAddress) -> LabeledTetrahedron:
    g = address.from_base
    labelled = (g(V1), g(V2), g(V3), g(V4))
    return LabeledTetrahedron(address, labelled, tetrahedron(*labelled))


def tetra_color(address: TetraAddress) -> Color:
    """Colour of the two-colouring: black iff labels are oriented as in T."""
    vertices = tetra_geometry(address).vertices
    return "black" if orientation(*vertices) == orientation(*BASE_VERTICES) else "white"


# ---------------------------------------------------------------------------
# Fundamental subdomains
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class SubdomainLabel:
    """A fundamental subdomain: tetrahedron address plus letter."""

    tetra: TetraAddress
    letter: Letter

    @property
    def to_subdomain(self) -> Isometry:
        """Isometry of the normalizer of R1 sending T^A onto this subdomain."""
        return self.tetra.from_base.compose(letter_element(self.letter))

    @property
    def sort_key(self) -> tuple[object, ...]:
        return (*self.tetra.sort_key, self.letter)

    def __str__(self) -> str:
        return f"{self.tetra}^{self.letter}"

    @classmethod
    def parse(cls, text: str) -> "SubdomainLabel":
        """Inverse of ``str`` for unanchored labels, e.g. "T13^B" or "T0^A"."""
        name, _, letter = text.partition("^")
        if letter not in LETTERS or not name.startswith("T"):
            raise ValueError(f"Not a subdomain label: {text!r}")
        digits = [int(c) for c in name[1:] if c != "0"]
        i = digits[0] if digits else None
        j = digits[1] if len(digits) > 1 else None
        return cls(TetraAddress(i, j), letter)  # type: ignore[arg-type]


def subdomain_vertices(label: SubdomainLabel) -> tuple[Point3, Point3, Point3, Point3]:
    v = tetra_geometry(label.tetra.with_anchor(Point3.zero())).vertices
    a, b = LETTER_EDGES[label.letter]
    shift = label.tetra.anchor
    return (
        v[a - 1] + shift,
        midpoint(v[a - 1], v[b - 1]) + shift,
        midpoint(v[0], v[2]) + shift,
        midpoint(v[1], v[3]) + shift,
    )


@cache
def subdomain_geometry(label: SubdomainLabel) -> ConvexPolyhedron:
    return tetrahedron(*subdomain_vertices(label))


def subdomain_centroid(label: SubdomainLabel) -> Point3:
    return barycenter(subdomain_vertices(label))


def subdomains_of(address: TetraAddress) -> list[SubdomainLabel]:
    return [SubdomainLabel(address, letter) for letter in LETTERS]


def window_subdomains() -> list[SubdomainLabel]:
    """The 40 subdomains of T and its four neighbours."""
    return [label for a in FIVE_TETRAHEDRA for label in subdomains_of(a)]


def complex_subdomains() -> list[SubdomainLabel]:
    """The 120 subdomains of the fifteen-tetrahedron complex."""
    return [label for a in COMPLEX for label in subdomains_of(a)]


# ---------------------------------------------------------------------------
# Classification
# ---------------------------------------------------------------------------

_ANCHOR_REACH = 2


def _anchors_near(p: Point3) -> list[Point3]:
    """Vectors of I near ``p - centroid(T)``, nearest first (zero always first)."""
    centre = p - barycenter(BASE_VERTICES)
    lo = [int(2 * c) - 2 * _ANCHOR_REACH for c in centre]
    found = []
    for a in range(lo[0], lo[0] + 4 * _ANCHOR_REACH + 2):
        for b in range(lo[1], lo[1] + 4 * _ANCHOR_REACH + 2):
            for c in range(lo[2], lo[2] + 4 * _ANCHOR_REACH + 2):
                if a % 2 == b % 2 == c % 2:
                    found.append(Point3(Fraction(a, 2), Fraction(b, 2), Fraction(c, 2)))
    found.sort(key=lambda t: (not t.is_zero(), (centre - t).norm2(), tuple(t)))
    return found


def classify_in_tetra(p: Point3, address: TetraAddress) -> SubdomainLabel:
    """Letter of the subdomain of ``address`` containing ``p`` in its interior.

    Raises:
        OnSubdomainBoundary: If ``p`` is not interior to one of the eight subdomains.
    """
    for label in subdomains_of(address):
        if subdomain_geometry(label).locate(p) is Location.INTERIOR:
            return label
    raise OnSubdomainBoundary(f"{p} is not interior to a subdomain of {address}")


def classify_subdomain(p: Point3, window: tuple[TetraAddress, ...] = COMPLEX) -> SubdomainLabel:
    """The unique fundamental subdomain containing ``p`` in its interior.

    Addresses of the window are tried first; points beyond it get a translated
    address whose anchor is the nearest vector of I that works.

    Raises:
        OnSubdomainBoundary: If ``p`` lies on a wall of the subdivision.
    """
    for anchor in _anchors_near(p):
        shifted = p - anchor
        for address in window:
            where = tetra_geometry(address).polyhedron.locate(shifted)
            if where is Location.OUTSIDE:
                continue
            if where is Location.BOUNDARY:
                raise OnSubdomainBoundary(f"{p} lies on a Delaunay facet")
            label = classify_in_tetra(shifted, address)
            return SubdomainLabel(address.with_anchor(anchor), label.letter)
    raise OnSubdomainBoundary(f"{p} is outside the searched window")


# ---------------------------------------------------------------------------
# Halves of T
# ---------------------------------------------------------------------------

# The plane through the midpoints of v1v2, v2v3, v3v4 and v4v1 is z = 1/4;
# the upper half contains v1 and v3.
HALF_PLANE_HEIGHT = Fraction(1, 4)


def half_of(p: Point3) -> str | None:
    """"upper" or "lower" side of the bisecting plane, None on the plane."""
    if p.z > HALF_PLANE_HEIGHT:
        return "upper"
    if p.z < HALF_PLANE_HEIGHT:
        return "lower"
    return None
