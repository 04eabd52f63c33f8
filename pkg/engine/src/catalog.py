"""The 27 full cubic crystallographic groups.

Every group is generated by the odd subgroup R1 (type F23 with axes meeting
at points of I), the stabilizer H_T of the base tetrahedron (a subgroup of
T's dihedral symmetry group, given by the letters it sends T^A to) and, when
the group mixes the two tetrahedron colours, one element rho mapping T onto
T4. The stored classification (s, m, occupied letters) is authored data;
``verify_group_spec`` recomputes all of it from the generators alone.
"""

from dataclasses import dataclass
from functools import cache, cached_property
from typing import Literal

from src.errors import SpecMismatch, UnknownGroup
from src.geometry import Location, Point3, barycenter, format_rational
from src.groups import GroupPresentation
from src.isometry import Isometry
from src.lattice import (
    BASE,
    BASE_VERTICES,
    NEIGHBORS,
    SubdomainLabel,
    classify_in_tetra,
    face_reflection,
    letter_element,
    letter_of_symmetry,
    subdomain_centroid,
    tetra_geometry,
)
from src.logger import logger
from src.schemas import GroupDocument, IsometryDocument, Letter, RegionFamilyName

LatticeType = Literal["P", "I", "F"]

_BASES: dict[LatticeType, tuple[Point3, Point3, Point3]] = {
    "P": (Point3.of(1, 0, 0), Point3.of(0, 1, 0), Point3.of(0, 0, 1)),
    "I": (
        Point3.of("-1/2", "1/2", "1/2"),
        Point3.of("1/2", "-1/2", "1/2"),
        Point3.of("1/2", "1/2", "-1/2"),
    ),
    "F": (Point3.of(0, 1, 1), Point3.of(1, 0, 1), Point3.of(1, 1, 0)),
}

# Order-3 rotation about the main diagonal and order-2 rotation about the x axis,
# both through the lattice point v4 = 0; with the F translations they generate R1.
R1_ROTATIONS = (
    Isometry.from_map(lambda u: Point3(u.z, u.x, u.y)),
    Isometry.from_map(lambda u: Point3(u.x, -u.y, -u.z)),
)


@dataclass(frozen=True)
class FullGroupSpec:
    """One full cubic group and its classification.

    Attributes:
        name: International symbol in ASCII (e.g. "P4_232", "F2/d-3").
        lattice: Bravais type of the translation lattice.
        s: Order of the stabilizer of T.
        m: 1 if the group maps T onto a tetrahedron of the other colour.
        stabilizer_letters: Letters X with T^X in the orbit of T^A inside T; the
            stabilizer H_T of T as a subgroup of T's symmetries.
        neighbor_letters: Letters occupied in each neighbour tetrahedron (empty
            when the group keeps the colours apart).
        published_bound: Facet bound of the published table, None for groups with
            reflections.
        provenance: Which argument proves the published bound.
        family: Region family refining the bound, if any.
    """

    name: str
    lattice: LatticeType
    stabilizer_letters: frozenset[Letter]
    neighbor_letters: frozenset[Letter]
    s: int
    m: int
    has_reflections: bool
    published_bound: int | None = None
    provenance: str = "constant 8 (reflections)"
    family: RegionFamilyName | None = None

    @property
    def occupied_letters_base(self) -> frozenset[Letter]:
        return self.stabilizer_letters

    @property
    def occupied_letters_neighbor(self) -> frozenset[Letter]:
        return self.neighbor_letters

    @cached_property
    def generators(self) -> tuple[Isometry, ...]:
        gens: list[Isometry] = list(R1_ROTATIONS)
        gens += [Isometry.pure_translation(v) for v in _BASES["F"]]
        gens += [letter_element(x) for x in sorted(self.stabilizer_letters) if x != "A"]
        if self.neighbor_letters:
            first = min(self.neighbor_letters)
            gens.append(face_reflection(4).compose(letter_element(first)))
        return tuple(gens)

    @cached_property
    def presentation(self) -> GroupPresentation:
        return GroupPresentation(
            name=self.name,
            generators=self.generators,
            translation_basis=_BASES[self.lattice],
        )

    @property
    def aspect_count(self) -> int:
        return self.presentation.aspect_count()


def _spec(
    name: str,
    lattice: LatticeType,
    base: str,
    neighbor: str = "",
    bound: int | None = None,
    provenance: str = "constant 8 (reflections)",
    family: RegionFamilyName | None = None,
) -> FullGroupSpec:
    return FullGroupSpec(
        name=name,
        lattice=lattice,
        stabilizer_letters=frozenset(base),  # type: ignore[arg-type]
        neighbor_letters=frozenset(neighbor),  # type: ignore[arg-type]
        s=len(base),
        m=1 if neighbor else 0,
        has_reflections=bound is None,
        published_bound=bound,
        provenance=provenance if bound is not None else "constant 8 (reflections)",
        family=family,
    )


_FIRST = "first bound"
_ORDER4 = "order-4 rotations"
_ORDER2 = "transversal order-2 rotations"

CATALOG: dict[str, FullGroupSpec] = {
    spec.name: spec
    for spec in (
        # s = 1
        _spec("F23", "F", "A", bound=10, provenance=_FIRST),
        _spec("F432", "F", "A", "H", bound=14, provenance=_FIRST),
        _spec("F2/d-3", "F", "A", "B", bound=14, provenance=_FIRST),
        _spec("F-43c", "F", "A", "E", bound=14, provenance=_FIRST),
        _spec("F-43m", "F", "A", "A"),
        # s = 2
        _spec("F4_132", "F", "AB", bound=17, provenance=_FIRST),
        _spec("P23", "P", "AE", bound=15, provenance=_ORDER2, family="transversal_order2"),
        _spec("F2/m-3", "F", "AH"),
        _spec("F4_1/d-32/n", "F", "AB", "EF", bound=25, provenance=_FIRST),
        _spec("I23", "I", "AE", "CG", bound=21, provenance=_ORDER2, family="transversal_order2"),
        _spec("P432", "P", "AE", "DH", bound=11, provenance=_ORDER4, family="order4"),
        _spec("P2/n-3", "P", "AE", "BF", bound=23, provenance=_ORDER2, family="transversal_order2"),
        _spec("F4_1/d-32/m", "F", "AB", "AB"),
        _spec("F4/m-32/n", "F", "AH", "DE"),
        _spec("P-43m", "P", "AE", "AE"),
        _spec("F4/m-32/m", "F", "AH", "AH"),
        # s = 4
        _spec(
            "P4_232",
            "P",
            "ABEF",
            bound=25,
            provenance="transversal order-2 rotations and helix refinement",
            family="transversal_order2",
        ),
        _spec("P-43n", "P", "ACEG", bound=23, provenance=_ORDER2, family="transversal_order2"),
        _spec("P2/m-3", "P", "ADEH"),
        _spec("I432", "I", "ABEF", "CDGH", bound=22, provenance=_ORDER4, family="order4"),
        _spec("P4/n-32/n", "P", "ACEG", "BDFH", bound=23, provenance=_ORDER4, family="order4"),
        _spec("P4/m-32/m", "P", "ADEH", "ADEH"),
        _spec("I2/m-3", "I", "ADEH", "BCFG"),
        _spec("P4_1/n-32/m", "P", "ABEF", "ABEF"),
        _spec("I-43m", "I", "ACEG", "ACEG"),
        # s = 8
        _spec("P4/m-32/n", "P", "ABCDEFGH"),
        _spec("I4/m-32/m", "I", "ABCDEFGH", "ABCDEFGH"),
    )
}


def catalog(name: str) -> FullGroupSpec:
    """Look up a full group by name.

    Raises:
        UnknownGroup: If ``name`` is not one of the 27 entries.
    """
    try:
        return CATALOG[name.replace(" ", "")]
    except KeyError as e:
        raise UnknownGroup(name) from e


def groups_without_reflections() -> list[FullGroupSpec]:
    return [spec for spec in CATALOG.values() if not spec.has_reflections]


# ---------------------------------------------------------------------------
# Verification
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class GroupVerification:
    """Classification recomputed from a presentation."""

    name: str
    s: int
    m: int
    has_reflections: bool
    occupied_base: frozenset[Letter]
    occupied_neighbor: frozenset[Letter]
    aspect_count: int
    lattice_index: int


def tetra_stabilizer(presentation: GroupPresentation) -> list[Isometry]:
    """Elements mapping T onto itself (each fixes T's centroid)."""
    return presentation.stabilizer(barycenter(BASE_VERTICES))


def elements_onto_t4(presentation: GroupPresentation) -> list[Isometry]:
    """Elements mapping T onto its neighbour T4 (empty if colours are kept apart)."""
    centre = barycenter(BASE_VERTICES)
    target = barycenter(tetra_geometry(NEIGHBORS[3]).vertices)
    found = []
    for rep in presentation.coset_representatives:
        shift = target - rep.apply(centre)
        if presentation.in_lattice(shift):
            found.append(Isometry.pure_translation(shift).compose(rep))
    return found


def contains_reflection(presentation: GroupPresentation) -> bool:
    """Whether some element is a mirror reflection (not merely a glide)."""
    for rep in presentation.coset_representatives:
        if rep.determinant != -1 or rep.trace != 1:
            continue
        # Mirror linear part M: t + l is a pure reflection iff (I + M)(t + l) = 0.
        for i in range(-2, 3):
            for j in range(-2, 3):
                for k in range(-2, 3):
                    w = rep.translation + presentation.from_coordinates((i, j, k))
                    if (w + rep.apply_linear(w)).is_zero():
                        return True
    return False


def occupied_letters(
    presentation: GroupPresentation,
) -> tuple[frozenset[Letter], list[frozenset[Letter]]]:
    """Letters holding orbit points of a generic point of T^A, in T and in each T_i."""
    p = subdomain_centroid(SubdomainLabel(BASE, "A"))
    orbit = presentation.orbit_in_ball(p, 2)
    per_tetra: dict[object, set[Letter]] = {BASE: set(), **{n: set() for n in NEIGHBORS}}
    for item in orbit:
        for address in per_tetra:
            poly = tetra_geometry(address).polyhedron
            if poly.locate(item.point) is Location.INTERIOR:
                per_tetra[address].add(classify_in_tetra(item.point, address).letter)
    return (
        frozenset(per_tetra[BASE]),
        [frozenset(per_tetra[n]) for n in NEIGHBORS],
    )


def verify_group_spec(spec: FullGroupSpec) -> GroupVerification:
    """Recompute the classification of ``spec`` from its generators.

    Raises:
        SpecMismatch: Naming the first check that disagrees with the stored data.
    """
    presentation = spec.presentation
    check = presentation.validate()
    if check.lattice_index != 1:
        raise SpecMismatch(spec.name, "translation basis generated", 1, check.lattice_index)
    if check.extra_translations:
        raise SpecMismatch(
            spec.name,
            "translation lattice",
            spec.lattice,
            [str(t) for t in check.extra_translations],
        )

    stabilizer = tetra_stabilizer(presentation)
    if len(stabilizer) != spec.s:
        raise SpecMismatch(spec.name, "s", spec.s, len(stabilizer))
    onto_t4 = elements_onto_t4(presentation)
    m = 1 if onto_t4 else 0
    if m != spec.m:
        raise SpecMismatch(spec.name, "m", spec.m, m)

    stabilizer_letters = frozenset(letter_of_symmetry(g) for g in stabilizer)
    sigma4 = face_reflection(4)
    t4_letters = frozenset(letter_of_symmetry(sigma4.compose(g)) for g in onto_t4)

    base, neighbors = occupied_letters(presentation)
    if base != stabilizer_letters:
        raise SpecMismatch(
            spec.name, "orbit letters in T", sorted(stabilizer_letters), sorted(base)
        )
    if any(n != neighbors[0] for n in neighbors) or neighbors[3] != t4_letters:
        raise SpecMismatch(
            spec.name,
            "orbit letters in the neighbours",
            sorted(t4_letters),
            [sorted(n) for n in neighbors],
        )
    if base != spec.occupied_letters_base:
        raise SpecMismatch(
            spec.name, "occupied_letters_base", sorted(spec.occupied_letters_base), sorted(base)
        )
    if neighbors[0] != spec.occupied_letters_neighbor:
        raise SpecMismatch(
            spec.name,
            "occupied_letters_neighbor",
            sorted(spec.occupied_letters_neighbor),
            sorted(neighbors[0]),
        )

    reflections = contains_reflection(presentation)
    if reflections != spec.has_reflections:
        raise SpecMismatch(spec.name, "has_reflections", spec.has_reflections, reflections)

    logger.debug("Group verified", group=spec.name, s=spec.s, m=spec.m)
    return GroupVerification(
        name=spec.name,
        s=len(stabilizer),
        m=m,
        has_reflections=reflections,
        occupied_base=base,
        occupied_neighbor=neighbors[0],
        aspect_count=check.aspect_count,
        lattice_index=check.lattice_index,
    )


# ---------------------------------------------------------------------------
# Group-exchange documents
# ---------------------------------------------------------------------------


def isometry_document(g: Isometry) -> IsometryDocument:
    return IsometryDocument(entries=g.to_strings(), text=str(g))


def group_document(spec: FullGroupSpec) -> GroupDocument:
    return GroupDocument(
        name=spec.name,
        s=spec.s,
        m=spec.m,
        has_reflections=spec.has_reflections,
        lattice=spec.lattice,
        translation_basis=[[format_rational(c) for c in v] for v in _BASES[spec.lattice]],
        generators=[isometry_document(g) for g in spec.generators],
        occupied_letters_base=sorted(spec.occupied_letters_base),
        occupied_letters_neighbor=sorted(spec.occupied_letters_neighbor),
    )


def presentation_from_document(document: GroupDocument) -> GroupPresentation:
    """Rebuild a presentation from its exchange document."""
    basis = [Point3.of(*v) for v in document.translation_basis]
    return GroupPresentation(
        name=document.name,
        generators=tuple(Isometry.from_strings(g.entries) for g in document.generators),
        translation_basis=(basis[0], basis[1], basis[2]),
    )


@cache
def catalog_documents() -> tuple[GroupDocument, ...]:
    return tuple(group_document(spec) for spec in CATALOG.values())
