"""Extended Voronoi regions, influence regions and rotation-pair reductions.

An extended Voronoi region VorExt is a union of fundamental subdomains that
contains the Dirichlet stereohedron of every base point interior to T^A. It is
cut out of T and its four neighbours by rotations: a subdomain S is excluded
by a rotation rho when, for every base point p, S lies closer to some
rho^k(p) than to p. The influence region collects the subdomains S = g(T^A)
whose translated region g(VorExt) overlaps VorExt itself.
"""

from collections import Counter
from dataclasses import dataclass, replace
from functools import cache

from src.errors import EmptyOrDegenerate
from src.geometry import (
    ConvexPolyhedron,
    Halfspace,
    Location,
    Point3,
    PolytopeBuilder,
    interiors_overlap,
)
from src.isometry import Isometry
from src.lattice import (
    BASE,
    COMPLEX,
    EDGE13_TWOFOLD,
    EDGE24_TWOFOLD,
    NEIGHBORS,
    RHO_0,
    RHO_0_T3,
    RHO_0_T4,
    RHO_13,
    RHO_24,
    SubdomainLabel,
    TetraAddress,
    complex_subdomains,
    subdomain_geometry,
    subdomain_vertices,
    subdomains_of,
    window_subdomains,
)
from src.logger import logger
from src.schemas import LETTERS, Letter, RegionFamilyName

T1, T2, T3, T4 = NEIGHBORS


@dataclass(frozen=True)
class SectorCut:
    """Subdomains excluded from VorExt by the dihedral sectors of one rotation."""

    name: str
    rotation: Isometry
    excluded: frozenset[SubdomainLabel]


@dataclass(frozen=True)
class RegionFamily:
    """A VorExt region with its cutting rotations and, once computed, its Infl.

    Attributes:
        family: Which rotations the groups of this family share.
        vorext_labels: Subdomains of VorExt(T^A).
        cuts: Rotations and the subdomains each one excludes.
        infl_labels: Subdomains of Infl(T^A); None until ``influence_region`` runs.
    """

    family: RegionFamilyName
    vorext_labels: frozenset[SubdomainLabel]
    cuts: tuple[SectorCut, ...]
    infl_labels: frozenset[SubdomainLabel] | None = None

    @property
    def cutting_rotations(self) -> list[Isometry]:
        return [cut.rotation for cut in self.cuts]

    def sorted_vorext(self) -> list[SubdomainLabel]:
        return sorted(self.vorext_labels, key=lambda label: label.sort_key)

    def sorted_infl(self) -> list[SubdomainLabel]:
        if self.infl_labels is None:
            raise ValueError("Influence region not computed")
        return sorted(self.infl_labels, key=lambda label: label.sort_key)


def _labels(address: TetraAddress, letters: str) -> frozenset[SubdomainLabel]:
    return frozenset(SubdomainLabel(address, x) for x in letters)  # type: ignore[arg-type]


def _from_cuts(family: RegionFamilyName, cuts: tuple[SectorCut, ...]) -> RegionFamily:
    excluded = frozenset().union(*(cut.excluded for cut in cuts))
    kept = frozenset(label for label in window_subdomains() if label not in excluded)
    return RegionFamily(family=family, vorext_labels=kept, cuts=cuts)


@cache
def vorext(family: RegionFamilyName) -> RegionFamily:
    """The extended Voronoi region of T^A for a family of groups."""
    if family == "order4":
        cuts = (
            SectorCut("rho_0", RHO_0, _labels(BASE, "DEF")),
            SectorCut("rho_13", RHO_13, frozenset(subdomains_of(T2)) | _labels(T4, "EFGH")),
            SectorCut("rho_24", RHO_24, frozenset(subdomains_of(T1)) | _labels(T3, "CDEF")),
        )
    else:
        cuts = (
            SectorCut(
                "rho_0",
                RHO_0,
                _labels(BASE, "DEF") | _labels(T1, "ADEFGH") | _labels(T2, "CDEF"),
            ),
            SectorCut("twofold_13", EDGE13_TWOFOLD, _labels(T2, "ABCD")),
            SectorCut("twofold_24", EDGE24_TWOFOLD, _labels(T1, "ABGH")),
            SectorCut("rho_0_t4", RHO_0_T4, _labels(T4, "EF")),
            SectorCut("rho_0_t3", RHO_0_T3, _labels(T3, "DEF")),
        )
    region = _from_cuts(family, cuts)
    logger.debug("VorExt built", family=family, subdomains=len(region.vorext_labels))
    return region


# ---------------------------------------------------------------------------
# Wedge-exclusion certificate
# ---------------------------------------------------------------------------


def rotation_orbit(rotation: Isometry, p: Point3) -> list[Point3]:
    """Images rho^k(p), k = 1 .. order-1 (p itself excluded)."""
    order = rotation.linear_order()
    images = []
    g = rotation
    for _ in range(1, order):
        images.append(g.apply(p))
        g = rotation.compose(g)
    return images


def sector_halfspaces(rotation: Isometry, p: Point3) -> list[Halfspace]:
    """The dihedral sector of p: points at least as close to p as to every rho^k(p)."""
    return [Halfspace.bisector(p, q) for q in rotation_orbit(rotation, p) if q != p]


def wedge_excludes(rotation: Isometry, p: Point3, subdomain: ConvexPolyhedron) -> bool:
    """Whether the sector of ``p`` under ``rotation`` meets ``subdomain`` in measure zero."""
    builder = PolytopeBuilder.from_polyhedron(subdomain)
    try:
        for h in sector_halfspaces(rotation, p):
            builder.cut(h)
    except EmptyOrDegenerate:
        return True
    return False


# ---------------------------------------------------------------------------
# Influence region
# ---------------------------------------------------------------------------


def _mapped_pieces(g: Isometry, labels: frozenset[SubdomainLabel]) -> list[frozenset[Point3]]:
    return [frozenset(g.apply(v) for v in subdomain_vertices(label)) for label in labels]


def regions_overlap(g: Isometry, region: RegionFamily) -> bool:
    """Whether g(VorExt) and VorExt overlap in a full-dimensional set.

    Fundamental subdomains tile space, so two unions of subdomains overlap
    exactly when they share a subdomain; pairs sharing none are confirmed
    disjoint with the exact overlap test.
    """
    own = {frozenset(subdomain_vertices(label)): label for label in region.vorext_labels}
    mapped = _mapped_pieces(g, region.vorext_labels)
    if any(piece in own for piece in mapped):
        return True
    own_polys = [subdomain_geometry(label) for label in region.vorext_labels]
    for label in region.vorext_labels:
        image = g.apply_polyhedron(subdomain_geometry(label))
        if any(interiors_overlap(image, poly) for poly in own_polys):
            logger.warning("Subdomains overlap without coinciding", subdomain=str(label))
            return True
    return False


def influence_region(region: RegionFamily) -> RegionFamily:
    """Fill ``infl_labels``: subdomains S of the complex with VorExt(S) meeting VorExt(T^A)."""
    infl = frozenset(
        label for label in complex_subdomains() if regions_overlap(label.to_subdomain, region)
    )
    logger.info("Influence region computed", family=region.family, subdomains=len(infl))
    return replace(region, infl_labels=infl)


@cache
def computed_region(family: RegionFamilyName) -> RegionFamily:
    """VorExt with its influence region, computed once per process."""
    return influence_region(vorext(family))


def with_extra_subdomains(region: RegionFamily, extra: frozenset[SubdomainLabel]) -> RegionFamily:
    """A copy of ``region`` whose VorExt also contains ``extra`` (Infl reset)."""
    return replace(region, vorext_labels=region.vorext_labels | extra, infl_labels=None)


def infl_union_contains(region: RegionFamily, p: Point3) -> bool:
    """Whether ``p`` lies in the closed union of the influence subdomains."""
    return any(
        subdomain_geometry(label).locate(p) is not Location.OUTSIDE
        for label in region.sorted_infl()
    )


# ---------------------------------------------------------------------------
# Counting
# ---------------------------------------------------------------------------


def _is_t_family(address: TetraAddress) -> bool:
    return address.i is None or address.j is not None


def letter_counts(region: RegionFamily) -> tuple[dict[Letter, int], dict[Letter, int]]:
    """Infl subdomains per letter in the T family (T and the T_ij) and in the T_i family."""
    same: Counter[Letter] = Counter()
    other: Counter[Letter] = Counter()
    for label in region.sorted_infl():
        (same if _is_t_family(label.tetra) else other)[label.letter] += 1
    return {x: same[x] for x in LETTERS}, {x: other[x] for x in LETTERS}


def reduction_pairs(region: RegionFamily) -> list[tuple[SubdomainLabel, SubdomainLabel]]:
    """Pairs (T^x_ij, T^x_ji), |i - j| odd, with both members in Infl.

    The two members are images of each other under an order-3 rotation about
    an edge of T, so at most one of them yields a facet.
    """
    if not region.infl_labels:
        return []
    pairs = []
    for address in COMPLEX:
        if address.j is None or address.i is None or address.i > address.j:
            continue
        if (address.j - address.i) % 2 == 0:
            continue
        for x in LETTERS:
            first = SubdomainLabel(address, x)
            second = SubdomainLabel(address.swapped(), x)
            if first in region.infl_labels and second in region.infl_labels:
                pairs.append((first, second))
    return sorted(pairs, key=lambda pair: (pair[0].letter, pair[0].sort_key))


def vorext_pieces(region: RegionFamily) -> list[ConvexPolyhedron]:
    return [subdomain_geometry(label) for label in region.sorted_vorext()]


def infl_pieces(region: RegionFamily) -> list[ConvexPolyhedron]:
    return [subdomain_geometry(label) for label in region.sorted_infl()]
