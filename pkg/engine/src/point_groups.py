"""Finite point groups of the cube and the stabilizer-candidate criterion.

A nontrivial subgroup H0 of a point group G0 can be the point-group image of
the stabilizer of an orbit point only if no proper subgroup F0 of G0 satisfies
F0 H0 = G0; otherwise the orbit is already an orbit of a smaller group.
"""

from collections.abc import Iterable

from src.errors import NotAGroup
from src.geometry import Point3
from src.isometry import Isometry

CUBE_GROUP_ORDER = 48

PointGroup = frozenset[Isometry]


def _linear(g: Isometry) -> Isometry:
    return Isometry(g.linear, Point3.zero())


def closure(generators: Iterable[Isometry], limit: int = CUBE_GROUP_ORDER) -> PointGroup:
    """Finite group generated by the linear parts of ``generators``.

    Raises:
        NotAGroup: If the generated group has more than ``limit`` elements.
    """
    gens = [_linear(g) for g in generators]
    elements = {Isometry.identity()}
    frontier = list(elements)
    while frontier:
        fresh = []
        for a in frontier:
            for g in gens:
                product = g.compose(a)
                if product not in elements:
                    elements.add(product)
                    fresh.append(product)
        if len(elements) > limit:
            raise NotAGroup(f"Generated point group exceeds {limit} elements")
        frontier = fresh
    return frozenset(elements)


def check_group(elements: Iterable[Isometry]) -> PointGroup:
    """Validate that ``elements`` (linear parts) are closed under composition and inverse.

    Raises:
        NotAGroup: If closure fails.
    """
    group = frozenset(_linear(g) for g in elements)
    if Isometry.identity() not in group:
        raise NotAGroup("Point group lacks the identity")
    for a in group:
        if a.inverse() not in group:
            raise NotAGroup(f"Inverse of {a} missing")
        for b in group:
            if a.compose(b) not in group:
                raise NotAGroup(f"Product of {a} and {b} missing")
    return group


def subgroups(group: PointGroup) -> list[PointGroup]:
    """Every subgroup, found by joining subgroups with single elements until stable.

    Works on element indices with a precomputed multiplication table.
    """
    elements = sorted(group, key=str)
    index = {g: k for k, g in enumerate(elements)}
    table = [[index[a.compose(b)] for b in elements] for a in elements]
    identity = index[Isometry.identity()]

    def join(members: frozenset[int], extra: int) -> frozenset[int]:
        result = set(members) | {extra}
        frontier = list(result)
        while frontier:
            fresh = []
            for a in frontier:
                for b in list(result):
                    for c in (table[a][b], table[b][a]):
                        if c not in result:
                            result.add(c)
                            fresh.append(c)
            frontier = fresh
        return frozenset(result)

    found: set[frozenset[int]] = {frozenset({identity})}
    frontier = list(found)
    while frontier:
        fresh = []
        for h in frontier:
            for g in range(len(elements)):
                if g in h:
                    continue
                joined = join(h, g)
                if joined not in found:
                    found.add(joined)
                    fresh.append(joined)
        frontier = fresh
    result = [frozenset(elements[k] for k in h) for h in found]
    return sorted(result, key=lambda h: (len(h), sorted(str(g) for g in h)))


def product_set(a: PointGroup, b: PointGroup) -> PointGroup:
    return frozenset(x.compose(y) for x in a for y in b)


def point_group_stabilizer_candidates(point_group: Iterable[Isometry]) -> list[PointGroup]:
    """Nontrivial subgroups H0 with no proper subgroup F0 such that F0 H0 = G0.

    Raises:
        NotAGroup: If ``point_group`` is not closed under composition.
    """
    group = check_group(point_group)
    all_subgroups = subgroups(group)
    proper = [f for f in all_subgroups if len(f) < len(group)]
    candidates = []
    for h in all_subgroups:
        if len(h) == 1:
            continue
        # |F0 H0| = |F0| |H0| / |F0 & H0|, so only large enough F0 can cover G0.
        covering = (
            f
            for f in proper
            if len(f) * len(h) >= len(group) * len(f & h) and product_set(f, h) == group
        )
        if next(covering, None) is None:
            candidates.append(h)
    return candidates


def rotation_group_23() -> PointGroup:
    """Rotations of the regular tetrahedron (order 12)."""
    return closure(
        [
            Isometry.from_map(lambda u: Point3(u.z, u.x, u.y)),
            Isometry.from_map(lambda u: Point3(u.x, -u.y, -u.z)),
        ]
    )


def rotation_group_432() -> PointGroup:
    """Rotations of the cube (order 24)."""
    return closure(
        [
            Isometry.from_map(lambda u: Point3(u.z, u.x, u.y)),
            Isometry.from_map(lambda u: Point3(-u.y, u.x, u.z)),
        ]
    )


def full_cube_group() -> PointGroup:
    """All 48 symmetries of the cube."""
    return closure([*rotation_group_432(), Isometry.from_map(lambda u: -u)])
