"""Crystallographic group presentations, cosets, orbits and stabilizers.

A group is handled as (finite set of coset representatives) x (translation
lattice). Coset representatives are found by breadth-first closure over the
generators with every translation reduced modulo the lattice, which always
terminates for a discrete group and makes orbit enumeration in a ball exact.
"""

import math
from collections import deque
from collections.abc import Iterable, Sequence
from dataclasses import dataclass, field
from fractions import Fraction
from functools import cached_property

from src.errors import NonDiscreteGroup
from src.geometry import Point3, solve3
from src.isometry import Isometry, Rows
from src.logger import logger
from src.settings import get_settings

CosetKey = tuple[Rows, Point3]


@dataclass(frozen=True, slots=True)
class OrbitPoint:
    """An orbit point together with one group element producing it."""

    point: Point3
    witness: Isometry


@dataclass(frozen=True)
class PresentationCheck:
    """Outcome of validating a presentation against its declared lattice.

    Attributes:
        aspect_count: Number of cosets of the lattice (order of the point group action).
        lattice_index: Index of the generated translations inside the declared lattice
            (1 when every basis vector is a group element).
        extra_translations: Translation cosets beyond the identity; non-empty when the
            declared lattice is smaller than the group's full translation lattice.
    """

    aspect_count: int
    lattice_index: int
    extra_translations: tuple[Point3, ...]

    @property
    def lattice_is_exact(self) -> bool:
        return self.lattice_index == 1 and not self.extra_translations


def lattice_index(vectors: Iterable[Sequence[int]]) -> int:
    """Index in Z^3 of the integer span of ``vectors`` (0 if the span has rank < 3).

    Column-by-column Euclidean elimination keeps the computation in integers.
    """
    rows = [list(v) for v in vectors if any(v)]
    index = 1
    for col in range(3):
        active = [r for r in rows if r[col] != 0]
        if not active:
            return 0
        while len(active) > 1:
            active.sort(key=lambda r: abs(r[col]))
            pivot = active[0]
            for r in active[1:]:
                q = r[col] // pivot[col]
                for k in range(3):
                    r[k] -= q * pivot[k]
            active = [pivot, *(r for r in active[1:] if r[col] != 0)]
        pivot = active[0]
        index *= abs(pivot[col])
        rows = [r for r in rows if r is not pivot]
    return index


@dataclass(frozen=True)
class GroupPresentation:
    """A space group given by generators and its translation lattice.

    Attributes:
        name: Display name.
        generators: Generating isometries (may include translations).
        translation_basis: Three independent vectors spanning the group's lattice.
    """

    name: str
    generators: tuple[Isometry, ...]
    translation_basis: tuple[Point3, Point3, Point3]
    _basis_rows: Rows = field(init=False, repr=False, compare=False)

    def __post_init__(self) -> None:
        b0, b1, b2 = self.translation_basis
        if b0.dot(b1.cross(b2)) == 0:
            raise NonDiscreteGroup(f"{self.name}: translation basis is not full rank")
        separation = get_settings().min_separation_value
        if any(b.norm2() < separation**2 for b in self.translation_basis):
            raise NonDiscreteGroup(f"{self.name}: translation shorter than {separation}")
        # Row i of the basis matrix B (basis vectors as columns).
        rows: Rows = (
            Point3(b0.x, b1.x, b2.x),
            Point3(b0.y, b1.y, b2.y),
            Point3(b0.z, b1.z, b2.z),
        )
        object.__setattr__(self, "_basis_rows", rows)

    # Lattice arithmetic -------------------------------------------------------

    def lattice_coordinates(self, v: Point3) -> Point3:
        """Coordinates of ``v`` in the translation basis."""
        coords = solve3(self._basis_rows, list(v))
        assert coords is not None
        return coords

    def in_lattice(self, v: Point3) -> bool:
        return all(c.denominator == 1 for c in self.lattice_coordinates(v))

    def from_coordinates(self, coords: Sequence[int | Fraction]) -> Point3:
        b0, b1, b2 = self.translation_basis
        return b0.scale(coords[0]) + b1.scale(coords[1]) + b2.scale(coords[2])

    def reduce_translation(self, v: Point3) -> Point3:
        """Representative of ``v`` modulo the lattice in the half-open basis cell."""
        coords = self.lattice_coordinates(v)
        return self.from_coordinates([c - math.floor(c) for c in coords])

    def coset_key(self, g: Isometry) -> CosetKey:
        return (g.linear, self.reduce_translation(g.translation))

    # Cosets -------------------------------------------------------------------

    @cached_property
    def _closure(self) -> tuple[dict[CosetKey, Isometry], list[Point3]]:
        """Coset representatives (reduced) and Schreier translations."""
        limit = get_settings().max_cosets
        identity = Isometry.identity()
        reps: dict[CosetKey, Isometry] = {self.coset_key(identity): identity}
        actual: dict[CosetKey, Isometry] = {self.coset_key(identity): identity}
        schreier: list[Point3] = []
        queue: deque[CosetKey] = deque(reps)
        while queue:
            key = queue.popleft()
            element = actual[key]
            for g in self.generators:
                product = g.compose(element)
                new_key = self.coset_key(product)
                if new_key not in actual:
                    if len(actual) >= limit:
                        raise NonDiscreteGroup(
                            f"{self.name}: more than {limit} cosets of the declared lattice"
                        )
                    actual[new_key] = product
                    reps[new_key] = Isometry(product.linear, new_key[1])
                    queue.append(new_key)
                else:
                    # product = tau . actual[new_key] for a translation tau of the group.
                    tau = product.compose(actual[new_key].inverse())
                    schreier.append(tau.translation)
        logger.debug("Cosets enumerated", group=self.name, cosets=len(reps))
        return reps, schreier

    @property
    def coset_representatives(self) -> tuple[Isometry, ...]:
        return tuple(self._closure[0].values())

    def aspect_count(self) -> int:
        """Number of cosets of the translation lattice (aspects of a generic orbit)."""
        return len(self._closure[0])

    def contains(self, g: Isometry) -> bool:
        return self.coset_key(g) in self._closure[0]

    def point_group(self) -> list[Isometry]:
        """Distinct linear parts of the group, as isometries fixing the origin."""
        seen: dict[Rows, Isometry] = {}
        for rep in self.coset_representatives:
            seen.setdefault(rep.linear, Isometry(rep.linear, Point3.zero()))
        return list(seen.values())

    def validate(self) -> PresentationCheck:
        """Check that the declared lattice is exactly the group's translation lattice."""
        reps, schreier = self._closure
        coords = []
        for tau in schreier:
            c = self.lattice_coordinates(tau)
            if any(x.denominator != 1 for x in c):
                # A Schreier translation outside the lattice; it also shows up as an
                # extra translation coset, reported below.
                continue
            coords.append([int(x) for x in c])
        extra = tuple(
            rep.translation
            for rep in reps.values()
            if rep.is_translation() and not rep.translation.is_zero()
        )
        return PresentationCheck(
            aspect_count=len(reps),
            lattice_index=lattice_index(coords),
            extra_translations=extra,
        )

    # Orbits -------------------------------------------------------------------

    def orbit_in_ball(self, p: Point3, radius: Fraction | int) -> list[OrbitPoint]:
        """Every orbit point within ``radius`` of ``p``, each once, with a witness.

        Raises:
            NonDiscreteGroup: If two distinct orbit points are closer than the
                configured minimum separation.
        """
        radius = Fraction(radius)
        r2 = radius * radius
        inverse_rows = self._inverse_basis_rows()
        spans = [sum((abs(c) for c in row), Fraction(0)) * radius for row in inverse_rows]
        found: dict[Point3, OrbitPoint] = {}
        for rep in self.coset_representatives:
            q0 = rep.apply(p)
            centre = self.lattice_coordinates(p - q0)
            ranges = [
                range(math.floor(c - s), math.ceil(c + s) + 1)
                for c, s in zip(centre, spans, strict=True)
            ]
            for i in ranges[0]:
                for j in ranges[1]:
                    for k in ranges[2]:
                        shift = self.from_coordinates((i, j, k))
                        q = q0 + shift
                        if q.distance2(p) <= r2 and q not in found:
                            witness = Isometry(rep.linear, rep.translation + shift)
                            found[q] = OrbitPoint(q, witness)
        points = list(found.values())
        _check_separation([o.point for o in points], get_settings().min_separation_value)
        return points

    def rotations_near(self, p: Point3, radius: Fraction | int) -> list[Isometry]:
        """Every pure rotation of the group whose axis passes within ``radius`` of ``p``.

        A rotation through theta moves ``p`` by ``2 d sin(theta / 2)``, with ``d`` the
        distance from ``p`` to the axis. Each rotational coset is walked over the lattice
        shifts that move ``p`` at most ``2 * radius``; screws are dropped and the
        displacement is compared with the exact ``sin^2`` of the crystallographic angle.
        """
        radius = Fraction(radius)
        inverse_rows = self._inverse_basis_rows()
        found: list[Isometry] = []
        for rep in self.coset_representatives:
            if not rep.is_rotation_like():
                continue
            order = rep.linear_order()
            reach2 = 4 * radius * radius * _HALF_ANGLE_SIN2[order]
            centre = self.lattice_coordinates(p - rep.apply(p))
            ball = _LatticeBall(centre, self.translation_basis, reach2)
            axis = _AxialTest(rep, order, self.translation_basis)
            bound = math.isqrt(math.ceil(reach2)) + 1
            spans = [sum((abs(c) for c in row), Fraction(0)) * bound for row in inverse_rows]
            ranges = [
                range(math.floor(c - s), math.ceil(c + s) + 1)
                for c, s in zip(centre, spans, strict=True)
            ]
            for i in ranges[0]:
                for j in ranges[1]:
                    for k in ranges[2]:
                        if axis.is_pure((i, j, k)) and ball.contains((i, j, k)):
                            shift = self.from_coordinates((i, j, k))
                            found.append(Isometry(rep.linear, rep.translation + shift))
        logger.debug("Rotations near point", group=self.name, radius=str(radius), count=len(found))
        return found

    def _inverse_basis_rows(self) -> list[Point3]:
        e = (Point3.of(1, 0, 0), Point3.of(0, 1, 0), Point3.of(0, 0, 1))
        columns = [self.lattice_coordinates(v) for v in e]
        return [
            Point3(columns[0].x, columns[1].x, columns[2].x),
            Point3(columns[0].y, columns[1].y, columns[2].y),
            Point3(columns[0].z, columns[1].z, columns[2].z),
        ]

    def stabilizer(self, p: Point3, word_bound: int | None = None) -> list[Isometry]:
        """All group elements fixing ``p``.

        An element fixing ``p`` is ``t . r`` for a coset representative ``r`` with
        ``p - r(p)`` in the lattice, so one exact test per coset suffices and
        ``word_bound`` (a cap on generator word length) is accepted but never needed.
        """
        del word_bound
        result = []
        for rep in self.coset_representatives:
            d = p - rep.apply(p)
            if self.in_lattice(d):
                result.append(Isometry(rep.linear, rep.translation + d))
        return result


# sin^2 of half the rotation angle, by order; the same for every generator of the cyclic group.
_HALF_ANGLE_SIN2 = {2: Fraction(1), 3: Fraction(3, 4), 4: Fraction(1, 2), 6: Fraction(1, 4)}


def _common_scale(values: Iterable[Fraction]) -> int:
    return math.lcm(*(Fraction(v).denominator for v in values))


class _LatticeBall:
    """Integer test for ``|B (v - centre)|^2 <= reach2`` over lattice coordinates ``v``."""

    def __init__(self, centre: Point3, basis: Sequence[Point3], reach2: Fraction) -> None:
        gram = [[a.dot(b) for b in basis] for a in basis]
        scale = _common_scale([*centre, *(x for row in gram for x in row), reach2])
        self._scale = scale
        self._centre = [int(c * scale) for c in centre]
        self._gram = [[int(x * scale) for x in row] for row in gram]
        self._limit = int(reach2 * scale**3)

    def contains(self, v: Sequence[int]) -> bool:
        w = [self._scale * x - c for x, c in zip(v, self._centre, strict=True)]
        form = sum(w[a] * self._gram[a][b] * w[b] for a in range(3) for b in range(3))
        return form <= self._limit


class _AxialTest:
    """Whether ``rep`` shifted by lattice coordinates ``v`` has no screw component.

    ``L u + t`` of order ``n`` is a pure rotation iff ``(1 + L + ... + L^(n-1)) t = 0``,
    which is linear in the shift.
    """

    def __init__(self, rep: Isometry, order: int, basis: Sequence[Point3]) -> None:
        powers = [rep.power(k) for k in range(order)]
        columns = [
            sum((g.apply_linear(v) for g in powers), Point3.zero())
            for v in (rep.translation, *basis)
        ]
        scale = _common_scale(c for v in columns for c in v)
        self._rows = [[int(c * scale) for c in v] for v in columns]

    def is_pure(self, v: Sequence[int]) -> bool:
        t, b0, b1, b2 = self._rows
        return all(t[c] + v[0] * b0[c] + v[1] * b1[c] + v[2] * b2[c] == 0 for c in range(3))


def _check_separation(points: list[Point3], separation: Fraction) -> None:
    """Raise if two distinct points are closer than ``separation`` (grid bucketing)."""
    buckets: dict[tuple[int, int, int], list[Point3]] = {}
    s2 = separation * separation
    for q in points:
        cell = (
            math.floor(q.x / separation),
            math.floor(q.y / separation),
            math.floor(q.z / separation),
        )
        for dx in (-1, 0, 1):
            for dy in (-1, 0, 1):
                for dz in (-1, 0, 1):
                    for other in buckets.get((cell[0] + dx, cell[1] + dy, cell[2] + dz), ()):
                        if q.distance2(other) < s2:
                            raise NonDiscreteGroup(
                                f"Orbit points {q} and {other} closer than {separation}"
                            )
        buckets.setdefault(cell, []).append(q)


def translation_group(name: str, basis: Sequence[Point3]) -> GroupPresentation:
    """The pure translation group of a lattice."""
    b = (basis[0], basis[1], basis[2])
    return GroupPresentation(
        name=name,
        generators=tuple(Isometry.pure_translation(v) for v in b),
        translation_basis=b,
    )
