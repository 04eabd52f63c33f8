"""Tests for space group presentations: cosets, lattices, orbits and stabilizers."""

from fractions import Fraction

import pytest

from src.catalog import catalog
from src.errors import NonDiscreteGroup
from src.geometry import Halfspace, Point3, halfspace_intersection
from src.groups import GroupPresentation, lattice_index, translation_group
from src.isometry import Isometry
from src.lattice import RHO_24
from tests.conftest import UPPER_POINT

CUBIC = (Point3.of(1, 0, 0), Point3.of(0, 1, 0), Point3.of(0, 0, 1))
BCC = (
    Point3.of("-1/2", "1/2", "1/2"),
    Point3.of("1/2", "-1/2", "1/2"),
    Point3.of("1/2", "1/2", "-1/2"),
)
EVEN_SUM = (Point3.of(0, 1, 1), Point3.of(1, 0, 1), Point3.of(1, 1, 0))


class TestLatticeIndex:
    @pytest.mark.parametrize(
        "vectors,expected",
        [
            pytest.param([(1, 0, 0), (0, 1, 0), (0, 0, 1)], 1, id="unit"),
            pytest.param([(0, 1, 1), (1, 0, 1), (1, 1, 0)], 2, id="even_sum"),
            pytest.param([(2, 0, 0), (0, 3, 0), (0, 0, 1), (4, 6, 0)], 6, id="redundant"),
            pytest.param([(1, 0, 0), (0, 1, 0)], 0, id="rank_two"),
            pytest.param([], 0, id="empty"),
        ],
    )
    def test_index(self, vectors: list[tuple[int, int, int]], expected: int) -> None:
        assert lattice_index(vectors) == expected


class TestPresentation:
    def test_flat_basis_is_rejected(self) -> None:
        flat = (CUBIC[0], CUBIC[1], CUBIC[0] + CUBIC[1])
        with pytest.raises(NonDiscreteGroup, match="full rank"):
            translation_group("flat", flat)

    def test_too_short_translation_is_rejected(self) -> None:
        tiny = (Point3.of("1/100000", 0, 0), CUBIC[1], CUBIC[2])
        with pytest.raises(NonDiscreteGroup, match="shorter"):
            translation_group("tiny", tiny)

    def test_translation_group_is_exact(self) -> None:
        check = translation_group("P", CUBIC).validate()
        assert check.aspect_count == 1
        assert check.lattice_is_exact

    def test_declared_lattice_too_coarse(self) -> None:
        group = GroupPresentation(
            name="coarse",
            generators=tuple(Isometry.pure_translation(v) for v in CUBIC),
            translation_basis=tuple(v.scale(2) for v in CUBIC),  # type: ignore[arg-type]
        )
        check = group.validate()
        assert check.aspect_count == 8
        assert len(check.extra_translations) == 7
        assert not check.lattice_is_exact

    def test_declared_lattice_too_fine(self) -> None:
        group = GroupPresentation(
            name="fine",
            generators=tuple(Isometry.pure_translation(v) for v in CUBIC),
            translation_basis=tuple(v.scale(Fraction(1, 2)) for v in CUBIC),  # type: ignore[arg-type]
        )
        check = group.validate()
        assert check.lattice_index == 8
        assert not check.lattice_is_exact

    def test_coset_limit_raises(self, monkeypatch: pytest.MonkeyPatch, p4232) -> None:
        monkeypatch.setenv("STEREOLAB_MAX_COSETS", "5")
        group = GroupPresentation("P4_232", p4232.generators, CUBIC)
        with pytest.raises(NonDiscreteGroup, match="cosets"):
            group.aspect_count()

    @pytest.mark.parametrize(
        "name,aspects",
        [
            pytest.param("F23", 12, id="F23"),
            pytest.param("P23", 12, id="P23"),
            pytest.param("I23", 12, id="I23"),
            pytest.param("P4_232", 24, id="P4_232"),
            pytest.param("P4/m-32/n", 48, id="full_point_group"),
        ],
    )
    def test_aspect_counts(self, name: str, aspects: int) -> None:
        assert catalog(name).aspect_count == aspects

    def test_contains_generators_and_translations(self, p23) -> None:
        group = p23.presentation
        for g in group.generators:
            assert group.contains(g)
        assert group.contains(Isometry.pure_translation(Point3.of(0, 0, 3)))
        assert not group.contains(Isometry.pure_translation(Point3.of(0, 0, "1/2")))

    def test_point_group_linear_parts_fix_origin(self, p4232) -> None:
        point_group = p4232.presentation.point_group()
        assert len(point_group) == 24
        assert all(g.fixes(Point3.zero()) for g in point_group)


class TestOrbits:
    def test_even_sum_lattice_ball(self) -> None:
        orbit = translation_group("F", EVEN_SUM).orbit_in_ball(Point3.zero(), Fraction(3, 2))
        points = {o.point for o in orbit}
        assert len(points) == 13
        assert Point3.zero() in points
        assert Point3.of(1, -1, 0) in points
        assert Point3.of(2, 0, 0) not in points

    def test_witness_produces_point(self, p4232) -> None:
        for o in p4232.presentation.orbit_in_ball(UPPER_POINT, 1):
            assert o.witness.apply(UPPER_POINT) == o.point
            assert p4232.presentation.contains(o.witness)

    def test_bcc_voronoi_cell_is_truncated_octahedron(self) -> None:
        orbit = translation_group("I", BCC).orbit_in_ball(Point3.zero(), 3)
        cell = halfspace_intersection(
            [Halfspace.bisector(Point3.zero(), o.point) for o in orbit if not o.point.is_zero()]
        )
        assert cell.facet_count == 14
        assert len(cell.vertices) == 24
        assert cell.volume() == Fraction(1, 2)


class TestStabilizer:
    def test_generic_point_has_trivial_stabilizer(self, p4232) -> None:
        stabilizer = p4232.presentation.stabilizer(UPPER_POINT)
        assert len(stabilizer) == 1
        assert stabilizer[0].is_identity()

    def test_origin_is_fixed_by_rotation_group(self, f23) -> None:
        stabilizer = f23.presentation.stabilizer(Point3.zero())
        assert len(stabilizer) == 12
        assert all(g.fixes(Point3.zero()) for g in stabilizer)

    def test_word_bound_is_ignored(self, p4232) -> None:
        p = Point3.of("1/2", 0, "1/5")
        stabilizer = p4232.presentation.stabilizer(p)
        assert p4232.presentation.stabilizer(p, word_bound=2) == stabilizer
        assert len(stabilizer) == 2


class TestRotationsNear:
    def test_zero_radius_gives_rotational_stabilizer(self, f23) -> None:
        near = f23.presentation.rotations_near(Point3.zero(), 0)
        stabilizer = f23.presentation.stabilizer(Point3.zero())
        assert len(near) == 11
        assert set(near) == {g for g in stabilizer if not g.is_identity()}

    def test_screws_are_dropped(self, p4232) -> None:
        near = p4232.presentation.rotations_near(UPPER_POINT, 2)
        assert near
        for g in near:
            assert p4232.presentation.contains(g)
            assert g.power(g.linear_order()).is_identity()

    def test_order_four_axis_distance(self) -> None:
        # RHO_24 turns about the x axis, one unit away from p.
        group = catalog("P432").presentation
        p = Point3.of("1/3", 1, 0)
        assert RHO_24 in group.rotations_near(p, 1)
        assert RHO_24 not in group.rotations_near(p, Fraction(99, 100))
