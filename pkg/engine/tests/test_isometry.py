"""Tests for rational isometries."""

from fractions import Fraction
from itertools import permutations, product

import pytest
from hypothesis import given
from hypothesis import strategies as st

from src.errors import DegenerateSimplex
from src.geometry import Halfspace, Point3, tetrahedron
from src.isometry import Isometry
from src.lattice import RHO_0, RHO_13, V1, V2, V3, V4

small = st.fractions(min_value=-2, max_value=2, max_denominator=8)
points = st.builds(Point3, small, small, small)


def _signed_permutations() -> list[tuple[Point3, Point3, Point3]]:
    result = []
    for perm in permutations(range(3)):
        for signs in product((1, -1), repeat=3):
            rows = []
            for column, sign in zip(perm, signs, strict=True):
                entries = [0, 0, 0]
                entries[column] = sign
                rows.append(Point3.of(*entries))
            result.append((rows[0], rows[1], rows[2]))
    return result


isometries = st.builds(Isometry, st.sampled_from(_signed_permutations()), points)


class TestConstruction:
    def test_non_orthogonal_linear_part_is_rejected(self) -> None:
        rows = (Point3.of(2, 0, 0), Point3.of(0, 1, 0), Point3.of(0, 0, 1))
        with pytest.raises(ValueError, match="orthogonal"):
            Isometry(rows, Point3.zero())

    def test_from_map_recovers_rotation(self) -> None:
        assert RHO_0.apply(Point3.of(1, 2, 3)) == Point3.of(0, -2, 3)

    def test_from_points_maps_tetrahedron(self) -> None:
        g = Isometry.from_points([V1, V2, V3, V4], [V3, V2, V1, V4])
        assert [g(v) for v in (V1, V2, V3, V4)] == [V3, V2, V1, V4]
        assert g.determinant == -1

    def test_from_points_rejects_coplanar_source(self) -> None:
        flat = [Point3.zero(), Point3.of(1, 0, 0), Point3.of(0, 1, 0), Point3.of(1, 1, 0)]
        with pytest.raises(DegenerateSimplex):
            Isometry.from_points(flat, flat)

    def test_reflection_through_plane(self) -> None:
        g = Isometry.reflection_through(V1, V2, V4)
        assert g.determinant == -1
        assert g.compose(g).is_identity()
        for v in (V1, V2, V4):
            assert g.fixes(v)
        assert not g.fixes(V3)

    def test_string_exchange(self) -> None:
        strings = RHO_13.to_strings()
        assert len(strings) == 12
        assert strings[9:] == ["1/1", "0/1", "0/1"]
        assert Isometry.from_strings(strings) == RHO_13


class TestAlgebra:
    @given(isometries, isometries, points)
    def test_compose_applies_right_first(self, a: Isometry, b: Isometry, p: Point3) -> None:
        assert (a @ b).apply(p) == a.apply(b.apply(p))

    @given(isometries)
    def test_inverse_cancels(self, g: Isometry) -> None:
        assert g.compose(g.inverse()).is_identity()
        assert g.inverse().compose(g).is_identity()

    @given(isometries, points, points)
    def test_distances_are_preserved(self, g: Isometry, p: Point3, q: Point3) -> None:
        assert g(p).distance2(g(q)) == p.distance2(q)

    @given(isometries, points)
    def test_halfspace_image_contains_point_images(self, g: Isometry, p: Point3) -> None:
        h = Halfspace.of(Point3.of(1, -1, 2), "1/3")
        assert h.contains(p) == g.apply_halfspace(h).contains(g(p))

    def test_power_and_order(self) -> None:
        assert RHO_0.linear_order() == 2
        assert RHO_13.linear_order() == 4
        assert RHO_13.power(4).is_identity()
        assert RHO_13.power(-1) == RHO_13.inverse()

    def test_translation_has_no_finite_order_beyond_identity(self) -> None:
        t = Isometry.pure_translation(Point3.of(1, 0, 0))
        assert t.is_translation()
        assert t.linear_order() == 1
        assert not t.power(3).is_identity()

    def test_conjugate_by(self) -> None:
        shift = Isometry.pure_translation(Point3.of(0, 0, "1/2"))
        conjugated = RHO_0.conjugate_by(shift)
        assert conjugated.fixes(Point3.of("1/2", 0, "1/2"))

    def test_polyhedron_image_keeps_volume(self) -> None:
        poly = tetrahedron(V1, V2, V3, V4)
        image = Isometry.reflection_through(V1, V2, V4).apply_polyhedron(poly)
        assert image.volume() == Fraction(1, 12)
        assert {V1, V2, V4} <= set(image.vertices)
        assert V3 not in image.vertices


class TestClassification:
    @pytest.mark.parametrize(
        "g,determinant,rotation_like",
        [
            pytest.param(Isometry.identity(), 1, False, id="identity"),
            pytest.param(RHO_0, 1, True, id="twofold"),
            pytest.param(RHO_13, 1, True, id="fourfold"),
            pytest.param(Isometry.reflection_through(V1, V2, V4), -1, False, id="mirror"),
        ],
    )
    def test_determinant_and_rotation(
        self, g: Isometry, determinant: int, rotation_like: bool
    ) -> None:
        assert g.determinant == determinant
        assert g.is_rotation_like() is rotation_like

    def test_trace_of_quarter_turn(self) -> None:
        assert RHO_13.trace == 1

    def test_str_renders_symbolic_image(self) -> None:
        assert str(RHO_0) == "(1-x, -y, z)"
        assert str(Isometry.identity()) == "(x, y, z)"
