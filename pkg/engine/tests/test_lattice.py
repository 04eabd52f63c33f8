"""Tests for the cubic lattice, its Delaunay tetrahedra and the fundamental subdomains."""

from fractions import Fraction

import pytest

from src.errors import OnSubdomainBoundary
from src.geometry import Location, Point3, convex_hull, covered_by, midpoint
from src.lattice import (
    BASE,
    COMPLEX,
    LETTER_EDGES,
    NEIGHBORS,
    NEIGHBORS_OF_NEIGHBORS,
    RHO_0,
    RHO_13,
    RHO_24,
    V1,
    V2,
    V3,
    V4,
    LatticePoint,
    SubdomainLabel,
    TetraAddress,
    base_tetrahedron,
    classify_subdomain,
    complex_subdomains,
    f_class,
    face_reflection,
    half_of,
    letter_element,
    letter_of_symmetry,
    subdomain_centroid,
    subdomain_geometry,
    subdomain_vertices,
    subdomains_of,
    tetra_color,
    tetra_geometry,
    window_subdomains,
)
from src.schemas import LETTERS
from tests.conftest import LOWER_POINT, UPPER_POINT

T_A = SubdomainLabel(BASE, "A")


class TestLatticePoints:
    @pytest.mark.parametrize(
        "point,expected",
        [
            pytest.param(V1, 1, id="v1"),
            pytest.param(V2, 2, id="v2"),
            pytest.param(V3, 3, id="v3"),
            pytest.param(V4, 4, id="v4"),
            pytest.param(Point3.of(1, 1, 0), 4, id="even_sum"),
            pytest.param(Point3.of("-1/2", "-1/2", "-1/2"), 1, id="negative_half"),
        ],
    )
    def test_f_class(self, point: Point3, expected: int) -> None:
        assert f_class(point) == expected
        assert LatticePoint(point).f_class == expected

    @pytest.mark.parametrize(
        "point",
        [
            pytest.param(Point3.of("1/2", 0, 0), id="mixed_parity"),
            pytest.param(Point3.of("1/3", 0, 0), id="not_half_integer"),
        ],
    )
    def test_non_lattice_points_raise(self, point: Point3) -> None:
        with pytest.raises(ValueError, match="lattice"):
            LatticePoint(point)


class TestSymmetries:
    @pytest.mark.parametrize("i", [1, 2, 3, 4])
    def test_face_reflection_fixes_its_face(self, i: int) -> None:
        sigma = face_reflection(i)
        vertices = (V1, V2, V3, V4)
        for k, v in enumerate(vertices, start=1):
            assert sigma.fixes(v) is (k != i)

    @pytest.mark.parametrize("letter", LETTERS)
    def test_letter_element_round_trip(self, letter) -> None:
        assert letter_of_symmetry(letter_element(letter)) == letter

    def test_letter_a_is_identity(self) -> None:
        assert letter_element("A").is_identity()

    def test_letter_elements_preserve_t(self) -> None:
        vertices = {V1, V2, V3, V4}
        for letter in LETTERS:
            assert {letter_element(letter)(v) for v in vertices} == vertices

    @pytest.mark.parametrize(
        "rotation,order",
        [
            pytest.param(RHO_0, 2, id="rho_0"),
            pytest.param(RHO_13, 4, id="rho_13"),
            pytest.param(RHO_24, 4, id="rho_24"),
        ],
    )
    def test_named_rotations(self, rotation, order: int) -> None:
        assert rotation.determinant == 1
        assert rotation.linear_order() == order
        assert rotation.power(order).is_identity()

    def test_edge_rotations_fix_their_edges(self) -> None:
        assert RHO_13.fixes(V1) and RHO_13.fixes(V3)
        assert RHO_24.fixes(V2) and RHO_24.fixes(V4)


class TestTetraAddress:
    def test_complex_sizes(self) -> None:
        assert len(NEIGHBORS) == 4
        assert len(NEIGHBORS_OF_NEIGHBORS) == 10
        assert len(COMPLEX) == 15

    def test_t31_is_t13(self) -> None:
        assert TetraAddress(3, 1) == TetraAddress(1, 3)
        assert TetraAddress(4, 2) == TetraAddress(2, 4)
        assert TetraAddress(1, 2) != TetraAddress(2, 1)

    @pytest.mark.parametrize(
        "kwargs",
        [
            pytest.param({"j": 2}, id="j_without_i"),
            pytest.param({"i": 5}, id="index_out_of_range"),
            pytest.param({"i": 2, "j": 2}, id="repeated_index"),
            pytest.param({"anchor": Point3.of("1/2", 0, 0)}, id="anchor_off_lattice"),
        ],
    )
    def test_invalid_addresses(self, kwargs) -> None:
        with pytest.raises(ValueError):
            TetraAddress(**kwargs)

    def test_str(self) -> None:
        assert str(BASE) == "T0"
        assert str(TetraAddress(2, 1)) == "T21"
        assert str(TetraAddress(1, anchor=Point3.of(1, 1, 0))).startswith("T1+")

    def test_base_geometry(self) -> None:
        base = base_tetrahedron()
        assert base.vertices == (V1, V2, V3, V4)
        assert base.polyhedron.volume() == Fraction(1, 12)

    def test_neighbours_share_a_face_with_t(self) -> None:
        for address in NEIGHBORS:
            shared = set(tetra_geometry(address).vertices) & {V1, V2, V3, V4}
            assert len(shared) == 3

    def test_complex_tetrahedra_are_congruent(self) -> None:
        for address in COMPLEX:
            assert tetra_geometry(address).polyhedron.volume() == Fraction(1, 12)


class TestColours:
    def test_two_colouring(self) -> None:
        t1, t12, t13 = TetraAddress(1), TetraAddress(1, 2), TetraAddress(1, 3)
        assert tetra_color(BASE) != tetra_color(t1)
        assert tetra_color(t12) == tetra_color(BASE)
        assert tetra_color(t13) == tetra_color(BASE)

    def test_neighbours_have_the_other_colour(self) -> None:
        assert {tetra_color(a) for a in NEIGHBORS} == {"white"}
        assert tetra_color(BASE) == "black"


class TestSubdomains:
    def test_t_a_vertices(self) -> None:
        assert subdomain_vertices(T_A) == (
            V1,
            Point3.of("3/4", "-1/4", "1/4"),
            Point3.of("1/2", 0, "1/2"),
            Point3.of("1/2", 0, 0),
        )

    def test_window_and_complex_sizes(self) -> None:
        assert len(window_subdomains()) == 40
        assert len(complex_subdomains()) == 120
        assert len(set(complex_subdomains())) == 120

    def test_eight_subdomains_tile_t(self) -> None:
        pieces = [subdomain_geometry(label) for label in subdomains_of(BASE)]
        assert all(piece.volume() == Fraction(1, 96) for piece in pieces)
        assert covered_by(base_tetrahedron().polyhedron, pieces)

    def test_to_subdomain_maps_t_a_onto_label(self) -> None:
        source = set(subdomain_vertices(T_A))
        for label in complex_subdomains():
            image = {label.to_subdomain(v) for v in source}
            assert image == set(subdomain_vertices(label)), str(label)

    def test_letter_edges_use_every_directed_edge_once(self) -> None:
        assert len(set(LETTER_EDGES.values())) == 8
        assert midpoint(V1, V2) in subdomain_vertices(SubdomainLabel(BASE, "B"))

    @pytest.mark.parametrize("label", subdomains_of(BASE), ids=str)
    def test_geometry_matches_hull_of_vertices(self, label: SubdomainLabel) -> None:
        hull = convex_hull(subdomain_vertices(label))
        assert set(hull.halfspaces) == set(subdomain_geometry(label).halfspaces)

    def test_tetra_geometry_matches_hull(self) -> None:
        tetra = tetra_geometry(NEIGHBORS[0])
        assert set(convex_hull(tetra.vertices).halfspaces) == set(tetra.polyhedron.halfspaces)


class TestLabels:
    @pytest.mark.parametrize("text", ["T13^B", "T0^A", "T2^H", "T43^E"])
    def test_parse_and_str_agree(self, text: str) -> None:
        assert str(SubdomainLabel.parse(text)) == text

    def test_parse_normalizes_t31(self) -> None:
        assert SubdomainLabel.parse("T31^C") == SubdomainLabel.parse("T13^C")

    @pytest.mark.parametrize("text", ["X1^A", "T1^Z", "T1", ""])
    def test_parse_rejects_garbage(self, text: str) -> None:
        with pytest.raises(ValueError):
            SubdomainLabel.parse(text)


class TestClassification:
    def test_centroid_of_t_a(self) -> None:
        assert classify_subdomain(subdomain_centroid(T_A)) == T_A

    @pytest.mark.parametrize("point", [UPPER_POINT, LOWER_POINT], ids=["upper", "lower"])
    def test_sample_points_lie_in_t_a(self, point: Point3) -> None:
        assert classify_subdomain(point) == T_A

    def test_every_complex_centroid_classifies_to_itself(self) -> None:
        for label in complex_subdomains():
            assert classify_subdomain(subdomain_centroid(label)) == label

    def test_vertex_of_t_is_on_boundary(self) -> None:
        with pytest.raises(OnSubdomainBoundary):
            classify_subdomain(V2)

    def test_centroid_of_t_is_on_a_wall(self) -> None:
        with pytest.raises(OnSubdomainBoundary):
            classify_subdomain(Point3.of("1/2", 0, "1/4"))

    def test_far_point_gets_an_anchor(self) -> None:
        p = subdomain_centroid(T_A) + Point3.of(3, 3, 0)
        label = classify_subdomain(p)
        assert not label.tetra.anchor.is_zero()
        assert subdomain_geometry(label).locate(p) is Location.INTERIOR


class TestHalves:
    @pytest.mark.parametrize(
        "point,expected",
        [
            pytest.param(UPPER_POINT, "upper", id="upper"),
            pytest.param(LOWER_POINT, "lower", id="lower"),
            pytest.param(Point3.of("1/2", 0, "1/4"), None, id="on_plane"),
        ],
    )
    def test_half_of(self, point: Point3, expected: str | None) -> None:
        assert half_of(point) == expected
