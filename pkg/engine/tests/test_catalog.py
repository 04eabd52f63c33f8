"""Tests for the catalog of full cubic groups and its self-verification."""

from dataclasses import replace

import pytest

from src.catalog import (
    CATALOG,
    catalog,
    catalog_documents,
    contains_reflection,
    group_document,
    groups_without_reflections,
    presentation_from_document,
    verify_group_spec,
)
from src.errors import SpecMismatch, UnknownGroup


class TestCatalog:
    def test_sizes(self) -> None:
        assert len(CATALOG) == 27
        assert len(groups_without_reflections()) == 14

    def test_reflection_groups_have_no_published_bound(self) -> None:
        for spec in CATALOG.values():
            assert (spec.published_bound is None) is spec.has_reflections

    def test_s_matches_base_letters(self) -> None:
        for spec in CATALOG.values():
            assert spec.s == len(spec.occupied_letters_base)
            assert "A" in spec.occupied_letters_base
            assert spec.m == (1 if spec.occupied_letters_neighbor else 0)

    @pytest.mark.parametrize(
        "name,s,m,base,neighbor",
        [
            pytest.param("F23", 1, 0, "A", "", id="F23"),
            pytest.param("P4_232", 4, 0, "ABEF", "", id="P4_232"),
            pytest.param("I23", 2, 1, "AE", "CG", id="I23"),
            pytest.param("I4/m-32/m", 8, 1, "ABCDEFGH", "ABCDEFGH", id="I4/m-32/m"),
        ],
    )
    def test_entries(self, name: str, s: int, m: int, base: str, neighbor: str) -> None:
        spec = catalog(name)
        assert (spec.s, spec.m) == (s, m)
        assert spec.occupied_letters_base == frozenset(base)
        assert spec.occupied_letters_neighbor == frozenset(neighbor)

    def test_lookup_ignores_spaces(self) -> None:
        assert catalog("P 4_2 3 2") is catalog("P4_232")

    def test_unknown_group(self) -> None:
        with pytest.raises(UnknownGroup) as exc_info:
            catalog("P6_3/mmc")
        assert exc_info.value.name == "P6_3/mmc"

    @pytest.mark.parametrize(
        "name,family",
        [
            pytest.param("P432", "order4", id="P432"),
            pytest.param("P23", "transversal_order2", id="P23"),
            pytest.param("F23", None, id="F23"),
        ],
    )
    def test_families(self, name: str, family: str | None) -> None:
        assert catalog(name).family == family


class TestVerification:
    @pytest.mark.parametrize(
        "name",
        ["F23", "F432", "I23", "P4_232", "P-43m"],
    )
    def test_stored_classification_is_recomputed(self, name: str) -> None:
        spec = catalog(name)
        result = verify_group_spec(spec)
        assert (result.s, result.m) == (spec.s, spec.m)
        assert result.occupied_base == spec.occupied_letters_base
        assert result.occupied_neighbor == spec.occupied_letters_neighbor
        assert result.has_reflections is spec.has_reflections
        assert result.lattice_index == 1

    def test_f432(self) -> None:
        result = verify_group_spec(catalog("F432"))
        assert (result.s, result.m) == (1, 1)

    def test_corrupted_stabilizer_order(self) -> None:
        corrupted = replace(catalog("F23"), s=2)
        with pytest.raises(SpecMismatch) as exc_info:
            verify_group_spec(corrupted)
        assert exc_info.value.check == "s"
        assert (exc_info.value.expected, exc_info.value.actual) == (2, 1)

    def test_corrupted_reflection_flag(self) -> None:
        corrupted = replace(catalog("P23"), has_reflections=True)
        with pytest.raises(SpecMismatch, match="has_reflections"):
            verify_group_spec(corrupted)

    def test_wrong_lattice_is_detected(self) -> None:
        corrupted = replace(catalog("I23"), lattice="P")
        with pytest.raises(SpecMismatch, match="translation lattice"):
            verify_group_spec(corrupted)

    @pytest.mark.parametrize(
        "name,expected",
        [
            pytest.param("P-43m", True, id="mirror"),
            pytest.param("P23", False, id="rotations_only"),
            pytest.param("F2/d-3", False, id="glides_only"),
        ],
    )
    def test_contains_reflection(self, name: str, expected: bool) -> None:
        assert contains_reflection(catalog(name).presentation) is expected


class TestDocuments:
    def test_document_fields(self) -> None:
        document = group_document(catalog("I23"))
        assert document.lattice == "I"
        assert document.translation_basis[0] == ["-1/2", "1/2", "1/2"]
        assert document.occupied_letters_neighbor == ["C", "G"]
        assert all(len(g.entries) == 12 for g in document.generators)

    def test_presentation_from_document(self) -> None:
        spec = catalog("P4_232")
        rebuilt = presentation_from_document(group_document(spec))
        assert rebuilt.aspect_count() == spec.aspect_count
        assert all(rebuilt.contains(g) for g in spec.generators)

    def test_catalog_documents_cover_every_group(self) -> None:
        names = [document.name for document in catalog_documents()]
        assert names == list(CATALOG)
