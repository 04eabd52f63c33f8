"""Tests for the facet bounds and their ledgers."""

from dataclasses import replace

import pytest

from src.bounds import (
    HALF_EXCLUSIONS,
    bound_ledger,
    delone_bound,
    first_bound,
    first_bound_table,
    letter_table,
    refined_bound,
    vorext_verify,
)
from src.catalog import catalog, groups_without_reflections
from src.errors import CertificateFailure, FamilyMismatch
from src.lattice import SubdomainLabel
from src.regions import vorext


class TestClosedForms:
    @pytest.mark.parametrize(
        "d,aspects,expected",
        [
            pytest.param(3, 48, 390, id="full_point_group"),
            pytest.param(3, 24, 198, id="rotations"),
            pytest.param(1, 1, 2, id="line"),
        ],
    )
    def test_delone_bound(self, d: int, aspects: int, expected: int) -> None:
        assert delone_bound(d, aspects) == expected

    @pytest.mark.parametrize("d,aspects", [(0, 1), (3, 0)])
    def test_delone_bound_rejects_non_positive(self, d: int, aspects: int) -> None:
        with pytest.raises(ValueError):
            delone_bound(d, aspects)

    @pytest.mark.parametrize(
        "s,m,expected",
        [
            pytest.param(1, 0, 10, id="s1_m0"),
            pytest.param(2, 1, 25, id="s2_m1"),
            pytest.param(8, 1, 91, id="s8_m1"),
        ],
    )
    def test_first_bound(self, s: int, m: int, expected: int) -> None:
        assert first_bound(s, m) == expected

    @pytest.mark.parametrize("s,m", [(3, 0), (1, 2)])
    def test_first_bound_rejects_bad_arguments(self, s: int, m: int) -> None:
        with pytest.raises(ValueError):
            first_bound(s, m)

    def test_first_bound_table(self) -> None:
        table = first_bound_table()
        assert {row[2] for row in table} == {10, 14, 17, 25, 31, 47, 59, 91}
        assert table[0] == (1, 0, 10, ["F23"])
        listed = sorted(name for row in table for name in row[3])
        assert listed == sorted(g.name for g in groups_without_reflections())


class TestLedgers:
    def test_p4232_refinement(self, p4232) -> None:
        unrefined = refined_bound(p4232, refine=False)
        assert unrefined.sum_expression() == "8 + 7 + 6 + 7 = 28"
        assert unrefined.bound == 28
        assert unrefined.unrefined_bound is None

        refined = refined_bound(p4232)
        assert refined.bound == 25
        assert refined.unrefined_bound == 28
        assert len(refined.excluded) == 3

    @pytest.mark.parametrize("half", ["upper", "lower"])
    def test_p4232_each_half(self, p4232, half: str) -> None:
        ledger = refined_bound(p4232, half=half)
        assert ledger.bound == 25
        assert set(ledger.excluded) == set(HALF_EXCLUSIONS["P4_232"][half])

    def test_p23_ledger(self, p23) -> None:
        ledger = refined_bound(p23)
        assert ledger.sum_expression() == "8 + 7 = 15"
        assert [row.letters for row in ledger.rows] == ["T^A", "T^E"]
        assert ledger.occupied == frozenset({"T^A", "T^E"})
        assert ledger.subdomain_counts == {"T^A": 9, "T^E": 11}
        assert len(ledger.reduction_pairs) == 4

    def test_i23_counts_neighbour_letters(self, i23) -> None:
        ledger = refined_bound(i23)
        assert [row.letters for row in ledger.rows] == ["T^A", "T^E", "T_i^C", "T_i^G"]
        assert ledger.bound == 21

    @pytest.mark.parametrize(
        "name,bound",
        [
            pytest.param("P23", 15, id="P23"),
            pytest.param("I23", 21, id="I23"),
            pytest.param("P2/n-3", 23, id="P2/n-3"),
            pytest.param("P-43n", 23, id="P-43n"),
            pytest.param("P4_232", 25, id="P4_232"),
            pytest.param("P432", 11, id="P432"),
            pytest.param("I432", 22, id="I432"),
            pytest.param("P4/n-32/n", 23, id="P4/n-32/n"),
        ],
    )
    def test_published_bounds_are_recomputed(self, name: str, bound: int) -> None:
        spec = catalog(name)
        assert refined_bound(spec).bound == bound == spec.published_bound

    def test_refined_never_exceeds_first_bound(self) -> None:
        for spec in groups_without_reflections():
            if spec.family is not None:
                assert refined_bound(spec).bound <= first_bound(spec.s, spec.m)

    def test_ledger_document(self, p23) -> None:
        document = refined_bound(p23).to_document()
        assert document.family == "transversal_order2"
        assert document.bound == 15
        assert all(len(pair) == 2 for pair in document.reduction_pairs)


class TestBoundLedger:
    @pytest.mark.parametrize(
        "name,bound,family",
        [
            pytest.param("P-43m", 8, None, id="reflections"),
            pytest.param("F23", 10, None, id="first_bound"),
            pytest.param("P4_232", 25, "transversal_order2", id="refined"),
        ],
    )
    def test_best_bound(self, name: str, bound: int, family: str | None) -> None:
        ledger = bound_ledger(catalog(name))
        assert ledger.bound == bound
        assert ledger.family == family

    def test_constant_ledger_expression(self) -> None:
        assert bound_ledger(catalog("F23")).sum_expression() == "10"


class TestFamilyMismatch:
    def test_group_without_family(self, f23) -> None:
        with pytest.raises(FamilyMismatch):
            refined_bound(f23)

    def test_group_missing_a_quarter_turn(self, p23, order4_region) -> None:
        with pytest.raises(FamilyMismatch, match="rho_13"):
            refined_bound(p23, order4_region)


class TestLetterTable:
    def test_transversal_table(self, transversal_region) -> None:
        table = letter_table(transversal_region)
        assert [row[0] for row in table] == list("ABCDEFGH")
        assert [row[3] for row in table] == [8, 6, 4, 4, 7, 7, 4, 4]
        assert sum(row[1] for row in table) == 61
        assert sum(row[2] for row in table) == 16
        assert sum(row[3] for row in table) == 44
        assert sum(row[4] for row in table) == 28


class TestVorExtVerification:
    def test_order4_region_certifies(self) -> None:
        report = vorext_verify(vorext("order4"), samples=1, seed=1, groups=[catalog("P432")])
        assert report.cells_checked == 1
        assert report.certificates == sum(len(cut.excluded) for cut in vorext("order4").cuts)
        assert (report.vorext_size, report.stated_size) == (13, 11)

    def test_zero_samples(self) -> None:
        with pytest.raises(ValueError):
            vorext_verify(vorext("order4"), samples=0, seed=1)

    def test_missing_subdomain_lets_a_cell_escape(self) -> None:
        region = vorext("order4")
        corrupted = replace(
            region, vorext_labels=region.vorext_labels - {SubdomainLabel.parse("T0^B")}
        )
        with pytest.raises(CertificateFailure) as exc_info:
            vorext_verify(corrupted, samples=1, seed=1, groups=[catalog("P432")])
        assert exc_info.value.subdomain == "VorExt"
