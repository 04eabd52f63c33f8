"""Tests for the reproduced bound tables."""

import pytest

from src.experiments.tables import TablesReport, emit_tables


@pytest.fixture(scope="module")
def tables() -> TablesReport:
    return emit_tables()


class TestTables:
    def test_every_bound_matches(self, tables: TablesReport) -> None:
        assert len(tables.bounds) == 14
        assert tables.mismatches == []

    def test_ledger_sums(self, tables: TablesReport) -> None:
        sums = {row.group_name: row for row in tables.sums}
        assert sums["P4_232"].expression == "8 + 7 + 6 + 7 = 28"
        assert sums["P4_232"].bound == 25
        assert sums["P23"].expression == "8 + 7 = 15"
        assert "F23" not in sums

    def test_transversal_letters(self, tables: TablesReport) -> None:
        rows = tables.letters["transversal_order2"]
        assert [row.bound for row in rows] == [8, 6, 4, 4, 7, 7, 4, 4]
        assert sum(row.count for row in rows) == 61
        assert sum(row.neighbor_count for row in rows) == 28

    def test_first_bounds(self, tables: TablesReport) -> None:
        assert [row.bound for row in tables.first_bounds] == [10, 14, 17, 25, 31, 47, 59, 91]

    def test_render_text(self, tables: TablesReport) -> None:
        text = tables.render_text()
        assert "MISMATCH" not in text
        assert "8 + 7 + 6 + 7 = 28" in text
        assert "total" in text
        assert text.endswith("\n")

    def test_document(self, tables: TablesReport) -> None:
        document = tables.to_document()
        assert set(document.letters) == {"order4", "transversal_order2"}
        assert len(document.bounds) == 14
