"""Tests for the stereolab command line."""

import json

import pytest
from typer.testing import CliRunner

from src.cli import EXIT_ERROR, EXIT_MISMATCH, app
from src.errors import TheoremMismatch

runner = CliRunner()


class TestCatalogCommand:
    def test_lists_every_group(self) -> None:
        result = runner.invoke(app, ["catalog"])
        assert result.exit_code == 0
        assert "P4_232" in result.output
        assert "F2/d-3" in result.output

    def test_writes_documents(self, tmp_path) -> None:
        result = runner.invoke(app, ["catalog", "--out", str(tmp_path)])
        assert result.exit_code == 0
        assert (tmp_path / "F2-d-3.json").exists()
        assert len(list(tmp_path.glob("*.json"))) == 27


class TestCellCommand:
    def test_prints_neighbours(self, tmp_path) -> None:
        result = runner.invoke(
            app, ["cell", "-g", "P23", "-p", "23/40,-11/40,3/8", "--out", str(tmp_path)]
        )
        assert result.exit_code == 0
        assert "P23 at" in result.output
        document = json.loads((tmp_path / "P23_cell.json").read_text())
        assert document["facet_count"] > 0

    def test_off_output(self, tmp_path) -> None:
        result = runner.invoke(
            app,
            ["cell", "-g", "P23", "-p", "23/40,-11/40,3/8", "--out", str(tmp_path), "--format", "off"],
        )
        assert result.exit_code == 0
        assert (tmp_path / "P23_0.off").exists()

    @pytest.mark.parametrize(
        "args",
        [
            pytest.param(["-g", "P23", "-p", "1,2"], id="two_coordinates"),
            pytest.param(["-g", "P23", "-p", "a,b,c"], id="not_rational"),
            pytest.param(["-g", "P23", "-p", "1/2,0,0", "--source", "guess"], id="bad_source"),
        ],
    )
    def test_bad_parameters(self, args: list[str]) -> None:
        result = runner.invoke(app, ["cell", *args])
        assert result.exit_code == 2

    def test_unknown_group(self) -> None:
        result = runner.invoke(app, ["cell", "-g", "X1", "-p", "23/40,-11/40,3/8"])
        assert result.exit_code == EXIT_ERROR

    def test_influence_source_outside_t_a(self) -> None:
        result = runner.invoke(
            app, ["cell", "-g", "P23", "-p", "1/2,1/10,1/4", "--source", "influence_region"]
        )
        assert result.exit_code == EXIT_ERROR
        assert isinstance(result.exception, SystemExit)

    def test_fixed_point_needs_appendix(self) -> None:
        result = runner.invoke(app, ["cell", "-g", "P23", "-p", "0,0,0"])
        assert result.exit_code == EXIT_ERROR
        appendix = runner.invoke(app, ["cell", "-g", "P23", "-p", "0,0,0", "--appendix"])
        assert appendix.exit_code == 0


class TestExperimentCommand:
    def test_csv_output(self, tmp_path) -> None:
        result = runner.invoke(
            app,
            [
                "experiment", "-g", "P23", "-n", "2", "--seed", "3",
                "--denominator", "1000", "--out", str(tmp_path), "--format", "csv",
            ],
        )  # fmt: skip
        assert result.exit_code == 0
        assert "always:" in result.output
        assert (tmp_path / "P23_3.csv").exists()

    def test_reflection_group(self, tmp_path) -> None:
        result = runner.invoke(app, ["experiment", "-g", "P-43m", "--out", str(tmp_path)])
        assert result.exit_code == EXIT_ERROR

    def test_default_output_dir_from_settings(self, tmp_path, monkeypatch) -> None:
        monkeypatch.setenv("STEREOLAB_OUTPUT_DIR", str(tmp_path / "runs"))
        result = runner.invoke(
            app, ["experiment", "-g", "P23", "-n", "1", "--denominator", "1000"]
        )
        assert result.exit_code == 0
        assert (tmp_path / "runs" / "P23_0.json").exists()


class TestBoundsCommand:
    def test_single_group(self, tmp_path) -> None:
        result = runner.invoke(app, ["bounds", "-g", "P4_232", "--out", str(tmp_path)])
        assert result.exit_code == 0
        assert "P4_232: 25" in result.output
        assert (tmp_path / "P4_232_bound.json").exists()

    def test_all_tables(self) -> None:
        result = runner.invoke(app, ["bounds"])
        assert result.exit_code == 0
        assert "MISMATCH" not in result.output


class TestHelixCommand:
    def test_default_point(self) -> None:
        result = runner.invoke(app, ["helix"])
        assert result.exit_code == 0
        assert "11 facets" in result.output
        assert "label discrepancy" in result.output

    def test_invalid_point(self) -> None:
        result = runner.invoke(app, ["helix", "--h", "1/2"])
        assert result.exit_code == EXIT_ERROR

    def test_theorem_mismatch(self, mocker) -> None:
        mocker.patch(
            "src.cli.verify_helix_theorem", side_effect=TheoremMismatch(["q4"], [])
        )
        result = runner.invoke(app, ["helix"])
        assert result.exit_code == EXIT_MISMATCH


class TestSpecialOrbitCommand:
    def test_fixed_parameter(self) -> None:
        result = runner.invoke(app, ["special-orbit", "--t", "1/8"])
        assert result.exit_code == 0
        assert "t=1/8" in result.output

    def test_wrong_group(self) -> None:
        result = runner.invoke(app, ["special-orbit", "-g", "P23", "--t", "1/8"])
        assert result.exit_code == EXIT_ERROR
