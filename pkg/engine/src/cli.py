"""The ``stereolab`` command.

Exit codes:
    0: success
    1: usage or unexpected error
    2: an invariant check failed
    3: a computed value differs from a published one
"""

from fractions import Fraction
from pathlib import Path
from typing import Annotated, cast, get_args

import typer
from pydantic import ValidationError

from src.bounds import bound_ledger, vorext_verify
from src.catalog import CATALOG, catalog, catalog_documents, verify_group_spec
from src.dirichlet import dirichlet_cell
from src.errors import (
    CertificateFailure,
    SpecMismatch,
    StereolabError,
    TheoremMismatch,
)
from src.experiments import (
    emit_tables,
    run_sampling_experiment,
    run_special_orbit_experiment,
    verify_helix_theorem,
)
from src.export import file_stem, write_json, write_off, write_off_meshes, write_samples_csv
from src.geometry import Point3
from src.logger import configure_logging, logger
from src.regions import computed_region
from src.schemas import (
    CandidateSourceName,
    ExperimentConfig,
    HalfFilter,
    HelixParams,
    NeighborStatus,
    OutputFormat,
    RegionFamilyName,
)
from src.settings import get_settings

EXIT_OK = 0
EXIT_ERROR = 1
EXIT_INVARIANT = 2
EXIT_MISMATCH = 3

# Influence-region sizes per family, as published.
PUBLISHED_INFL_SIZE: dict[RegionFamilyName, int] = {"order4": 48, "transversal_order2": 89}

app = typer.Typer(
    name="stereolab",
    help="Dirichlet stereohedra of full cubic groups: cells, bounds and experiments.",
    no_args_is_help=True,
)

GroupOption = Annotated[str, typer.Option("--group", "-g", help="Catalog name, e.g. P4_232")]
OutOption = Annotated[Path | None, typer.Option("--out", help="Output directory")]
FormatOption = Annotated[str, typer.Option("--format", help="json, csv or off")]
STATUSES: tuple[NeighborStatus, ...] = ("always", "sometimes", "never")


def _out_dir(out: Path | None) -> Path:
    return out if out is not None else Path(get_settings().output_dir)


def _parse_point(text: str) -> Point3:
    parts = [part.strip() for part in text.split(",")]
    if len(parts) != 3:
        raise typer.BadParameter("Expected three comma-separated rationals, e.g. 1/2,1/8,3/8")
    try:
        return Point3.of(*parts)
    except (ValueError, ZeroDivisionError) as e:
        raise typer.BadParameter(str(e)) from e


def _choice(value: str, allowed: object, option: str) -> str:
    choices = get_args(allowed)
    if value not in choices:
        raise typer.BadParameter(f"{option} must be one of {', '.join(choices)}")
    return value


def _fail(error: Exception, code: int) -> typer.Exit:
    typer.echo(f"Error: {error}", err=True)
    return typer.Exit(code)


@app.callback()
def main(
    verbose: Annotated[bool, typer.Option("--verbose", "-v", help="Debug logging")] = False,
) -> None:
    configure_logging("DEBUG" if verbose else get_settings().log_level)


@app.command("catalog")
def catalog_command(
    out: OutOption = None,
    output_format: FormatOption = "json",
) -> None:
    """List the 27 full cubic groups."""
    typer.echo(f"{'group':<14}{'lattice':>8}{'s':>3}{'m':>3}  {'reflections':<12}{'bound':>6}")
    for spec in CATALOG.values():
        bound = "8" if spec.published_bound is None else str(spec.published_bound)
        typer.echo(
            f"{spec.name:<14}{spec.lattice:>8}{spec.s:>3}{spec.m:>3}  "
            f"{'yes' if spec.has_reflections else 'no':<12}{bound:>6}"
        )
    if out is not None and output_format == "json":
        for document in catalog_documents():
            write_json(document, out / f"{file_stem(document.name)}.json")


@app.command("cell")
def cell_command(
    group: GroupOption,
    point: Annotated[str, typer.Option("--point", "-p", help="Base point x,y,z as rationals")],
    source: Annotated[
        str, typer.Option("--source", help="safe_radius or influence_region")
    ] = "safe_radius",
    appendix: Annotated[
        bool, typer.Option("--appendix", help="Allow a nontrivial stabilizer")
    ] = False,
    out: OutOption = None,
    output_format: FormatOption = "json",
) -> None:
    """Compute one Dirichlet stereohedron."""
    p = _parse_point(point)
    candidate_source = cast(CandidateSourceName, _choice(source, CandidateSourceName, "--source"))
    _choice(output_format, OutputFormat, "--format")
    try:
        report = dirichlet_cell(catalog(group), p, candidate_source, appendix_mode=appendix)
    except StereolabError as e:
        raise _fail(e, EXIT_ERROR) from e
    typer.echo(f"{report.group_name} at {p}: {report.facet_count} facets")
    for n in report.neighbors:
        typer.echo(f"  {str(n.label) if n.label else '-':<12} {n.point}")
    if out is None:
        return
    if output_format == "off":
        write_off(report, 0, out)
    else:
        write_json(report.to_document(), out / f"{file_stem(report.group_name)}_cell.json")


@app.command("experiment")
def experiment_command(
    group: GroupOption,
    samples: Annotated[int | None, typer.Option("--samples", "-n")] = None,
    seed: Annotated[int | None, typer.Option("--seed")] = None,
    denominator: Annotated[int | None, typer.Option("--denominator")] = None,
    half: Annotated[str, typer.Option("--half", help="upper, lower or all")] = "all",
    out: OutOption = None,
    output_format: FormatOption = "json",
) -> None:
    """Sample base points in T^A and classify the subdomains holding neighbours."""
    settings = get_settings()
    _choice(output_format, OutputFormat, "--format")
    try:
        config = ExperimentConfig(
            group_name=group,
            sample_count=samples if samples is not None else settings.default_samples,
            seed=seed if seed is not None else settings.default_seed,
            denominator=denominator if denominator is not None else settings.sample_denominator,
            halfspace_filter=cast(HalfFilter, _choice(half, HalfFilter, "--half")),
        )
        report = run_sampling_experiment(config)
    except (ValidationError, StereolabError) as e:
        raise _fail(e, EXIT_ERROR) from e

    typer.echo(f"{config.group_name}: {config.sample_count} samples")
    for count, number in sorted(report.histogram.items()):
        typer.echo(f"  {count:>3} facets: {number}")
    for status in STATUSES:
        labels = report.classification.with_status(status)
        typer.echo(f"  {status}: {', '.join(labels) or '-'}")
    for finding in report.findings:
        typer.echo(f"  finding: {finding}")

    directory = _out_dir(out)
    stem = f"{file_stem(config.group_name)}_{config.seed}"
    if output_format == "json":
        write_json(report.to_document(), directory / f"{stem}.json")
    elif output_format == "csv":
        write_samples_csv(report.samples, directory / f"{stem}.csv")
    else:
        spec = catalog(config.group_name)
        write_off_meshes(
            ((s.sample_id, dirichlet_cell(spec, s.point)) for s in report.samples), directory
        )

    failed = [name for name, holds in report.lemma_checks.items() if not holds]
    if failed:
        typer.echo(f"Invariant checks failed: {', '.join(failed)}", err=True)
        raise typer.Exit(EXIT_INVARIANT)
    if report.deviation:
        typer.echo("Experiment deviates from the published expectations", err=True)
        raise typer.Exit(EXIT_MISMATCH)


@app.command("bounds")
def bounds_command(
    group: Annotated[str | None, typer.Option("--group", "-g")] = None,
    out: OutOption = None,
) -> None:
    """Print bound ledgers, or every table when no group is given."""
    if group is not None:
        try:
            ledger = bound_ledger(catalog(group))
        except StereolabError as e:
            raise _fail(e, EXIT_ERROR) from e
        typer.echo(f"{ledger.group_name}: {ledger.bound} ({ledger.provenance})")
        for row in ledger.rows:
            typer.echo(
                f"  {row.letters:<8}{row.count:>4} - {row.pair_reductions} -> {row.contribution}"
            )
        if ledger.rows:
            typer.echo(f"  {ledger.sum_expression()}")
        if out is not None:
            write_json(ledger.to_document(), out / f"{file_stem(ledger.group_name)}_bound.json")
        published = catalog(group).published_bound
        if published is not None and published != ledger.bound:
            raise typer.Exit(EXIT_MISMATCH)
        return

    tables = emit_tables()
    typer.echo(tables.render_text(), nl=False)
    if out is not None:
        write_json(tables.to_document(), out / "tables.json")
    if tables.mismatches:
        raise typer.Exit(EXIT_MISMATCH)


@app.command("helix")
def helix_command(
    alpha: Annotated[str, typer.Option("--alpha")] = "1/8",
    beta: Annotated[str, typer.Option("--beta")] = "1/4",
    h: Annotated[str, typer.Option("--h")] = "1/8",
    out: OutOption = None,
) -> None:
    """Check the neighbours of a base point of the helix subgroup of P4_232."""
    try:
        params = HelixParams(alpha=alpha, beta=beta, h=h)
        report = verify_helix_theorem(params)
    except TheoremMismatch as e:
        raise _fail(e, EXIT_MISMATCH) from e
    except (ValidationError, StereolabError) as e:
        raise _fail(e, EXIT_ERROR) from e

    typer.echo(f"Helix cell: {report.facet_count} facets")
    for n in report.neighbors:
        typer.echo(f"  {n.name:<5}{n.label or '-':<8}{n.point}")
    for discrepancy in report.label_discrepancies:
        typer.echo(f"  label discrepancy: {discrepancy}")
    if out is not None:
        write_json(report.to_document(), out / "helix.json")
    checks = [*report.delaunay_families.values(), report.generator_agreement]
    if not all(checks) or not report.involution_consistent:
        raise typer.Exit(EXIT_INVARIANT)


@app.command("special-orbit")
def special_orbit_command(
    group: GroupOption = "F4_132",
    t: Annotated[str | None, typer.Option("--t", help="Edge parameter in (0, 1/2)")] = None,
    samples: Annotated[int, typer.Option("--samples", "-n")] = 20,
    seed: Annotated[int, typer.Option("--seed")] = 0,
) -> None:
    """Facet counts of orbits on the edge v1v3 with an order-two stabilizer."""
    try:
        parameter = None if t is None else Fraction(t)
        report = run_special_orbit_experiment(group, parameter, samples, seed)
    except (ValueError, ZeroDivisionError, StereolabError) as e:
        raise _fail(e, EXIT_ERROR) from e
    for row in report.rows:
        typer.echo(
            f"  t={row.t}: {row.facet_count} facets "
            f"({row.own_orbit} own orbit, {row.other_orbit} other orbit)"
        )
    if not report.within_bounds:
        raise typer.Exit(EXIT_INVARIANT)


@app.command("verify")
def verify_command(
    samples: Annotated[int, typer.Option("--samples", "-n")] = 5,
    seed: Annotated[int, typer.Option("--seed")] = 0,
) -> None:
    """Re-derive the catalog, certify the VorExt regions and compare the tables."""
    code = EXIT_OK
    for spec in CATALOG.values():
        try:
            verify_group_spec(spec)
        except SpecMismatch as e:
            typer.echo(f"  {e}", err=True)
            code = EXIT_MISMATCH
    typer.echo(f"Catalog: {len(CATALOG)} groups checked")

    for family, expected in PUBLISHED_INFL_SIZE.items():
        region = computed_region(family)
        size = len(region.sorted_infl())
        typer.echo(f"Influence region {family}: {size} subdomains (published {expected})")
        if size != expected:
            code = EXIT_MISMATCH
        try:
            result = vorext_verify(region, samples, seed)
        except CertificateFailure as e:
            logger.exception("VorExt certificate failed", family=family)
            raise _fail(e, EXIT_INVARIANT) from e
        typer.echo(
            f"VorExt {family}: {result.certificates} certificates, "
            f"{result.cells_checked} cells, {result.vorext_size} subdomains "
            f"(stated {result.stated_size})"
        )

    tables = emit_tables()
    for row in tables.mismatches:
        typer.echo(f"  {row.group_name}: computed {row.computed}, published {row.published}")
        code = EXIT_MISMATCH
    if code:
        raise typer.Exit(code)


if __name__ == "__main__":
    app()
