"""Reproduce the bound tables from the bound engine.

Nothing here is transcribed: every number comes from ``src.bounds`` and is set
beside the published value where one exists.
"""

from dataclasses import dataclass

from src.bounds import bound_ledger, first_bound_table, letter_table, refined_bound
from src.catalog import groups_without_reflections
from src.regions import computed_region
from src.schemas import (
    BoundTableRow,
    FirstBoundRow,
    LedgerSumRow,
    LetterRowDocument,
    RegionFamilyName,
    TablesDocument,
)

FAMILIES: tuple[RegionFamilyName, ...] = ("order4", "transversal_order2")


@dataclass(frozen=True)
class TablesReport:
    bounds: tuple[BoundTableRow, ...]
    first_bounds: tuple[FirstBoundRow, ...]
    letters: dict[RegionFamilyName, tuple[LetterRowDocument, ...]]
    sums: tuple[LedgerSumRow, ...]

    @property
    def mismatches(self) -> list[BoundTableRow]:
        return [row for row in self.bounds if not row.matches]

    def to_document(self) -> TablesDocument:
        return TablesDocument(
            bounds=list(self.bounds),
            first_bounds=list(self.first_bounds),
            letters={family: list(rows) for family, rows in self.letters.items()},
            sums=list(self.sums),
        )

    def render_text(self) -> str:
        lines = ["Facet bounds of full cubic groups without reflections", ""]
        lines.append(f"{'group':<14}{'computed':>9}{'published':>10}  provenance")
        for row in self.bounds:
            flag = "" if row.matches else "  MISMATCH"
            published = "-" if row.published is None else str(row.published)
            lines.append(
                f"{row.group_name:<14}{row.computed:>9}{published:>10}  {row.provenance}{flag}"
            )

        lines += ["", "First bound (7 + 4m) s + 3", "", f"{'s':>3}{'m':>3}{'bound':>7}  groups"]
        for first in self.first_bounds:
            lines.append(f"{first.s:>3}{first.m:>3}{first.bound:>7}  {', '.join(first.groups)}")

        for family, rows in self.letters.items():
            lines += ["", f"Influence subdomains per letter ({family})", ""]
            lines.append(f"{'letter':<8}{'T':>4}{'pairs':>7}{'bound':>7}{'T_i':>5}")
            for letter in rows:
                lines.append(
                    f"{letter.letter:<8}{letter.count:>4}{letter.pairs:>7}"
                    f"{letter.bound:>7}{letter.neighbor_count:>5}"
                )
            lines.append(
                f"{'total':<8}{sum(r.count for r in rows):>4}{sum(r.pairs for r in rows):>7}"
                f"{sum(r.bound for r in rows):>7}{sum(r.neighbor_count for r in rows):>5}"
            )

        lines += ["", "Refined bounds as sums over occupied letters", ""]
        for entry in self.sums:
            lines.append(f"{entry.group_name:<14}{entry.expression}  (bound {entry.bound})")
        return "\n".join(lines) + "\n"


def emit_tables() -> TablesReport:
    """Compute every table."""
    bounds = []
    sums = []
    for spec in groups_without_reflections():
        ledger = bound_ledger(spec)
        bounds.append(
            BoundTableRow(
                group_name=spec.name,
                computed=ledger.bound,
                published=spec.published_bound,
                provenance=ledger.provenance,
                matches=ledger.bound == spec.published_bound,
            )
        )
        if spec.family is not None:
            unrefined = refined_bound(spec, refine=False)
            sums.append(
                LedgerSumRow(
                    group_name=spec.name,
                    expression=unrefined.sum_expression(),
                    bound=ledger.bound,
                )
            )

    first_bounds = tuple(
        FirstBoundRow(s=s, m=m, bound=value, groups=names)
        for s, m, value, names in first_bound_table()
    )
    letters = {
        family: tuple(
            LetterRowDocument(letter=x, count=count, pairs=pairs, bound=bound, neighbor_count=other)
            for x, count, pairs, bound, other in letter_table(computed_region(family))
        )
        for family in FAMILIES
    }
    return TablesReport(
        bounds=tuple(bounds), first_bounds=first_bounds, letters=letters, sums=tuple(sums)
    )
