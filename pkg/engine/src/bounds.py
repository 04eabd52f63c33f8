"""Facet bounds for Dirichlet stereohedra of full cubic groups.

Three levels of bound are computed here:

- ``delone_bound``: the general ceiling 2^d (a + 1) - 2 for a group with a aspects.
- ``first_bound``: (7 + 4m) s + 3 from the stabilizer order s and the colour
  flag m of a full group.
- ``refined_bound``: a ledger over the influence region of the group's region
  family, one row per occupied letter, minus one subdomain per rotation pair
  and minus the base subdomain itself.
"""

import random
from collections.abc import Callable
from dataclasses import dataclass, field

from src.catalog import FullGroupSpec, groups_without_reflections
from src.dirichlet import T_A, dirichlet_cell
from src.errors import CertificateFailure, FamilyMismatch
from src.geometry import Point3, covered_by, sample_interior_point
from src.lattice import NEIGHBORS_OF_NEIGHBORS, SubdomainLabel, subdomain_geometry
from src.logger import logger
from src.regions import (
    RegionFamily,
    computed_region,
    influence_region,
    letter_counts,
    reduction_pairs,
    vorext_pieces,
    wedge_excludes,
)
from src.schemas import HalfFilter, LedgerDocument, LedgerRow, Letter, RegionFamilyName
from src.settings import get_settings

REFLECTION_BOUND = 8

# Ledger rows list letters in the pairs (A, E), (B, F), (C, G), (D, H).
LEDGER_LETTER_ORDER = "AEBFCGDH"

# The order-4 region is introduced in prose as "eleven" subdomains while
# thirteen labels are listed; both numbers are reported.
STATED_VOREXT_SIZE: dict[RegionFamilyName, int] = {"order4": 11, "transversal_order2": 19}

_T13 = next(a for a in NEIGHBORS_OF_NEIGHBORS if (a.i, a.j) == (1, 3))
_T24 = next(a for a in NEIGHBORS_OF_NEIGHBORS if (a.i, a.j) == (2, 4))

# Subdomains of T13 and T24 that never hold a neighbour of a base point in one
# half of T^A (proved through the helix subgroup).
HALF_EXCLUSIONS: dict[str, dict[str, tuple[SubdomainLabel, ...]]] = {
    "P4_232": {
        "lower": (
            SubdomainLabel(_T24, "E"),
            SubdomainLabel(_T24, "F"),
            SubdomainLabel(_T13, "F"),
        ),
        "upper": (
            SubdomainLabel(_T13, "A"),
            SubdomainLabel(_T13, "B"),
            SubdomainLabel(_T24, "B"),
        ),
    }
}


def delone_bound(d: int, aspects: int) -> int:
    """Delone's ceiling on the facets of a stereohedron with ``aspects`` aspects in R^d."""
    if d < 1 or aspects < 1:
        raise ValueError("Dimension and aspect count must be positive")
    return 2**d * (aspects + 1) - 2


def first_bound(s: int, m: int) -> int:
    """The bound (7 + 4m) s + 3 valid for every full cubic group."""
    if s not in (1, 2, 4, 8):
        raise ValueError(f"Stabilizer order must be 1, 2, 4 or 8, got {s}")
    if m not in (0, 1):
        raise ValueError(f"Colour flag must be 0 or 1, got {m}")
    return (7 + 4 * m) * s + 3


def first_bound_table() -> list[tuple[int, int, int, list[str]]]:
    """Rows (s, m, bound, groups without reflections having that s and m)."""
    rows = []
    for s in (1, 2, 4, 8):
        for m in (0, 1):
            names = [g.name for g in groups_without_reflections() if (g.s, g.m) == (s, m)]
            rows.append((s, m, first_bound(s, m), names))
    return rows


# ---------------------------------------------------------------------------
# Ledgers
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class BoundLedger:
    """How a group's facet bound is assembled.

    Attributes:
        group_name: Catalog name.
        family: Region family used, None for first-bound and reflection ledgers.
        rows: One row per occupied letter orbit.
        reduction_pairs: Pairs of which at most one member yields a facet.
        bound: The resulting bound.
        provenance: Which argument the bound comes from.
        unrefined_bound: Bound before half-space exclusions (P4_232 only).
        excluded: Subdomains removed by the half-space exclusions.
    """

    group_name: str
    family: RegionFamilyName | None
    rows: tuple[LedgerRow, ...]
    reduction_pairs: tuple[tuple[SubdomainLabel, SubdomainLabel], ...]
    bound: int
    provenance: str
    unrefined_bound: int | None = None
    excluded: tuple[SubdomainLabel, ...] = field(default=())

    @property
    def subdomain_counts(self) -> dict[str, int]:
        return {row.letters: row.count for row in self.rows}

    @property
    def occupied(self) -> frozenset[str]:
        return frozenset(row.letters for row in self.rows)

    def sum_expression(self) -> str:
        """The bound as a sum of row contributions, e.g. "8 + 7 + 6 + 7 = 28"."""
        if not self.rows:
            return str(self.bound)
        total = sum(row.contribution for row in self.rows)
        return " + ".join(str(row.contribution) for row in self.rows) + f" = {total}"

    def to_document(self) -> LedgerDocument:
        return LedgerDocument(
            group_name=self.group_name,
            family=self.family,
            rows=list(self.rows),
            reduction_pairs=[[str(a), str(b)] for a, b in self.reduction_pairs],
            bound=self.bound,
            provenance=self.provenance,
        )


def _ledger_order(letters: frozenset[Letter]) -> list[Letter]:
    return sorted(letters, key=LEDGER_LETTER_ORDER.index)


def _ensure_infl(region: RegionFamily) -> RegionFamily:
    return region if region.infl_labels is not None else influence_region(region)


def _check_family(spec: FullGroupSpec, region: RegionFamily) -> None:
    for cut in region.cuts:
        if not spec.presentation.contains(cut.rotation):
            raise FamilyMismatch(
                f"{spec.name} lacks the rotation {cut.name} ({cut.rotation}) of {region.family}"
            )


def _half_bound(
    spec: FullGroupSpec, region: RegionFamily, total: int, half: str
) -> tuple[int, tuple[SubdomainLabel, ...]]:
    infl = region.infl_labels or frozenset()
    excluded = tuple(
        label
        for label in HALF_EXCLUSIONS[spec.name][half]
        if label in infl and label.letter in spec.occupied_letters_base
    )
    return total - len(excluded), excluded


def refined_bound(
    spec: FullGroupSpec,
    region: RegionFamily | None = None,
    *,
    half: HalfFilter = "all",
    refine: bool = True,
) -> BoundLedger:
    """Count the influence subdomains a neighbour of a base point in T^A can occupy.

    Args:
        spec: The group.
        region: Region family; defaults to the group's own, with Infl computed.
        half: For groups with half-space exclusions, which half of T^A the base
            point lies in ("all" takes the worse half).
        refine: Apply the half-space exclusions where they exist.

    Raises:
        FamilyMismatch: If the group lacks one of the region's cutting rotations.
    """
    if region is None:
        if spec.family is None:
            raise FamilyMismatch(f"{spec.name} has no region family")
        region = computed_region(spec.family)
    region = _ensure_infl(region)
    _check_family(spec, region)

    same, other = letter_counts(region)
    pairs = tuple(
        (a, b) for a, b in reduction_pairs(region) if a.letter in spec.occupied_letters_base
    )
    rows = []
    for x in _ledger_order(spec.occupied_letters_base):
        paired = sum(1 for a, _ in pairs if a.letter == x)
        own = 1 if x == "A" else 0
        rows.append(
            LedgerRow(
                letters=f"T^{x}",
                count=same[x],
                pair_reductions=paired,
                contribution=same[x] - paired - own,
            )
        )
    for x in _ledger_order(spec.occupied_letters_neighbor):
        rows.append(
            LedgerRow(letters=f"T_i^{x}", count=other[x], pair_reductions=0, contribution=other[x])
        )
    total = sum(row.contribution for row in rows)

    bound, unrefined, excluded = total, None, ()
    provenance = f"influence region ({region.family})"
    if refine and spec.name in HALF_EXCLUSIONS:
        halves = ("upper", "lower") if half == "all" else (half,)
        results = [_half_bound(spec, region, total, h) for h in halves]
        bound, excluded = max(results, key=lambda item: item[0])
        unrefined = total
        provenance += f", half-space exclusions ({half})"

    ledger = BoundLedger(
        group_name=spec.name,
        family=region.family,
        rows=tuple(rows),
        reduction_pairs=pairs,
        bound=bound,
        provenance=provenance,
        unrefined_bound=unrefined,
        excluded=excluded,
    )
    logger.info("Bound ledger", group=spec.name, bound=bound, expression=ledger.sum_expression())
    return ledger


def bound_ledger(spec: FullGroupSpec) -> BoundLedger:
    """The best bound this engine proves for ``spec``."""
    if spec.has_reflections:
        return BoundLedger(
            group_name=spec.name,
            family=None,
            rows=(),
            reduction_pairs=(),
            bound=REFLECTION_BOUND,
            provenance="constant 8 (reflections)",
        )
    if spec.family is None:
        return BoundLedger(
            group_name=spec.name,
            family=None,
            rows=(),
            reduction_pairs=(),
            bound=first_bound(spec.s, spec.m),
            provenance=f"first bound (7 + 4*{spec.m}) * {spec.s} + 3",
        )
    return refined_bound(spec)


def letter_table(region: RegionFamily) -> list[tuple[Letter, int, int, int, int]]:
    """Per letter: T-family count, pairs, bound column, and T_i-family count.

    The bound column is count minus pairs, with one more removed for A.
    """
    region = _ensure_infl(region)
    same, other = letter_counts(region)
    pairs = reduction_pairs(region)
    rows = []
    for x in sorted(same):
        paired = sum(1 for a, _ in pairs if a.letter == x)
        rows.append((x, same[x], paired, same[x] - paired - (1 if x == "A" else 0), other[x]))
    return rows


# ---------------------------------------------------------------------------
# VorExt verification
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class VorExtReport:
    """Outcome of checking a VorExt region on random base points."""

    family: RegionFamilyName
    samples: int
    certificates: int
    cells_checked: int
    vorext_size: int
    stated_size: int


def _trivial_stabilizers(groups: list[FullGroupSpec]) -> Callable[[Point3], bool]:
    def accept(p: Point3) -> bool:
        return all(len(spec.presentation.stabilizer(p)) == 1 for spec in groups)

    return accept


def vorext_verify(
    region: RegionFamily,
    samples: int,
    seed: int,
    groups: list[FullGroupSpec] | None = None,
) -> VorExtReport:
    """Certify the exclusions of ``region`` and the containment of sampled cells.

    For each sampled base point p in T^A and each subdomain S excluded by a
    rotation rho, S clipped to the sector of p under <rho> must have empty
    interior. Each sampled group's stereohedron of p must lie in VorExt.

    Raises:
        CertificateFailure: Naming the subdomain and the sample that failed.
    """
    if samples < 1:
        raise ValueError("At least one sample is required")
    if groups is None:
        groups = [g for g in groups_without_reflections() if g.family == region.family]
    rng = random.Random(seed)
    denominator = get_settings().sample_denominator
    pieces = vorext_pieces(region)
    certificates = cells = 0
    for k in range(samples):
        p = sample_interior_point(
            subdomain_geometry(T_A), rng, denominator, accept=_trivial_stabilizers(groups)
        )
        for cut in region.cuts:
            for label in sorted(cut.excluded, key=lambda item: item.sort_key):
                if not wedge_excludes(cut.rotation, p, subdomain_geometry(label)):
                    raise CertificateFailure(str(label), k, f"sector of {cut.name} meets it")
                certificates += 1
        for spec in groups:
            report = dirichlet_cell(spec, p)
            if not covered_by(report.cell, pieces):
                raise CertificateFailure("VorExt", k, f"cell of {spec.name} at {p} escapes")
            cells += 1
    stated = STATED_VOREXT_SIZE[region.family]
    if stated != len(region.vorext_labels):
        logger.warning(
            "VorExt size differs from the stated count",
            family=region.family,
            listed=len(region.vorext_labels),
            stated=stated,
        )
    logger.info(
        "VorExt verified",
        family=region.family,
        samples=samples,
        certificates=certificates,
        cells=cells,
    )
    return VorExtReport(
        family=region.family,
        samples=samples,
        certificates=certificates,
        cells_checked=cells,
        vorext_size=len(region.vorext_labels),
        stated_size=stated,
    )
