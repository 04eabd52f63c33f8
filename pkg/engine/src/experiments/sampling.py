"""Seeded sampling experiments over random base points in T^A.

Every sample draws a rational base point with trivial stabilizer, computes its
Dirichlet stereohedron, runs the lemma checks and records which fundamental
subdomains hold its neighbours. Across samples each tracked subdomain is
classified as holding a neighbour always, sometimes or never.
"""

import random
from collections import Counter
from dataclasses import dataclass

from src.bounds import bound_ledger
from src.catalog import FullGroupSpec, catalog
from src.dirichlet import T_A, StereohedronReport, dirichlet_cell
from src.errors import InvalidConfiguration
from src.experiments.p4232 import (
    P4232_CANDIDATES,
    check_p4232_structure,
    p4232_deviates,
    p4232_findings,
)
from src.geometry import Point3, sample_interior_point
from src.lattice import half_of, subdomain_geometry
from src.lemmas import (
    check_containment,
    check_rotation_lemma,
    pure_rotations,
    within_delone_ceiling,
)
from src.logger import logger
from src.regions import computed_region
from src.schemas import (
    ExperimentConfig,
    ExperimentDocument,
    NeighborStatus,
    SampleDocument,
)


@dataclass(frozen=True)
class SampleRecord:
    """One evaluated base point."""

    sample_id: int
    point: Point3
    half: str
    facet_count: int
    labels: tuple[str, ...]
    rotation_lemma: bool
    inside_window: bool
    neighbors_in_complex: bool
    within_delone: bool
    within_bound: bool

    def to_document(self) -> SampleDocument:
        return SampleDocument(
            sample_id=self.sample_id,
            point=self.point.as_strings(),
            half=self.half,  # type: ignore[arg-type]
            facet_count=self.facet_count,
            neighbor_labels=list(self.labels),
        )


@dataclass(frozen=True)
class SubdomainClassification:
    """Always / sometimes / never status of each tracked subdomain.

    Attributes:
        statuses: Status per label.
        sample_count: Number of samples classified.
        bitmaps: Per label, whether each sample had a neighbour there.
    """

    statuses: dict[str, NeighborStatus]
    sample_count: int
    bitmaps: dict[str, tuple[bool, ...]]

    @classmethod
    def from_samples(
        cls, samples: list[SampleRecord], tracked: list[str]
    ) -> "SubdomainClassification":
        observed = {label for s in samples for label in s.labels}
        labels = list(tracked) + sorted(observed - set(tracked))
        bitmaps = {label: tuple(label in s.labels for s in samples) for label in labels}
        statuses: dict[str, NeighborStatus] = {}
        for label, bits in bitmaps.items():
            if bits and all(bits):
                statuses[label] = "always"
            elif any(bits):
                statuses[label] = "sometimes"
            else:
                statuses[label] = "never"
        return cls(statuses=statuses, sample_count=len(samples), bitmaps=bitmaps)

    def with_status(self, status: NeighborStatus) -> list[str]:
        return [label for label, s in self.statuses.items() if s == status]


@dataclass(frozen=True)
class ExperimentReport:
    """Histogram, classification and lemma checks of one experiment."""

    config: ExperimentConfig
    histogram: dict[int, int]
    classification: SubdomainClassification
    per_half: dict[str, SubdomainClassification]
    samples: tuple[SampleRecord, ...]
    lemma_checks: dict[str, bool]
    findings: tuple[str, ...]
    deviation: bool = False

    @property
    def lemmas_hold(self) -> bool:
        return all(self.lemma_checks.values())

    def to_document(self) -> ExperimentDocument:
        return ExperimentDocument(
            config=self.config,
            histogram=dict(sorted(self.histogram.items())),
            classification=self.classification.statuses,
            per_half={half: c.statuses for half, c in self.per_half.items()},
            lemma_checks=self.lemma_checks,
            findings=list(self.findings),
            deviation=self.deviation,
            samples=[s.to_document() for s in self.samples],
        )


def influence_labels(spec: FullGroupSpec) -> list[str]:
    """Subdomains that can hold a neighbour: Infl restricted to occupied letters."""
    if spec.family is None:
        return []
    region = computed_region(spec.family)
    return [
        str(label)
        for label in region.sorted_infl()
        if label.letter
        in (
            spec.occupied_letters_base
            if label.tetra.i is None or label.tetra.j is not None
            else spec.occupied_letters_neighbor
        )
        and label != T_A
    ]


def tracked_labels(spec: FullGroupSpec) -> list[str]:
    """Subdomains shown in the classification."""
    if spec.name == "P4_232":
        return [str(label) for label in P4232_CANDIDATES]
    return influence_labels(spec)


def sample_base_points(
    spec: FullGroupSpec, config: ExperimentConfig
) -> list[tuple[int, Point3]]:
    """Deterministic base points in T^A with trivial stabilizer, on the requested side."""
    rng = random.Random(config.seed)

    def accept(p: Point3) -> bool:
        side = half_of(p)
        if side is None or (config.halfspace_filter != "all" and side != config.halfspace_filter):
            return False
        return len(spec.presentation.stabilizer(p)) == 1

    region = subdomain_geometry(T_A)
    return [
        (k, sample_interior_point(region, rng, config.denominator, accept=accept))
        for k in range(config.sample_count)
    ]


def evaluate_sample(
    spec: FullGroupSpec, sample_id: int, p: Point3, bound: int
) -> tuple[SampleRecord, StereohedronReport]:
    report = dirichlet_cell(spec, p)
    containment = check_containment(report)
    rotations = pure_rotations(spec, p, report.candidate_radius)
    rotation_ok = all(check_rotation_lemma(report, rho) for rho in rotations)
    record = SampleRecord(
        sample_id=sample_id,
        point=p,
        half=half_of(p) or "upper",
        facet_count=report.facet_count,
        labels=tuple(sorted(str(label) for label in report.neighbor_labels())),
        rotation_lemma=rotation_ok,
        inside_window=containment.inside_window,
        neighbors_in_complex=containment.neighbors_in_complex,
        within_delone=within_delone_ceiling(report, spec.aspect_count),
        within_bound=report.facet_count <= bound,
    )
    logger.debug("Sample evaluated", group=spec.name, sample=sample_id, facets=record.facet_count)
    return record, report


def run_sampling_experiment(config: ExperimentConfig) -> ExperimentReport:
    """Sample base points, compute their stereohedra and classify neighbour subdomains.

    Raises:
        UnknownGroup: If the group is not in the catalog.
        InvalidConfiguration: If the group contains reflections.
    """
    spec = catalog(config.group_name)
    if spec.has_reflections:
        raise InvalidConfiguration(f"{spec.name} contains reflections")
    logger.info(
        "Experiment started",
        group=spec.name,
        samples=config.sample_count,
        seed=config.seed,
        half=config.halfspace_filter,
    )
    bound = bound_ledger(spec).bound
    records = []
    structure_holds = True
    for sample_id, p in sample_base_points(spec, config):
        record, report = evaluate_sample(spec, sample_id, p, bound)
        records.append(record)
        if spec.name == "P4_232":
            clauses = check_p4232_structure(report, strict=False)
            structure_holds = structure_holds and all(clauses.values())

    tracked = tracked_labels(spec)
    classification = SubdomainClassification.from_samples(records, tracked)
    per_half = {
        half: SubdomainClassification.from_samples(
            [r for r in records if r.half == half], tracked
        )
        for half in ("upper", "lower")
        if any(r.half == half for r in records)
    }
    histogram = dict(Counter(r.facet_count for r in records))
    allowed = set(influence_labels(spec))
    lemma_checks = {
        "rotation_lemma": all(r.rotation_lemma for r in records),
        "containment_union": all(r.inside_window for r in records),
        "containment_fifteen": all(r.neighbors_in_complex for r in records),
        "delone_ceiling": all(r.within_delone for r in records),
        "refined_bound": all(r.within_bound for r in records),
        "classification_within_influence": not allowed
        or all(label in allowed for r in records for label in r.labels),
    }
    if spec.name == "P4_232":
        lemma_checks["p4232_structure"] = structure_holds
    findings: list[str] = []
    deviation = False
    if spec.name == "P4_232":
        findings = p4232_findings(records, per_half)
        deviation = p4232_deviates(records)
    logger.info(
        "Experiment finished",
        group=spec.name,
        histogram=dict(sorted(histogram.items())),
        lemmas_hold=all(lemma_checks.values()),
    )
    return ExperimentReport(
        config=config,
        histogram=histogram,
        classification=classification,
        per_half=per_half,
        samples=tuple(records),
        lemma_checks=lemma_checks,
        findings=tuple(findings),
        deviation=deviation,
    )
