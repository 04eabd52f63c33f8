"""Experiments: sampling, P4_232 structure, helix subgroup, special orbits and tables."""

from src.experiments.helix import HelixReport, verify_helix_theorem
from src.experiments.p4232 import check_p4232_structure
from src.experiments.sampling import (
    ExperimentReport,
    SampleRecord,
    SubdomainClassification,
    run_sampling_experiment,
)
from src.experiments.special_orbit import SpecialOrbitReport, run_special_orbit_experiment
from src.experiments.tables import TablesReport, emit_tables

__all__ = [
    "ExperimentReport",
    "HelixReport",
    "SampleRecord",
    "SpecialOrbitReport",
    "SubdomainClassification",
    "TablesReport",
    "check_p4232_structure",
    "emit_tables",
    "run_sampling_experiment",
    "run_special_orbit_experiment",
    "verify_helix_theorem",
]
