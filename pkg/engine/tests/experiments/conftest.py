"""Shared fixtures for experiment tests."""

import pytest

from src.experiments.sampling import ExperimentReport, run_sampling_experiment
from src.schemas import ExperimentConfig, HelixParams


@pytest.fixture
def helix_params() -> HelixParams:
    return HelixParams(alpha="1/8", beta="1/4", h="1/8")


@pytest.fixture(scope="module")
def p4232_experiment() -> ExperimentReport:
    """A small P4_232 run shared by the tests of one module."""
    return run_sampling_experiment(
        ExperimentConfig(group_name="P4_232", sample_count=4, seed=11, denominator=2000)
    )
