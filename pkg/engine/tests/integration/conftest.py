"""Shared fixtures and configuration for integration tests."""

import os

import pytest


def pytest_collection_modifyitems(config, items):  # noqa: ARG001
    """Skip integration tests unless STEREOLAB_INTEGRATION=1."""
    skip_integration = pytest.mark.skip(
        reason="STEREOLAB_INTEGRATION not set - skipping long integration runs"
    )

    for item in items:
        if "integration" in item.keywords and os.getenv("STEREOLAB_INTEGRATION") != "1":
            item.add_marker(skip_integration)


@pytest.fixture
def out_dir(tmp_path):
    """Directory for experiment outputs."""
    path = tmp_path / "out"
    path.mkdir()
    return path
