"""Tests for the engine exception hierarchy."""

import pytest

from src import errors
from src.errors import (
    CertificateFailure,
    SpecMismatch,
    StereolabError,
    StructureViolation,
    TheoremMismatch,
    UnknownGroup,
)


@pytest.mark.parametrize(
    "name",
    [name for name in dir(errors) if isinstance(getattr(errors, name), type)],
)
def test_every_error_derives_from_base(name: str) -> None:
    assert issubclass(getattr(errors, name), StereolabError)


@pytest.mark.parametrize(
    "error,attribute,value,fragment",
    [
        pytest.param(UnknownGroup("P6"), "name", "P6", "'P6'", id="unknown_group"),
        pytest.param(
            SpecMismatch("F23", "s", 2, 1), "check", "s", "expected 2, computed 1", id="spec"
        ),
        pytest.param(
            CertificateFailure("T0^D", 4, "sector meets it"), "sample", 4, "T0^D", id="certificate"
        ),
        pytest.param(
            StructureViolation("octahedron_v1v2", "fails"), "clause", "octahedron_v1v2",
            "octahedron_v1v2: fails", id="structure",
        ),
        pytest.param(
            TheoremMismatch(["q4"], ["p2"]), "missing", ["q4"], "unexpected neighbours ['p2']",
            id="theorem",
        ),
    ],
)  # fmt: skip
def test_errors_carry_context(error: Exception, attribute: str, value: object, fragment: str) -> None:
    assert getattr(error, attribute) == value
    assert fragment in str(error)
