"""Exception hierarchy for the stereolab engine.

Library code raises these; the CLI maps them to exit codes and the API
to HTTP status codes.
"""


class StereolabError(Exception):
    """Base class for every engine error."""


class InvalidConfiguration(StereolabError):
    """A parameter set violates its documented constraints."""


# Geometry kernel


class UnboundedInput(StereolabError):
    """A halfspace system describes an unbounded region."""


class EmptyOrDegenerate(StereolabError):
    """A halfspace system has empty interior."""


class DegenerateSimplex(StereolabError):
    """Four points expected to span a tetrahedron are coplanar."""


# Groups and lattice


class NonDiscreteGroup(StereolabError):
    """A presentation generates a group that is not discrete (or not finite mod its lattice)."""


class OnSubdomainBoundary(StereolabError):
    """A point is not interior to any fundamental subdomain of the window."""


class UnknownGroup(StereolabError):
    """A group name is not one of the 27 catalog entries."""

    def __init__(self, name: str) -> None:
        super().__init__(f"Unknown full cubic group: {name!r}")
        self.name = name


class SpecMismatch(StereolabError):
    """A stored catalog classification disagrees with the recomputed one."""

    def __init__(self, group: str, check: str, expected: object, actual: object) -> None:
        super().__init__(f"{group}: {check} expected {expected!r}, computed {actual!r}")
        self.group = group
        self.check = check
        self.expected = expected
        self.actual = actual


class NotAGroup(StereolabError):
    """A finite set of isometries is not closed under composition."""


# Cells and bounds


class NontrivialStabilizer(StereolabError):
    """The base point is fixed by a non-identity group element."""


class CandidateSetIncomplete(StereolabError):
    """An influence-region cell escaped its extended Voronoi region."""


class CertificateFailure(StereolabError):
    """A wedge-exclusion certificate or containment check failed."""

    def __init__(self, subdomain: str, sample: int, detail: str) -> None:
        super().__init__(f"Certificate failed for {subdomain} at sample {sample}: {detail}")
        self.subdomain = subdomain
        self.sample = sample


class FamilyMismatch(StereolabError):
    """A group lacks a rotation required by a region family."""


# Experiments


class StructureViolation(StereolabError):
    """A structural clause of the P4_232 analysis failed for a sample."""

    def __init__(self, clause: str, detail: str) -> None:
        super().__init__(f"{clause}: {detail}")
        self.clause = clause


class TheoremMismatch(StereolabError):
    """The computed helix neighbour set differs from the stated one."""

    def __init__(self, missing: list[str], extra: list[str]) -> None:
        super().__init__(f"missing neighbours {missing}, unexpected neighbours {extra}")
        self.missing = missing
        self.extra = extra
