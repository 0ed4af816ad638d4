"""Report models returned by the validators and classifiers.

Field order is the serialization order, so ``model_dump`` output is stable
for the CLI's ``--json`` mode.
"""

from typing import Optional

from pydantic import BaseModel, ConfigDict, Field


class Violation(BaseModel):
    """One failed instance of a property, with its witnessing indices."""

    model_config = ConfigDict(frozen=True)

    kind: str
    indices: list[int]
    detail: str = ""


class ValidationReport(BaseModel):
    model_config = ConfigDict(frozen=True)

    subject: str
    violations: list[Violation] = Field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not self.violations

    def first(self, kind: Optional[str] = None) -> Optional[Violation]:
        for violation in self.violations:
            if kind is None or violation.kind == kind:
                return violation
        return None


class AxiomResult(BaseModel):
    model_config = ConfigDict(frozen=True)

    axiom: str
    passed: bool
    witness: Optional[list[int]] = None


class AxiomReport(BaseModel):
    """Outcome of LY1..LY6, in that order."""

    model_config = ConfigDict(frozen=True)

    axioms: list[AxiomResult]

    @property
    def all_pass(self) -> bool:
        return all(result.passed for result in self.axioms)

    def __getitem__(self, axiom: str) -> AxiomResult:
        for result in self.axioms:
            if result.axiom == axiom:
                return result
        raise KeyError(axiom)


class ConnectionFlags(BaseModel):
    model_config = ConfigDict(frozen=True)

    symmetric: bool
    flat: bool
    anticommutative: bool
    equivariant: bool
    # exp(tX).p are the geodesics through p; same test as anticommutative
    geodesic_orbits: bool
    # Only defined for group cases (h = 0)
    left_symmetric_structure: Optional[bool] = None


class IdentityReport(BaseModel):
    model_config = ConfigDict(frozen=True)

    lie_admissible: bool
    flexible: bool
    left_symmetric: bool
    associative: bool
    ad_derivation: bool
    anticommutative: bool
    commutative: bool
    witnesses: dict[str, list[int]] = Field(default_factory=dict)


class MetricReport(BaseModel):
    model_config = ConfigDict(frozen=True)

    torsion_free: bool
    skew_compatible: bool
    naturally_reductive: bool
    commutative_part_identity: bool
    witnesses: dict[str, list[int]] = Field(default_factory=dict)
