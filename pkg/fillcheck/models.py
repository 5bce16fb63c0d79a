"""
Shared value types: coefficient-field tags, graded Betti profiles and cited verdicts.
"""
from enum import Enum
from pydantic import BaseModel, ConfigDict, Field, field_validator, model_validator
from sympy import isprime
from fillcheck.citations import CITATIONS


# ============================================================================
# Coefficient fields
# ============================================================================

FIELD_Q = "Q"


def field_characteristic(tag: str) -> int:
    """
    Parse a coefficient-field tag.

    Args:
        tag: "Q" or "Fp:<p>" with p prime

    Returns:
        0 for Q, p for F_p
    """
    if tag == FIELD_Q:
        return 0
    if tag.startswith("Fp:"):
        try:
            p = int(tag[3:])
        except ValueError:
            raise ValueError(f"invalid field tag '{tag}'") from None
        if p >= 2 and isprime(p):
            return p
    raise ValueError(f"invalid field tag '{tag}' (expected 'Q' or 'Fp:<prime>')")


def field_tag(characteristic: int) -> str:
    return FIELD_Q if characteristic == 0 else f"Fp:{characteristic}"


# ============================================================================
# Graded Betti profiles
# ============================================================================

class GradedBetti(BaseModel):
    """
    Betti numbers b_0..b_dim of a manifold over one coefficient field.
    Degrees outside [0, dim] are implicitly zero.
    """

    model_config = ConfigDict(frozen=True)

    dim: int = Field(ge=0)
    ranks: dict[int, int] = Field(default_factory=dict)
    field: str = FIELD_Q
    closed_orientable: bool = False

    @field_validator("field")
    @classmethod
    def _check_field(cls, value: str) -> str:
        field_characteristic(value)
        return value

    @field_validator("ranks")
    @classmethod
    def _check_ranks(cls, value: dict[int, int]) -> dict[int, int]:
        for degree, rank in value.items():
            if rank < 0:
                raise ValueError(f"rank in degree {degree} is negative")
        return value

    @model_validator(mode="after")
    def _check_profile(self) -> "GradedBetti":
        for degree, rank in self.ranks.items():
            if rank and not 0 <= degree <= self.dim:
                raise ValueError(f"nonzero rank in degree {degree} outside [0, {self.dim}]")
        if self.closed_orientable and not self.is_poincare_dual():
            raise ValueError(
                f"profile {self.as_list()} is flagged closed_orientable but violates Poincare duality"
            )
        return self

    @classmethod
    def from_list(cls, values: list[int], field: str = FIELD_Q, closed_orientable: bool = False) -> "GradedBetti":
        """Build from [b_0, ..., b_dim]."""
        return cls(
            dim=len(values) - 1,
            ranks={p: b for p, b in enumerate(values)},
            field=field,
            closed_orientable=closed_orientable,
        )

    @property
    def characteristic(self) -> int:
        return field_characteristic(self.field)

    def b(self, degree: int) -> int:
        if degree < 0 or degree > self.dim:
            return 0
        return self.ranks.get(degree, 0)

    def as_list(self) -> list[int]:
        return [self.b(p) for p in range(self.dim + 1)]

    def is_poincare_dual(self) -> bool:
        return all(self.b(p) == self.b(self.dim - p) for p in range(self.dim + 1))

    def is_homology_sphere(self) -> bool:
        """b_0 = b_dim = 1 and nothing in between (over this profile's field)."""
        return self.b(0) == 1 and self.b(self.dim) == 1 and all(
            self.b(p) == 0 for p in range(1, self.dim)
        )

    def to_dict(self) -> dict:
        return {
            "dim": self.dim,
            "field": self.field,
            "ranks": {str(p): self.b(p) for p in range(self.dim + 1)},
            "closed_orientable": self.closed_orientable,
        }


# ============================================================================
# Verdicts
# ============================================================================

class VerdictStatus(str, Enum):
    OBSTRUCTED = "Obstructed"
    NOT_OBSTRUCTED = "NotObstructed"
    INCONCLUSIVE = "Inconclusive"


class TraceStep(BaseModel):
    """One derivation step; cite must be a key of the citation table."""

    model_config = ConfigDict(frozen=True)

    statement: str
    cite: str

    @field_validator("cite")
    @classmethod
    def _check_cite(cls, value: str) -> str:
        if value not in CITATIONS:
            raise ValueError(f"unknown citation key '{value}'")
        return value


class Verdict(BaseModel):
    """Tri-state outcome with the ordered derivation that produced it."""

    model_config = ConfigDict(frozen=True)

    status: VerdictStatus
    trace: tuple[TraceStep, ...] = Field(min_length=1)
    warnings: tuple[str, ...] = ()

    @property
    def citations(self) -> list[str]:
        """Citation keys in order of first use."""
        return list(dict.fromkeys(step.cite for step in self.trace))

    def to_dict(self) -> dict:
        return {
            "status": self.status.value,
            "trace": [{"statement": s.statement, "cite": s.cite} for s in self.trace],
            "warnings": list(self.warnings),
        }


class TraceBuilder:
    """
    Accumulates trace steps and warnings while a verdict is being derived.

    Usage:
        trace = TraceBuilder()
        trace.step("S != 0", "brieskorn-intersection-nonzero")
        return trace.verdict(VerdictStatus.OBSTRUCTED)
    """

    def __init__(self):
        self.steps: list[TraceStep] = []
        self.warnings: list[str] = []

    def step(self, statement: str, cite: str) -> "TraceBuilder":
        self.steps.append(TraceStep(statement=statement, cite=cite))
        return self

    def warn(self, message: str) -> "TraceBuilder":
        if message not in self.warnings:
            self.warnings.append(message)
        return self

    def verdict(self, status: VerdictStatus) -> Verdict:
        return Verdict(status=status, trace=tuple(self.steps), warnings=tuple(self.warnings))

