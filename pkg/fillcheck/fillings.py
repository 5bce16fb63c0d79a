"""
Betti-number constraints relating a contact boundary Sigma^{2n-1} to its fillings W^{2n}.
All profiles are over a field; torsion of fillings is never reconstructed.
"""
from pydantic import BaseModel, ConfigDict, Field, model_validator
from fillcheck.errors import PreconditionError
from fillcheck.logger import setup_logger
from fillcheck.models import GradedBetti

logger = setup_logger(__name__)


# ============================================================================
# Value Types
# ============================================================================

class DegreeViolation(BaseModel):
    """One degree where a Betti identity or bound fails: expected is the boundary side."""

    model_config = ConfigDict(frozen=True)

    degree: int
    expected: int
    actual: int

    def to_dict(self) -> dict:
        return {"degree": self.degree, "expected": self.expected, "actual": self.actual}


class CheckReport(BaseModel):
    model_config = ConfigDict(frozen=True)

    holds: bool
    violations: tuple[DegreeViolation, ...] = ()
    notes: tuple[str, ...] = ()
    citations: tuple[str, ...] = ()

    @property
    def violated_degrees(self) -> list[int]:
        return [v.degree for v in self.violations]

    def to_dict(self) -> dict:
        return {
            "holds": self.holds,
            "violations": [v.to_dict() for v in self.violations],
            "notes": list(self.notes),
        }


class PairSumConstraint(BaseModel):
    """b_{n-1}(W) + b_n(W) = total, with the split left open."""

    model_config = ConfigDict(frozen=True)

    degrees: tuple[int, int]
    total: int = Field(ge=0)

    def to_dict(self) -> dict:
        return {"degrees": list(self.degrees), "sum": self.total}


class FillingBettiSolution(BaseModel):
    """
    Betti numbers of a filling W^{2n} as far as the boundary forces them.
    Degrees missing from determined are the ones tied up in the constraint.
    """

    model_config = ConfigDict(frozen=True)

    dim: int
    field: str
    determined: dict[int, int]
    constrained: PairSumConstraint | None = None
    fully_determined: bool
    citations: tuple[str, ...] = ()

    @model_validator(mode="after")
    def _check_resolution(self) -> "FillingBettiSolution":
        if self.fully_determined != (self.constrained is None):
            raise ValueError("fully_determined must be true exactly when no constraint is left open")
        return self

    def to_profile(self) -> GradedBetti:
        if not self.fully_determined:
            raise PreconditionError(
                f"filling Betti numbers are undetermined in degrees {list(self.constrained.degrees)}"
            )
        return GradedBetti(dim=self.dim, ranks=dict(self.determined), field=self.field)

    def to_dict(self) -> dict:
        return {
            "dim": self.dim,
            "field": self.field,
            "ranks": {str(p): self.determined.get(p, "undetermined") for p in range(self.dim + 1)},
            "constrained": self.constrained.to_dict() if self.constrained else None,
            "fully_determined": self.fully_determined,
        }


class RankInterval(BaseModel):
    """All pairs (s, b2_w) with lo <= s <= hi."""

    model_config = ConfigDict(frozen=True)

    lo: int
    hi: int
    b2_w: int


class SurgeryOutcome(BaseModel):
    """Possible (b_2(Sigma+), b_2(W+)) after attaching one handle of index k."""

    model_config = ConfigDict(frozen=True)

    pairs: tuple[tuple[int, int], ...] = ()
    intervals: tuple[RankInterval, ...] = ()
    unchanged_degrees: tuple[int, ...] = ()
    citations: tuple[str, ...] = ()

    @model_validator(mode="after")
    def _check_nonempty(self) -> "SurgeryOutcome":
        if not self.pairs and not self.intervals:
            raise ValueError("a surgery outcome needs at least one possibility")
        return self

    def contains(self, b2_sigma: int, b2_w: int) -> bool:
        if (b2_sigma, b2_w) in self.pairs:
            return True
        return any(i.lo <= b2_sigma <= i.hi and i.b2_w == b2_w for i in self.intervals)

    def to_dict(self) -> dict:
        possibilities: list = [[s, w] for s, w in self.pairs]
        possibilities.extend({"interval": [i.lo, i.hi], "b2_w": i.b2_w} for i in self.intervals)
        return {"possibilities": possibilities, "unchanged_degrees": list(self.unchanged_degrees)}


# ============================================================================
# Helpers
# ============================================================================

def _boundary_half_dimension(sigma: GradedBetti, minimum: int = 1) -> int:
    """n for a boundary of dimension 2n-1."""
    if sigma.dim % 2 == 0:
        raise PreconditionError(f"boundary profile must have odd dimension 2n-1, got {sigma.dim}")
    n = (sigma.dim + 1) // 2
    if n < minimum:
        raise PreconditionError(f"needs n >= {minimum}, boundary of dimension {sigma.dim} has n = {n}")
    return n


def _filling_half_dimension(w: GradedBetti) -> int:
    if w.dim % 2 or w.dim == 0:
        raise PreconditionError(f"filling profile must have even dimension 2n >= 2, got {w.dim}")
    return w.dim // 2


def _require_pair(sigma: GradedBetti, w: GradedBetti) -> int:
    n = _filling_half_dimension(w)
    if sigma.dim != 2 * n - 1:
        raise PreconditionError(
            f"boundary dimension {sigma.dim} does not match filling dimension {w.dim} (need 2n-1 and 2n)"
        )
    if sigma.field != w.field:
        raise PreconditionError(f"field mismatch: boundary over {sigma.field}, filling over {w.field}")
    return n


# ============================================================================
# Operations
# ============================================================================

def duality_check(sigma: GradedBetti, w: GradedBetti, lax: bool = False) -> CheckReport:
    """
    Check b_p(Sigma) = b_p(W) + b_{2n-p-1}(W) for every p in [0, 2n-1].

    Args:
        sigma: Boundary profile of dimension 2n-1
        w: Filling profile of dimension 2n
        lax: Report-only mode; dimension and field mismatches become notes

    Returns:
        CheckReport listing every violated degree (expected = b_p(Sigma))
    """
    notes: list[str] = []
    if lax:
        n = max(w.dim // 2, (sigma.dim + 1) // 2, 1)
        if sigma.dim != 2 * n - 1 or w.dim != 2 * n:
            notes.append(f"dimensions {sigma.dim} and {w.dim} are not 2n-1 and 2n; compared with n = {n}")
        if sigma.field != w.field:
            notes.append(f"field mismatch: {sigma.field} vs {w.field}")
    else:
        n = _require_pair(sigma, w)

    violations = []
    for p in range(2 * n):
        expected = sigma.b(p)
        actual = w.b(p) + w.b(2 * n - p - 1)
        if expected != actual:
            violations.append(DegreeViolation(degree=p, expected=expected, actual=actual))

    return CheckReport(
        holds=not violations,
        violations=tuple(violations),
        notes=tuple(notes),
        citations=("filling-duality",),
    )


def surjectivity_check(sigma: GradedBetti, w: GradedBetti) -> CheckReport:
    """b_j(W) <= b_j(Sigma) in every degree, as forced by H_j(Sigma) -> H_j(W) being onto."""
    _require_pair(sigma, w)
    violations = [
        DegreeViolation(degree=j, expected=sigma.b(j), actual=w.b(j))
        for j in range(w.dim + 1)
        if w.b(j) > sigma.b(j)
    ]
    return CheckReport(
        holds=not violations,
        violations=tuple(violations),
        citations=("subcritical-onto",),
    )


def stein_filling_betti(sigma: GradedBetti, subcritical: bool) -> FillingBettiSolution:
    """
    Betti numbers of a Stein filling of a boundary that embeds in R^2n.

    Below the middle they equal those of Sigma; above n they vanish (W has the
    homotopy type of an n-complex). In degrees n-1 and n only the sum is known
    unless W is subcritical or b_n(Sigma) = 0.

    Raises:
        PreconditionError: n < 3, or b_{n-1}(Sigma) != b_n(Sigma)
    """
    n = _boundary_half_dimension(sigma, minimum=3)
    if sigma.b(n - 1) != sigma.b(n):
        raise PreconditionError(
            f"inconsistent boundary: b_{n - 1} = {sigma.b(n - 1)} but b_{n} = {sigma.b(n)}"
        )

    determined = {p: sigma.b(p) for p in range(n - 1)}
    determined.update({p: 0 for p in range(n + 1, 2 * n + 1)})
    citations = ["stein-low-degrees", "stein-cw-dimension", "stein-middle-degrees"]
    constrained = None

    if subcritical:
        determined[n - 1] = sigma.b(n - 1)
        determined[n] = 0
        citations.append("stein-determined")
    elif sigma.b(n) == 0:
        determined[n - 1] = 0
        determined[n] = 0
        citations.append("stein-determined")
    else:
        constrained = PairSumConstraint(degrees=(n - 1, n), total=sigma.b(n))
        citations.append("stein-undetermined")

    logger.debug(
        "Solved Stein filling Betti numbers",
        extra={"n": n, "subcritical": subcritical, "fully_determined": constrained is None}
    )
    return FillingBettiSolution(
        dim=2 * n,
        field=sigma.field,
        determined=dict(sorted(determined.items())),
        constrained=constrained,
        fully_determined=constrained is None,
        citations=tuple(citations),
    )


def homology_ball_filling(sigma: GradedBetti) -> FillingBettiSolution:
    """Every aspherical filling of a homology sphere in a subcritical Stein manifold is a homology ball."""
    n = _boundary_half_dimension(sigma)
    if not sigma.is_homology_sphere():
        raise PreconditionError(f"boundary {sigma.as_list()} is not a homology sphere over {sigma.field}")
    determined = {p: 0 for p in range(2 * n + 1)}
    determined[0] = 1
    return FillingBettiSolution(
        dim=2 * n,
        field=sigma.field,
        determined=determined,
        fully_determined=True,
        citations=("subcritical-onto", "homology-ball"),
    )


def hc_rank_from_sigma(sigma: GradedBetti, k: int) -> int:
    """
    Rank of cylindrical contact homology in degree k from the boundary alone:
    sum of b_p(Sigma) over 2n-2-k <= p <= n-1 with p = k mod 2.
    """
    n = _boundary_half_dimension(sigma, minimum=3)
    lo = max(0, 2 * n - 2 - k)
    return sum(sigma.b(p) for p in range(lo, n) if (p - k) % 2 == 0)


def hc_rank_from_filling(w: GradedBetti, k: int) -> int:
    """Sum over m >= 0 of b_{2n-2-k+2m}(W), truncated to degrees [0, 2n]."""
    n = _filling_half_dimension(w)
    start = 2 * n - 2 - k
    if start < 0:
        # first degree of matching parity inside [0, 2n]
        start = start % 2
    return sum(w.b(d) for d in range(start, 2 * n + 1, 2))


def hc_consistency(sigma: GradedBetti, w: GradedBetti) -> bool:
    """
    Compare both contact-homology routes for every k in [-2n, 4n].

    Raises:
        PreconditionError: if the pair fails the duality identity
    """
    report = duality_check(sigma, w)
    if not report.holds:
        raise PreconditionError(
            f"boundary and filling violate the duality identity in degrees {report.violated_degrees}"
        )
    n = w.dim // 2
    return all(
        hc_rank_from_sigma(sigma, k) == hc_rank_from_filling(w, k)
        for k in range(-2 * n, 4 * n + 1)
    )


def surgery_transform(b2_sigma: int, b2_w: int, k: int, n: int) -> SurgeryOutcome:
    """
    Propagate (b_2(Sigma), b_2(W)) through a contact surgery of index k.

    Args:
        b2_sigma: b_2 of the boundary before surgery
        b2_w: b_2 of the filling before surgery
        k: Handle index, 3 <= k <= n
        n: Half-dimension of the filling

    Returns:
        SurgeryOutcome; pairs with a negative rank are dropped
    """
    if b2_sigma < 0 or b2_w < 0:
        raise PreconditionError(f"ranks must be nonnegative, got b2_sigma={b2_sigma}, b2_w={b2_w}")
    if not 3 <= k <= n:
        raise PreconditionError(f"handle index k = {k} outside [3, n] with n = {n}")

    unchanged = tuple(j for j in range(2 * n + 1) if j not in (k - 1, k))
    lowered = (b2_sigma - 1, b2_w - 1)
    lowered_pairs = (lowered,) if min(lowered) >= 0 else ()

    if k >= 4:
        return SurgeryOutcome(
            pairs=((b2_sigma, b2_w),),
            unchanged_degrees=unchanged,
            citations=("surgery-high-index",),
        )
    if k < n:
        return SurgeryOutcome(
            pairs=lowered_pairs,
            intervals=(RankInterval(lo=0, hi=b2_sigma, b2_w=b2_w),),
            unchanged_degrees=unchanged,
            citations=("surgery-index-three",),
        )
    return SurgeryOutcome(
        pairs=((b2_sigma, b2_w),) + lowered_pairs,
        unchanged_degrees=unchanged,
        citations=("surgery-index-three-middle",),
    )


def mv_bound(b_sigma1: GradedBetti, b_sigma2: GradedBetti, b_complement: GradedBetti) -> dict[int, int]:
    """
    Upper bound on b_j(W_1) for Sigma_1 inside the filling of Sigma_2:
    b_j(Sigma_1) + min(0, b_j(Sigma_2) - b_j(complement)), floored at 0.
    """
    n = _require_pair(b_sigma1, b_complement)
    if b_sigma2.dim != b_sigma1.dim or b_sigma2.field != b_sigma1.field:
        raise PreconditionError(
            f"Sigma_2 profile (dim {b_sigma2.dim}, {b_sigma2.field}) does not match "
            f"Sigma_1 (dim {b_sigma1.dim}, {b_sigma1.field})"
        )
    return {
        j: max(0, b_sigma1.b(j) + min(0, b_sigma2.b(j) - b_complement.b(j)))
        for j in range(2 * n + 1)
    }
