"""
Gysin-sequence Betti numbers of unit cotangent bundles ST*L and of circle bundles
of negative line bundles over a symplectic base N, with the embedding verdicts
they feed.

The Euler-class, asphericity and c_1 flags are caller-supplied; they are
relative to the coefficient field of the input profile (Euler number 2
vanishes over F_2) and every verdict that consumes one records a warning.
"""
from pydantic import BaseModel, ConfigDict, Field, model_validator
from fillcheck.errors import PreconditionError
from fillcheck.fillings import duality_check
from fillcheck.logger import setup_logger
from fillcheck.models import GradedBetti, TraceBuilder, Verdict, VerdictStatus

logger = setup_logger(__name__)


# ============================================================================
# Value Types
# ============================================================================

class CircleBundleInput(BaseModel):
    """
    Base N^{2n-2} of a negative line bundle plus the rank of beta-cup : H^1(N) -> H^3(N).
    cup_rank None means "not supplied"; it is then taken as 0 and noted in the trace.
    """

    model_config = ConfigDict(frozen=True)

    base_betti: GradedBetti
    cup_rank: int | None = Field(default=None, ge=0)

    @model_validator(mode="after")
    def _check_input(self) -> "CircleBundleInput":
        if self.base_betti.dim < 2 or self.base_betti.dim % 2:
            raise ValueError(f"base must have even dimension 2n-2 >= 2, got {self.base_betti.dim}")
        if self.cup_rank is not None:
            bound = min(self.base_betti.b(1), self.base_betti.b(3))
            if self.cup_rank > bound:
                raise ValueError(f"cup_rank {self.cup_rank} exceeds min(b_1, b_3) = {bound}")
        return self

    @property
    def n(self) -> int:
        return self.base_betti.dim // 2 + 1

    @property
    def effective_cup_rank(self) -> int:
        return self.cup_rank or 0


# ============================================================================
# Helpers
# ============================================================================

def _require_closed_orientable(base: GradedBetti, what: str):
    if not base.closed_orientable:
        raise PreconditionError(f"{what} needs a closed orientable base profile (closed_orientable=true)")


def _apply_surgery(
    trace: TraceBuilder,
    status: VerdictStatus,
    k: int | None,
    allowed: bool,
    allowed_text: str,
    cite: str,
) -> VerdictStatus:
    """Carry a verdict through a contact surgery of index k, or downgrade it."""
    if k is None:
        return status
    if not allowed:
        trace.step(f"surgery index k = {k} is outside {allowed_text}; the obstruction does not carry over", cite)
        return VerdictStatus.INCONCLUSIVE
    if status == VerdictStatus.OBSTRUCTED:
        trace.step(f"surgery of index k = {k} in {allowed_text} preserves the obstruction", cite)
    else:
        trace.step(f"surgery of index k = {k} in {allowed_text}; nothing to carry over", cite)
    return status


def _disc_bundle_profile(base: GradedBetti, n: int) -> GradedBetti:
    """Betti numbers of a disc bundle of rank 2n - dim(base) over the base (it retracts to the base)."""
    return GradedBetti(dim=2 * n, ranks=dict(base.ranks), field=base.field)


# ============================================================================
# Unit cotangent bundles
# ============================================================================

def sphere_bundle_betti(base: GradedBetti, euler_nonzero: bool) -> GradedBetti:
    """
    Betti numbers of ST*L^n, a (2n-1)-manifold, from the Gysin sequence.

    Args:
        base: Profile of L (dimension n >= 2)
        euler_nonzero: Whether the Euler class is nonzero over the profile's field

    Returns:
        b_p = b_p(L) + b_{p-n+1}(L); when e != 0, b_{n-1} = b_n = b_1(L)
    """
    n = base.dim
    if n < 2:
        raise PreconditionError(f"sphere bundle needs a base of dimension n >= 2, got {n}")
    if euler_nonzero:
        _require_closed_orientable(base, "nonzero Euler class")

    ranks = {p: base.b(p) + base.b(p - n + 1) for p in range(2 * n)}
    if euler_nonzero:
        ranks[n - 1] = ranks[n] = base.b(1)
    return GradedBetti(dim=2 * n - 1, ranks=ranks, field=base.field, closed_orientable=base.closed_orientable)


def lagrangian_filling_betti(base: GradedBetti) -> GradedBetti:
    """
    Betti numbers forced on an aspherical filling of ST*L with H_2(W, ST*L) = 0
    when L is a Lagrangian in R^2n: those of DT*L, i.e. of L.
    """
    n = base.dim
    if n < 3:
        raise PreconditionError(f"Lagrangian filling statement needs n >= 3, got {n}")
    return _disc_bundle_profile(base, n)


def cotangent_r2n_verdict(base: GradedBetti, euler_nonzero: bool, surgery_index: int | None = None) -> Verdict:
    """Does ST*L embed in R^2n? Obstructed for orientable L with e != 0 and n >= 3."""
    _require_closed_orientable(base, "unit cotangent verdict")
    n = base.dim
    trace = TraceBuilder()
    if euler_nonzero:
        trace.warn(f"Euler class of L assumed nonzero over {base.field} (caller flag)")

    if n < 3:
        trace.step(f"hypothesis n >= 3 unmet (n = {n}); no conclusion", "cotangent-r2n")
        return trace.verdict(VerdictStatus.INCONCLUSIVE)

    sigma = sphere_bundle_betti(base, euler_nonzero)
    w = _disc_bundle_profile(base, n)
    report = duality_check(sigma, w)

    if not euler_nonzero:
        trace.step(
            f"Euler class vanishes: b(ST*L) = {sigma.as_list()}",
            "sphere-bundle-euler-zero",
        )
        trace.step("DT*L fills ST*L, so every filling has the Betti numbers of L", "filling-same-betti")
        trace.step(
            "the identity b_p(ST*L) = b_p(L) + b_{2n-p-1}(L) is the Poincare duality formula for L "
            + ("and holds" if report.holds else f"and fails in degrees {report.violated_degrees}"),
            "sphere-bundle-poincare",
        )
        trace.step("hypothesis e != 0 unmet; no obstruction", "cotangent-r2n")
        status = _apply_surgery(trace, VerdictStatus.INCONCLUSIVE, surgery_index,
                                surgery_index is not None and 3 <= surgery_index <= n - 3,
                                f"[3, {n - 3}]", "cotangent-r2n-surgery")
        return trace.verdict(status)

    b1 = base.b(1)
    trace.step(
        f"Euler class nonzero: b_{n - 1}(ST*L) = b_{n}(ST*L) = b_1(L) = {b1}",
        "sphere-bundle-euler-nonzero",
    )
    trace.step("DT*L fills ST*L, so every filling has the Betti numbers of L", "filling-same-betti")
    trace.step(
        f"b_{n - 1}(ST*L) = b_{n}(L) + b_{n - 1}(L) would give {b1} = {base.b(n)} + {base.b(n - 1)}; "
        f"the identity fails in degrees {report.violated_degrees}",
        "filling-duality",
    )
    trace.step(f"this forces b_{n}(L) = 0, but b_{n}(L) = b_0(L) = {base.b(n)} for closed orientable L", "cotangent-impossible")
    trace.step("ST*L has no contact embedding in R^2n", "cotangent-r2n")
    status = _apply_surgery(trace, VerdictStatus.OBSTRUCTED, surgery_index,
                            surgery_index is not None and 3 <= surgery_index <= n - 3,
                            f"[3, {n - 3}]", "cotangent-r2n-surgery")
    return trace.verdict(status)


def cotangent_subcritical_verdict(base: GradedBetti, euler_nonzero: bool, surgery_index: int | None = None) -> Verdict:
    """
    Does ST*L embed in a subcritical Stein manifold?

    Raises:
        PreconditionError: base not closed orientable, or n < 3
    """
    _require_closed_orientable(base, "unit cotangent verdict")
    n = base.dim
    if n < 3:
        raise PreconditionError(f"subcritical cotangent verdict needs n >= 3, got {n}")

    trace = TraceBuilder()
    if not euler_nonzero:
        trace.step("hypothesis e != 0 unmet; no obstruction", "cotangent-subcritical")
        status = _apply_surgery(trace, VerdictStatus.INCONCLUSIVE, surgery_index,
                                3 <= (surgery_index or 0) <= n - 1, f"[3, {n - 1}]",
                                "cotangent-subcritical-surgery")
        return trace.verdict(status)

    trace.warn(f"Euler class of L assumed nonzero over {base.field} (caller flag)")
    trace.step(
        f"Gysin sequence with e != 0: H_{n}(ST*L) -> H_{n}(L) vanishes",
        "cotangent-gysin-vanishing",
    )
    trace.step(
        f"DT*L fills ST*L and retracts to L, with H_{n}(DT*L) = H_{n}(L) of rank {base.b(n)} != 0",
        "filling-same-betti",
    )
    trace.step(
        f"inside a subcritical Stein manifold H_{n}(ST*L) -> H_{n}(DT*L) would have to be onto",
        "subcritical-onto",
    )
    trace.step("ST*L has no contact embedding in a subcritical Stein manifold", "cotangent-subcritical")
    status = _apply_surgery(trace, VerdictStatus.OBSTRUCTED, surgery_index,
                            3 <= (surgery_index or 0) <= n - 1, f"[3, {n - 1}]",
                            "cotangent-subcritical-surgery")
    return trace.verdict(status)


# ============================================================================
# Circle bundles of negative line bundles
# ============================================================================

def circle_bundle_b2(data: CircleBundleInput) -> int:
    """b_2(Sigma) = (b_2(N) - 1) + (b_1(N) - cup_rank)."""
    b2 = data.base_betti.b(2)
    if b2 == 0:
        raise PreconditionError("b_2(N) = 0, but the class of a negative line bundle is nonzero in H^2(N)")
    return (b2 - 1) + (data.base_betti.b(1) - data.effective_cup_rank)


def circle_bundle_r2n_verdict(
    data: CircleBundleInput,
    aspherical: bool = True,
    surgery_index: int | None = None,
) -> Verdict:
    """
    Does the circle bundle Sigma^{2n-1} of a negative line bundle over N^{2n-2} embed in R^2n?

    Args:
        data: Base profile and cup rank
        aspherical: Caller flag that N is symplectically aspherical (ignored for N = S^2, never aspherical)
        surgery_index: Optional index of a contact surgery applied to Sigma
    """
    base = data.base_betti
    _require_closed_orientable(base, "circle bundle verdict")
    n = data.n
    b2_sigma = circle_bundle_b2(data)

    trace = TraceBuilder()
    if base.dim == 2 and base.b(1) == 0:
        # A closed orientable surface with b_1 = 0 is S^2 = CP^1
        aspherical = False
        trace.warn("base is S^2 = CP^1, which is not symplectically aspherical; flag overridden")
    else:
        trace.warn(
            "base assumed symplectically aspherical (caller flag)" if aspherical
            else "base flagged as not symplectically aspherical"
        )
    if data.cup_rank is None:
        trace.warn("cup_rank not supplied; taken as 0")

    trace.step(
        f"H^2(Sigma) = H^2(N)/<beta> + ker(beta-cup on H^1(N)): b_2(Sigma) = "
        f"({base.b(2)} - 1) + ({base.b(1)} - {data.effective_cup_rank}) = {b2_sigma}",
        "circle-gysin-degree-two",
    )
    rhs = base.b(2) + base.b(2 * n - 3)
    trace.step(
        f"b_2(Sigma) = {b2_sigma} < b_2(N) + b_{2 * n - 3}(N) = b_2(W) + b_{2 * n - 3}(W) = {rhs} "
        "for the disc bundle W",
        "circle-inequality",
    )
    trace.step("the filling identity fails in degree 2", "filling-duality")

    if not aspherical:
        trace.step(
            "the argument needs a symplectically aspherical base; no conclusion",
            "circle-asphericity-necessary",
        )
        return trace.verdict(VerdictStatus.INCONCLUSIVE)

    trace.step("Sigma has no contact embedding in R^2n", "circle-r2n")
    status = _apply_surgery(trace, VerdictStatus.OBSTRUCTED, surgery_index,
                            n >= 3 and 3 <= (surgery_index or 0) <= n, f"[3, {n}]",
                            "circle-r2n-surgery")
    return trace.verdict(status)


def circle_bundle_subcritical_verdict(
    base: GradedBetti,
    c1_zero: bool,
    surgery_index: int | None = None,
) -> Verdict:
    """Can the circle bundle over N bound a subcritical Stein manifold with c_1 = 0? Never raises."""
    trace = TraceBuilder()
    if base.dim % 2 or base.dim < 2 or base.b(0) != 1:
        trace.step(
            f"hypotheses unmet: need a connected base of even dimension 2n-2 with n >= 2 "
            f"(dim {base.dim}, b_0 = {base.b(0)}); no conclusion",
            "circle-subcritical",
        )
        return trace.verdict(VerdictStatus.INCONCLUSIVE)

    n = base.dim // 2 + 1
    if not c1_zero:
        trace.step("hypothesis c_1 = 0 unmet; no conclusion", "circle-subcritical")
        return trace.verdict(VerdictStatus.INCONCLUSIVE)

    trace.warn("first Chern class of the filling assumed zero (caller flag)")
    trace.step(
        f"SH^+_*(Sigma) = H_(*+{n - 1})(W, Sigma) = H_(*+{n - 3})(N) for the disc bundle W",
        "circle-subcritical-sh",
    )
    trace.step(
        f"at * = {3 - n} this is H_0(N) of rank {base.b(0)} != 0, while a subcritical filling "
        "forces vanishing for * <= 1",
        "circle-subcritical-vanishing",
    )
    trace.step("Sigma does not bound a subcritical Stein manifold with c_1 = 0", "circle-subcritical")
    allowed = surgery_index is not None and 0 <= surgery_index <= n - 1 and surgery_index not in (2, 3)
    status = _apply_surgery(trace, VerdictStatus.OBSTRUCTED, surgery_index, allowed,
                            f"subcritical indices [0, {n - 1}] other than 2 and 3",
                            "circle-subcritical-surgery")
    logger.debug("Circle bundle subcritical verdict", extra={"n": n, "status": status.value})
    return trace.verdict(status)
