"""
Brieskorn links Sigma(a_0, ..., a_n).
Milnor number, Seifert and intersection forms, link homology from the Milnor
fiber sequence, and verdicts on subcritical embeddings and exotic spheres.
"""
from functools import reduce
from math import prod
from typing import Any
from pydantic import BaseModel, ConfigDict, field_validator
from fillcheck.config import settings
from fillcheck.errors import PreconditionError
from fillcheck.intlab import HomologyGroup, IntMatrix, determinant_abs, kronecker, smith_normal_form
from fillcheck.logger import setup_logger
from fillcheck.models import FIELD_Q, GradedBetti, TraceBuilder, Verdict, VerdictStatus, field_characteristic

logger = setup_logger(__name__)


# ============================================================================
# Value Types
# ============================================================================

class BrieskornLink(BaseModel):
    """
    The link of z_0^a_0 + ... + z_n^a_n = 0, a closed (2n-1)-manifold.
    Every exponent is at least 2 and there are at least two of them.
    """

    model_config = ConfigDict(frozen=True)

    exponents: tuple[int, ...]

    @field_validator("exponents")
    @classmethod
    def _check_exponents(cls, value: tuple[int, ...]) -> tuple[int, ...]:
        if len(value) < 2:
            raise ValueError("a Brieskorn link needs at least 2 exponents")
        for a in value:
            if a < 2:
                raise ValueError(f"exponent {a} is smaller than 2")
        return value

    @property
    def n(self) -> int:
        return len(self.exponents) - 1

    @property
    def link_dimension(self) -> int:
        return 2 * self.n - 1

    @property
    def all_exponents_two(self) -> bool:
        return all(a == 2 for a in self.exponents)

    def label(self) -> str:
        return "Sigma(" + ",".join(str(a) for a in self.exponents) + ")"

    def to_dict(self) -> dict:
        return {"exponents": list(self.exponents), "n": self.n, "link_dimension": self.link_dimension}


class LinkHomologyProfile(BaseModel):
    """Integral middle homology of the link and its Betti profile over one field."""

    model_config = ConfigDict(frozen=True)

    n: int
    h_n: HomologyGroup
    h_n_minus_1: HomologyGroup
    betti: GradedBetti

    def to_dict(self) -> dict:
        return {
            "n": self.n,
            "h_n": self.h_n.to_dict(),
            "h_n_minus_1": self.h_n_minus_1.to_dict(),
            "betti": self.betti.to_dict(),
        }


# ============================================================================
# Milnor fiber data
# ============================================================================

def milnor_number(link: BrieskornLink) -> int:
    """mu = (a_0 - 1) ... (a_n - 1)."""
    return prod(a - 1 for a in link.exponents)


def seifert_block(a: int) -> IntMatrix:
    """(a-1) x (a-1) upper bidiagonal block with ones on the diagonal and superdiagonal."""
    if a < 2:
        raise PreconditionError(f"Seifert block needs an exponent >= 2, got {a}")
    size = a - 1
    return IntMatrix._trusted(
        size, size,
        [1 if j in (i, i + 1) else 0 for i in range(size) for j in range(size)],
    )


def seifert_matrix(link: BrieskornLink, max_mu: int | None = None) -> IntMatrix:
    """
    Kronecker product of the Seifert blocks in exponent order (a mu x mu matrix).

    Args:
        link: Brieskorn link
        max_mu: Milnor-number cap (defaults to settings.max_mu)

    Raises:
        PreconditionError: if mu exceeds the cap
    """
    cap = settings.max_mu if max_mu is None else max_mu
    mu = milnor_number(link)
    if mu > cap:
        raise PreconditionError(
            f"Milnor number {mu} of {link.label()} exceeds the cap {cap} (FILLCHECK_MAX_MU)"
        )
    return reduce(kronecker, (seifert_block(a) for a in link.exponents), IntMatrix.identity(1))


def intersection_form(seifert: IntMatrix, n: int) -> IntMatrix:
    """S = A + (-1)^n A^t: symmetric for n even, antisymmetric for n odd."""
    if not seifert.is_square:
        raise PreconditionError(
            f"intersection form needs a square Seifert matrix, got {seifert.rows}x{seifert.cols}"
        )
    sign = 1 if n % 2 == 0 else -1
    return seifert.add(seifert.transpose().scale(sign))


def link_intersection_form(link: BrieskornLink, max_mu: int | None = None) -> IntMatrix:
    return intersection_form(seifert_matrix(link, max_mu), link.n)


def _require_middle_sequence(link: BrieskornLink):
    if link.n < 2:
        raise PreconditionError(
            f"{link.label()} has n = {link.n}; the Milnor fiber sequence needs n >= 2"
        )


# ============================================================================
# Link homology
# ============================================================================

def link_homology(link: BrieskornLink, field: str = FIELD_Q) -> LinkHomologyProfile:
    """
    Homology of the link from ker/coker of the intersection form.

    H_n(Sigma) = ker S (free), H_{n-1}(Sigma) = coker S. The Betti profile uses
    (n-2)-connectivity, Poincare duality of the closed orientable link and
    universal coefficients (torsion of H_{n-1} shows up in degrees n-1 and n over F_p).

    Args:
        link: Brieskorn link with n >= 2
        field: Coefficient field tag ("Q" or "Fp:<p>")
    """
    _require_middle_sequence(link)
    characteristic = field_characteristic(field)

    decomposition = smith_normal_form(link_intersection_form(link))
    h_n = HomologyGroup(free_rank=decomposition.kernel_rank())
    h_n_minus_1 = decomposition.cokernel()

    n = link.n
    top = 2 * n - 1
    # H_{n-2} is 0 (n >= 3) or free (n = 2), so no Tor term lands in degree n-1
    ranks = {0: 1, top: 1}
    ranks[n - 1] = h_n_minus_1.rank_over(characteristic)
    ranks[n] = h_n.rank_over(characteristic) + h_n_minus_1.tor_rank(characteristic)

    logger.info(
        f"Computed link homology of {link.label()}",
        extra={"exponents": list(link.exponents), "field": field, "h_n_minus_1": h_n_minus_1.describe()}
    )
    return LinkHomologyProfile(
        n=n,
        h_n=h_n,
        h_n_minus_1=h_n_minus_1,
        betti=GradedBetti(dim=top, ranks=ranks, field=field, closed_orientable=True),
    )


def intersection_determinant(link: BrieskornLink) -> int:
    """|det S| (0 when S is singular)."""
    return determinant_abs(link_intersection_form(link))


def is_homology_sphere(link: BrieskornLink) -> bool:
    """True iff |det S| = 1, i.e. ker S and coker S both vanish."""
    _require_middle_sequence(link)
    return intersection_determinant(link) == 1


# ============================================================================
# Verdicts
# ============================================================================

def subcritical_embedding_verdict(link: BrieskornLink) -> Verdict:
    """
    Does the link embed in a subcritical Stein manifold?

    Obstructed when n >= 3 and S != 0. All-2 exponents with n odd give S = 0
    and stay Inconclusive; n < 3 is outside the hypotheses.
    """
    trace = TraceBuilder()
    n = link.n
    mu = milnor_number(link)
    trace.step(f"{link.label()} has n = {n} and Milnor number mu = {mu}", "milnor-number")

    if n < 3:
        trace.step(f"hypothesis n >= 3 unmet (n = {n}); no conclusion", "brieskorn-intersection-nonzero")
        return trace.verdict(VerdictStatus.INCONCLUSIVE)

    if mu <= settings.max_mu or mu < 2:
        form = link_intersection_form(link, max_mu=max(settings.max_mu, mu))
        nonzero = not form.is_zero()
        trace.step(
            f"intersection form S = A + (-1)^{n} A^t computed from the {mu}x{mu} Seifert matrix: "
            + ("S != 0" if nonzero else "S = 0"),
            "seifert-to-intersection",
        )
    else:
        # Above the cap S is not built; mu >= 2 forces S != 0
        nonzero = True
        trace.step(
            f"mu = {mu} exceeds the cap {settings.max_mu}; S != 0 because the tensor-product "
            "Seifert form is neither symmetric nor antisymmetric",
            "brieskorn-milnor-two",
        )

    if not nonzero:
        trace.step(
            f"all exponents equal 2 and n = {n} is odd, so S = A - A^t = 0 and the link is ST*S^{n}",
            "brieskorn-all-two-odd",
        )
        return trace.verdict(VerdictStatus.INCONCLUSIVE)

    if link.all_exponents_two:
        trace.step(f"all exponents equal 2 and n = {n} is even, so A is symmetric and S = 2A != 0", "brieskorn-all-two-even")
    elif mu >= 2:
        trace.step(f"mu = {mu} >= 2 and n = {n} >= 3", "brieskorn-milnor-two")
    trace.step(
        "S != 0, so H_n(Sigma) -> H_n(W) is not onto in the Milnor fiber sequence",
        "milnor-sequence",
    )
    trace.step(
        "the Milnor fiber is a Stein filling with H_2(W, Sigma) = 0, which would have to be onto in every degree",
        "subcritical-onto",
    )
    trace.step(
        f"{link.label()} has no contact embedding in a subcritical Stein manifold",
        "brieskorn-intersection-nonzero",
    )
    return trace.verdict(VerdictStatus.OBSTRUCTED)


def exotic_sphere_verdict(link: BrieskornLink) -> Verdict:
    """
    Is the contact structure inherited from the Milnor fiber exotic?

    Obstructed (exotic) when n >= 3 and the link is a homology sphere; links
    that are not spheres and n < 3 are Inconclusive. Sphere detection runs
    first whenever n >= 2 so the trace names the reason.
    """
    trace = TraceBuilder()
    n = link.n
    if n >= 2:
        if link.all_exponents_two:
            trace.step(f"all exponents equal 2: the link is ST*S^{n}; link is not a sphere", "brieskorn-not-sphere")
            return trace.verdict(VerdictStatus.INCONCLUSIVE)
        mu = milnor_number(link)
        if mu > settings.max_mu:
            trace.step(
                f"mu = {mu} exceeds the cap {settings.max_mu}; |det S| not computed, no conclusion",
                "milnor-number",
            )
            return trace.verdict(VerdictStatus.INCONCLUSIVE)
        determinant = intersection_determinant(link)
        trace.step(f"|det S| = {determinant}", "milnor-sequence")
        if determinant != 1:
            trace.step("ker S or coker S is nonzero; link is not a sphere", "milnor-sequence")
            return trace.verdict(VerdictStatus.INCONCLUSIVE)

    if n < 3:
        trace.step(f"hypothesis n >= 3 unmet (n = {n}); no conclusion", "brieskorn-exotic")
        return trace.verdict(VerdictStatus.INCONCLUSIVE)

    trace.step(
        f"H_{n}(Sigma) = H_{n - 1}(Sigma) = 0, so {link.label()} is a homology sphere; being "
        f"(n-2)-connected with n >= 3 it is simply connected, hence a homotopy sphere",
        "link-connectivity",
    )
    trace.step(
        f"mu = {milnor_number(link)} >= 2, so the link has no contact embedding in a subcritical Stein "
        "manifold, in particular none in R^2n",
        "brieskorn-milnor-two",
    )
    trace.step(
        "the standard contact sphere embeds in R^2n, so the Milnor fiber contact structure is exotic",
        "brieskorn-exotic",
    )
    trace.warn(
        "homotopy-sphere upgrade is derived from connectivity, not computed; "
        "the smooth structure of the link is not determined"
    )
    return trace.verdict(VerdictStatus.OBSTRUCTED)


# ============================================================================
# Reports and enumeration
# ============================================================================

def link_report(link: BrieskornLink, field: str = FIELD_Q) -> dict[str, Any]:
    """
    Everything the brieskorn command prints for one link.

    Returns:
        Dict with results (plain JSON data) and verdicts (Verdict objects)
    """
    mu = milnor_number(link)
    results: dict[str, Any] = {"link": link.to_dict(), "milnor_number": mu}
    if link.n >= 2:
        seifert = seifert_matrix(link)
        determinant = intersection_determinant(link)
        profile = link_homology(link, field)
        results.update({
            "seifert_shape": [seifert.rows, seifert.cols],
            "intersection_determinant_abs": str(determinant),
            "is_homology_sphere": determinant == 1,
            "is_rational_homology_sphere": determinant != 0,
            "homology": profile.to_dict(),
        })
    return {
        "results": results,
        "verdicts": {
            "subcritical_embedding": subcritical_embedding_verdict(link),
            "exotic_sphere": exotic_sphere_verdict(link),
        },
    }


def enumerate_links(n: int, mu_max: int) -> list[BrieskornLink]:
    """All exponent tuples (a_0, ..., a_n) with every a_i >= 2 and mu <= mu_max, lexicographic."""
    if n < 1:
        raise PreconditionError(f"n must be at least 1, got {n}")

    found: list[tuple[int, ...]] = []

    def extend(prefix: tuple[int, ...], budget: int):
        if len(prefix) == n + 1:
            found.append(prefix)
            return
        # a - 1 may use up the whole remaining budget; later factors are >= 1
        for a in range(2, budget + 2):
            extend(prefix + (a,), budget // (a - 1))

    extend((), mu_max)
    return [BrieskornLink(exponents=e) for e in found]
