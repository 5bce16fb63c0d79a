"""
Tests for Gysin-sequence computations on sphere and circle bundles.
"""
import pytest
from hypothesis import given, settings as hypothesis_settings
from hypothesis import strategies as st
from pydantic import ValidationError
from fillcheck.bundles import (
    CircleBundleInput,
    circle_bundle_b2,
    circle_bundle_r2n_verdict,
    circle_bundle_subcritical_verdict,
    cotangent_r2n_verdict,
    cotangent_subcritical_verdict,
    lagrangian_filling_betti,
    sphere_bundle_betti,
)
from fillcheck.errors import PreconditionError
from fillcheck.fillings import duality_check
from fillcheck.models import GradedBetti, VerdictStatus


def closed(*ranks: int, field: str = "Q") -> GradedBetti:
    return GradedBetti.from_list(list(ranks), field=field, closed_orientable=True)


S2 = closed(1, 0, 1)
S3 = closed(1, 0, 0, 1)
S4 = closed(1, 0, 0, 0, 1)
T2 = closed(1, 2, 1)
T3 = closed(1, 3, 3, 1)
CP2 = closed(1, 0, 1, 0, 1)


@st.composite
def betti_lists(draw, min_dim: int = 2, max_dim: int = 7, dual: bool = False):
    """Random Betti lists with b_0 = 1; Poincare-dual when asked."""
    dim = draw(st.integers(min_value=min_dim, max_value=max_dim))
    ranks = draw(st.lists(st.integers(min_value=0, max_value=4), min_size=dim + 1, max_size=dim + 1))
    ranks[0] = 1
    if dual:
        for p in range(dim // 2 + 1):
            ranks[dim - p] = ranks[p]
    return ranks


class TestSphereBundleBetti:
    """Test sphere_bundle_betti"""

    def test_s2_euler_nonzero(self):
        """ST*S^2 = RP^3 over Q"""
        assert sphere_bundle_betti(S2, euler_nonzero=True).as_list() == [1, 0, 0, 1]

    def test_s3_euler_zero(self):
        """ST*S^3 = S^2 x S^3"""
        assert sphere_bundle_betti(S3, euler_nonzero=False).as_list() == [1, 0, 1, 1, 0, 1]

    def test_torus(self):
        """ST*T^2 = T^3"""
        result = sphere_bundle_betti(T2, euler_nonzero=False)
        assert result.as_list() == [1, 3, 3, 1]
        assert result.closed_orientable

    def test_rejects_low_dimension(self):
        """Base dimension n >= 2"""
        with pytest.raises(PreconditionError):
            sphere_bundle_betti(closed(1, 1), euler_nonzero=False)

    def test_nonzero_euler_needs_closed_orientable(self):
        """e != 0 uses Poincare duality of the base"""
        with pytest.raises(PreconditionError):
            sphere_bundle_betti(GradedBetti.from_list([1, 0, 1]), euler_nonzero=True)

    def test_non_dual_closed_base_rejected(self):
        """A closed_orientable profile must be Poincare dual"""
        with pytest.raises(ValidationError):
            closed(1, 2, 0)

    @hypothesis_settings(max_examples=200, deadline=None)
    @given(betti_lists(dual=True))
    def test_euler_zero_preserves_duality(self, ranks):
        """Dual base gives a dual total space"""
        result = sphere_bundle_betti(closed(*ranks), euler_nonzero=False)
        assert result.is_poincare_dual()

    @hypothesis_settings(max_examples=100, deadline=None)
    @given(betti_lists())
    def test_euler_zero_identity_iff_dual(self, ranks):
        """e = 0: the filling identity against DT*L holds iff the base is Poincare dual"""
        base = GradedBetti.from_list(ranks)
        n = base.dim
        sigma = sphere_bundle_betti(base, euler_nonzero=False)
        w = GradedBetti(dim=2 * n, ranks=dict(base.ranks))
        assert duality_check(sigma, w).holds == base.is_poincare_dual()

    @hypothesis_settings(max_examples=100, deadline=None)
    @given(betti_lists(dual=True))
    def test_euler_nonzero_identity_iff_top_vanishes(self, ranks):
        """e != 0: the identity holds iff b_n(L) = 0, so never for closed orientable L"""
        base = closed(*ranks)
        n = base.dim
        sigma = sphere_bundle_betti(base, euler_nonzero=True)
        w = GradedBetti(dim=2 * n, ranks=dict(base.ranks))
        assert duality_check(sigma, w).holds == (base.b(n) == 0)
        assert not duality_check(sigma, w).holds


class TestCotangentVerdicts:
    """Test cotangent_r2n_verdict and cotangent_subcritical_verdict"""

    def test_r2n_s4(self):
        """ST*S^4 does not embed in R^8"""
        verdict = cotangent_r2n_verdict(S4, euler_nonzero=True)
        assert verdict.status == VerdictStatus.OBSTRUCTED
        assert verdict.citations[-1] == "cotangent-r2n"
        assert "cotangent-impossible" in verdict.citations
        assert verdict.warnings

    def test_r2n_t3_euler_zero(self):
        """e = 0: the identity is Poincare duality, no conclusion"""
        verdict = cotangent_r2n_verdict(T3, euler_nonzero=False)
        assert verdict.status == VerdictStatus.INCONCLUSIVE
        assert "sphere-bundle-poincare" in verdict.citations
        assert any("holds" in step.statement for step in verdict.trace)

    def test_r2n_small_n(self):
        """n = 2 is gated"""
        assert cotangent_r2n_verdict(S2, euler_nonzero=True).status == VerdictStatus.INCONCLUSIVE

    def test_r2n_needs_closed_orientable(self):
        """Non-orientable bases are not handled"""
        with pytest.raises(PreconditionError):
            cotangent_r2n_verdict(GradedBetti.from_list([1, 0, 0, 0, 1]), euler_nonzero=True)

    @pytest.mark.parametrize("k,status", [(3, VerdictStatus.OBSTRUCTED), (2, VerdictStatus.INCONCLUSIVE), (4, VerdictStatus.INCONCLUSIVE)])
    def test_r2n_surgery(self, k, status):
        """Surgery of index 3 <= k <= n - 3 keeps the obstruction (n = 6)"""
        base = closed(1, 0, 0, 0, 0, 0, 1)
        verdict = cotangent_r2n_verdict(base, euler_nonzero=True, surgery_index=k)
        assert verdict.status == status
        assert "cotangent-r2n-surgery" in verdict.citations

    def test_subcritical_s4(self):
        """ST*S^4 does not embed in a subcritical Stein manifold"""
        verdict = cotangent_subcritical_verdict(S4, euler_nonzero=True)
        assert verdict.status == VerdictStatus.OBSTRUCTED
        assert "cotangent-gysin-vanishing" in verdict.citations
        assert "subcritical-onto" in verdict.citations

    def test_subcritical_s3_euler_zero(self):
        """e = 0 is Inconclusive"""
        assert cotangent_subcritical_verdict(S3, euler_nonzero=False).status == VerdictStatus.INCONCLUSIVE

    def test_subcritical_cp2(self):
        """Any orientable L with e != 0"""
        assert cotangent_subcritical_verdict(CP2, euler_nonzero=True).status == VerdictStatus.OBSTRUCTED

    def test_subcritical_rejects_small_n(self):
        """n < 3 is a precondition error"""
        with pytest.raises(PreconditionError):
            cotangent_subcritical_verdict(S2, euler_nonzero=True)

    @pytest.mark.parametrize("k,status", [(3, VerdictStatus.OBSTRUCTED), (4, VerdictStatus.INCONCLUSIVE)])
    def test_subcritical_surgery(self, k, status):
        """Surgery index in [3, n - 1] (n = 4)"""
        verdict = cotangent_subcritical_verdict(S4, euler_nonzero=True, surgery_index=k)
        assert verdict.status == status


class TestLagrangianFilling:
    """Test lagrangian_filling_betti"""

    def test_carries_base_ranks(self):
        """W^{2n} has the Betti numbers of L"""
        result = lagrangian_filling_betti(T3)
        assert result.dim == 6
        assert result.as_list() == [1, 3, 3, 1, 0, 0, 0]

    def test_rejects_small_n(self):
        """n >= 3"""
        with pytest.raises(PreconditionError):
            lagrangian_filling_betti(T2)


class TestCircleBundleB2:
    """Test circle_bundle_b2 and its input type"""

    def test_torus(self):
        """N = T^2, cup 0 -> 2"""
        assert circle_bundle_b2(CircleBundleInput(base_betti=T2, cup_rank=0)) == 2

    def test_sphere(self):
        """N = S^2 -> lens space, b_2 = 0"""
        assert circle_bundle_b2(CircleBundleInput(base_betti=S2, cup_rank=0)) == 0

    def test_full_cup_rank(self):
        """cup_rank = b_1(N) leaves b_2(N) - 1"""
        base = closed(1, 2, 3, 2, 1)
        assert circle_bundle_b2(CircleBundleInput(base_betti=base, cup_rank=2)) == 2

    def test_rejects_b2_zero(self):
        """The negative line bundle needs b_2(N) >= 1"""
        base = GradedBetti.from_list([1, 1, 0])
        with pytest.raises(PreconditionError):
            circle_bundle_b2(CircleBundleInput(base_betti=base))

    def test_cup_rank_bound(self):
        """cup_rank <= min(b_1, b_3)"""
        with pytest.raises(ValidationError):
            CircleBundleInput(base_betti=T2, cup_rank=1)

    def test_base_dimension_must_be_even(self):
        """N has dimension 2n - 2"""
        with pytest.raises(ValidationError):
            CircleBundleInput(base_betti=S3)

    @hypothesis_settings(max_examples=200, deadline=None)
    @given(betti_lists(min_dim=2, max_dim=8, dual=True), st.integers(min_value=0, max_value=4))
    def test_strict_inequality(self, ranks, cup):
        """b_2(Sigma) < b_2(N) + b_1(N) for every legal input"""
        base = closed(*ranks)
        if base.dim % 2 or base.b(2) == 0:
            return
        cup = min(cup, base.b(1), base.b(3))
        b2 = circle_bundle_b2(CircleBundleInput(base_betti=base, cup_rank=cup))
        assert 0 <= b2 < base.b(2) + base.b(1)


class TestCircleBundleVerdicts:
    """Test circle_bundle_r2n_verdict and circle_bundle_subcritical_verdict"""

    def test_r2n_torus(self):
        """N = T^2: 2 < 3, Obstructed"""
        verdict = circle_bundle_r2n_verdict(CircleBundleInput(base_betti=T2, cup_rank=0))
        assert verdict.status == VerdictStatus.OBSTRUCTED
        assert "circle-inequality" in verdict.citations
        assert any("2 < " in step.statement and "= 3" in step.statement for step in verdict.trace)
        assert any("aspherical" in w for w in verdict.warnings)

    def test_r2n_sphere_not_aspherical(self):
        """N = S^2 is not aspherical: downgraded"""
        verdict = circle_bundle_r2n_verdict(CircleBundleInput(base_betti=S2, cup_rank=0), aspherical=False)
        assert verdict.status == VerdictStatus.INCONCLUSIVE
        assert verdict.citations[-1] == "circle-asphericity-necessary"
        assert any("0 < " in step.statement for step in verdict.trace)

    def test_r2n_sphere_default_flag(self):
        """N = S^2 is recognized from its Betti numbers even when the flag says aspherical"""
        verdict = circle_bundle_r2n_verdict(CircleBundleInput(base_betti=S2, cup_rank=0))
        assert verdict.status == VerdictStatus.INCONCLUSIVE
        assert verdict.citations[-1] == "circle-asphericity-necessary"
        assert any("S^2" in w for w in verdict.warnings)

    def test_r2n_default_cup_rank_noted(self):
        """Missing cup_rank is taken as 0 with a warning"""
        verdict = circle_bundle_r2n_verdict(CircleBundleInput(base_betti=T2))
        assert any("cup_rank" in w for w in verdict.warnings)

    @pytest.mark.parametrize("k,status", [(3, VerdictStatus.OBSTRUCTED), (4, VerdictStatus.INCONCLUSIVE)])
    def test_r2n_surgery(self, k, status):
        """Surgery index in [3, n] (N of dimension 4, n = 3)"""
        data = CircleBundleInput(base_betti=closed(1, 2, 3, 2, 1), cup_rank=0)
        assert circle_bundle_r2n_verdict(data, surgery_index=k).status == status

    def test_r2n_surgery_needs_n_three(self):
        """n = 2 admits no surgery index"""
        data = CircleBundleInput(base_betti=T2, cup_rank=0)
        assert circle_bundle_r2n_verdict(data, surgery_index=3).status == VerdictStatus.INCONCLUSIVE

    def test_subcritical_torus(self):
        """c_1 = 0: Obstructed with a flag warning"""
        verdict = circle_bundle_subcritical_verdict(T2, c1_zero=True)
        assert verdict.status == VerdictStatus.OBSTRUCTED
        assert "circle-subcritical-sh" in verdict.citations
        assert verdict.warnings

    def test_subcritical_c1_unknown(self):
        """c_1 != 0 is Inconclusive"""
        assert circle_bundle_subcritical_verdict(T2, c1_zero=False).status == VerdictStatus.INCONCLUSIVE

    def test_subcritical_disconnected_base(self):
        """b_0 != 1 is Inconclusive, never an error"""
        base = GradedBetti.from_list([2, 0, 2])
        assert circle_bundle_subcritical_verdict(base, c1_zero=True).status == VerdictStatus.INCONCLUSIVE

    @hypothesis_settings(max_examples=100, deadline=None)
    @given(betti_lists(min_dim=2, max_dim=8))
    def test_subcritical_any_connected_even_base(self, ranks):
        """b_0 = 1, c_1 = 0, even dimension: always Obstructed"""
        base = GradedBetti.from_list(ranks)
        verdict = circle_bundle_subcritical_verdict(base, c1_zero=True)
        expected = VerdictStatus.OBSTRUCTED if base.dim % 2 == 0 else VerdictStatus.INCONCLUSIVE
        assert verdict.status == expected

    @pytest.mark.parametrize("k,status", [(1, VerdictStatus.OBSTRUCTED), (2, VerdictStatus.INCONCLUSIVE), (3, VerdictStatus.INCONCLUSIVE), (4, VerdictStatus.OBSTRUCTED)])
    def test_subcritical_surgery(self, k, status):
        """Subcritical surgery of index other than 2 and 3 (n = 5)"""
        base = closed(1, 0, 1, 0, 1, 0, 1, 0, 1)
        assert circle_bundle_subcritical_verdict(base, c1_zero=True, surgery_index=k).status == status
