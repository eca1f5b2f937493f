import math

import mpmath as mp
import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from intrinsic_metrics.domains import half_space, unit_ball, unit_square
from intrinsic_metrics.errors import DomainError
from intrinsic_metrics.inequality_lab import (
    C,
    DEFAULT_GRID,
    E_t,
    E_t_at_c0,
    GridSpec,
    C_hat,
    C_tilde,
    LU_factors,
    W_j,
    E_t_minimiser,
    check_positivity_chain,
    check_Fc_double_bound,
    check_Fc_over_t_monotone,
    check_h_sandwich,
    check_j_rho,
    check_l_u_sandwich,
    check_limit_L,
    check_LU_bounds,
    check_metric_axioms,
    check_refined_upper,
    check_shifted_bounds,
    check_F1_bounds,
    crossing_point,
    eval_proof_functions,
    find_triangle_violation,
    g_prime,
    h_c,
    l_bound,
    shifted_bounds_c0,
    limit_L,
    refined_upper,
    shifted_lower,
    shifted_upper,
    t1,
    t2,
    u_bound,
    u_branches,
)
from intrinsic_metrics.metrics import F_c

mp.mp.dps = 40
SMALL_GRID = GridSpec(t_samples=2000)


def g_oracle(c, t):
    c, t = mp.mpf(c), mp.mpf(t)
    w = 1 + 2 * c * mp.sinh(t / 2)
    return c * t * mp.cosh(t / 2) / w - mp.log(w)


def F_oracle(c, t):
    return mp.log(1 + 2 * mp.mpf(c) * mp.sinh(mp.mpf(t) / 2))


class TestGrid:
    def test_defaults(self):
        t = DEFAULT_GRID.t_nodes()
        assert len(t) == 10_000 and t[0] == 1e-6 and t[-1] == pytest.approx(100.0)

    @pytest.mark.parametrize("kw", [dict(t_range=(0.0, 1.0)), dict(t_range=(1.0, 800.0)),
                                    dict(t_samples=1), dict(spacing="cubic"), dict(c_values=(0.0,))])
    def test_invalid(self, kw):
        with pytest.raises(DomainError):
            GridSpec(**kw)

    def test_linear(self):
        t = GridSpec(t_range=(1.0, 2.0), t_samples=3, spacing="linear").t_nodes()
        assert list(t) == [1.0, 1.5, 2.0]


class TestProofFunctions:
    @pytest.mark.parametrize("c", [0.25, 0.5, 0.9, 1.0, 2.0])
    @pytest.mark.parametrize("t", [0.01, 1.0, 5.0, 30.0])
    def test_g_oracle(self, c, t):
        assert eval_proof_functions(c, t)[1] == pytest.approx(float(g_oracle(c, t)), rel=1e-11, abs=1e-14)

    @pytest.mark.parametrize("c", [0.5, 1.0, 2.0])
    @pytest.mark.parametrize("t", [0.5, 3.0, 10.0])
    def test_g_prime_oracle(self, c, t):
        expected = mp.diff(lambda s: g_oracle(c, s), mp.mpf(t))
        assert g_prime(c, t) == pytest.approx(float(expected), rel=1e-10, abs=1e-15)

    @pytest.mark.parametrize("c", [0.3, 0.5, 1.0, 3.0])
    def test_t1_is_zero_of_g_prime(self, c):
        root = mp.findroot(lambda s: mp.diff(lambda u: g_oracle(c, u), s), mp.mpf(t1(c)))
        assert t1(c) == pytest.approx(float(root), rel=1e-12)

    @pytest.mark.parametrize("c", [0.5, 0.9])
    def test_t2_is_zero_of_g(self, c):
        root = mp.findroot(lambda s: g_oracle(c, s), mp.mpf(t2(c)))
        assert t2(c) == pytest.approx(float(root), rel=1e-12)
        assert t2(c) > t1(c)

    def test_t2_only_below_one(self):
        with pytest.raises(DomainError):
            t2(1.0)

    @pytest.mark.parametrize("c", [0.5, 1.0, 2.0])
    def test_limit(self, c):
        # g(t) - L(c) decays like t e^{-t/2}
        assert abs(float(g_oracle(c, 80)) - limit_L(c)) <= 1e-15
        assert abs(g_oracle(c, 200) - (mp.log(2) - mp.log(2 * c))) <= mp.mpf("1e-38")

    def test_g_negative_for_c_ge_1(self):
        # beyond t ~ 30 the value for c = 1 sinks below double-precision resolution
        t = np.geomspace(1e-3, 30, 500)
        for c in (1.0, 2.0, 10.0):
            assert np.all(eval_proof_functions(c, t)[1] < 0)

    def test_domain(self):
        with pytest.raises(DomainError):
            eval_proof_functions(1.0, 0.0)
        with pytest.raises(DomainError):
            eval_proof_functions(0.0, 1.0)


class TestGridClaims:
    def test_double_bound(self):
        assert check_Fc_double_bound(SMALL_GRID).passed

    def test_double_bound_needs_half(self):
        with pytest.raises(DomainError):
            check_Fc_double_bound(SMALL_GRID.with_(c_values=(0.25,)))

    @pytest.mark.parametrize("c", [1.0, 2.0, 10.0])
    def test_monotone(self, c):
        rep = check_Fc_over_t_monotone(c, SMALL_GRID)
        assert rep.passed and not rep.claim_id.endswith(":exists")

    @pytest.mark.parametrize("c", [0.5, 0.9])
    def test_monotone_witness(self, c):
        rep = check_Fc_over_t_monotone(c, SMALL_GRID)
        assert rep.passed and rep.claim_id.endswith(":exists")
        lo, hi = rep.witness["ratio"]
        assert hi > lo
        assert rep.witness["t"][1] > rep.witness["t2"]

    @pytest.mark.parametrize("c", [0.5, 1.0, 2.0])
    def test_limit_check(self, c):
        rep = check_limit_L(c)
        assert rep.passed and rep.details["final_error"] <= 1e-8

    def test_refined_upper(self):
        assert check_refined_upper(SMALL_GRID).passed

    def test_refined_upper_equivalent_forms(self):
        t = np.geomspace(1e-3, 50, 100)
        assert np.allclose(refined_upper(2.0, t), (t ** 2 + 5 * t) / (2 * (t + 1)), rtol=1e-14)

    def test_positivity_chain(self):
        assert check_positivity_chain(t_samples=2000).passed

    @pytest.mark.parametrize("t", [1e-3, 0.1, 1.0, 10.0, 50.0])
    def test_c0_minimises_E_oracle(self, t):
        def E(c):
            c, t_ = mp.mpf(c), mp.mpf(t)
            return mp.exp(t_ / 2 + c * t_ / (t_ + 1)) - 1 - 2 * c * mp.sinh(t_ / 2)
        c0 = mp.findroot(lambda c: mp.diff(E, c), mp.mpf(float(E_t_minimiser(t))))
        assert float(E_t_minimiser(t)) == pytest.approx(float(c0), rel=1e-9)
        assert float(E_t_at_c0(t)) == pytest.approx(float(E(c0)), rel=1e-9, abs=1e-300)
        assert float(E_t(float(c0), t)) > 0

    @given(st.floats(min_value=1e-3, max_value=50.0))
    def test_C_chain_positive(self, t):
        assert C(t) > 0 and C_tilde(t) > 0 and C_hat(t) > 0

    def test_shifted(self):
        assert check_shifted_bounds(SMALL_GRID).passed

    @pytest.mark.parametrize("c", [0.75, 1.0, 2.0, 5.0])
    def test_shifted_equality(self, c):
        ts = 2 * math.log(2 * c)
        expected = F_oracle(c, ts)
        assert float(shifted_upper(c, ts)) == pytest.approx(float(expected), abs=1e-14)

    @pytest.mark.parametrize("c", [1.0, 2.0, 10.0])
    def test_shifted_lower_at_zero(self, c):
        assert float(shifted_lower(c, 0.0)) == 0.0 == float(F_c(c, 0.0))

    def test_shifted_bounds_c0_below_one(self):
        assert np.all(shifted_bounds_c0(np.geomspace(1e-6, 100, 1000)) < 1)

    def test_sandwich(self):
        assert check_l_u_sandwich(SMALL_GRID.with_(c_values=(0.5, 0.75, 2.0))).passed

    @pytest.mark.parametrize("c", [0.75, 2.0, 5.0])
    def test_u_attained_at_star(self, c):
        ts = 2 * math.log(2 * c)
        first, second = u_branches(c, ts)
        assert float(first) < float(second)
        assert abs(float(u_bound(c, ts)) - float(F_c(c, ts))) <= 1e-12

    def test_l_branches(self):
        t = np.array([0.5, 2.0])
        assert np.array_equal(l_bound(0.5, t), 0.25 * t)
        assert np.array_equal(l_bound(2.0, t), shifted_lower(2.0, t))


class TestSampled:
    N = 20_000

    @pytest.mark.parametrize("dom", [unit_ball(2), half_space(2), unit_square()])
    def test_F1_bounds(self, dom):
        assert check_F1_bounds(dom, self.N, 1).passed

    def test_crossing(self):
        ts = crossing_point()
        assert abs(ts - (ts / 2 + math.log(1.25))) <= 1e-14

    @pytest.mark.parametrize("dom", [unit_ball(2), half_space(2), unit_square()])
    def test_LU(self, dom):
        assert check_LU_bounds(dom, 2.0, self.N, 2).passed

    def test_LU_needs_c_ge_1(self):
        with pytest.raises(DomainError):
            check_LU_bounds(unit_ball(2), 0.5, 10, 0)

    @given(st.floats(min_value=1.0, max_value=20.0), st.floats(min_value=1e-9, max_value=300.0))
    @settings(max_examples=300)
    def test_LU_factors_pointwise(self, c, j):
        lo, up = LU_factors(c, j)
        w = F_c(c, j)
        assert lo * j <= w + 1e-12 * max(1.0, w)
        assert w <= up * j + 1e-12 * max(1.0, w)

    @pytest.mark.parametrize("dom", [unit_ball(2), unit_ball(3), half_space(2)])
    def test_j_rho(self, dom):
        assert check_j_rho(dom, self.N, 3).passed

    @pytest.mark.parametrize("dom", [unit_ball(2), half_space(2), unit_square()])
    @pytest.mark.parametrize("c", [0.5, 1.0, 2.0, 3.0])
    def test_h_sandwich(self, dom, c):
        rep = check_h_sandwich(dom, c, self.N, 4)
        assert rep.passed
        assert rep.details["upper_checked"] == (c >= 1.0)

    def test_h_sandwich_upper_fails_below_one(self):
        # log(1 + cX) > c log(1 + X) for c < 1
        rep = check_h_sandwich(unit_ball(2), 0.7, self.N, 4, upper=True)
        assert not rep.passed
        assert rep.witness is not None

    @pytest.mark.parametrize("c", [1.0, 2.0])
    def test_W_axioms(self, c):
        dom = unit_ball(2)
        assert check_metric_axioms(W_j(dom, c), dom, self.N, 5, "W").passed

    def test_h_axioms(self):
        dom = unit_square()
        assert check_metric_axioms(h_c(dom, 2.0), dom, self.N, 6, "h").passed

    def test_h_violation_small_c(self):
        dom = unit_ball(2)
        rep = find_triangle_violation(h_c(dom, 0.1), dom, self.N, 7, "h")
        assert rep.passed and rep.witness["margin"] > 1e-12
        x, y, z = (np.array(rep.witness[k]) for k in "xyz")
        d = h_c(dom, 0.1)
        assert d(x, z) > d(x, y) + d(y, z)

    def test_axioms_detect_non_metric(self):
        dom = unit_ball(2)
        rep = check_metric_axioms(lambda x, y: np.linalg.norm(x - y, axis=-1) ** 2, dom, self.N, 8, "sq")
        assert not rep.passed

    def test_reports_are_seeded(self):
        a = check_F1_bounds(unit_square(), 5000, 42)
        b = check_F1_bounds(unit_square(), 5000, 42)
        assert a.to_json() == b.to_json() and a.rng_seed == 42
