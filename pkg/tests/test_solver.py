import numpy as np
import pytest

from gapsafe import (DesignMatrix, LassoProblem, Rule, SolverConfig,
                     cd_pass, duality_gap, primal_value, reference_solve,
                     soft_threshold, solve)
from gapsafe.solver import SolverState
from conftest import make_instance

ALL_RULES = ["none", "static", "dynamic", "st3", "gap_sphere", "gap_dome"]


def fresh_state(prob, beta=None):
    beta = np.zeros(prob.X.n_cols) if beta is None else beta.copy()
    rho = prob.y - prob.X.matvec(beta)
    return SolverState(beta=beta, residual=rho,
                       active=np.flatnonzero(prob.X.col_norms > 0),
                       theta=None, cert=None, passes_done=0, converged=False)


class TestSoftThreshold:
    def test_hand_values(self):
        assert soft_threshold(1.0, 3.0) == 2.0
        assert soft_threshold(1.0, -3.0) == -2.0
        assert soft_threshold(1.0, 0.5) == 0.0
        assert soft_threshold(0.0, -0.2) == -0.2

    def test_boundary_maps_to_zero(self):
        assert soft_threshold(2.0, 2.0) == 0.0
        assert soft_threshold(2.0, -2.0) == 0.0

    def test_negative_threshold_rejected(self):
        with pytest.raises(ValueError):
            soft_threshold(-0.1, 1.0)

    def test_shrinks_toward_zero(self):
        rng = np.random.default_rng(0)
        for _ in range(200):
            u, x = rng.random() * 3, rng.standard_normal() * 3
            out = soft_threshold(u, x)
            assert abs(out) <= abs(x)
            assert out * x >= 0.0


class TestCdPass:
    def test_single_feature_exact_in_one_pass(self):
        X = DesignMatrix(np.array([[1.0], [1.0]]))
        prob = LassoProblem(X, np.array([2.0, 2.0]), 1.0)
        state = fresh_state(prob)
        cd_pass(state, prob)
        # beta = ST(lam, x^T y) / ||x||^2 = (4 - 1) / 2
        assert state.beta[0] == pytest.approx(1.5)
        np.testing.assert_allclose(state.residual, [0.5, 0.5])

    def test_orthogonal_design_exact_in_one_pass(self):
        X = DesignMatrix(np.eye(3))
        y = np.array([2.0, -0.5, 1.0])
        prob = LassoProblem(X, y, 1.0)
        state = fresh_state(prob)
        cd_pass(state, prob)
        np.testing.assert_allclose(state.beta, [1.0, 0.0, 0.0])

    def test_primal_never_increases(self):
        prob, _ = make_instance(1, n=20, p=40)
        state = fresh_state(prob)
        vals = [primal_value(prob, state.beta)]
        for _ in range(15):
            cd_pass(state, prob)
            vals.append(primal_value(prob, state.beta,
                                     residual=state.residual))
        assert all(b <= a + 1e-12 for a, b in zip(vals, vals[1:]))

    def test_residual_identity_maintained(self):
        prob, _ = make_instance(2, n=15, p=25, sparse=True, density=0.5)
        state = fresh_state(prob)
        for _ in range(5):
            cd_pass(state, prob)
        np.testing.assert_allclose(state.residual,
                                   prob.y - prob.X.matvec(state.beta),
                                   atol=1e-10)

    def test_custom_order_visits_subset(self):
        prob, _ = make_instance(3, n=10, p=12)
        state = fresh_state(prob)
        cd_pass(state, prob, order=np.array([4]))
        touched = np.flatnonzero(state.beta)
        assert set(touched.tolist()) <= {4}


class TestSolve:
    def test_at_lambda_max(self):
        prob, _ = make_instance(4, n=10, p=15, lam_frac=1.0)
        beta, cert, state = solve(prob, SolverConfig())
        assert np.all(beta == 0.0)
        assert cert.gap == 0.0
        assert state.converged
        assert state.passes_done == 0

    def test_single_feature_closed_form(self):
        X = DesignMatrix(np.array([[1.0], [1.0]]))
        prob = LassoProblem(X, np.array([2.0, 2.0]), 1.0)
        beta, cert, _ = solve(prob, SolverConfig(epsilon=1e-12))
        assert beta[0] == pytest.approx(1.5, abs=1e-9)
        assert cert.gap <= 1e-12

    def test_matches_oracle(self):
        prob, _ = make_instance(5, n=25, p=50)
        sol = reference_solve(prob)
        beta, cert, state = solve(prob, SolverConfig(epsilon=1e-10))
        assert state.converged
        np.testing.assert_allclose(beta, sol.beta_hat, atol=1e-5)

    def test_gap_certificate_is_honest(self):
        prob, _ = make_instance(6, n=20, p=35, sparse=True, density=0.4)
        beta, cert, state = solve(prob, SolverConfig(epsilon=1e-9))
        recheck = duality_gap(prob, beta, state.theta)
        assert recheck.gap == pytest.approx(cert.gap, rel=1e-10, abs=1e-15)
        assert cert.gap <= 1e-9

    @pytest.mark.parametrize("rule", ALL_RULES)
    def test_rules_agree_on_solution(self, rule):
        prob, _ = make_instance(7, n=20, p=60)
        base, _, _ = solve(prob, SolverConfig(epsilon=1e-10, rule="none"))
        beta, cert, state = solve(prob, SolverConfig(epsilon=1e-10, rule=rule))
        assert state.converged
        assert np.max(np.abs(beta - base)) <= 10 * 1e-10 / prob.lam

    def test_screened_coordinates_never_return(self):
        prob, _ = make_instance(8, n=20, p=80, lam_frac=0.5)
        cfg = SolverConfig(epsilon=1e-10, rule="gap_sphere",
                           track_active=True)
        beta, _, state = solve(prob, cfg)
        sets = [set(a.tolist()) for a in state.active_history]
        for a, b in zip(sets, sets[1:]):
            assert b <= a
        # screened coordinates are exactly zero in the output
        final = state.active_history[-1]
        outside = np.setdiff1d(np.arange(80), final)
        assert np.all(beta[outside] == 0.0)

    def test_screened_variables_zero_in_oracle(self):
        prob, _ = make_instance(9, n=20, p=80, lam_frac=0.5)
        sol = reference_solve(prob)
        _, _, state = solve(prob, SolverConfig(epsilon=1e-10,
                                               rule="gap_dome",
                                               track_active=True))
        screened = np.setdiff1d(np.arange(80), state.active_history[-1])
        assert np.all(np.abs(sol.beta_hat[screened]) == 0.0)

    def test_budget_exhaustion_reports_unconverged(self):
        prob, _ = make_instance(10, n=30, p=100, lam_frac=0.01)
        beta, cert, state = solve(prob, SolverConfig(epsilon=1e-14,
                                                     max_passes=3))
        assert not state.converged
        assert cert is not None
        assert cert.gap > 1e-14
        np.testing.assert_allclose(state.residual,
                                   prob.y - prob.X.matvec(beta), atol=1e-10)

    def test_warm_start_converges_immediately(self):
        prob, _ = make_instance(11, n=20, p=40)
        beta0, _, _ = solve(prob, SolverConfig(epsilon=1e-12))
        _, cert, state = solve(prob, SolverConfig(epsilon=1e-8),
                               warm_beta=beta0)
        assert state.converged
        assert state.passes_done == 0

    def test_active0_restricts_and_zeroes(self):
        prob, _ = make_instance(12, n=15, p=30)
        warm = np.ones(30)
        keep = np.array([0, 3, 7])
        beta, _, state = solve(prob, SolverConfig(epsilon=1e-300,
                                                  max_passes=1),
                               warm_beta=warm, active0=keep)
        outside = np.setdiff1d(np.arange(30), keep)
        assert np.all(beta[outside] == 0.0)

    def test_trace_shape(self):
        prob, _ = make_instance(13, n=20, p=40)
        _, _, state = solve(prob, SolverConfig(epsilon=1e-8, screen_every=5))
        assert len(state.screen_trace) >= 1
        for passes, n_active, gap, radius in state.screen_trace:
            assert 0 <= n_active <= 40
            assert radius >= 0.0
        # gaps recorded at checkpoints never increase the active set
        sizes = [row[1] for row in state.screen_trace]
        assert all(b <= a for a, b in zip(sizes, sizes[1:]))

    def test_gap_rule_radius_shrinks_below_dynamic(self):
        # near convergence the duality-gap radius sqrt(2 G)/lam is far
        # smaller than the distance-to-center radius of the dynamic rule
        prob, _ = make_instance(14, n=20, p=40)
        _, _, s_gap = solve(prob, SolverConfig(epsilon=1e-10,
                                               rule="gap_sphere"))
        _, _, s_dyn = solve(prob, SolverConfig(epsilon=1e-10,
                                               rule="dynamic"))
        assert s_gap.screen_trace[-1][3] < s_dyn.screen_trace[-1][3]

    def test_screen_every_one(self):
        prob, _ = make_instance(15, n=15, p=25)
        beta, cert, state = solve(prob, SolverConfig(epsilon=1e-9,
                                                     screen_every=1))
        assert state.converged
        sol = reference_solve(prob)
        np.testing.assert_allclose(beta, sol.beta_hat, atol=1e-4)

    def test_invalid_config(self):
        with pytest.raises(ValueError):
            SolverConfig(epsilon=0.0)
        with pytest.raises(ValueError):
            SolverConfig(screen_every=0)
        with pytest.raises(ValueError):
            SolverConfig(max_passes=0)
        with pytest.raises(ValueError):
            SolverConfig(rule="banana")

    def test_rule_accepts_strings(self):
        assert SolverConfig(rule="gap_dome").rule is Rule.GAP_DOME
