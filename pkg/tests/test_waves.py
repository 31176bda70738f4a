import numpy as np
import pytest

from pyrefront.physics import ModelParameters
from pyrefront.waves import (ShootingProblem, find_wave_speeds, scan_wave_speeds,
                             shoot, tail_rates, tw_ode_rhs, wave_profile)


def reference_params(**kw):
    base = dict(rho=1.0, c=1.0, k=1.0, h=0.05, T_inf=300.0, T_bar=400.0,
                S=1500.0, A_L=0.01, epsilon=0.0)
    base.update(kw)
    return ModelParameters(**base)


def reference_problem(**kw):
    args = dict(params=reference_params(), v=0.1, Y0=1.0, c_lo=0.02, c_hi=8.0,
                n_scan=96)
    args.update(kw)
    return ShootingProblem(**args)


class TestOdeSystem:
    def test_unburned_equilibrium_is_fixed_point(self):
        problem = reference_problem()
        derivs = tw_ode_rhs([300.0, 0.0, 1.0], 2.0, problem, burning=False)
        assert derivs == [0.0, 0.0, 0.0]
        # ahead of the ignition point the fuel never moves
        derivs = tw_ode_rhs([350.0, -1.0, 1.0], 2.0, problem, burning=False)
        assert derivs[2] == 0.0

    def test_reaction_off_tail_is_linear_exponential(self):
        # with psi off and h = 0 the tail obeys k U'' = rho c (v - c) U'
        problem = reference_problem(params=reference_params(h=1e-12), v=0.5)
        c = 2.0
        rate = problem.params.rho * problem.params.c * (problem.v - c) / problem.params.k
        U0, dU0 = 310.0, 4.0
        derivs = tw_ode_rhs([U0, dU0, 1.0], c, problem, burning=False)
        assert derivs[0] == dU0
        # h is only epsilon-positive (problem validation wants h > 0)
        assert derivs[1] == pytest.approx(rate * dU0, abs=1e-9)

    def test_tail_rates_bracket_zero(self):
        problem = reference_problem()
        lam_minus, lam_plus = tail_rates(problem, 2.0)
        assert lam_minus < 0.0 < lam_plus

    def test_autonomous_system_ignores_position(self):
        # no spatial coordinate enters the right-hand side at all
        problem = reference_problem()
        a = tw_ode_rhs([450.0, -3.0, 0.7], 1.5, problem, burning=True)
        b = tw_ode_rhs([450.0, -3.0, 0.7], 1.5, problem, burning=True)
        assert a == b


class TestShoot:
    def test_rejects_singular_speeds(self):
        problem = reference_problem()
        with pytest.raises(ValueError):
            shoot(0.0, problem)
        with pytest.raises(ValueError):
            shoot(problem.v, problem)

    def test_mismatch_brackets_the_fast_wave(self):
        problem = reference_problem()
        assert shoot(4.0, problem) < 0.0
        assert shoot(7.0, problem) > 0.0

    def test_no_combustion_means_constant_sign(self):
        problem = reference_problem(params=reference_params(A_L=0.0))
        ms = [shoot(c, problem) for c in (0.05, 0.5, 2.0, 5.0)]
        assert all(m > 0.0 for m in ms)

    def test_far_field_truncation_insensitive(self):
        # the system is autonomous: seeding the tail closer or farther out
        # must not move the root (translation invariance)
        roots = []
        for decay in (1e6, 1e8):
            scan = scan_wave_speeds(reference_problem(c_lo=5.0, c_hi=6.5, n_scan=8,
                                                      decay_factor=decay))
            assert len(scan.roots) == 1
            roots.append(scan.roots[0])
        assert roots[0] == pytest.approx(roots[1], rel=1e-4)

    def test_burned_state_bounded_with_fuel_consumed(self):
        problem = reference_problem()
        scan = scan_wave_speeds(reference_problem(c_lo=5.0, c_hi=6.5, n_scan=8))
        (fast,) = scan.roots
        xi, U, V = wave_profile(fast, problem)
        u_cap = problem.cap_factor * (problem.params.T_bar - problem.params.T_inf)
        assert np.max(np.abs(U - problem.params.T_inf)) < u_cap
        # arrays run from the ignition point backward: fuel only drops
        assert np.all(np.diff(V) <= 1e-12)
        assert V[-1] < 0.05 * problem.Y0     # nearly fully consumed
        # a slightly off-root speed blows up inside the same window
        xi_off, U_off, _ = wave_profile(fast * 1.05, problem)
        assert np.max(np.abs(U_off - problem.params.T_inf)) > u_cap


class TestFindWaveSpeeds:
    def test_no_reaction_yields_empty_list(self):
        problem = reference_problem(params=reference_params(A_L=0.0))
        assert find_wave_speeds(problem) == []

    def test_small_advection_has_fast_and_slow_wave(self):
        roots = find_wave_speeds(reference_problem(v=0.1))
        assert len(roots) == 2
        assert roots[0] == pytest.approx(0.0303, abs=0.002)
        assert roots[1] == pytest.approx(5.7303, abs=0.01)

    def test_large_advection_leaves_one_admissible_wave(self):
        # threshold search (documented in the acceptance suite): the fast
        # wave outruns the validated bracket a little above v = 2.2
        roots = find_wave_speeds(reference_problem(v=3.0))
        assert len(roots) == 1

    def test_strong_upwind_extinguishes_both_waves(self):
        # the upwind-propagating pair folds between v = -2 and -4
        roots = find_wave_speeds(reference_problem(v=-4.0))
        assert roots == []

    def test_roots_sorted_ascending(self):
        roots = find_wave_speeds(reference_problem(v=0.5))
        assert roots == sorted(roots)


class TestProblemValidation:
    def test_bracket_order(self):
        with pytest.raises(ValueError):
            reference_problem(c_lo=2.0, c_hi=1.0)

    def test_fuel_positive(self):
        with pytest.raises(ValueError):
            reference_problem(Y0=0.0)

    def test_requires_heat_loss(self):
        with pytest.raises(ValueError):
            reference_problem(params=reference_params(h=0.0))

    def test_requires_ignition_above_ambient(self):
        with pytest.raises(ValueError):
            reference_problem(params=reference_params(T_bar=300.0))
