import math

import numpy as np
import pytest

from ncosc import (
    DomainError,
    InsufficientSamples,
    NCParams,
    SYMPLECTIC_J,
    StepTooLarge,
    Trajectory,
    derive,
    energy_drift,
    eom_rhs,
    from_figure_controls,
    generator,
    integrate,
    integrate_at_times,
    propagator,
    sample_closed_form,
    second_order_residual,
    spiral_log_fit,
    spiral_samples,
)
from ncosc.audit import oracle_deviation, random_params

SPIRAL_START = np.array([1.0, 1.0, 0.0, 0.0])  # (x, pi_x, y, pi_y) = (1, 0, 1, 0)


@pytest.fixture
def coupled():
    return from_figure_controls(0.1, 1.0)


class TestPropagator:
    def test_identity_at_t0(self, coupled):
        assert np.allclose(propagator(coupled, 0.0).matrix, np.eye(4), atol=0.0)

    def test_period_closure_uncoupled(self):
        d = from_figure_controls(0.0, 1.3)
        m = propagator(d, d.period).matrix
        assert np.max(np.abs(m - np.eye(4))) < 1e-12

    def test_matches_rk4_oracle(self, coupled):
        z0 = np.array([0.3, -1.1, 0.7, 0.2])
        m = propagator(coupled, 0.7)
        rk4 = integrate(z0, coupled, 0.7, coupled.period / 10_000)
        assert np.max(np.abs(m.apply(z0) - rk4.points[-1])) < 1e-6 * np.linalg.norm(z0)

    def test_symplectic_and_unit_determinant(self):
        rng = np.random.default_rng(61)
        for _ in range(100):
            d = derive(random_params(rng))
            for t in rng.uniform(0.0, d.period, size=20):
                m = propagator(d, t).matrix
                assert np.max(np.abs(m.T @ SYMPLECTIC_J @ m - SYMPLECTIC_J)) < 1e-10
                assert abs(np.linalg.det(m) - 1.0) < 1e-10

    def test_group_property(self):
        rng = np.random.default_rng(67)
        for _ in range(100):
            d = derive(random_params(rng))
            t1, t2 = rng.uniform(0.0, d.period, size=2)
            m_sum = propagator(d, t1 + t2).matrix
            m_prod = propagator(d, t1).matrix @ propagator(d, t2).matrix
            assert np.max(np.abs(m_sum - m_prod)) < 1e-10

    def test_nonfinite_time_rejected(self, coupled):
        with pytest.raises(DomainError):
            propagator(coupled, math.inf)
        with pytest.raises(DomainError):
            propagator(coupled, math.nan)


class TestEomRhs:
    def test_zero_fixed_point(self, coupled):
        assert np.all(eom_rhs(np.zeros(4), coupled) == 0.0)

    def test_uncoupled_block_rotations(self):
        # gamma = 0, alpha = beta: independent rotations in (Q1, Pi2) and (Q2, Pi1).
        d = from_figure_controls(0.0, 1.0)
        a = generator(d)
        expected = np.array(
            [
                [0.0, 0.0, 0.0, 1.0],
                [0.0, 0.0, 1.0, 0.0],
                [0.0, -1.0, 0.0, 0.0],
                [-1.0, 0.0, 0.0, 0.0],
            ]
        )
        assert np.allclose(a, expected, atol=1e-15)

    def test_matches_finite_difference_of_propagator(self, coupled):
        z0 = np.array([0.8, -0.2, 0.5, 1.1])
        t = 0.7
        z_t = propagator(coupled, t).apply(z0)
        errors = []
        steps = (1e-2, 5e-3, 2.5e-3)
        for h in steps:
            forward = propagator(coupled, t + h).apply(z0)
            backward = propagator(coupled, t - h).apply(z0)
            fd = (forward - backward) / (2.0 * h)
            errors.append(np.max(np.abs(fd - eom_rhs(z_t, coupled))))
        order = np.polyfit(np.log(steps), np.log(errors), 1)[0]
        assert order >= 1.9


class TestIntegrate:
    def test_closed_orbit_endpoint(self):
        d = from_figure_controls(0.0, 1.0)
        z0 = np.array([1.0, 0.5, -0.3, 0.8])
        traj = integrate(z0, d, d.period, d.period / 10_000)
        assert np.max(np.abs(traj.points[-1] - z0)) < 1e-8

    def test_matches_closed_form_over_period(self, coupled):
        assert oracle_deviation(SPIRAL_START, coupled) < 1e-6

    def test_zero_initial_point(self, coupled):
        traj = integrate(np.zeros(4), coupled, 1.0, coupled.period / 1000)
        assert np.all(traj.points == 0.0)

    def test_step_guard(self, coupled):
        with pytest.raises(StepTooLarge):
            integrate(SPIRAL_START, coupled, 1.0, coupled.period / 10)

    def test_invalid_arguments(self, coupled):
        with pytest.raises(DomainError):
            integrate(SPIRAL_START, coupled, -1.0, 1e-3)
        with pytest.raises(DomainError):
            integrate(SPIRAL_START, coupled, 1.0, 0.0)

    def test_integrate_at_times_alignment(self, coupled):
        times = np.linspace(0.0, 2.0, 33)
        traj = integrate_at_times(SPIRAL_START, coupled, times, coupled.period / 10_000)
        exact = sample_closed_form(SPIRAL_START, coupled, times)
        assert np.array_equal(traj.times, times)
        assert np.max(np.abs(traj.points - exact.points)) < 1e-6


class TestSecondOrderResidual:
    def test_zero_trajectory(self, coupled):
        times = np.linspace(0.0, 1.0, 64)
        traj = Trajectory(times, np.zeros((64, 4)), coupled, np.zeros(4), times[1])
        assert second_order_residual(traj, coupled) == 0.0

    def test_scales_as_step_squared(self, coupled):
        residuals = []
        counts = (256, 512, 1024)
        for n in counts:
            traj = sample_closed_form(SPIRAL_START, coupled, np.linspace(0.0, coupled.period, n))
            residuals.append(second_order_residual(traj, coupled))
        steps = [coupled.period / (n - 1) for n in counts]
        order = np.polyfit(np.log(steps), np.log(residuals), 1)[0]
        assert order >= 1.9

    def test_exact_sinusoid_uncoupled(self):
        d = from_figure_controls(0.0, 1.0)
        coarse = sample_closed_form(SPIRAL_START, d, np.linspace(0.0, d.period, 512))
        fine = sample_closed_form(SPIRAL_START, d, np.linspace(0.0, d.period, 1024))
        ratio = second_order_residual(coarse, d) / second_order_residual(fine, d)
        assert ratio == pytest.approx(4.0, rel=0.05)

    def test_insufficient_samples(self, coupled):
        times = np.array([0.0, 0.1])
        traj = Trajectory(times, np.zeros((2, 4)), coupled, np.zeros(4), 0.1)
        with pytest.raises(InsufficientSamples):
            second_order_residual(traj, coupled)

    def test_nonuniform_sampling_rejected(self, coupled):
        times = np.array([0.0, 0.1, 0.3, 0.35])
        traj = Trajectory(times, np.zeros((4, 4)), coupled, np.zeros(4), 0.1)
        with pytest.raises(DomainError):
            second_order_residual(traj, coupled)


class TestEnergyDrift:
    def test_zero_trajectory(self, coupled):
        times = np.linspace(0.0, 1.0, 16)
        traj = Trajectory(times, np.zeros((16, 4)), coupled, np.zeros(4), times[1])
        assert energy_drift(traj, coupled) == 0.0

    def test_closed_form_conserves_energy(self, coupled):
        traj = spiral_samples(SPIRAL_START, coupled, 1024)
        assert energy_drift(traj, coupled) < 1e-10

    def test_rk4_drift_bound(self, coupled):
        traj = integrate(SPIRAL_START, coupled, coupled.period, coupled.period / 10_000)
        assert energy_drift(traj, coupled) < 1e-8


class TestSpirals:
    def test_closed_projections_at_eps0(self):
        d = from_figure_controls(0.0, 1.0)
        traj = spiral_samples(SPIRAL_START, d, 1024)
        for pair in ("Q1-Pi1", "Q2-Pi2", "Q1-Pi2", "Q2-Pi1"):
            curve = traj.projection(pair)
            assert np.max(np.abs(curve[-1] - curve[0])) < 1e-8

    @pytest.mark.parametrize("eps", [0.1, 0.01, 0.001])
    def test_log_spiral_slopes(self, eps):
        d = from_figure_controls(eps, 1.0)
        traj = spiral_samples(SPIRAL_START, d, 1024)
        grow = spiral_log_fit(*traj.projection("Q1-Pi2").T)
        decay = spiral_log_fit(*traj.projection("Q2-Pi1").T)
        assert abs(grow.slope - eps) < 1e-8
        assert abs(decay.slope + eps) < 1e-8
        assert grow.r_squared > 1.0 - 1e-10
        assert decay.r_squared > 1.0 - 1e-10

    def test_second_departure_point_also_spirals(self):
        d = from_figure_controls(0.1, 1.0)
        z0 = np.array([1.0, 1.0, 1.0, 0.0])  # (x, pi_x, y, pi_y) = (1, 1, 1, 0)
        traj = spiral_samples(z0, d, 1024)
        assert spiral_log_fit(*traj.projection("Q1-Pi2").T).slope == pytest.approx(0.1, abs=1e-8)
        assert spiral_log_fit(*traj.projection("Q2-Pi1").T).slope == pytest.approx(-0.1, abs=1e-8)

    def test_envelopes(self, coupled):
        traj = spiral_samples(SPIRAL_START, coupled, 256)
        grow = np.linalg.norm(traj.projection("Q1-Pi2"), axis=1)
        decay = np.linalg.norm(traj.projection("Q2-Pi1"), axis=1)
        expected_grow = grow[0] * np.exp(coupled.gamma * traj.times)
        expected_decay = decay[0] * np.exp(-coupled.gamma * traj.times)
        assert np.max(np.abs(grow - expected_grow) / expected_grow) < 1e-12
        assert np.max(np.abs(decay - expected_decay) / expected_decay) < 1e-12

    def test_sample_count_guard(self, coupled):
        with pytest.raises(DomainError):
            spiral_samples(SPIRAL_START, coupled, 1)

    def test_unknown_projection(self, coupled):
        traj = spiral_samples(SPIRAL_START, coupled, 16)
        with pytest.raises(DomainError):
            traj.projection("Q1-Q2")


def test_trajectory_validation(coupled):
    with pytest.raises(DomainError):
        Trajectory(np.array([0.0, 0.0]), np.zeros((2, 4)), coupled, np.zeros(4), 0.1)
    with pytest.raises(DomainError):
        Trajectory(np.array([0.0, 1.0]), np.zeros((3, 4)), coupled, np.zeros(4), 0.1)


def test_commutative_physical_params_close_orbits():
    d = derive(NCParams())
    traj = spiral_samples(np.array([1.0, 0.3, -0.5, 0.2]), d, 512)
    assert np.max(np.abs(traj.points[-1] - traj.points[0])) < 1e-8
