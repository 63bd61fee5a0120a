import math

import numpy as np
import pytest

from qmemristor.dynamics import DecayProfile, InitialState, TimeGrid, run_coupled, run_single
from qmemristor.measurement import (PhysicalUnits, ShotConfig, build_trace,
                                    current, current_series, exact_expectation,
                                    finite_difference, sampled_expectation,
                                    voltage)
from qmemristor.ops import InteractionSpec

from conftest import random_density_matrix

UNITS = PhysicalUnits()
EXACT = ShotConfig(mode="exact")


def sampled(seed, shots=5000):
    return ShotConfig(mode="sampled", shots=shots, seed=seed)


class TestExactExpectation:
    def test_maximally_mixed(self):
        mixed = np.eye(2, dtype=complex) / 2
        for axis in "xyz":
            assert exact_expectation(mixed, axis) == pytest.approx(0.0, abs=1e-14)

    def test_excited_state_z(self):
        excited = np.diag([1.0, 0.0]).astype(complex)
        assert exact_expectation(excited, "z") == pytest.approx(1.0)

    def test_transverse_components_of_pure_state(self):
        # phase convention: sin(a)e^{ib} multiplies |g>, giving
        # <sigma_x> = sin(2a)cos(b) and <sigma_y> = +sin(2a)sin(b); the sign
        # is pinned by agreement with the lab-frame master-equation oracle
        init = InitialState(math.pi / 4, math.pi / 5)
        rho = init.density_matrix()
        assert exact_expectation(rho, "x") == pytest.approx(math.cos(math.pi / 5), abs=1e-12)
        assert exact_expectation(rho, "y") == pytest.approx(math.sin(math.pi / 5), abs=1e-12)

    def test_real_within_tolerance(self, rng):
        for _ in range(100):
            rho = random_density_matrix(rng)
            for axis in "xyz":
                raw = np.trace({"x": np.array([[0, 1], [1, 0]]),
                                "y": np.array([[0, -1j], [1j, 0]]),
                                "z": np.diag([1, -1])}[axis] @ rho)
                assert abs(raw.imag) <= 1e-12


class TestSampledExpectation:
    def test_certain_outcome(self):
        excited = np.diag([1.0, 0.0]).astype(complex)
        # <sigma_z>=1 means p=1; use a state with <sigma_x>=1 instead
        plus = np.full((2, 2), 0.5, dtype=complex)
        for seed in (0, 1, 12345):
            assert sampled_expectation(plus, "x", sampled(seed)) == 1.0
        assert sampled_expectation(excited, "x", sampled(7)) != 1.0  # p = 1/2

    def test_deterministic_repeat(self, rng):
        rho = random_density_matrix(rng)
        cfg = sampled(99)
        first = sampled_expectation(rho, "y", cfg, stream=(0, 17))
        assert sampled_expectation(rho, "y", cfg, stream=(0, 17)) == first

    def test_streams_are_independent(self, rng):
        rho = np.eye(2, dtype=complex) / 2
        cfg = sampled(99)
        values = {sampled_expectation(rho, "x", cfg, stream=(0, i)) for i in range(20)}
        assert len(values) > 1

    def test_standard_deviation(self):
        # <sigma_x> = 0 state: estimator std should be ~1/sqrt(shots)
        mixed = np.eye(2, dtype=complex) / 2
        estimates = [sampled_expectation(mixed, "x", sampled(seed)) for seed in range(200)]
        std = np.std(estimates)
        target = 1.0 / math.sqrt(5000)
        assert abs(std - target) <= 0.2 * target

    def test_unbiased(self):
        # the mean of 10^4 seeded estimates sits within 3 standard errors
        init = InitialState(0.9, 0.3)
        rho = init.density_matrix()
        exact = exact_expectation(rho, "x")
        mean = np.mean([sampled_expectation(rho, "x", sampled(seed))
                        for seed in range(10_000)])
        sigma = math.sqrt((1 - exact ** 2) / 5000)
        assert abs(mean - exact) <= 3 * sigma / 100

    def test_requires_sampled_mode(self, rng):
        with pytest.raises(ValueError):
            sampled_expectation(random_density_matrix(rng), "x", EXACT)


class TestVoltage:
    def test_zero(self):
        assert voltage(0.0, UNITS) == 0.0

    def test_unit_value(self):
        assert voltage(-1.0, UNITS) == pytest.approx(1 / (2 * math.sqrt(2)), abs=1e-12)

    def test_omega_scaling(self):
        v1 = voltage(0.6, PhysicalUnits(omega=1.0))
        v4 = voltage(0.6, PhysicalUnits(omega=4.0))
        assert abs(v4 / v1) == pytest.approx(2.0, abs=1e-12)


class TestCurrent:
    def test_static_series_is_zero(self):
        n = 40
        series = current_series(np.zeros(n), np.full(n, 0.37), 0.1, UNITS)
        assert np.abs(series).max() < 1e-12

    def test_sinusoid_derivative(self):
        dt = 2 * math.pi / 30
        t = np.arange(31) * dt
        series = current_series(np.zeros(31), np.sin(t), dt, UNITS)
        expected = math.sqrt(0.5) * math.cos(0.0)
        assert series[0] == pytest.approx(expected, rel=0.015)

    def test_rejects_short_series(self):
        with pytest.raises(ValueError):
            current_series(np.zeros(2), np.zeros(2), 0.1, UNITS)

    def test_rejects_unknown_scheme(self):
        with pytest.raises(ValueError):
            current_series(np.zeros(10), np.zeros(10), 0.1, UNITS, scheme="spectral")

    def test_linear_in_components(self, rng):
        n = 50
        dt = 0.17
        sx1, sy1 = rng.normal(size=n), rng.normal(size=n)
        sx2, sy2 = rng.normal(size=n), rng.normal(size=n)
        a, b = 0.7, -1.9
        combined = current_series(a * sx1 + b * sx2, a * sy1 + b * sy2, dt, UNITS)
        split = (a * current_series(sx1, sy1, dt, UNITS)
                 + b * current_series(sx2, sy2, dt, UNITS))
        assert np.abs(combined - split).max() < 1e-11

    def test_voltage_linear(self, rng):
        sy1, sy2 = rng.normal(size=20), rng.normal(size=20)
        assert np.allclose(voltage(2 * sy1 - 3 * sy2, UNITS),
                           2 * voltage(sy1, UNITS) - 3 * voltage(sy2, UNITS))

    def test_trace_wrapper_matches_stored_column(self):
        init = InitialState(math.pi / 4, math.pi / 5)
        profile = DecayProfile(0.4, 1.0)
        states = run_single(init, profile, TimeGrid(1, 15))
        trace = build_trace(states, [profile], UNITS, EXACT)
        assert np.allclose(current(trace, UNITS), trace.qubits[0].current)


class TestFiniteDifference:
    def test_quartic_exact_for_cubic(self):
        # the five-point stencil differentiates cubics exactly
        t = np.linspace(0, 2, 21)
        y = 2 * t ** 3 - t ** 2 + 0.5 * t - 3
        expected = 6 * t ** 2 - 2 * t + 0.5
        assert np.abs(finite_difference(y, t[1] - t[0]) - expected).max() < 1e-10

    def test_fourth_order_convergence(self):
        errs = []
        for n in (40, 80):
            t = np.linspace(0, 2 * math.pi, n + 1)
            d = finite_difference(np.sin(t), t[1] - t[0])
            errs.append(np.abs(d - np.cos(t)).max())
        assert errs[0] / errs[1] > 12.0

    def test_three_point_fallback(self):
        t = np.linspace(0, 1, 4)
        y = t ** 2
        d = finite_difference(y, t[1] - t[0])
        assert np.allclose(d, 2 * t, atol=1e-12)


class TestBuildTrace:
    def test_single_exact_trace(self):
        init = InitialState(math.pi / 4, math.pi / 5)
        profile = DecayProfile(0.4, 1.0)
        grid = TimeGrid(2, 30)
        states = run_single(init, profile, grid)
        trace = build_trace(states, [profile], UNITS, EXACT)
        assert len(trace.qubits) == 1
        assert trace.t.shape == (grid.n_steps + 1,)
        q = trace.qubits[0]
        norms = q.sx_i ** 2 + q.sy_i ** 2
        assert np.all(norms <= 1 + 1e-9)
        assert np.allclose(q.voltage, voltage(q.sy_s, UNITS))

    def test_coupled_trace_has_two_qubits(self):
        init = InitialState(math.pi / 4, 0.0)
        p = DecayProfile(0.02, 1.0)
        grid = TimeGrid(1, 10)
        states = run_coupled(init, init, p, p, grid, InteractionSpec("native", "y", 0.1))
        conc = np.zeros(grid.n_steps + 1)
        trace = build_trace(states, [p, p], UNITS, EXACT, concurrence=conc)
        assert len(trace.qubits) == 2
        assert trace.concurrence is not None

    def test_sampled_reproducibility(self):
        init = InitialState(math.pi / 4, math.pi / 5)
        profile = DecayProfile(0.4, 1.0)
        grid = TimeGrid(1, 15)
        states = run_single(init, profile, grid)
        t1 = build_trace(states, [profile], UNITS, sampled(5))
        t2 = build_trace(states, [profile], UNITS, sampled(5))
        assert np.array_equal(t1.qubits[0].sx_i, t2.qubits[0].sx_i)
        assert np.array_equal(t1.qubits[0].current, t2.qubits[0].current)
        t3 = build_trace(states, [profile], UNITS, sampled(6))
        assert not np.array_equal(t1.qubits[0].sx_i, t3.qubits[0].sx_i)

    def test_profile_count_mismatch(self):
        init = InitialState(0.3, 0.0)
        profile = DecayProfile(0.4, 1.0)
        states = run_single(init, profile, TimeGrid(1, 10))
        with pytest.raises(ValueError):
            build_trace(states, [profile, profile], UNITS, EXACT)


class TestShotConfigValidation:
    def test_modes(self):
        with pytest.raises(ValueError):
            ShotConfig(mode="approx")

    def test_shots_floor(self):
        with pytest.raises(ValueError):
            ShotConfig(mode="sampled", shots=0)

    def test_seed_range(self):
        with pytest.raises(ValueError):
            ShotConfig(mode="sampled", seed=-1)

    def test_units_positive(self):
        with pytest.raises(ValueError):
            PhysicalUnits(m=0.0)
