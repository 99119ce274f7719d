"""RNG determinism contracts and Monte Carlo estimator calibration."""

import math

import numpy as np
import pytest

from shotbudget import (
    McConfig,
    simulate_binomial_detection,
    simulate_chisq_power,
    simulate_inverse_miss_rate,
    simulate_swap_miss_rate,
)
from shotbudget.errors import BaselineNotAboveTarget
from shotbudget import montecarlo as mc
from shotbudget.montecarlo import qcb_grid_oracle
from shotbudget.rng import TrialStream, mix64, stream_output, sub_seeds, uniform_block
from shotbudget.states import qcb_q
from shotbudget.stat_power import Distribution

from conftest import random_density, random_pure


class TestSplitmix:
    def test_published_seed_zero_vectors(self):
        # first four outputs of the reference stream at seed 0
        expected = (
            0xE220A8397B1DCDAF,
            0x6E789E6AA1B965F4,
            0x06C45D188009454F,
            0xF88BB8A8724C81EC,
        )
        for i, want in enumerate(expected):
            assert stream_output(0, i) == want

    def test_seed_1234567_vectors(self):
        expected = (
            0x599ED017FB08FC85,
            0x2C73F08458540FA5,
            0x883EBCE5A3F27C77,
            0x3FBEF740E9177B3F,
        )
        for i, want in enumerate(expected):
            assert stream_output(1234567, i) == want

    def test_vectorized_matches_scalar(self):
        seeds = sub_seeds(20260822, 0, 64)
        for i in range(64):
            assert int(seeds[i]) == stream_output(20260822, i)

    def test_mix64_is_a_bijection_probe(self):
        # spot-check distinctness over a contiguous input run
        outs = {mix64((17 + i) & 0xFFFFFFFFFFFFFFFF) for i in range(1000)}
        assert len(outs) == 1000

    def test_uniform_block_range_and_determinism(self):
        seeds = sub_seeds(7, 0, 4)
        a = uniform_block(seeds, 0, 100)
        b = uniform_block(seeds, 0, 100)
        assert a.shape == (4, 100)
        assert np.array_equal(a, b)
        assert np.all(a >= 0.0) and np.all(a < 1.0)

    def test_uniform_block_offset_slices_stream(self):
        seeds = sub_seeds(7, 0, 2)
        whole = uniform_block(seeds, 0, 50)
        tail = uniform_block(seeds, 20, 30)
        assert np.array_equal(whole[:, 20:], tail)

    def test_trial_stream_position_advances(self):
        s1 = TrialStream(99, 3)
        first = list(s1.uniforms(3)) + list(s1.uniforms(2))
        s2 = TrialStream(99, 3)
        assert first == pytest.approx(list(s2.uniforms(5)), abs=0.0)


class TestMissRateSimulators:
    def test_inverse_matches_analytic_rate(self):
        config = McConfig(trials=40_000, seed=11)
        result = simulate_inverse_miss_rate(0.99, 458, config)
        expected = 0.99**458
        se = math.sqrt(expected * (1.0 - expected) / config.trials)
        assert abs(result.estimate - expected) <= 4.0 * se
        assert result.trials == 40_000
        assert result.ci_low <= result.estimate <= result.ci_high

    def test_swap_matches_analytic_rate(self):
        config = McConfig(trials=40_000, seed=12)
        result = simulate_swap_miss_rate(0.99, 919, config)
        expected = (0.5 + 0.5 * 0.99) ** 919
        se = math.sqrt(expected * (1.0 - expected) / config.trials)
        assert abs(result.estimate - expected) <= 4.0 * se

    def test_orthogonal_swap_hits_half_power(self):
        # F = 0 still accepts with probability 1/2 per shot; N = 7 shots
        # puts the miss rate at 2^-7
        config = McConfig(trials=100_000, seed=13)
        result = simulate_swap_miss_rate(0.0, 7, config)
        expected = 0.5**7
        se = math.sqrt(expected * (1.0 - expected) / config.trials)
        assert abs(result.estimate - expected) <= 4.0 * se

    def test_bit_identical_reruns(self):
        config = McConfig(trials=5_000, seed=20260822)
        a = simulate_inverse_miss_rate(0.97, 100, config)
        b = simulate_inverse_miss_rate(0.97, 100, config)
        assert a.estimate == b.estimate
        assert a.std_error == b.std_error

    def test_chunk_size_does_not_change_results(self, monkeypatch):
        config = McConfig(trials=3_000, seed=5)
        baseline = simulate_inverse_miss_rate(0.95, 200, config).estimate
        monkeypatch.setattr(mc, "_CHUNK_ELEMENTS", 1_000)
        assert simulate_inverse_miss_rate(0.95, 200, config).estimate == baseline

    def test_seed_changes_results(self):
        a = simulate_inverse_miss_rate(0.97, 100, McConfig(trials=5_000, seed=1))
        b = simulate_inverse_miss_rate(0.97, 100, McConfig(trials=5_000, seed=2))
        assert a.estimate != b.estimate


class TestChiSquareSimulator:
    def test_type_one_error_calibrated(self):
        p = Distribution(np.full(4, 0.25))
        config = McConfig(trials=4_000, seed=21)
        result = simulate_chisq_power(p, p, 400, 0.05, config)
        se = math.sqrt(0.05 * 0.95 / config.trials)
        # discreteness of counts leaves a small size distortion on top of
        # the Monte Carlo band
        assert abs(result.estimate - 0.05) <= 5.0 * se + 0.005

    def test_power_tracks_noncentral_approximation(self):
        p = Distribution(np.array([0.3, 0.3, 0.2, 0.2]))
        q = Distribution(np.full(4, 0.25))
        config = McConfig(trials=3_000, seed=22)
        result = simulate_chisq_power(p, q, 430, 0.05, config)
        assert result.estimate == pytest.approx(0.95, abs=0.03)

    def test_small_shot_warnings_propagate(self):
        p = Distribution(np.full(4, 0.25))
        result = simulate_chisq_power(p, p, 10, 0.05, McConfig(trials=100, seed=23))
        assert result.warnings

    def test_multinomial_counts_partition_shots(self):
        stream = TrialStream(3, 0)
        counts = mc._multinomial_counts(stream, 1000, np.array([0.1, 0.2, 0.3, 0.4]))
        assert counts.sum() == 1000
        assert np.all(counts >= 0)


class TestBinomialSimulator:
    def test_single_shot_perfect_baseline(self):
        # q0 = 1 rejects on any failure; with q1 = 0.5 and one shot the
        # detection rate is exactly the failure probability 1/2
        config = McConfig(trials=100_000, seed=31)
        result = simulate_binomial_detection(1.0, 0.5, 1, 0.05, config)
        se = math.sqrt(0.25 / config.trials)
        assert abs(result.estimate - 0.5) <= 4.0 * se

    def test_planned_shots_reach_target_power(self):
        config = McConfig(trials=3_000, seed=32)
        result = simulate_binomial_detection(1.0, 0.99, 2149, 0.01, config)
        assert result.estimate >= 0.99 - 0.01

    def test_rejects_degraded_above_baseline(self):
        with pytest.raises(BaselineNotAboveTarget):
            simulate_binomial_detection(0.9, 0.95, 100, 0.05, McConfig(trials=10, seed=1))


class TestGridOracle:
    def test_matches_minimizer_on_mixed_pairs(self, rng):
        for _ in range(8):
            rho = random_density(rng, rng.integers(1, 3))
            sigma = random_density(rng, rho.qubits)
            q_min, s_min = qcb_grid_oracle(rho, sigma, grid_points=20_001)
            result = qcb_q(rho, sigma)
            assert result.q == pytest.approx(q_min, abs=1e-6)
            assert 0.0 <= s_min <= 1.0

    def test_handles_pure_states(self, rng):
        a, b = random_pure(rng, 1), random_pure(rng, 1)
        q_min, _ = qcb_grid_oracle(a, b, grid_points=5_001)
        assert qcb_q(a, b).q == pytest.approx(q_min, abs=1e-8)
