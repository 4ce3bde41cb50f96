import math

import numpy as np
import pytest

from lpq import (
    NonTermination,
    OracleHandle,
    VerificationFailed,
    amplified_measure_member,
    build_oracle,
    exhaust_offsets,
    find_offset_counting,
    find_offset_decreasing,
    g_function,
    grover_schedule,
)
from lpq import test_pair as pair_probe
from lpq import test_period_known_s as period_probe

SPEC163 = build_oracle(16, 3, 4, 1)


def handle163():
    return OracleHandle(SPEC163)


class TestPeriodProbes:
    def test_true_pair(self):
        assert period_probe(handle163(), 1, 4, 3)

    def test_too_small(self):
        assert not period_probe(handle163(), 1, 2, 3)

    def test_too_large(self):
        assert not period_probe(handle163(), 1, 6, 3)

    def test_costs_three_queries(self):
        h = handle163()
        period_probe(h, 1, 4, 3)
        assert h.query_count == 3

    def test_exhaustive_small(self):
        # the probes accept exactly the true period, for every p1 <= n
        for n, m, p, s in [(64, 4, 8, 3), (100, 5, 9, 2), (121, 3, 11, 7)]:
            h = OracleHandle(build_oracle(n, m, p, s))
            for p1 in range(1, n + 1):
                assert period_probe(h, s, p1, m) == (p1 == p)


class TestPairProbes:
    def test_true_pair(self):
        assert pair_probe(handle163(), 1, 4, 3)

    def test_offset_too_small(self):
        assert not pair_probe(handle163(), 0, 4, 3)

    def test_offset_shifted_by_period(self):
        # s1 = s + p pushes the last probe past the top of the marked set
        assert not pair_probe(handle163(), 5, 4, 3)

    def test_out_of_range_probe_is_zero_not_error(self):
        assert not pair_probe(handle163(), 14, 4, 3)


class TestExhaustOffsets:
    def test_finds_true_pair(self):
        assert exhaust_offsets(handle163(), range(4), 4, 3) == (1, 4)

    def test_true_offset_missing(self):
        assert exhaust_offsets(handle163(), [2, 3], 4, 3) is None

    def test_wrong_period(self):
        assert exhaust_offsets(handle163(), range(16), 3, 3) is None


class TestAmplifiedMeasurement:
    def test_quarter_ratio_always_member(self):
        # m/n = 1/4 amplifies to probability 1 on the marked set
        spec = build_oracle(16, 4, 4, 1, strict=False)
        h = OracleHandle(spec)
        members = set(spec.members())
        assert grover_schedule(16, 4).good_probability == pytest.approx(1.0, abs=1e-12)
        for seed in range(200):
            assert amplified_measure_member(h, seed) in members

    def test_membership_frequency_three_sigma(self):
        spec = build_oracle(64, 3, 8, 2)
        h = OracleHandle(spec)
        members = set(spec.members())
        good = grover_schedule(64, 3).good_probability
        draws = 10_000
        hits = sum(amplified_measure_member(h, seed) in members for seed in range(draws))
        sigma = math.sqrt(good * (1 - good) / draws)
        assert abs(hits / draws - good) <= 3 * sigma


class TestGFunction:
    def test_ladder_from_9(self):
        assert [g_function(x, 9, 4) for x in range(3)] == [5, 1, 0]

    def test_below_period_clamps(self):
        assert all(g_function(x, 3, 4) == 0 for x in range(5))

    def test_monotone(self):
        for x in range(20):
            assert g_function(x + 1, 57, 5) <= g_function(x, 57, 5)


def _lying_counter_seed():
    # a seed whose first uniform draw exceeds 2/3, so the counter misreports
    for seed in range(1000):
        if np.random.default_rng(seed).random() >= 2 / 3:
            return seed
    raise AssertionError("no lying seed found")


def _honest_counter_seed():
    for seed in range(1000):
        if np.random.default_rng(seed).random() < 2 / 3:
            return seed
    raise AssertionError("no honest seed found")


class TestCountingSearch:
    def test_ladder_count_from_9(self):
        # x1 = 9 = s + 2p: marks at g in {5, 1}, so R = 2 and s = 9 - 2*4
        result = find_offset_counting(handle163(), 4, 3, seed=_honest_counter_seed(), x_start=9)
        assert result.offset == 1
        assert result.counting_cost == pytest.approx(math.sqrt(3 * 3))

    def test_start_at_offset_returns_directly(self):
        result = find_offset_counting(handle163(), 4, 3, seed=0, x_start=1)
        assert result.offset == 1
        assert result.iterations == 0

    def test_wrong_period_fails_verification(self):
        with pytest.raises(VerificationFailed):
            find_offset_counting(handle163(), 3, 3, seed=_honest_counter_seed(), x_start=9)

    def test_lying_counter_fails_verification(self):
        with pytest.raises(VerificationFailed):
            find_offset_counting(handle163(), 4, 3, seed=_lying_counter_seed(), x_start=9)

    def test_single_member(self):
        spec = build_oracle(10, 1, 1, 7)
        result = find_offset_counting(OracleHandle(spec), 1, 1, seed=0)
        assert result.offset == 7

    def test_multiple_of_true_period_rejected(self):
        spec = build_oracle(256, 8, 4, 3)
        h = OracleHandle(spec)
        with pytest.raises(VerificationFailed):
            find_offset_counting(h, 8, 8, seed=_honest_counter_seed(), x_start=3 + 7 * 4)


class TestDecreasingSearch:
    @pytest.mark.parametrize("start_r", [1, 2])
    def test_recovers_from_any_member(self, start_r):
        result = find_offset_decreasing(handle163(), 4, 3, seed=11, x_start=1 + start_r * 4)
        assert result.offset == 1
        assert result.history == sorted(result.history, reverse=True)
        assert len(set(result.history)) == len(result.history)

    def test_seeded_runs_all_recover(self):
        spec = build_oracle(512, 16, 8, 37)
        for seed in range(50):
            result = find_offset_decreasing(OracleHandle(spec), 8, 16, seed=seed)
            assert result.offset == 37
            hist = result.history
            assert all(a > b for a, b in zip(hist, hist[1:]))

    def test_single_member_zero_iterations(self):
        spec = build_oracle(10, 1, 1, 7)
        result = find_offset_decreasing(OracleHandle(spec), 1, 1, seed=4)
        assert result.offset == 7
        assert result.iterations == 0

    def test_wrong_period_fails(self):
        with pytest.raises(VerificationFailed):
            find_offset_decreasing(handle163(), 3, 3, seed=2)

    def test_query_accounting(self):
        spec = build_oracle(1024, 32, 16, 100)
        t = 32  # smallest power of two >= m
        for seed in range(20):
            h = OracleHandle(spec)
            result = find_offset_decreasing(h, 16, 32, seed=seed)
            assert result.oracle_queries == h.query_count
            assert result.oracle_queries <= (result.iterations + 1) * (t + 3) + 16

    def test_iteration_guard_on_degenerate_candidate(self):
        # a zero period candidate pins the walk in place; the guard fires
        with pytest.raises(NonTermination):
            find_offset_decreasing(handle163(), 0, 3, seed=0, x_start=9)


def test_mean_rounds_scale_with_log_m():
    spec = build_oracle(4096, 32, 64, 5)
    rounds = []
    for seed in range(100):
        result = find_offset_decreasing(OracleHandle(spec), 64, 32, seed=seed)
        assert result.offset == 5
        rounds.append(result.iterations)
    assert np.mean(rounds) <= 4 * math.log2(32)
