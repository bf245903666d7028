import math

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from catrepeater.herald import LinkConfig, ratio_for_zeta
from catrepeater.timing import (
    AttemptModel,
    FiberModel,
    attempt_stats,
    diff_distribution,
    link_success_from_distance,
    sample_attempts,
    simulate_attempts,
    transmittance,
)
from oracles import FROZEN, equal_p_wait, geometric_diff_total

probs = st.floats(0.01, 1.0)


def test_transmittance_examples():
    assert transmittance(0.0) == 1.0
    assert transmittance(50.0, 0.2) == pytest.approx(0.1, rel=1e-15)
    assert transmittance(15.0, 0.2) == pytest.approx(0.501187233627272, rel=1e-14)
    with pytest.raises(ValueError):
        transmittance(-1.0)


def test_fiber_model():
    f = FiberModel(L=50.0)
    assert f.eta == pytest.approx(0.1)
    assert f.attempt_time == pytest.approx(50.0 / 2e5)
    assert f.link_length == 100.0
    assert FiberModel(L=30.0, v=3e5).attempt_time == pytest.approx(1e-4)
    with pytest.raises(ValueError):
        FiberModel(L=1.0, v=0.0)


def test_diff_distribution_examples():
    m = AttemptModel(1.0, 1.0)
    assert diff_distribution(0, m) == 1.0
    assert diff_distribution(3, m) == 0.0
    m = AttemptModel(0.3, 0.7)
    total = math.fsum(diff_distribution(k, m) for k in range(400))
    assert total == pytest.approx(geometric_diff_total(0.3, 0.7), abs=1e-12)
    assert total == pytest.approx(1.0, abs=1e-12)


def test_attempt_model_validation():
    with pytest.raises(ValueError):
        AttemptModel(0.0, 0.5)


def test_attempt_stats_examples():
    s = attempt_stats(AttemptModel(1.0, 1.0))
    assert (s.n_w, s.n_t, s.n_max, s.n_min) == (0.0, 2.0, 1.0, 1.0)
    assert equal_p_wait(0.25) == pytest.approx(FROZEN["equal_p_wait(0.25)"], abs=1e-15)
    assert attempt_stats(AttemptModel(0.25, 0.25)).n_w == pytest.approx(FROZEN["equal_p_wait(0.25)"], rel=1e-14)


def test_millisecond_waiting_time_at_50_km():
    fiber = FiberModel(L=50.0)
    p = link_success_from_distance(LinkConfig(0.01, 0.2, 1.0, 0.9), fiber, "--", "odd")
    s = attempt_stats(AttemptModel(p, p), fiber)
    assert 1e-4 <= s.t_wait <= 1e-1
    assert s.t_prep == pytest.approx(s.n_max * fiber.attempt_time)


def test_link_success_examples():
    cfg = LinkConfig(0.3, ratio_for_zeta(0.5, 1.0, 1.0), 1.0, 1.0)
    assert link_success_from_distance(cfg, FiberModel(L=0.0), "--", "odd") == pytest.approx(0.5, abs=1e-12)
    zeta = 0.9 * 0.1 * 0.2
    p = link_success_from_distance(LinkConfig(1e-7, 0.2, 1.0, 0.9), FiberModel(L=50.0), "--", "odd")
    assert p == pytest.approx(2 * zeta * (1 - zeta), rel=1e-6)
    cfg = LinkConfig(0.05, 0.2, 1.0, 0.9)
    seq = [link_success_from_distance(cfg, FiberModel(L=L), "--", "odd") for L in np.linspace(0, 100, 51)]
    assert all(b <= a for a, b in zip(seq, seq[1:]))


def test_within_lifetime():
    s = attempt_stats(AttemptModel(0.1, 0.2), FiberModel(L=20.0))
    assert s.within_lifetime(s.t_wait * 1.01)
    assert not s.within_lifetime(s.t_wait)


def test_simulate_trivial_and_errors():
    mc = simulate_attempts(AttemptModel(1.0, 1.0), 1000, seed=42)
    assert mc.mean == (0.0, 2.0, 1.0, 1.0)
    with pytest.raises(ValueError):
        simulate_attempts(AttemptModel(0.5, 0.5), 0)


def test_simulate_is_deterministic_and_worker_independent():
    m = AttemptModel(0.3, 0.7)
    a = simulate_attempts(m, 200_000, seed=7)
    b = simulate_attempts(m, 200_000, seed=7)
    c = simulate_attempts(m, 200_000, seed=7, workers=4)
    assert a == b == c
    assert simulate_attempts(m, 200_000, seed=8) != a


def test_simulate_matches_analytic():
    m = AttemptModel(0.3, 0.7)
    mc = simulate_attempts(m, 1_000_000, seed=2024)
    ref = attempt_stats(m)
    for got, se, want in zip(mc.mean, mc.stderr, (ref.n_w, ref.n_t, ref.n_max, ref.n_min)):
        assert abs(got - want) < 4 * se


@pytest.mark.parametrize("p1,p2", [(0.05, 0.05), (0.02, 0.4), (0.9, 0.6)])
def test_simulate_grid(p1, p2):
    m = AttemptModel(p1, p2)
    mc = simulate_attempts(m, 300_000, seed=11)
    ref = attempt_stats(m)
    for got, se, want in zip(mc.mean, mc.stderr, (ref.n_w, ref.n_t, ref.n_max, ref.n_min)):
        assert abs(got - want) < 4 * se


def test_geometric_sampler_distribution():
    rng = np.random.Generator(np.random.Philox(3))
    n = sample_attempts(0.2, 400_000, rng)
    assert n.min() >= 1
    freq = np.bincount(n, minlength=6)[1:6] / n.size
    expect = 0.2 * 0.8 ** np.arange(5)
    assert np.allclose(freq, expect, atol=4e-3)


@given(probs, probs)
def test_diff_distribution_sums_to_one(p1, p2):
    assert geometric_diff_total(p1, p2) == pytest.approx(1.0, abs=1e-12)
    m = AttemptModel(p1, p2)
    q = max(m.q1, m.q2)
    K = 20 if q == 0 else int(math.ceil(math.log(1e-17) / math.log(q))) + 2
    total = math.fsum(diff_distribution(k, m) for k in range(K))
    assert abs(total - 1.0) < 1e-12


@given(probs, probs, st.floats(0.0, 100.0))
def test_stats_identities(p1, p2, L):
    s = attempt_stats(AttemptModel(p1, p2), FiberModel(L=L))
    assert s.n_max + s.n_min == pytest.approx(s.n_t, rel=1e-14)
    assert s.n_max - s.n_min == pytest.approx(s.n_w, rel=1e-14, abs=1e-14)
    assert s.t_wait == pytest.approx(s.n_w * L / 2e5, rel=1e-14, abs=1e-300)  # subnormal L rounds per unit in the last place


@given(probs)
def test_equal_probability_wait(p):
    assert attempt_stats(AttemptModel(p, p)).n_w == pytest.approx(equal_p_wait(p), rel=1e-12, abs=1e-15)
