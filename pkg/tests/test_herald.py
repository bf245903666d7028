import math

import numpy as np
import pytest
from hypothesis import assume, given
from hypothesis import strategies as st

from catrepeater.errors import UndefinedFidelityError
from catrepeater.herald import (
    LinkConfig,
    conditional_click_prob,
    herald,
    heralded_fidelity,
    heralded_fidelity_bayes,
    heralded_state,
    ratio_for_zeta,
    success_prob,
    success_prob_bayes,
)
from catrepeater.link_gen import PairSymmetry, outcome_probs
from catrepeater.photodetect import ClickParity, RelayStateLabel, parity_prob

PAIRS = ["--", "++", "+-", "-+"]
SAME = ["--", "++"]
PARITIES = ["even", "odd"]
unit = st.floats(0.0, 1.0)


@st.composite
def configs(draw, a_lo=1e-3, a_hi=20.0):
    a = draw(st.floats(a_lo, a_hi))
    r = draw(st.floats(0.01, 0.99))
    eta = draw(st.floats(0.05, 1.0))
    xi = draw(st.floats(0.05, 1.0))
    return LinkConfig(a, r, eta, xi)


def test_link_config_derived_values():
    cfg = LinkConfig(0.5, 0.2, 0.95, 0.9)
    assert cfg.zeta == pytest.approx(0.171)
    assert cfg.relay_photons == pytest.approx(0.2)
    assert cfg.stored_photons == pytest.approx(0.4)
    with pytest.raises(ValueError):
        LinkConfig(0.5, 1.2)
    assert ratio_for_zeta(0.5, 0.95, 0.9) == pytest.approx(0.5 / 0.855)
    with pytest.raises(ValueError):
        ratio_for_zeta(0.9, 0.8, 0.9)


@pytest.mark.parametrize("zeta", [0.1, 0.3, 0.5])
def test_success_small_amplitude(zeta):
    cfg = LinkConfig(1e-7, ratio_for_zeta(zeta, 0.95, 0.9), 0.95, 0.9)
    assert success_prob("--", "odd", cfg) == pytest.approx(zeta * (1 - zeta), rel=1e-6)
    assert success_prob("+-", "odd", cfg) == pytest.approx(zeta / 2, rel=1e-6)


@pytest.mark.parametrize("a", [1e-4, 0.3, 2.0, 40.0])
def test_success_quarter_at_half_zeta(a):
    cfg = LinkConfig(a, ratio_for_zeta(0.5, 0.95, 0.9), 0.95, 0.9)
    assert success_prob("--", "odd", cfg) == pytest.approx(0.25, abs=1e-12)
    assert success_prob("--", "odd", cfg, both_detectors=True) == pytest.approx(0.5, abs=1e-12)


@pytest.mark.parametrize("pair", SAME)
@pytest.mark.parametrize("r", [0.2, 0.5, 0.9])
def test_zero_amplitude_fidelities_same_symmetry(pair, r):
    cfg = LinkConfig(0.0, r, 0.95, 0.9)
    assert heralded_fidelity(pair, "even", cfg)[0] == 1.0
    assert heralded_fidelity(pair, "odd", cfg)[1] == pytest.approx((1 - r) / (1 - cfg.zeta), abs=1e-15)


@pytest.mark.parametrize("r", [0.2, 0.5, 0.9])
def test_zero_amplitude_fidelities_cross(r):
    cfg = LinkConfig(0.0, r, 0.95, 0.9)
    # opposite-symmetry pairs swap the roles of the two parities
    assert heralded_fidelity("+-", "odd", cfg)[0] == 1.0
    assert heralded_fidelity("+-", "even", cfg)[1] == pytest.approx((1 - r) / (1 - cfg.zeta), abs=1e-15)


@pytest.mark.parametrize("pair", PAIRS)
@pytest.mark.parametrize("parity", PARITIES)
@pytest.mark.parametrize("r,eta,xi", [(0.5, 0.5, 0.9), (0.7, 0.8, 0.5), (0.4, 0.5, 0.5)])
def test_large_amplitude_half(pair, parity, r, eta, xi):
    f_plus, f_minus = heralded_fidelity(pair, parity, LinkConfig(50.0, r, eta, xi))
    assert abs(f_plus - 0.5) < 1e-8 and abs(f_minus - 0.5) < 1e-8


def test_lossless_relay_keeps_odd_fidelity_one():
    for a in (0.1, 3.0, 50.0):
        assert heralded_fidelity("--", "odd", LinkConfig(a, 0.4))[1] == 1.0


def test_undefined_fidelity():
    with pytest.raises(UndefinedFidelityError):
        heralded_fidelity("--", "odd", LinkConfig(0.0, 1.0))


def test_heralded_state_ideal_cross_even():
    st_ = heralded_state("+-", "even", LinkConfig(0.6, 1e-9))
    assert st_.weights == (pytest.approx(0.0, abs=1e-8), pytest.approx(1.0, abs=1e-8))
    assert sum(st_.weights) == pytest.approx(1.0, abs=1e-15)
    assert st_.stored_photons == pytest.approx(0.6)


def test_heralded_state_matches_bayes():
    cfg = LinkConfig(0.5, 0.2, 0.95, 0.9)
    st_ = heralded_state("--", "odd", cfg)
    probs = outcome_probs(PairSymmetry(-1, -1), 0.2, 0.5)
    n = cfg.relay_photons
    t_plus = parity_prob("odd", RelayStateLabel.PLUS_CAT, n, 0.95, 0.9) * probs.p_plus
    t_minus = parity_prob("odd", RelayStateLabel.MINUS_CAT, n, 0.95, 0.9) * probs.p_minus
    assert abs(st_.f_plus - t_plus / (t_plus + t_minus)) < 1e-12
    assert abs(st_.f_minus - t_minus / (t_plus + t_minus)) < 1e-12
    assert heralded_state("--", "odd", cfg, detector="D").bob_sign == -1
    with pytest.raises(ValueError):
        heralded_state("--", "odd", cfg, detector="E")


def test_conditional_click_routing():
    cfg = LinkConfig(0.8, 0.3, 0.9, 0.85)
    n = cfg.relay_photons
    plus = parity_prob("even", RelayStateLabel.PLUS_CAT, n, 0.9, 0.85)
    minus = parity_prob("even", RelayStateLabel.MINUS_CAT, n, 0.9, 0.85)
    assert conditional_click_prob("even", 1, "++", cfg) == plus
    assert conditional_click_prob("even", 1, "+-", cfg) == minus
    assert conditional_click_prob("odd", -1, "--", LinkConfig(0.8, 0.3)) == pytest.approx(1.0, abs=1e-15)
    assert conditional_click_prob(2, 1, "--", cfg) > 0


def test_herald_bundle():
    cfg = LinkConfig(0.5, 0.2, 0.95, 0.9)
    res = herald("--", "odd", cfg, both_detectors=True)
    assert res.p_success == 2 * success_prob("--", "odd", cfg)
    assert res.fidelity(-1) == res.f_minus


@given(st.sampled_from(PAIRS), st.sampled_from(PARITIES), configs())
def test_closed_form_equals_definition(pair, parity, cfg):
    assert abs(success_prob(pair, parity, cfg) - success_prob_bayes(pair, parity, cfg)) < 1e-10


@given(st.sampled_from(PAIRS), st.sampled_from(PARITIES), configs(a_hi=15.0))
def test_bayes_consistency(pair, parity, cfg):
    ps = success_prob(pair, parity, cfg)
    assume(ps > 1e-300)
    f = heralded_fidelity(pair, parity, cfg)
    p = PairSymmetry.parse(pair)
    probs = outcome_probs(p, cfg.r_bs, cfg.a)
    for i, mu in enumerate((1, -1)):
        click = conditional_click_prob(parity, mu, p, cfg)
        assert abs(f[i] * ps - click * probs[mu]) < 1e-12
    fb = heralded_fidelity_bayes(pair, parity, cfg)
    assert abs(f[0] - fb[0]) < 1e-10 and sum(f) == pytest.approx(1.0, abs=1e-15)


@given(configs())
def test_fidelity_symmetry(cfg):
    for same in SAME:
        assert heralded_fidelity(same, "even", cfg) == heralded_fidelity("+-", "odd", cfg)
        assert heralded_fidelity(same, "odd", cfg) == heralded_fidelity("-+", "even", cfg)


@given(st.sampled_from(PARITIES), configs())
def test_tanh_squared_law(parity, cfg):
    t2 = math.tanh(cfg.a) ** 2
    assert abs(success_prob("++", parity, cfg) - t2 * success_prob("--", parity, cfg)) < 1e-12


@given(configs())
def test_odd_success_bound(cfg):
    p = 2 * success_prob("--", "odd", cfg)
    assert p <= 0.5 + 1e-15
    if abs(cfg.zeta - 0.5) > 1e-3 and cfg.a < 5:
        assert p < 0.5


@given(st.floats(0.02, 0.98), st.floats(0.1, 0.99))
def test_fidelity_decay_monotone(r, frac):
    zeta = r * frac
    eta_xi = zeta / r
    grid = np.linspace(0.0, 20.0, 401)
    odd = [heralded_fidelity("--", "odd", LinkConfig(a, r, 1.0, eta_xi))[1] for a in grid]
    even = [heralded_fidelity("--", "even", LinkConfig(a, r, 1.0, eta_xi))[0] for a in grid]
    assert all(y <= x + 1e-15 for x, y in zip(even, even[1:]))
    # f_minus(odd) moves monotonically toward 1/2; it decays when it starts above 1/2
    dist = [abs(f - 0.5) for f in odd]
    assert all(y <= x + 1e-15 for x, y in zip(dist, dist[1:]))
    if 1.0 - r >= r - zeta:
        assert all(y <= x + 1e-15 for x, y in zip(odd, odd[1:]))
