import math

import pytest
from hypothesis import assume, given
from hypothesis import strategies as st

from catrepeater.errors import DegenerateInputError
from catrepeater.fock_oracle import oracle_click_probs
from catrepeater.photodetect import (
    ChannelParams,
    ClickParity,
    DetectorParams,
    RelayStateLabel,
    click_weight,
    loss_split,
    multimode_effective,
    parity_prob,
    photocount_prob,
)
from oracles import FROZEN, kk_count_weight, poisson_pmf

PLUS, MINUS, VAC = RelayStateLabel.PLUS_CAT, RelayStateLabel.MINUS_CAT, RelayStateLabel.VACUUM
PARITIES = list(ClickParity)
unit = st.floats(0.0, 1.0)
photons = st.floats(1e-3, 12.0)


def test_loss_split_examples():
    assert loss_split(3.0, ChannelParams(1.0)) == (loss_split(3.0, 1.0))
    s = loss_split(3.0, 1.0)
    assert (s.n_signal, s.n_env) == (3.0, 0.0)
    s = loss_split(3.0, 0.0)
    assert (s.n_signal, s.n_env) == (0.0, 3.0)
    s = loss_split(2.0, 0.5)
    assert (s.n_signal, s.n_env) == (1.0, 1.0)
    with pytest.raises(ValueError):
        ChannelParams(1.5)
    with pytest.raises(ValueError):
        DetectorParams(-0.1)


@pytest.mark.parametrize("n", [0.01, 0.7, 5.0])
def test_perfect_detector_parity_zeros(n):
    assert click_weight(ClickParity.EVEN, -1, n, 1.0) == 0.0
    assert click_weight(ClickParity.ODD, 1, n, 1.0) == 0.0


def test_click_weight_rejects_vacuum_count():
    with pytest.raises(ValueError):
        click_weight(0, 1, 1.0, 0.9)
    with pytest.raises(ValueError):
        click_weight(ClickParity.NO_CLICK, 1, 1.0, 0.9)


def test_poisson_oracle_frozen():
    assert poisson_pmf(1, 0.5) == pytest.approx(FROZEN["poisson(0.5, k=1)"], abs=1e-16)


@pytest.mark.parametrize("mu", [1, -1])
@pytest.mark.parametrize("n_s,xi", [(0.3, 0.9), (2.0, 0.5), (6.0, 1.0), (1.0, 0.0)])
def test_count_weights_match_direct_formula_and_parity_sums(mu, n_s, xi):
    ks = range(1, 80)
    weights = [click_weight(k, mu, n_s, xi) for k in ks]
    for k, w in zip(ks, weights):
        assert w == pytest.approx(kk_count_weight(k, mu, n_s, xi), rel=1e-12, abs=1e-300)
    even = math.fsum(weights[1::2])
    odd = math.fsum(weights[0::2])
    assert abs(even - click_weight("even", mu, n_s, xi)) < 1e-12
    assert abs(odd - click_weight("odd", mu, n_s, xi)) < 1e-12


def test_vacuum_state():
    assert photocount_prob(0, VAC, 1.0, 0.5, 0.5) == 1.0
    assert photocount_prob(3, VAC, 1.0, 0.5, 0.5) == 0.0
    assert parity_prob("noclick", VAC, 1.0, 0.5, 0.5) == 1.0
    assert parity_prob("even", VAC, 1.0, 0.5, 0.5) == 0.0


def test_perfect_discrimination():
    for k in (1, 3, 5):
        assert photocount_prob(k, PLUS, 1.3, 1.0, 1.0) == 0.0
    assert parity_prob("even", PLUS, 1.3, 1.0, 1.0) == pytest.approx(1.0, abs=1e-15)
    assert parity_prob("odd", PLUS, 1.3, 1.0, 1.0) == 0.0
    assert parity_prob("noclick", PLUS, 1.3, 1.0, 1.0) == pytest.approx(0.0, abs=1e-15)
    assert parity_prob("odd", MINUS, 1.3, 1.0, 1.0) == pytest.approx(1.0, abs=1e-15)


def test_degenerate_minus_cat():
    with pytest.raises(DegenerateInputError):
        photocount_prob(1, MINUS, 0.0, 0.8, 0.9)
    with pytest.raises(DegenerateInputError):
        parity_prob("odd", PLUS, 0.0, 0.8, 0.9)


def test_photocount_matches_oracle_example():
    o = oracle_click_probs(-1, 1.0, 0.8, 0.9)
    assert abs(photocount_prob(1, MINUS, 1.0, 0.8, 0.9) - o["counts"][1]) < 1e-8


@pytest.mark.parametrize("sign", [1, -1])
@pytest.mark.parametrize("n,eta,xi", [(0.2, 0.9, 0.95), (1.0, 0.5, 0.7), (4.0, 0.95, 0.9), (2.5, 0.3, 1.0)])
def test_oracle_equivalence(sign, n, eta, xi):
    state = RelayStateLabel.from_sign(sign)
    o = oracle_click_probs(sign, n, eta, xi, k_max=12)
    for k, ref in enumerate(o["counts"]):
        assert abs(photocount_prob(k, state, n, eta, xi) - ref) < 1e-8
    for p in ("noclick", "even", "odd"):
        assert abs(parity_prob(p, state, n, eta, xi) - o[p]) < 1e-8


def test_multimode_examples():
    assert multimode_effective([(0.4, 0.7)]) == (0.4, pytest.approx(0.28))
    n, w = multimode_effective([(0.4, 0.7), (0.4, 0.7)])
    assert (n, w) == (pytest.approx(0.8), pytest.approx(0.56))
    n, w = multimode_effective([(0.3, 0.9), (0.2, 0.5)])
    assert n == pytest.approx(0.5, abs=1e-15) and w == pytest.approx(0.37, abs=1e-15)


def test_multimode_uniform_efficiency_matches_single_mode():
    agg = multimode_effective([(0.4, 0.8), (0.6, 0.8)])
    for p in PARITIES:
        assert parity_prob(p, MINUS, 0.0, 0.7, 0.0, multimode=agg) == pytest.approx(
            parity_prob(p, MINUS, 1.0, 0.7, 0.8), abs=1e-15
        )


@given(st.sampled_from([PLUS, MINUS]), photons, unit, unit)
def test_completeness(state, n, eta, xi):
    total = math.fsum(parity_prob(p, state, n, eta, xi) for p in PARITIES)
    assert abs(total - 1.0) < 1e-12


@given(st.sampled_from([PLUS, MINUS]), st.floats(1e-2, 4.0), unit, unit)
def test_count_series_converges(state, n, eta, xi):
    K = 60
    total = math.fsum(photocount_prob(k, state, n, eta, xi) for k in range(K + 1))
    # photocounts of a cat are dominated by twice a Poisson tail of mean n
    tail = 4 * math.fsum(poisson_pmf(k, n) for k in range(K + 1, K + 60))
    assert total <= 1.0 + 1e-12
    assert 1.0 - total <= tail + 1e-12


@given(st.sampled_from([PLUS, MINUS]), photons, unit, unit, unit)
def test_no_click_monotone(state, n, eta, xi1, xi2):
    lo, hi = sorted((xi1, xi2))
    assert parity_prob("noclick", state, n, eta, hi) <= parity_prob("noclick", state, n, eta, lo) + 1e-15
    assert parity_prob("noclick", state, n, hi, eta) <= parity_prob("noclick", state, n, lo, eta) + 1e-15
