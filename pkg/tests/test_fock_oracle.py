import json
import math

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from catrepeater.errors import DegenerateInputError, TailBoundError
from catrepeater.fock_oracle import (
    TAIL_TOL,
    MAX_MODES,
    FockVector,
    MultimodeFock,
    beam_splitter_apply,
    cat_fock,
    coherent_fock,
    cutoff_for,
    detector_weights,
    environment_trace_error,
    joint_state,
    joint_state_decomposition_error,
    loss_kraus,
    lossy_density,
    lossy_detector_prob,
    oracle_click_probs,
    product_state,
    verify,
)
from oracles import FROZEN, even_cat_coeff, poisson_pmf

amps = st.complex_numbers(max_magnitude=2.0)


def fidelity(u, v):
    return abs(np.vdot(u, v)) ** 2 / (np.vdot(u, u).real * np.vdot(v, v).real)


def test_coherent_examples():
    vac = coherent_fock(0.0)
    assert vac.coeffs[0] == 1.0 and not np.any(vac.coeffs[1:])
    for b in (0.3, 1.0, 2.0):
        plus, minus = coherent_fock(b, 40), coherent_fock(-b, 40)
        assert plus.inner(minus).real == pytest.approx(math.exp(-2 * b * b), abs=1e-10)
        assert abs(plus.norm_sq() - 1.0) < 1e-12


def test_coherent_tail_error():
    with pytest.raises(TailBoundError):
        coherent_fock(2.0, cutoff=5)
    with pytest.raises(TailBoundError):
        cutoff_for(80.0)


def test_cat_supports():
    odd = cat_fock(0.8, -1)
    assert np.all(odd.coeffs[0::2] == 0)
    even = cat_fock(0.8, 1)
    assert np.all(even.coeffs[1::2] == 0)
    mod = cat_fock(0.8, 1, modified=True)
    assert mod.coeffs[0] == 0 and mod.norm_sq() == pytest.approx(1.0)
    with pytest.raises(DegenerateInputError):
        cat_fock(0.0, -1)
    with pytest.raises(ValueError):
        cat_fock(0.5, -1, modified=True)


def test_even_cat_coefficients_match_direct_expansion():
    v = cat_fock(1.0, 1)
    for n in range(12):
        assert v.coeffs[n].real == pytest.approx(even_cat_coeff(n, 1.0), rel=1e-12, abs=1e-300)


def test_beam_splitter_coherent_rules():
    a = 0.9 + 0.3j
    c = cutoff_for(2 * abs(a) ** 2, 1e-14)
    out = beam_splitter_apply(product_state(coherent_fock(a, c), coherent_fock(a, c)), 0, 1).tensor
    target = np.multiply.outer(coherent_fock(math.sqrt(2) * a, c, 1.0).coeffs, coherent_fock(0, c).coeffs)
    assert fidelity(out.ravel(), target.ravel()) >= 1 - 1e-10
    out = beam_splitter_apply(product_state(coherent_fock(a, c), coherent_fock(-a, c)), 0, 1).tensor
    target = np.multiply.outer(coherent_fock(0, c).coeffs, coherent_fock(math.sqrt(2) * a, c, 1.0).coeffs)
    assert fidelity(out.ravel(), target.ravel()) >= 1 - 1e-10


def test_beam_splitter_same_mode_rejected():
    with pytest.raises(ValueError):
        beam_splitter_apply(product_state(coherent_fock(0.1), coherent_fock(0.1)), 1, 1)


def test_beam_splitter_reports_overflow():
    state = product_state(coherent_fock(1.5, 12, tol=1.0), coherent_fock(1.5, 12, tol=1.0))
    with pytest.raises(TailBoundError):
        beam_splitter_apply(state, 0, 1)


def test_mode_guard():
    with pytest.raises(ValueError):
        MultimodeFock(np.zeros((2,) * (MAX_MODES + 1)))


def test_detector_examples():
    v = cat_fock(0.7, -1)
    for k in range(5):
        assert lossy_detector_prob(v, k, 1.0) == pytest.approx(abs(v.coeffs[k]) ** 2, abs=1e-15)
    assert lossy_detector_prob(v, 0, 0.0) == pytest.approx(1.0, abs=1e-15)
    coh = coherent_fock(1.0)
    p = lossy_detector_prob(coh, 1, 0.5)
    assert p == pytest.approx(poisson_pmf(1, 0.5), abs=1e-12)
    assert p == pytest.approx(FROZEN["poisson(0.5, k=1)"], abs=1e-12)


def test_povm_and_kraus_completeness():
    c = 20
    total = sum(detector_weights(k, 0.37, c) for k in range(c + 1))
    assert np.allclose(total, 1.0, atol=1e-14)
    ops = loss_kraus(0.6, c)
    ident = sum(K.T @ K for K in ops)
    assert np.allclose(ident, np.eye(c + 1), atol=1e-12)


def test_kraus_and_stinespring_loss_agree():
    v = cat_fock(1.2, -1)
    rho = lossy_density(v, 0.7)
    kraus = sum(K @ np.outer(v.coeffs, v.coeffs.conj()) @ K.T for K in loss_kraus(0.7, v.cutoff))
    assert np.allclose(rho, kraus, atol=1e-13)


def test_joint_state_examples():
    vac = joint_state(1, 1, 0.0, 0.0, (3, 3)).tensor
    assert vac[0, 0] == pytest.approx(1.0) and np.sum(np.abs(vac) ** 2) == pytest.approx(1.0)
    js = joint_state(-1, -1, 0.8, 0.8)
    assert js.norm_sq() == pytest.approx(1.0, abs=1e-12)
    for pair in ((1, 1), (-1, -1), (1, -1), (-1, 1)):
        assert joint_state_decomposition_error(*pair, 0.8, 0.5) < 1e-10


@pytest.mark.parametrize("sign", [1, -1])
@pytest.mark.parametrize("n,eta", [(0.3, 0.9), (1.0, 0.5), (2.0, 0.2), (2.0, 0.95)])
def test_environment_trace_identity(sign, n, eta):
    assert environment_trace_error(n, eta, sign) < 1e-8


def test_cutoff_adequacy():
    base = oracle_click_probs(-1, 1.5, 0.8, 0.9)
    wide = cat_fock(math.sqrt(1.5), -1, cutoff=2 * base["cutoff"])
    rho = lossy_density(wide, 0.8)
    for k, p in enumerate(base["counts"]):
        assert abs(lossy_detector_prob(rho, k, 0.9) - p) < 1e-10


def test_verify_examples():
    rep = verify("link_probs", {"pair": "--", "r_bs": 0.2, "a": 1.0})
    assert rep.passed and rep.abs_diff < 1e-8
    rep = verify("parity_probs", {"sign": -1, "a": 1.0, "eta": 0.8, "xi": 0.9})
    assert rep.passed
    rep = verify("teleport_state", {"gamma_mag": 0.2, "alpha_mag": 0.2, "phi_c": 0.5}, tol=5e-3)
    assert rep.passed
    data = json.loads(rep.to_json())
    assert {"quantity", "analytic", "oracle", "abs_diff", "cutoff", "tail_bound"} <= set(data)


def test_verify_infeasible_and_unknown():
    rep = verify("link_probs", {"pair": "--", "r_bs": 0.2, "a": 9.0})
    assert not rep.feasible and not rep.passed and rep.message
    with pytest.raises(ValueError):
        verify("nonsense", {})


def test_report_difference_not_clamped():
    rep = verify("link_probs", {"pair": "+-", "r_bs": 0.3, "a": 0.5}, tol=0.0)
    assert not rep.passed
    assert rep.abs_diff == max(abs(x - y) for x, y in zip(rep.analytic, rep.oracle))


@given(st.integers(1, 12), st.integers(1, 12), st.floats(0.0, 1.0), st.integers(0, 2**32 - 1))
def test_beam_splitter_is_unitary(c1, c2, t, seed):
    rng = np.random.default_rng(seed)
    psi = rng.normal(size=(3, c1 + 1, c2 + 1)) + 1j * rng.normal(size=(3, c1 + 1, c2 + 1))
    # keep total photon number within both cutoffs so nothing is truncated
    n = np.add.outer(np.arange(c1 + 1), np.arange(c2 + 1))
    psi[:, n > min(c1, c2)] = 0
    psi /= np.linalg.norm(psi)
    out = beam_splitter_apply(MultimodeFock(psi), 1, 2, t).tensor
    assert abs(np.vdot(out, out).real - 1.0) < 1e-12


@given(amps)
def test_coherent_norm(alpha):
    vec = coherent_fock(alpha)
    # truncation drops at most TAIL_TOL of the mass and records it
    assert vec.tail <= TAIL_TOL
    assert abs(vec.norm_sq() + vec.tail - 1.0) < 1e-14
