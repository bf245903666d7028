"""Brute-force truncated Fock-space oracle.

States are dense coefficient tensors over at most four modes with a photon
cutoff of at most 64 per mode. Beam splitters act block-by-block on fixed
total photon number; loss is a beam splitter onto a vacuum environment mode
followed by a partial trace; detectors use the binomial number-basis POVM.
Nothing here calls the closed forms it is used to check, except inside
:func:`verify`, which compares the two.
"""

from __future__ import annotations

import json
import math
from dataclasses import asdict, dataclass, field
from functools import lru_cache

import numpy as np
from scipy.linalg import expm
from scipy.special import gammaln
from scipy.stats import binom, poisson

from .errors import DegenerateInputError, TailBoundError
from .modes import CatSymmetry, ModulatorSettings, modulate

__all__ = [
    "MAX_MODES",
    "MAX_CUTOFF",
    "TAIL_TOL",
    "FockVector",
    "MultimodeFock",
    "OracleReport",
    "cutoff_for",
    "cat_cutoff",
    "coherent_fock",
    "cat_fock",
    "product_state",
    "bs_block",
    "beam_splitter_apply",
    "loss_kraus",
    "lossy_density",
    "detector_weights",
    "lossy_detector_prob",
    "joint_state",
    "joint_state_decomposition_error",
    "environment_trace_error",
    "oracle_link_probs",
    "oracle_click_probs",
    "oracle_swap",
    "oracle_teleport",
    "verify",
]

MAX_MODES = 4
MAX_CUTOFF = 64
TAIL_TOL = 1e-12


@dataclass(frozen=True)
class FockVector:
    coeffs: np.ndarray
    tail: float = 0.0

    @property
    def cutoff(self) -> int:
        return len(self.coeffs) - 1

    def norm_sq(self) -> float:
        return float(np.vdot(self.coeffs, self.coeffs).real)

    def inner(self, other: "FockVector") -> complex:
        n = min(len(self.coeffs), len(other.coeffs))
        return complex(np.vdot(self.coeffs[:n], other.coeffs[:n]))


@dataclass(frozen=True)
class MultimodeFock:
    tensor: np.ndarray
    tail: float = 0.0

    def __post_init__(self):
        if self.tensor.ndim > MAX_MODES:
            raise ValueError(f"at most {MAX_MODES} modes are supported")

    @property
    def cutoffs(self) -> tuple[int, ...]:
        return tuple(s - 1 for s in self.tensor.shape)

    def norm_sq(self) -> float:
        return float(np.vdot(self.tensor, self.tensor).real)


@dataclass
class OracleReport:
    """Analytic vs oracle values; ``abs_diff`` is the largest componentwise difference."""

    quantity: str
    params: dict
    analytic: list
    oracle: list
    abs_diff: float
    tolerance: float
    cutoff: int
    tail_bound: float
    passed: bool
    feasible: bool = True
    message: str = ""
    labels: list = field(default_factory=list)

    def to_json(self) -> str:
        return json.dumps(asdict(self), sort_keys=True)


def cutoff_for(mean_photons: float, tol: float = TAIL_TOL) -> int:
    """Smallest cutoff whose Poisson tail mass at ``mean_photons`` is below ``tol``."""
    if mean_photons <= 0.0:
        return 1
    for c in range(1, MAX_CUTOFF + 1):
        if poisson.sf(c, mean_photons) < tol:
            return c
    raise TailBoundError(f"mean photon number {mean_photons} needs a cutoff above {MAX_CUTOFF}")


def coherent_fock(alpha: complex, cutoff: int | None = None, tol: float = TAIL_TOL) -> FockVector:
    """``e^{-|alpha|^2/2} alpha^n / sqrt(n!)`` for ``n <= cutoff``, built in log space."""
    alpha = complex(alpha)
    n2 = abs(alpha) ** 2
    if cutoff is None:
        cutoff = cutoff_for(n2, tol)
    if cutoff > MAX_CUTOFF:
        raise TailBoundError(f"cutoff {cutoff} exceeds {MAX_CUTOFF}")
    tail = float(poisson.sf(cutoff, n2)) if n2 > 0 else 0.0
    if tail > tol:
        raise TailBoundError(f"cutoff {cutoff} leaves tail mass {tail:.3g} at |alpha|^2={n2}")
    n = np.arange(cutoff + 1)
    coeffs = np.zeros(cutoff + 1, dtype=complex)
    if n2 == 0.0:
        coeffs[0] = 1.0
        return FockVector(coeffs, 0.0)
    logmag = -0.5 * n2 + n * math.log(abs(alpha)) - 0.5 * gammaln(n + 1)
    coeffs[:] = np.exp(logmag) * np.exp(1j * n * np.angle(alpha))
    return FockVector(coeffs, tail)


def _cat_scale(n: float, sign: int) -> float:
    """Lower bound on ``M / 4`` used to tighten tail tolerances for renormalized cats."""
    if n == 0.0:
        return 1.0 if sign > 0 else 0.0
    return 0.5 * (1.0 + sign * math.exp(-2.0 * n)) if sign > 0 else -0.5 * math.expm1(-2.0 * n)


def cat_cutoff(n: float, sign: int, tol: float = TAIL_TOL) -> int:
    """Cutoff bounding the tail of a normalized cat: coefficients are at most twice coherent ones."""
    scale = _cat_scale(n, sign)
    if scale == 0.0:
        raise DegenerateInputError("odd cat with zero amplitude")
    return cutoff_for(n, tol * scale)


def cat_fock(alpha: complex, symmetry, modified: bool = False, cutoff: int | None = None) -> FockVector:
    """Normalized ``|alpha> +- |-alpha>``; ``modified`` removes the vacuum from the even cat."""
    sym = CatSymmetry.coerce(symmetry)
    if modified and sym is CatSymmetry.MINUS:
        raise ValueError("only the even cat has a vacuum-subtracted form")
    if cutoff is None:
        n = abs(alpha) ** 2
        if n == 0.0:
            raise DegenerateInputError("cat state with zero amplitude")
        scale = 0.5 * math.expm1(-n) ** 2 if modified else _cat_scale(n, int(sym))
        cutoff = cutoff_for(n, TAIL_TOL * scale)
    plus = coherent_fock(alpha, cutoff, tol=1.0)
    # <n|-alpha> = (-1)^n <n|alpha>, exactly
    flip = np.where(np.arange(plus.cutoff + 1) % 2 == 0, 1.0, -1.0)
    v = plus.coeffs * (1.0 + int(sym) * flip)
    if modified:
        v[0] = 0.0
    norm = math.sqrt(float(np.vdot(v, v).real))
    if norm < 1e-150:
        raise DegenerateInputError("cat state with zero norm")
    return FockVector(v / norm, plus.tail)


def product_state(*vectors: FockVector) -> MultimodeFock:
    t = vectors[0].coeffs
    for v in vectors[1:]:
        t = np.multiply.outer(t, v.coeffs)
    return MultimodeFock(np.asarray(t), sum(v.tail for v in vectors))


@lru_cache(maxsize=1024)
def bs_block(N: int, t: float) -> np.ndarray:
    """Beam-splitter matrix on ``|n, N - n>`` (index ``n`` = photons in the first port).

    Realizes ``a+ -> sqrt(t) c+ + sqrt(1-t) d+``, ``b+ -> sqrt(1-t) c+ - sqrt(t) d+``
    as ``exp(theta (a+ b - a b+)) (-1)^{n_b}`` with ``theta = -asin(sqrt(1-t))``.
    """
    n = np.arange(N + 1)
    gen = np.zeros((N + 1, N + 1))
    up = np.sqrt((n[:-1] + 1.0) * (N - n[:-1]))
    gen[n[1:], n[:-1]] = up
    gen[n[:-1], n[1:]] = -up
    theta = -math.asin(math.sqrt(1.0 - t))
    parity = np.where((N - n) % 2 == 0, 1.0, -1.0)
    return expm(theta * gen) * parity[None, :]


def beam_splitter_apply(
    state: MultimodeFock, mode_i: int, mode_j: int, t: float = 0.5, tol: float = TAIL_TOL
) -> MultimodeFock:
    """Apply the beam splitter to two modes; outputs keep the input cutoffs.

    Amplitude pushed above either cutoff is discarded and, if its mass
    exceeds ``tol``, reported as a :class:`TailBoundError`.
    """
    if mode_i == mode_j:
        raise ValueError("beam splitter needs two distinct modes")
    ndim = state.tensor.ndim
    moved = np.moveaxis(state.tensor, (mode_i, mode_j), (ndim - 2, ndim - 1))
    ci, cj = moved.shape[-2] - 1, moved.shape[-1] - 1
    rest = moved.shape[:-2]
    flat = moved.reshape(-1, ci + 1, cj + 1)
    out = np.zeros_like(flat)
    lost = 0.0
    for N in range(ci + cj + 1):
        lo, hi = max(0, N - cj), min(ci, N)
        n_in = np.arange(lo, hi + 1)
        vec = flat[:, n_in, N - n_in]
        U = bs_block(N, float(t))
        res = vec @ U[:, n_in].T
        keep = np.arange(lo, hi + 1)
        out[:, keep, N - keep] = res[:, keep]
        if lo > 0 or hi < N:
            drop = np.setdiff1d(np.arange(N + 1), keep)
            lost += float(np.sum(np.abs(res[:, drop]) ** 2))
    if lost > tol:
        raise TailBoundError(f"beam splitter output exceeds the cutoff by mass {lost:.3g}")
    out = np.moveaxis(out.reshape(rest + (ci + 1, cj + 1)), (ndim - 2, ndim - 1), (mode_i, mode_j))
    return MultimodeFock(out, state.tail + lost)


def loss_kraus(eta: float, cutoff: int) -> list[np.ndarray]:
    """Kraus operators of the pure-loss channel read off beam-splitter elements.

    ``A_k[n - k, n] = <n - k, k| U_eta |n, 0>`` (signal, environment).
    """
    ops = [np.zeros((cutoff + 1, cutoff + 1)) for _ in range(cutoff + 1)]
    for n in range(cutoff + 1):
        U = bs_block(n, float(eta))
        for k in range(n + 1):
            ops[k][n - k, n] = U[n - k, n]
    return ops


def lossy_density(vec: FockVector, eta: float) -> np.ndarray:
    """Signal density matrix after a beam splitter of transmittance ``eta`` onto a vacuum environment."""
    c = vec.cutoff
    env = np.zeros(c + 1, dtype=complex)
    env[0] = 1.0
    joint = beam_splitter_apply(MultimodeFock(np.multiply.outer(vec.coeffs, env)), 0, 1, eta)
    psi = joint.tensor
    return psi @ psi.conj().T


def detector_weights(k: int, xi: float, cutoff: int) -> np.ndarray:
    """Diagonal of the k-click POVM element: ``C(n, k) xi^k (1 - xi)^(n - k)``."""
    return binom.pmf(k, np.arange(cutoff + 1), xi)


def lossy_detector_prob(state, k: int, xi: float) -> float:
    """Probability of ``k`` clicks for a pure :class:`FockVector` or a density matrix."""
    if isinstance(state, FockVector):
        diag = np.abs(state.coeffs) ** 2
    else:
        diag = np.real(np.diag(state))
    return float(np.dot(detector_weights(k, xi, len(diag) - 1), diag))


def joint_state(nu_prime, nu, alpha: complex, beta: complex, cutoffs=None) -> MultimodeFock:
    """Normalized product of two cats, ``(|a> + nu'|-a>)(|b> + nu|-b>)``."""
    ca = cutoffs[0] if cutoffs else None
    cb = cutoffs[1] if cutoffs else None
    a = cat_fock(alpha, nu_prime, cutoff=ca)
    b = cat_fock(beta, nu, cutoff=cb)
    return product_state(a, b)


def _two_mode_cat(alpha, beta, sign, ca, cb) -> np.ndarray:
    t = np.multiply.outer(coherent_fock(alpha, ca, tol=1.0).coeffs, coherent_fock(beta, cb, tol=1.0).coeffs)
    t = t + sign * np.multiply.outer(
        coherent_fock(-alpha, ca, tol=1.0).coeffs, coherent_fock(-beta, cb, tol=1.0).coeffs
    )
    return t


def joint_state_decomposition_error(nu_prime, nu, alpha: complex, beta: complex) -> float:
    """Max deviation between the product of cats and its two-mode-cat decomposition.

    The product equals ``sqrt(M_{nu' nu}(a, b) / (M_nu'(a) M_nu(b)))`` times
    ``Psi_{nu' nu}(a, b) + nu Psi_{nu' nu}(a, -b)``, with ``Psi`` normalized numerically.
    """
    nu_prime, nu = int(CatSymmetry.coerce(nu_prime)), int(CatSymmetry.coerce(nu))
    ca, cb = cutoff_for(abs(alpha) ** 2, 1e-24), cutoff_for(abs(beta) ** 2, 1e-24)
    c = max(ca, cb)
    prod = joint_state(nu_prime, nu, alpha, beta, (c, c)).tensor
    s = nu_prime * nu
    psi1 = _two_mode_cat(alpha, beta, s, c, c)
    psi2 = _two_mode_cat(alpha, -beta, s, c, c)
    m_pair = 2.0 * (1.0 + s * math.exp(-2.0 * (abs(alpha) ** 2 + abs(beta) ** 2)))
    m_a = 2.0 * (1.0 + nu_prime * math.exp(-2.0 * abs(alpha) ** 2))
    m_b = 2.0 * (1.0 + nu * math.exp(-2.0 * abs(beta) ** 2))
    psi1 /= np.linalg.norm(psi1)
    psi2 /= np.linalg.norm(psi2)
    rhs = math.sqrt(m_pair / (m_a * m_b)) * (psi1 + nu * psi2)
    return float(np.max(np.abs(prod - rhs)))


def environment_trace_error(n_total: float, eta: float, sign: int, tol: float = 1e-24) -> float:
    """Operator-norm check of tracing the environment out of ``|g_s, g_e> +- |-g_s, -g_e>``.

    The reduced state should equal
    ``(M_+-(g_e) |g_s^(+)><g_s^(+)| + M_-+(g_e) |g_s^(-)><g_s^(-)|) / 4``
    with unnormalized signal cats. Truncation enters amplitudes as the square
    root of the tail mass, hence the tight default ``tol``.
    """
    c = cutoff_for(n_total, tol)
    g = math.sqrt(n_total)
    vec = coherent_fock(g, c, tol).coeffs + sign * coherent_fock(-g, c, tol).coeffs
    env = np.zeros(c + 1, dtype=complex)
    env[0] = 1.0
    joint = beam_splitter_apply(MultimodeFock(np.multiply.outer(vec, env)), 0, 1, eta, tol).tensor
    reduced = joint @ joint.conj().T
    gs = math.sqrt(eta) * g
    ne = (1.0 - eta) * n_total
    cp = coherent_fock(gs, c, 1.0).coeffs + coherent_fock(-gs, c, 1.0).coeffs
    cm = coherent_fock(gs, c, 1.0).coeffs - coherent_fock(-gs, c, 1.0).coeffs
    m_same = 2.0 * (1.0 + sign * math.exp(-2.0 * ne))
    m_flip = 2.0 * (1.0 - sign * math.exp(-2.0 * ne))
    expected = 0.25 * (m_same * np.outer(cp, cp.conj()) + m_flip * np.outer(cm, cm.conj()))
    return float(np.linalg.norm(reduced - expected, 2))


def _relay_cat(amp: float, sign: int, cutoff: int) -> np.ndarray | None:
    try:
        return cat_fock(amp, sign, modified=sign == 1, cutoff=cutoff).coeffs
    except DegenerateInputError:
        return None


def oracle_link_probs(nu_prime, nu, r_bs: float, a: float, tol: float = TAIL_TOL) -> dict:
    """Relay outcome probabilities from a four-mode simulation (A_qm, A_bs, B_qm, B_bs).

    ``p_plus``/``p_minus`` are the probabilities of the relay cat at port C
    that accompanies ``Psi_+``/``Psi_-``; ``p_vac`` of vacuum at both ports.
    """
    nu_prime, nu = int(CatSymmetry.coerce(nu_prime)), int(CatSymmetry.coerce(nu))
    n_qm, n_bs = (1.0 - r_bs) * a, r_bs * a
    # the joint state is four coherent products over sqrt(M_nu' M_nu)
    scale = _cat_scale(a, nu_prime) * _cat_scale(a, nu)
    if scale == 0.0:
        raise DegenerateInputError("odd input cat with zero amplitude")
    c_qm = cutoff_for(n_qm, tol * scale)
    c_bs = cutoff_for(2.0 * n_bs, tol * scale)
    q, b = math.sqrt(n_qm), math.sqrt(n_bs)

    def side(sign):
        t = _two_mode_cat(q, b, sign, c_qm, c_bs)
        norm = np.linalg.norm(t)
        if norm < 1e-150:
            raise DegenerateInputError("input cat with zero norm")
        return t / norm

    psi = np.einsum("ab,cd->abcd", side(nu_prime), side(nu))
    out = beam_splitter_apply(MultimodeFock(psi), 1, 3, 0.5, tol).tensor
    probs = {}
    for mu in (1, -1):
        relay = _relay_cat(math.sqrt(2.0 * n_bs), nu_prime * nu * mu, c_bs)
        if relay is None:
            probs[mu] = 0.0
            continue
        stored = np.einsum("c,acb->ab", relay.conj(), out[:, :, :, 0])
        probs[mu] = float(np.sum(np.abs(stored) ** 2))
    p_vac = float(np.sum(np.abs(out[:, 0, :, 0]) ** 2))
    return {"p_plus": probs[1], "p_minus": probs[-1], "p_vac": p_vac, "cutoff": max(c_qm, c_bs)}


def oracle_click_probs(sign: int, n_total: float, eta: float, xi: float, k_max: int = 12) -> dict:
    """Click statistics of a relay cat sent through literal loss and a binomial detector."""
    cat = cat_fock(math.sqrt(n_total), sign, modified=sign == 1)
    c = cat.cutoff
    rho = lossy_density(cat, eta)
    counts = [lossy_detector_prob(rho, k, xi) for k in range(c + 1)]
    even = math.fsum(counts[2::2])
    odd = math.fsum(counts[1::2])
    return {
        "counts": counts[: k_max + 1],
        "noclick": counts[0],
        "even": even,
        "odd": odd,
        "cutoff": c,
    }


def _parity_weights(parity: str, xi: float, cutoff: int) -> np.ndarray:
    start = 2 if parity == "even" else 1
    return sum(detector_weights(k, xi, cutoff) for k in range(start, cutoff + 1, 2))


def oracle_swap(link1, link2, parity: str, stored_photons: float, eta_m: float, xi: float) -> dict:
    """Release two stored link pairs onto a node beam splitter and herald on port C.

    Modes are (A1, B1, A2, B2); B1 and B2 interfere into C (axis 1) and D
    (axis 3). Memory loss acts on C through Kraus operators of the loss beam
    splitter; this equals equal loss on both memories since D is traced out.
    ``link1``/``link2`` are ``(f_plus, f_minus)`` weights of diagonal mixtures.
    """
    alpha = math.sqrt(stored_photons)
    scale = _cat_scale(2.0 * stored_photons, -1) ** 2
    c_a = cutoff_for(stored_photons, TAIL_TOL * scale)
    c_b = cutoff_for(2.0 * stored_photons, TAIL_TOL * scale)
    kraus = loss_kraus(eta_m, c_b)
    weights = _parity_weights(parity, xi, c_b)
    targets = {}
    for mu in (1, -1):
        t = _two_mode_cat(alpha, alpha, mu, c_a, c_a)
        targets[mu] = t / np.linalg.norm(t)
    p_s = 0.0
    num = {1: 0.0, -1: 0.0}
    for mu1, w1 in zip((1, -1), link1):
        for mu2, w2 in zip((1, -1), link2):
            w = w1 * w2
            if w == 0.0:
                continue
            p1 = _two_mode_cat(alpha, alpha, mu1, c_a, c_b)
            p2 = _two_mode_cat(alpha, alpha, mu2, c_a, c_b)
            psi = np.einsum("ab,cd->abcd", p1 / np.linalg.norm(p1), p2 / np.linalg.norm(p2))
            out = beam_splitter_apply(MultimodeFock(psi), 1, 3).tensor
            # axes now (A1, C, A2, D)
            for A in kraus:
                lossy = np.einsum("mc,acbd->ambd", A, out)
                p_s += w * float(np.einsum("m,ambd->", weights, np.abs(lossy) ** 2))
                for mu in (1, -1):
                    amp = np.einsum("ab,ambd->md", targets[mu].conj(), lossy)
                    num[mu] += w * float(np.einsum("m,md->", weights, np.abs(amp) ** 2))
    return {
        "p_success": p_s,
        "f_plus": num[1] / p_s if p_s > 0 else math.nan,
        "f_minus": num[-1] / p_s if p_s > 0 else math.nan,
        "cutoff": c_b,
    }


def oracle_teleport(cfg, click: bool = False) -> dict:
    """Heralded Bob state from Charlie's and Alice's sideband ``mu`` plus Bob's mode.

    ``click=False`` projects the heralding detector onto exactly one photon and
    the other onto vacuum. ``click=True`` accepts any nonzero count (on/off
    detector), giving a mixed Bob state. All other sidebands are projected onto
    vacuum. Returns Bob's density matrix, the event probability and the cutoff.
    """
    nu = int(cfg.nu)
    gam = modulate(cfg.gamma_mag, ModulatorSettings(cfg.m, cfg.phi_c))
    alp = modulate(cfg.alpha_mag, ModulatorSettings(cfg.m, cfg.phi_a, gam.S))
    if abs(cfg.mu) > gam.S:
        raise ValueError("sideband outside the modulator cutoff")
    g_mu, a_mu, beta = gam[cfg.mu], alp[cfg.mu], cfg.beta_mag
    # tight tails: the heralded event itself may be rare
    tol = 1e-24 * _cat_scale(cfg.alpha_mag**2 + beta**2, nu)
    c_in = cutoff_for(abs(g_mu) ** 2 + abs(a_mu) ** 2, tol)
    c_b = cutoff_for(beta**2, tol)
    vac, cross = 1.0, 1.0
    for idx in gam.indices:
        if idx == cfg.mu:
            continue
        g_v, a_v = coherent_fock(gam[idx], tol=1e-24), coherent_fock(alp[idx], tol=1e-24)
        vac *= abs(g_v.coeffs[0]) * abs(a_v.coeffs[0])
        cross *= a_v.inner(coherent_fock(-alp[idx], a_v.cutoff, tol=1.0)).real
    terms = {}
    for s in (1, -1):
        cg = coherent_fock(g_mu, c_in, 1.0).coeffs
        ca = coherent_fock(s * a_mu, c_in, 1.0).coeffs
        cb = coherent_fock(s * beta, c_b, 1.0).coeffs
        terms[s] = np.einsum("i,j,k->ijk", cg, ca, cb)
    norm_sq = (
        np.vdot(terms[1], terms[1]).real
        + np.vdot(terms[-1], terms[-1]).real
        + 2.0 * nu * np.vdot(terms[1], terms[-1]).real * cross
    )
    psi = (terms[1] + nu * terms[-1]) / math.sqrt(norm_sq)
    out = beam_splitter_apply(MultimodeFock(psi), 0, 1, 0.5, 1e-20).tensor * vac
    if cfg.detector == "D1":
        blocks = out[1:, 0, :] if click else out[1:2, 0, :]
    else:
        blocks = out[0, 1:, :] if click else out[0, 1:2, :]
    rho = blocks.T @ blocks.conj()
    return {"rho": rho, "prob": float(np.trace(rho).real), "cutoff": max(c_in, c_b)}


def _bob_vector(bob, cutoff: int) -> np.ndarray:
    plus = coherent_fock(bob.beta, cutoff, tol=1.0).coeffs
    return bob.c_plus * plus + bob.c_minus * coherent_fock(-bob.beta, cutoff, tol=1.0).coeffs


def _report(quantity, params, analytic, oracle, tol, cutoff, labels, mode="abs"):
    analytic = [float(x) for x in analytic]
    oracle = [float(x) for x in oracle]
    diff = max(abs(x - y) for x, y in zip(analytic, oracle))
    return OracleReport(quantity, params, analytic, oracle, diff, tol, int(cutoff), TAIL_TOL, diff < tol, labels=labels)


def verify(selector: str, params: dict, tol: float = 1e-8) -> OracleReport:
    """Run one analytic-vs-oracle comparison.

    Selectors: ``link_probs`` (pair, r_bs, a), ``parity_probs`` (sign, a, eta,
    xi), ``photocounts`` (same, up to ``k_max``), ``swap`` (link1, link2,
    parity, a, r_bs, eta_m, xi), ``teleport_exact`` and ``teleport_state``
    (TeleportConfig fields). Parameters outside the oracle's reach produce a
    report with ``feasible=False``.
    """
    from . import herald, link_gen, photodetect, swap, teleport

    try:
        if selector == "link_probs":
            pair = link_gen.PairSymmetry.parse(params["pair"])
            r, a = params["r_bs"], params["a"]
            if a > 4:
                raise TailBoundError("oracle supports a <= 4")
            ana = link_gen.outcome_probs(pair, r, a)
            orc = oracle_link_probs(pair.nu_prime, pair.nu, r, a)
            return _report(
                selector, params, [ana.p_plus, ana.p_minus, ana.p_vac],
                [orc["p_plus"], orc["p_minus"], orc["p_vac"]], tol, orc["cutoff"], ["p_plus", "p_minus", "p_vac"],
            )
        if selector in ("parity_probs", "photocounts"):
            sign, a, eta, xi = params["sign"], params["a"], params["eta"], params["xi"]
            if a > 4:
                raise TailBoundError("oracle supports a <= 4")
            state = photodetect.RelayStateLabel.from_sign(sign)
            orc = oracle_click_probs(sign, a, eta, xi, params.get("k_max", 12))
            if selector == "parity_probs":
                labels = ["noclick", "even", "odd"]
                ana = [photodetect.parity_prob(p, state, a, eta, xi) for p in labels]
                return _report(selector, params, ana, [orc[p] for p in labels], tol, orc["cutoff"], labels)
            ks = range(len(orc["counts"]))
            ana = [photodetect.photocount_prob(k, state, a, eta, xi) for k in ks]
            return _report(selector, params, ana, orc["counts"], tol, orc["cutoff"], [f"k={k}" for k in ks])
        if selector == "swap":
            cfg = swap.SwapConfig(herald.LinkConfig(params["a"], params["r_bs"], 1.0, params["xi"]), params["eta_m"])
            l1, l2 = swap.LinkState(*params["link1"]), swap.LinkState(*params["link2"])
            a_node = swap.node_params(cfg)[2]
            if a_node > 4:
                raise TailBoundError("oracle supports node amplitudes a_node <= 4")
            res = swap.swap(l1, l2, params["parity"], cfg)
            orc = oracle_swap(params["link1"], params["link2"], params["parity"], a_node / 2.0, params["eta_m"], params["xi"])
            return _report(
                selector, params, [res.p_success, res.f_plus_12, res.f_minus_12],
                [orc["p_success"], orc["f_plus"], orc["f_minus"]], tol, orc["cutoff"], ["p_success", "f_plus", "f_minus"],
            )
        if selector in ("teleport_exact", "teleport_state"):
            cfg = teleport.TeleportConfig(**params)
            if max(cfg.gamma_mag, cfg.alpha_mag, cfg.beta_mag) > 2:
                raise TailBoundError("oracle supports amplitudes <= 2")
            outcome = teleport.teleport_outcome(cfg)
            orc = oracle_teleport(cfg, click=selector == "teleport_state")
            vec = _bob_vector(outcome.bob, orc["rho"].shape[0] - 1)
            fid = float(np.vdot(vec, orc["rho"] @ vec).real / orc["prob"])
            if selector == "teleport_exact":
                return _report(
                    selector, params, [outcome.p_sideband, 1.0], [orc["prob"], fid], tol, orc["cutoff"],
                    ["p_sideband", "fidelity"],
                )
            return _report(selector, params, [1.0], [fid], tol, orc["cutoff"], ["fidelity"])
    except (TailBoundError, DegenerateInputError) as exc:
        return OracleReport(selector, params, [], [], math.nan, tol, 0, TAIL_TOL, False, False, str(exc))
    raise ValueError(f"unknown selector {selector!r}")
