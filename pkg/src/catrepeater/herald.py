"""Heralded success probabilities and fidelities of the elementary link.

A link attempt succeeds when the relay detector registers a nonzero number of
clicks; the click parity heralds which Bell-like cat state Alice and Bob now
share. Loss and detector inefficiency enter only through ``zeta = xi eta r_bs``,
which replaces ``r_bs`` in the lossless relay probabilities.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from .errors import DegenerateInputError, UndefinedFidelityError
from .link_gen import PairSymmetry, outcome_probs
from .modes import CatSymmetry
from .photodetect import ClickParity, RelayStateLabel, parity_prob, photocount_prob

__all__ = [
    "LinkConfig",
    "HeraldResult",
    "HeraldedDensity",
    "success_prob",
    "success_prob_bayes",
    "heralded_fidelity",
    "heralded_fidelity_bayes",
    "heralded_state",
    "herald",
    "conditional_click_prob",
    "ratio_for_zeta",
]


@dataclass(frozen=True)
class LinkConfig:
    """Elementary-link parameters: ``a = |alpha|^2`` per node, split ratio, loss, efficiency."""

    a: float
    r_bs: float
    eta: float = 1.0
    xi: float = 1.0

    def __post_init__(self):
        if not (math.isfinite(self.a) and self.a >= 0.0):
            raise ValueError(f"a must be finite and >= 0, got {self.a}")
        for name in ("r_bs", "eta", "xi"):
            v = getattr(self, name)
            if not 0.0 <= v <= 1.0:
                raise ValueError(f"{name} must lie in [0, 1], got {v}")
        assert self.zeta <= self.r_bs

    @property
    def zeta(self) -> float:
        return self.xi * self.eta * self.r_bs

    @property
    def relay_photons(self) -> float:
        """Mean photon number ``2 r_bs a`` of the cat reaching the relay, before loss."""
        return 2.0 * self.r_bs * self.a

    @property
    def stored_photons(self) -> float:
        return (1.0 - self.r_bs) * self.a

    def replace(self, **kw) -> "LinkConfig":
        fields = {"a": self.a, "r_bs": self.r_bs, "eta": self.eta, "xi": self.xi}
        fields.update(kw)
        return LinkConfig(**fields)


@dataclass(frozen=True)
class HeraldResult:
    p_success: float
    f_plus: float
    f_minus: float

    def fidelity(self, mu: int) -> float:
        return self.f_plus if mu > 0 else self.f_minus


@dataclass(frozen=True)
class HeraldedDensity:
    """Diagonal mixture ``f_plus |Psi_+><Psi_+| + f_minus |Psi_-><Psi_-|``.

    The components are two-node cats with ``stored_photons`` per side. When
    port D fired, Bob's component carries ``-alpha_qm`` (``bob_sign = -1``) and
    a pi phase shift at Bob maps it back; this is recorded, not applied.
    """

    pair: PairSymmetry
    parity: ClickParity
    f_plus: float
    f_minus: float
    stored_photons: float
    detector: str = "C"

    @property
    def weights(self) -> tuple[float, float]:
        return self.f_plus, self.f_minus

    @property
    def bob_sign(self) -> int:
        return 1 if self.detector == "C" else -1


def _parity(parity) -> ClickParity:
    parity = ClickParity.coerce(parity)
    if parity is ClickParity.NO_CLICK:
        raise ValueError("heralding uses EVEN or ODD click parity")
    return parity


def _pair(pair) -> PairSymmetry:
    return pair if isinstance(pair, PairSymmetry) else PairSymmetry.parse(pair)


def success_prob(pair, parity, cfg: LinkConfig, both_detectors: bool = False) -> float:
    """Probability that one relay port reports the given click parity.

    Closed form: the lossless relay probability evaluated at ``(zeta, a)``.
    ``both_detectors=True`` doubles it to count either port.
    """
    pair, parity = _pair(pair), _parity(parity)
    probs = outcome_probs(pair if pair.is_cross else PairSymmetry(-1, -1), cfg.zeta, cfg.a)
    if pair.is_cross:
        p = probs.p_plus if parity is ClickParity.ODD else probs.p_minus
    else:
        p = probs.p_minus if parity is ClickParity.ODD else probs.p_plus
        if pair.nu is CatSymmetry.PLUS:
            p *= math.tanh(cfg.a) ** 2
    return 2.0 * p if both_detectors else p


def _bayes_terms(pair: PairSymmetry, parity: ClickParity, cfg: LinkConfig) -> dict[int, float]:
    probs = outcome_probs(pair, cfg.r_bs, cfg.a)
    n_relay = cfg.relay_photons
    terms = {}
    for mu in (1, -1):
        if probs[mu] == 0.0:
            terms[mu] = 0.0
            continue
        if n_relay == 0.0:
            raise DegenerateInputError("relay cat has zero amplitude; use the closed form limits")
        state = RelayStateLabel.from_sign(pair.relay_label(mu))
        terms[mu] = parity_prob(parity, state, n_relay, cfg.eta, cfg.xi) * probs[mu]
    return terms


def success_prob_bayes(pair, parity, cfg: LinkConfig, both_detectors: bool = False) -> float:
    """``sum_mu P(parity | mu') P_mu`` evaluated term by term (no zeta substitution)."""
    pair, parity = _pair(pair), _parity(parity)
    p = sum(_bayes_terms(pair, parity, cfg).values())
    return 2.0 * p if both_detectors else p


def heralded_fidelity_bayes(pair, parity, cfg: LinkConfig) -> tuple[float, float]:
    """Bayes quotients ``P(parity | mu') P_mu / P_s`` for ``mu = +, -``."""
    pair, parity = _pair(pair), _parity(parity)
    terms = _bayes_terms(pair, parity, cfg)
    total = terms[1] + terms[-1]
    if total == 0.0:
        raise UndefinedFidelityError("heralding outcome has zero probability")
    return terms[1] / total, terms[-1] / total


def heralded_fidelity(pair, parity, cfg: LinkConfig) -> tuple[float, float]:
    """``(f_plus, f_minus)`` of the heralded state, from the tanh closed forms.

    With ``t1 = tanh(2 (1 - r) a)`` and ``t2 = tanh(2 (r - zeta) a)``, the
    favoured component has weight ``t1 / (t1 + t2)`` (odd parity, equal
    symmetries; even parity, opposite symmetries) or ``1 / (1 + t1 t2)``. At
    ``a = 0`` the ratio limits are returned.
    """
    pair, parity = _pair(pair), _parity(parity)
    r, zeta, a = cfg.r_bs, cfg.zeta, cfg.a
    odd_like = (parity is ClickParity.ODD) != pair.is_cross
    if odd_like:
        if a == 0.0:
            num, den = 1.0 - r, 1.0 - zeta
        else:
            t1 = math.tanh(2.0 * (1.0 - r) * a)
            t2 = math.tanh(2.0 * (r - zeta) * a)
            num, den = t1, t1 + t2
        if den == 0.0:
            raise UndefinedFidelityError("fidelity is 0/0 at r_bs = zeta = 1")
        f_minus = num / den
        return 1.0 - f_minus, f_minus
    if a == 0.0:
        f_plus = 1.0
    else:
        t1 = math.tanh(2.0 * (1.0 - r) * a)
        t2 = math.tanh(2.0 * (r - zeta) * a)
        f_plus = 1.0 / (1.0 + t1 * t2)
    return f_plus, 1.0 - f_plus


def herald(pair, parity, cfg: LinkConfig, both_detectors: bool = False) -> HeraldResult:
    f_plus, f_minus = heralded_fidelity(pair, parity, cfg)
    return HeraldResult(success_prob(pair, parity, cfg, both_detectors), f_plus, f_minus)


def heralded_state(pair, parity, cfg: LinkConfig, detector: str = "C") -> HeraldedDensity:
    if detector not in ("C", "D"):
        raise ValueError("detector must be 'C' or 'D'")
    pair, parity = _pair(pair), _parity(parity)
    f_plus, f_minus = heralded_fidelity(pair, parity, cfg)
    return HeraldedDensity(pair, parity, f_plus, f_minus, cfg.stored_photons, detector)


def conditional_click_prob(k_or_parity, mu: int, pair, cfg: LinkConfig) -> float:
    """Click statistics given the stored state ``Psi_mu``: routed through the relay cat ``mu' = nu' nu mu``."""
    pair = _pair(pair)
    if mu not in (1, -1):
        raise ValueError("mu must be +1 or -1")
    state = RelayStateLabel.from_sign(pair.relay_label(mu))
    if isinstance(k_or_parity, (ClickParity, str)):
        return parity_prob(k_or_parity, state, cfg.relay_photons, cfg.eta, cfg.xi)
    return photocount_prob(int(k_or_parity), state, cfg.relay_photons, cfg.eta, cfg.xi)


def ratio_for_zeta(zeta: float, eta: float, xi: float) -> float:
    """Split ratio ``r_bs`` that yields the given ``zeta`` under ``(eta, xi)``."""
    r = zeta / (eta * xi)
    if not 0.0 <= r <= 1.0:
        raise ValueError(f"zeta={zeta} is unreachable with eta*xi={eta * xi}")
    return r
