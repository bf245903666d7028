"""Relay outcome probabilities for the elementary link.

Alice and Bob each send the ``bs`` part of a multimode cat to a 50:50 beam
splitter. The output ports are resolved in the orthonormal basis of the odd
cat, the vacuum-subtracted even cat and the vacuum. All probabilities depend on
the sidebands only through ``n_qm = |alpha_qm|^2`` and ``n_bs = |alpha_bs|^2``
(equivalently ``a = n_qm + n_bs`` and ``r_bs = n_bs / a``).

Hyperbolic ratios are evaluated as products of ``1 - exp(-2u)`` and
``1 + exp(-2u)`` so that ``a`` up to several hundred does not overflow.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .errors import DegenerateInputError
from .modes import CatSymmetry, ModePartition, ModeVector, cat_norm

__all__ = [
    "PairSymmetry",
    "OutcomeProbs",
    "bs_pair_transform",
    "outcome_probs_general",
    "outcome_probs_identical",
    "outcome_probs_cross",
    "outcome_probs",
    "outcome_probs_from_partition",
]


@dataclass(frozen=True)
class PairSymmetry:
    """Symmetries of Alice's (``nu_prime``) and Bob's (``nu``) input cats."""

    nu_prime: CatSymmetry
    nu: CatSymmetry

    def __post_init__(self):
        object.__setattr__(self, "nu_prime", CatSymmetry.coerce(self.nu_prime))
        object.__setattr__(self, "nu", CatSymmetry.coerce(self.nu))

    @classmethod
    def parse(cls, text: str) -> "PairSymmetry":
        """Accept ``"--"``, ``"++"``, ``"+-"``, ``"-+"``, ``"minus"``, ``"plus"`` or ``"cross"``."""
        aliases = {"minus": "--", "plus": "++", "cross": "+-", "c": "+-"}
        t = aliases.get(text.strip().lower(), text.strip())
        if len(t) != 2 or any(ch not in "+-" for ch in t):
            raise ValueError(f"cannot parse symmetry pair {text!r}")
        return cls(CatSymmetry.coerce(t[0]), CatSymmetry.coerce(t[1]))

    @property
    def product(self) -> int:
        return int(self.nu_prime) * int(self.nu)

    @property
    def is_cross(self) -> bool:
        return self.product == -1

    def relay_label(self, mu: int) -> int:
        """Sign ``mu' = nu' nu mu`` of the relay cat that accompanies ``Psi_mu^(AB)``."""
        return self.product * int(mu)

    @property
    def label(self) -> str:
        return self.nu_prime.symbol + self.nu.symbol


@dataclass(frozen=True)
class OutcomeProbs:
    """Per-port probabilities of the relay outcomes.

    ``p_plus``/``p_minus`` are the probabilities of finding the relay cat at one
    given port (the other port is symmetric), ``p_vac`` the probability of
    vacuum at both ports, so ``2 p_plus + 2 p_minus + p_vac = 1``.
    """

    p_plus: float
    p_minus: float
    p_vac: float
    limit: bool = False

    def __getitem__(self, mu: int) -> float:
        if mu == 0:
            return self.p_vac
        return self.p_plus if mu > 0 else self.p_minus

    @property
    def total(self) -> float:
        return 2.0 * self.p_plus + 2.0 * self.p_minus + self.p_vac


def bs_pair_transform(sign_a: int, sign_b: int, amp: ModeVector) -> tuple[ModeVector, ModeVector]:
    """50:50 beam splitter acting on ``|sign_a amp> |sign_b amp>``.

    Equal signs put ``sqrt(2) sign amp`` on port C and vacuum on D; opposite
    signs put vacuum on C and ``sqrt(2) sign_a amp`` on D.
    """
    if sign_a not in (1, -1) or sign_b not in (1, -1):
        raise ValueError("signs must be +1 or -1")
    amps = np.asarray(amp.amplitudes)
    zero = ModeVector(np.zeros_like(amps))
    # a -> (c + d)/sqrt2, b -> (c - d)/sqrt2
    c = ModeVector((sign_a + sign_b) * amps / math.sqrt(2.0))
    d = ModeVector((sign_a - sign_b) * amps / math.sqrt(2.0))
    if sign_a == sign_b:
        return c, zero
    return zero, d


def _sh(u: float) -> float:
    """``2 sinh(u) exp(-u)``."""
    return -math.expm1(-2.0 * u)


def _ch(u: float) -> float:
    """``2 cosh(u) exp(-u)``."""
    return 1.0 + math.exp(-2.0 * u)


def _check_ratio(r_bs: float, a: float) -> None:
    if not 0.0 <= r_bs <= 1.0:
        raise ValueError(f"r_bs must lie in [0, 1], got {r_bs}")
    if a < 0.0 or not math.isfinite(a):
        raise ValueError(f"mean photon number must be finite and >= 0, got {a}")


def outcome_probs_general(pair: PairSymmetry, n_qm: float, n_bs: float) -> OutcomeProbs:
    """Outcome probabilities from the cat norms, for any split ``(n_qm, n_bs)``.

    ``P_mu = M~_{mu'}(2 n_bs) M_mu(2 n_qm) / (4 M_nu'(a) M_nu(a))`` with
    ``mu' = nu' nu mu`` and the modified norm ``M~`` used for the even relay cat;
    ``P_0 = M_nu'(n_qm) M_nu(n_qm) exp(-2 n_bs) / (M_nu'(a) M_nu(a))``.
    """
    if n_qm < 0 or n_bs < 0:
        raise ValueError("photon numbers must be nonnegative")
    a = n_qm + n_bs
    den = cat_norm(a, pair.nu_prime) * cat_norm(a, pair.nu)
    if den == 0.0:
        raise DegenerateInputError("odd input cat with zero amplitude has no normalization")
    probs = {}
    for mu in (1, -1):
        mu_relay = pair.relay_label(mu)
        relay_norm = cat_norm(2.0 * n_bs, mu_relay, modified=mu_relay == 1)
        stored_norm = cat_norm(2.0 * n_qm, mu)
        probs[mu] = relay_norm * stored_norm / (4.0 * den)
    p_vac = (
        cat_norm(n_qm, pair.nu_prime) * cat_norm(n_qm, pair.nu) * math.exp(-2.0 * n_bs) / den
    )
    return OutcomeProbs(probs[1], probs[-1], p_vac)


def outcome_probs_identical(nu: CatSymmetry | int, r_bs: float, a: float) -> OutcomeProbs:
    """Closed forms for two identical input cats, ``nu' = nu``.

    For ``nu = +`` the cat probabilities are ``tanh(a)^2`` times the odd-cat
    ones. At ``a = 0`` the odd-cat values are analytic limits (``limit=True``).
    """
    _check_ratio(r_bs, a)
    nu = CatSymmetry.coerce(nu)
    s = 1.0 - r_bs
    if a == 0.0:
        if nu is CatSymmetry.MINUS:
            return OutcomeProbs(r_bs**2 / 2.0, r_bs * s, s**2, limit=True)
        return OutcomeProbs(0.0, 0.0, 1.0)
    sh_a = _sh(a)
    p_minus = _sh(2 * s * a) * _sh(2 * r_bs * a) / (4.0 * sh_a**2)
    p_plus = _ch(2 * s * a) * _sh(r_bs * a) ** 2 / (4.0 * sh_a**2)
    if nu is CatSymmetry.MINUS:
        p_vac = math.exp(-2.0 * r_bs * a) * (_sh(s * a) / sh_a) ** 2
        return OutcomeProbs(p_plus, p_minus, p_vac)
    t2 = math.tanh(a) ** 2
    p_vac = math.exp(-2.0 * r_bs * a) * (_ch(s * a) / _ch(a)) ** 2
    return OutcomeProbs(t2 * p_plus, t2 * p_minus, p_vac)


def outcome_probs_cross(r_bs: float, a: float) -> OutcomeProbs:
    """Closed forms for input cats of opposite symmetry (``+-`` or ``-+``)."""
    _check_ratio(r_bs, a)
    s = 1.0 - r_bs
    if a == 0.0:
        return OutcomeProbs(r_bs / 2.0, 0.0, s, limit=True)
    sh_2a = _sh(2 * a)
    p_minus = _sh(2 * s * a) * _sh(r_bs * a) ** 2 / (4.0 * sh_2a)
    p_plus = _ch(2 * s * a) * _sh(2 * r_bs * a) / (4.0 * sh_2a)
    p_vac = math.exp(-2.0 * r_bs * a) * _sh(2 * s * a) / sh_2a
    return OutcomeProbs(p_plus, p_minus, p_vac)


def outcome_probs(pair: PairSymmetry, r_bs: float, a: float) -> OutcomeProbs:
    """Dispatch to the identical- or cross-symmetry closed form."""
    if pair.is_cross:
        return outcome_probs_cross(r_bs, a)
    return outcome_probs_identical(pair.nu, r_bs, a)


def outcome_probs_from_partition(pair: PairSymmetry, partition: ModePartition) -> OutcomeProbs:
    return outcome_probs_general(pair, partition.n_qm, partition.n_bs)
