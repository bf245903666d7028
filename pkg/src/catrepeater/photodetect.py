"""Pure-loss transmission and photon-number-resolving detection of relay cats.

The relay cat of mean photon number ``n`` passes a pure-loss channel of
transmittance ``eta`` (signal ``eta n``, environment ``(1 - eta) n``) and is
registered by a detector of efficiency ``xi``. Count probabilities follow the
Kelley-Kleiner POVM; parity probabilities are summed in closed form.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from enum import Enum
from typing import Sequence

from .errors import DegenerateInputError
from .modes import cat_norm

__all__ = [
    "ChannelParams",
    "DetectorParams",
    "SignalSplit",
    "ClickParity",
    "RelayStateLabel",
    "loss_split",
    "click_weight",
    "photocount_prob",
    "parity_prob",
    "multimode_effective",
]

_RANGE_SLACK = 1e-10


@dataclass(frozen=True)
class ChannelParams:
    eta: float

    def __post_init__(self):
        if not 0.0 <= self.eta <= 1.0:
            raise ValueError(f"transmittance must lie in [0, 1], got {self.eta}")


@dataclass(frozen=True)
class DetectorParams:
    xi: float

    def __post_init__(self):
        if not 0.0 <= self.xi <= 1.0:
            raise ValueError(f"detection efficiency must lie in [0, 1], got {self.xi}")


@dataclass(frozen=True)
class SignalSplit:
    n_signal: float
    n_env: float


class ClickParity(Enum):
    NO_CLICK = "noclick"
    EVEN = "even"
    ODD = "odd"

    @classmethod
    def coerce(cls, value) -> "ClickParity":
        if isinstance(value, cls):
            return value
        return cls(str(value).lower().replace("_", "").replace("-", ""))


class RelayStateLabel(Enum):
    PLUS_CAT = "+"
    MINUS_CAT = "-"
    VACUUM = "0"

    @classmethod
    def from_sign(cls, sign: int) -> "RelayStateLabel":
        return cls.PLUS_CAT if sign > 0 else cls.MINUS_CAT


def _eta(channel) -> float:
    return channel.eta if isinstance(channel, ChannelParams) else ChannelParams(float(channel)).eta


def _xi(det) -> float:
    return det.xi if isinstance(det, DetectorParams) else DetectorParams(float(det)).xi


def _clamp(p: float) -> float:
    assert -_RANGE_SLACK <= p <= 1.0 + _RANGE_SLACK, f"probability {p} outside [0, 1]"
    return min(1.0, max(0.0, p))


def loss_split(n_total: float, channel: ChannelParams | float) -> SignalSplit:
    """Split ``|gamma|^2`` into transmitted and environment parts."""
    if n_total < 0:
        raise ValueError("mean photon number must be nonnegative")
    eta = _eta(channel)
    return SignalSplit(eta * n_total, (1.0 - eta) * n_total)


def _count_weight(k: int, mu: int, n_s: float, xin: float) -> float:
    """``C_mu(k)`` with ``xin = xi * n_s`` (or its multimode sum); valid for ``k >= 0``."""
    if xin == 0.0:
        log_pow = 0.0 if k == 0 else -math.inf
    else:
        log_pow = k * math.log(xin) - math.lgamma(k + 1)
    if log_pow == -math.inf:
        return 0.0
    sgn = mu if k % 2 == 0 else -mu
    # e^{-n}[e^{(1-xi)n} + s e^{-(1-xi)n}] = e^{-xi n} + s e^{-(2 n - xi n)}
    return 2.0 * (math.exp(log_pow - xin) + sgn * math.exp(log_pow - (2.0 * n_s - xin)))


def _parity_weight(parity: ClickParity, mu: int, n_s: float, xin: float) -> float:
    """Parity-summed ``C_mu(even|odd)`` in overflow-free form."""
    y2 = 2.0 * (n_s - xin)
    if parity is ClickParity.EVEN:
        return math.expm1(-xin) ** 2 * (1.0 + mu * math.exp(-y2))
    if parity is ClickParity.ODD:
        return -math.expm1(-2.0 * xin) * (1.0 - mu * math.exp(-y2))
    raise ValueError("parity weight requires EVEN or ODD")


def click_weight(k_or_parity, mu: int, n_signal: float, det: DetectorParams | float) -> float:
    """Unnormalized click weight ``<gamma_s^(mu)| Pi |gamma_s^(mu)>``.

    ``k_or_parity`` is a count ``k >= 1`` or a :class:`ClickParity` (EVEN/ODD).
    """
    if mu not in (1, -1):
        raise ValueError("mu must be +1 or -1")
    if n_signal < 0:
        raise ValueError("signal photon number must be nonnegative")
    xi = _xi(det)
    if isinstance(k_or_parity, (ClickParity, str)):
        parity = ClickParity.coerce(k_or_parity)
        if parity is ClickParity.NO_CLICK:
            raise ValueError("no-click weight is not a parity sum; use k=0 via photocount_prob")
        return _parity_weight(parity, mu, n_signal, xi * n_signal)
    k = int(k_or_parity)
    if k < 1:
        raise ValueError("click count must be >= 1; the vacuum outcome is handled separately")
    return _count_weight(k, mu, n_signal, xi * n_signal)


def _split(n_total, channel, det, multimode):
    if n_total < 0:
        raise ValueError("mean photon number must be nonnegative")
    eta = _eta(channel)
    xi = _xi(det)
    if multimode is not None:
        # broadband detector: per-mode efficiencies replace xi * n
        n_total, xin = multimode
        if n_total < 0 or not 0.0 <= xin <= n_total:
            raise ValueError("multimode aggregates must satisfy 0 <= sum xi_i n_i <= sum n_i")
        xin = eta * xin
    else:
        xin = xi * eta * n_total
    return n_total, eta * n_total, (1.0 - eta) * n_total, xin


def _relay_norm(state: RelayStateLabel, n: float) -> float:
    if state is RelayStateLabel.PLUS_CAT:
        norm = cat_norm(n, 1, modified=True)
    else:
        norm = cat_norm(n, -1)
    if norm == 0.0:
        raise DegenerateInputError(f"relay cat {state.value} with zero amplitude is undefined")
    return norm


def _mix(state, n, n_e, w_plus, w_minus):
    """Environment-traced combination of the signal click weights."""
    m_p, m_m = cat_norm(n_e, 1), cat_norm(n_e, -1)
    if state is RelayStateLabel.PLUS_CAT:
        return (m_p * w_plus + m_m * w_minus) / (4.0 * _relay_norm(state, n))
    return (m_m * w_plus + m_p * w_minus) / (4.0 * _relay_norm(state, n))


def _no_click(state, n, n_s, xin) -> float:
    # u = n - xi n_s; P(0|+) = sinh^2(u/2)/sinh^2(n/2), P(0|-) = sinh(u)/sinh(n)
    u = n - xin
    if state is RelayStateLabel.PLUS_CAT:
        _relay_norm(state, n)
        return math.exp(u - n) * (math.expm1(-u) / math.expm1(-n)) ** 2
    _relay_norm(state, n)
    return math.exp(u - n) * math.expm1(-2.0 * u) / math.expm1(-2.0 * n)


def photocount_prob(
    k: int,
    state: RelayStateLabel,
    n_total: float,
    channel: ChannelParams | float,
    det: DetectorParams | float,
    multimode: tuple[float, float] | None = None,
) -> float:
    """Probability of ``k`` clicks for a relay state after loss.

    ``multimode=(sum n_i, sum xi_i n_i)`` (before loss) replaces ``n_total``
    and ``xi * n_total`` for a broadband detector; ``det`` is then unused.
    """
    state = RelayStateLabel(state) if not isinstance(state, RelayStateLabel) else state
    k = int(k)
    if k < 0:
        raise ValueError("click count must be nonnegative")
    if state is RelayStateLabel.VACUUM:
        return 1.0 if k == 0 else 0.0
    n, n_s, n_e, xin = _split(n_total, channel, det, multimode)
    if k == 0:
        return _clamp(_no_click(state, n, n_s, xin))
    w_plus = _count_weight(k, 1, n_s, xin)
    w_minus = _count_weight(k, -1, n_s, xin)
    return _clamp(_mix(state, n, n_e, w_plus, w_minus))


def parity_prob(
    parity: ClickParity | str,
    state: RelayStateLabel,
    n_total: float,
    channel: ChannelParams | float,
    det: DetectorParams | float,
    multimode: tuple[float, float] | None = None,
) -> float:
    """Probability of no click, an even or an odd nonzero number of clicks."""
    parity = ClickParity.coerce(parity)
    state = RelayStateLabel(state) if not isinstance(state, RelayStateLabel) else state
    if state is RelayStateLabel.VACUUM:
        return 1.0 if parity is ClickParity.NO_CLICK else 0.0
    n, n_s, n_e, xin = _split(n_total, channel, det, multimode)
    if parity is ClickParity.NO_CLICK:
        return _clamp(_no_click(state, n, n_s, xin))
    w_plus = _parity_weight(parity, 1, n_s, xin)
    w_minus = _parity_weight(parity, -1, n_s, xin)
    return _clamp(_mix(state, n, n_e, w_plus, w_minus))


def multimode_effective(per_mode: Sequence[tuple[float, float]]) -> tuple[float, float]:
    """Aggregate ``[(n_i, xi_i), ...]`` into ``(sum n_i, sum xi_i n_i)``."""
    n_tot = 0.0
    xin = 0.0
    for n_i, xi_i in per_mode:
        if n_i < 0 or not 0.0 <= xi_i <= 1.0:
            raise ValueError("need n_i >= 0 and xi_i in [0, 1]")
        n_tot += n_i
        xin += xi_i * n_i
    return n_tot, xin
