"""Entanglement swapping of two heralded links at a repeater node.

Each link holds a diagonal mixture of the two-node cats ``Psi_+`` and
``Psi_-`` with ``(1 - r_bs) a`` photons per side. The node releases its two
memories onto a 50:50 beam splitter and counts clicks, which is the link
relay again with ``r_bs -> 1/2``, ``a -> 2 (1 - r_bs) a`` and the channel
transmittance replaced by the memory efficiency ``eta_m``.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from .errors import UndefinedFidelityError
from .herald import HeraldedDensity, HeraldResult, LinkConfig, heralded_fidelity, success_prob
from .link_gen import PairSymmetry
from .photodetect import ClickParity

__all__ = [
    "SwapConfig",
    "LinkState",
    "SwapResult",
    "ChainResult",
    "node_params",
    "node_config",
    "swap_success",
    "swap_fidelity",
    "swap",
    "swap_chain",
]

_SIGNS = (1, -1)


@dataclass(frozen=True)
class SwapConfig:
    link_cfg: LinkConfig
    eta_m: float = 1.0

    def __post_init__(self):
        if not 0.0 <= self.eta_m <= 1.0:
            raise ValueError(f"eta_m must lie in [0, 1], got {self.eta_m}")


@dataclass(frozen=True)
class LinkState:
    f_plus: float
    f_minus: float

    def __post_init__(self):
        if not (0.0 <= self.f_plus <= 1.0 and 0.0 <= self.f_minus <= 1.0):
            raise ValueError("fidelity weights must lie in [0, 1]")
        if abs(self.f_plus + self.f_minus - 1.0) > 1e-12:
            raise ValueError("fidelity weights must sum to 1")

    @classmethod
    def of(cls, heralded: HeraldResult | HeraldedDensity | tuple[float, float]) -> "LinkState":
        if isinstance(heralded, (HeraldResult, HeraldedDensity)):
            return cls(heralded.f_plus, heralded.f_minus)
        return cls(*heralded)

    @classmethod
    def pure(cls, mu: int) -> "LinkState":
        return cls(1.0, 0.0) if mu > 0 else cls(0.0, 1.0)

    def __getitem__(self, mu: int) -> float:
        return self.f_plus if mu > 0 else self.f_minus


@dataclass(frozen=True)
class SwapResult:
    p_success: float
    f_plus_12: float
    f_minus_12: float

    @property
    def state(self) -> LinkState:
        return LinkState(self.f_plus_12, self.f_minus_12)


@dataclass(frozen=True)
class ChainResult:
    """Iterated swapping along a chain of equal links.

    ``extrapolated`` is always set: reusing the node formulas beyond one swap
    assumes every swapped state still stores ``(1 - r_bs) a`` per side.
    """

    p_success: tuple[float, ...]
    final: LinkState
    extrapolated: bool = field(default=True)


def node_params(cfg: SwapConfig) -> tuple[float, float, float]:
    """``(r_node, zeta_m, a_node) = (1/2, eta_m xi / 2, 2 (1 - r_bs) a)``."""
    lc = cfg.link_cfg
    return 0.5, cfg.eta_m * lc.xi / 2.0, 2.0 * (1.0 - lc.r_bs) * lc.a


def node_config(cfg: SwapConfig) -> LinkConfig:
    """The node viewed as a link relay: its ``zeta`` equals ``eta_m xi / 2``."""
    r_node, _, a_node = node_params(cfg)
    return LinkConfig(a=a_node, r_bs=r_node, eta=cfg.eta_m, xi=cfg.link_cfg.xi)


def _node_terms(link1: LinkState, link2: LinkState, parity, cfg: SwapConfig):
    node = node_config(cfg)
    for mu1 in _SIGNS:
        for mu2 in _SIGNS:
            weight = link1[mu1] * link2[mu2]
            if weight == 0.0:
                continue
            pair = PairSymmetry(mu1, mu2)
            yield pair, weight, success_prob(pair, parity, node), node


def swap_success(
    link1: LinkState, link2: LinkState, parity, cfg: SwapConfig, both_detectors: bool = False
) -> float:
    """``sum_{mu1 mu2} P~_s(mu1 mu2) F1_mu1 F2_mu2`` with node-level success probabilities."""
    parity = ClickParity.coerce(parity)
    p = sum(w * ps for _, w, ps, _ in _node_terms(link1, link2, parity, cfg))
    return 2.0 * p if both_detectors else p


def swap_fidelity(link1: LinkState, link2: LinkState, parity, cfg: SwapConfig) -> tuple[float, float]:
    """Fidelities of the outer-node state to ``Psi_+`` and ``Psi_-`` after a heralded swap."""
    parity = ClickParity.coerce(parity)
    num_plus = num_minus = total = 0.0
    for pair, w, ps, node in _node_terms(link1, link2, parity, cfg):
        if ps == 0.0:
            continue
        f_plus, f_minus = heralded_fidelity(pair, parity, node)
        num_plus += f_plus * ps * w
        num_minus += f_minus * ps * w
        total += ps * w
    if total == 0.0:
        raise UndefinedFidelityError("swap outcome has zero probability")
    return num_plus / total, num_minus / total


def swap(link1: LinkState, link2: LinkState, parity, cfg: SwapConfig, both_detectors: bool = False) -> SwapResult:
    f_plus, f_minus = swap_fidelity(link1, link2, parity, cfg)
    return SwapResult(swap_success(link1, link2, parity, cfg, both_detectors), f_plus, f_minus)


def swap_chain(links, parity, cfg: SwapConfig, both_detectors: bool = False) -> ChainResult:
    """Fold ``swap`` left to right over ``links`` (at least two)."""
    links = [l if isinstance(l, LinkState) else LinkState.of(l) for l in links]
    if len(links) < 2:
        raise ValueError("a chain needs at least two links")
    state = links[0]
    probs = []
    for nxt in links[1:]:
        res = swap(state, nxt, parity, cfg, both_detectors)
        probs.append(res.p_success)
        state = res.state
    return ChainResult(tuple(probs), state)
