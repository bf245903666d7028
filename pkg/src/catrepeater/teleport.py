"""Phase teleportation from a subcarrier-wave (SCW) state through a shared cat.

Charlie holds the multimode coherent state ``gamma_mu = J_mu(m) e^{i mu phi_c} gamma``.
Alice modulates her half of ``|alpha, beta> + nu |-alpha, -beta>`` with the
same index at phase ``phi_a``, interferes it with Charlie's state on a 50:50
beam splitter and a single photon is detected in sideband ``mu`` at D1 or D2.
Bob is left with a superposition of ``|beta>`` and ``|-beta>`` carrying the
relative phase ``mu (phi_c - phi_a)``.

All results here are exact projections onto the one-photon event (vacuum in
every other sideband and at the other detector).
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass

from .errors import DegenerateInputError
from .modes import CatSymmetry, bessel_j

__all__ = [
    "VALIDITY_AMPLITUDE",
    "TeleportConfig",
    "BobState",
    "TeleportOutcome",
    "TruthEntry",
    "teleport_outcome",
    "teleport_success",
    "success_equal_amplitudes",
    "success_fixed_bob",
    "heralding_residual",
    "coherent_approximation",
    "phase_fidelity",
    "phase_fidelity_series",
    "truth_table",
]

VALIDITY_AMPLITUDE = 0.5
_LABELS = {1: "|alpha>", -1: "|-alpha>", 1j: "|i alpha>", -1j: "|-i alpha>"}


@dataclass(frozen=True)
class TeleportConfig:
    """Amplitude magnitudes of Charlie, Alice and Bob, phases, cat parity, sideband and detector.

    ``beta_mag`` defaults to ``alpha_mag`` (symmetric shared cat).
    """

    gamma_mag: float
    alpha_mag: float
    beta_mag: float | None = None
    phi_c: float = 0.0
    phi_a: float = 0.0
    nu: CatSymmetry = CatSymmetry.PLUS
    m: float = 1.0
    mu: int = 1
    detector: str = "D1"

    def __post_init__(self):
        if self.beta_mag is None:
            object.__setattr__(self, "beta_mag", self.alpha_mag)
        object.__setattr__(self, "nu", CatSymmetry.coerce(self.nu))
        if min(self.gamma_mag, self.alpha_mag, self.beta_mag) < 0:
            raise ValueError("amplitude magnitudes must be nonnegative")
        if self.detector not in ("D1", "D2"):
            raise ValueError("detector must be 'D1' or 'D2'")
        if not math.isfinite(self.m) or self.m < 0:
            raise ValueError("modulation index must be finite and >= 0")

    @property
    def phase(self) -> float:
        """Relative phase ``mu (phi_c - phi_a)`` imprinted on Bob."""
        return self.mu * (self.phi_c - self.phi_a)

    @property
    def within_validity(self) -> bool:
        return max(self.gamma_mag, self.alpha_mag, self.beta_mag) <= VALIDITY_AMPLITUDE

    def replace(self, **kw) -> "TeleportConfig":
        d = {k: getattr(self, k) for k in self.__dataclass_fields__}
        d.update(kw)
        return TeleportConfig(**d)


@dataclass(frozen=True)
class BobState:
    """``c_plus |beta> + c_minus |-beta>`` with a canonical global phase (``c_plus >= 0``)."""

    beta: complex
    c_plus: complex
    c_minus: complex

    @property
    def overlap(self) -> float:
        return math.exp(-2.0 * abs(self.beta) ** 2)

    def norm_sq(self) -> float:
        # even/odd split avoids cancellation when |beta> and |-beta> nearly coincide
        b2 = 2.0 * abs(self.beta) ** 2
        s, d = self.c_plus + self.c_minus, self.c_plus - self.c_minus
        return 0.5 * abs(s) ** 2 * (1.0 + math.exp(-b2)) - 0.5 * abs(d) ** 2 * math.expm1(-b2)

    @property
    def normalized(self) -> bool:
        return abs(self.norm_sq() - 1.0) < 1e-12

    def coherent_overlap(self, z: complex) -> complex:
        """``<z|psi>`` for a coherent state ``|z>``."""
        b = self.beta
        base = -0.5 * (abs(z) ** 2 + abs(b) ** 2)
        return self.c_plus * cmath.exp(base + z.conjugate() * b) + self.c_minus * cmath.exp(
            base - z.conjugate() * b
        )

    def fidelity_coherent(self, z: complex) -> float:
        return abs(self.coherent_overlap(z)) ** 2


@dataclass(frozen=True)
class TeleportOutcome:
    bob: BobState
    p_sideband: float
    p_total: float
    within_validity: bool


@dataclass(frozen=True)
class TruthEntry:
    phase_offset: float
    detector: str
    sideband: int
    label: complex
    fidelity: float

    @property
    def label_text(self) -> str:
        return _LABELS[self.label]


def _canonical(c_plus: complex, c_minus: complex) -> tuple[complex, complex]:
    lead = c_plus if abs(c_plus) > 0 else c_minus
    if abs(lead) == 0:
        return c_plus, c_minus
    ph = lead / abs(lead)
    if lead is c_plus:
        return complex(abs(c_plus)), c_minus / ph
    return c_plus / ph, complex(abs(c_minus))


def _weights(cfg: TeleportConfig) -> tuple[float, float, float]:
    return cfg.gamma_mag**2, cfg.alpha_mag**2, cfg.beta_mag**2


def _bracket(cfg: TeleportConfig) -> float:
    """``|g|^2 + |a|^2 + nu (|g|^2 - |a|^2) e^{-2|b|^2}`` (half the squared Bob norm)."""
    G, A, B = _weights(cfg)
    nu = int(cfg.nu)
    # regrouped with expm1 so the odd case does not cancel at small |b|
    return (G + A + nu * (G - A)) + nu * (G - A) * math.expm1(-2.0 * B)


def teleport_outcome(cfg: TeleportConfig) -> TeleportOutcome:
    """Bob's normalized state and the heralding probabilities.

    D1: ``(g + a)|beta> + nu (g - a)|-beta>`` with ``g = gamma e^{i mu phi_c}``,
    ``a = alpha e^{i mu phi_a}``; D2 is the same expression with ``beta -> -beta``.
    """
    g = cfg.gamma_mag * cmath.exp(1j * cfg.mu * cfg.phi_c)
    a = cfg.alpha_mag * cmath.exp(1j * cfg.mu * cfg.phi_a)
    half_norm = _bracket(cfg)
    if half_norm <= 0.0:
        raise DegenerateInputError("Bob's conditional state has zero norm")
    scale = 1.0 / math.sqrt(2.0 * half_norm)
    c_plus, c_minus = _canonical((g + a) * scale, int(cfg.nu) * (g - a) * scale)
    beta = cfg.beta_mag if cfg.detector == "D1" else -cfg.beta_mag
    p_total, p_sb = teleport_success(cfg)
    return TeleportOutcome(BobState(complex(beta), c_plus, c_minus), p_sb, p_total, cfg.within_validity)


def teleport_success(cfg: TeleportConfig) -> tuple[float, float]:
    """``(p_total, p_sideband)``; ``p_sideband = J_mu(m)^2 p_total`` for one detector."""
    G, A, B = _weights(cfg)
    shared = 1.0 + int(cfg.nu) * math.exp(-2.0 * (A + B))
    if shared == 0.0:
        raise DegenerateInputError("odd shared cat with zero amplitude")
    p_total = _bracket(cfg) * math.exp(-A - G) / (2.0 * shared)
    return p_total, bessel_j(cfg.mu, cfg.m) ** 2 * p_total


def success_equal_amplitudes(a: float, nu) -> float:
    """``p_total`` at ``|gamma| = |alpha| = |beta|``, ``a = |alpha|^2``; the odd-cat limit at ``a = 0`` is 1/4."""
    nu = CatSymmetry.coerce(nu)
    if a == 0.0:
        if nu is CatSymmetry.MINUS:
            return 0.25
        return 0.0
    if nu is CatSymmetry.MINUS:
        return a * math.exp(-2.0 * a) / -math.expm1(-4.0 * a)
    return a * math.exp(-2.0 * a) / (1.0 + math.exp(-4.0 * a))


def success_fixed_bob(a: float, b: float, nu) -> float:
    """``p_total`` at ``|gamma| = |alpha|`` with Bob's ``|beta|^2 = b`` held separately."""
    r = math.sqrt(a)
    return teleport_success(TeleportConfig(r, r, math.sqrt(b), nu=nu))[0]


def heralding_residual(cfg: TeleportConfig) -> float:
    """Probability not covered by single-photon events, summed over sidebands and both detectors."""
    return 1.0 - 2.0 * teleport_success(cfg)[0]


def coherent_approximation(cfg: TeleportConfig) -> complex:
    """Amplitude ``z`` of the coherent state ``|z>`` approximating Bob's state.

    Only for ``|gamma| = |alpha|``: Bob holds
    ``cos(phi/2)|beta> + i nu sin(phi/2)|-beta>``, close to ``|e^{-i nu phi} beta>``.
    """
    if not math.isclose(cfg.gamma_mag, cfg.alpha_mag):
        raise ValueError("the coherent-state approximation needs |gamma| = |alpha|")
    beta = cfg.beta_mag if cfg.detector == "D1" else -cfg.beta_mag
    return cmath.exp(-1j * int(cfg.nu) * cfg.phase) * beta


def phase_fidelity(phi: float, psi: float, a: float) -> float:
    """``|<e^{-i psi} alpha | cos(phi/2)|alpha> + i sin(phi/2)|-alpha>|^2`` with ``a = |alpha|^2``."""
    if a < 0:
        raise ValueError("a must be nonnegative")
    w = cmath.exp(1j * psi) * a
    amp = math.cos(phi / 2.0) * cmath.exp(w - a) + 1j * math.sin(phi / 2.0) * cmath.exp(-w - a)
    return abs(amp) ** 2


def phase_fidelity_series(phi: float, psi: float, a: float) -> float:
    """Second-order expansion ``1 + 2 (cos(phi - psi) - 1) a``."""
    return 1.0 + 2.0 * (math.cos(phi - psi) - 1.0) * a


def truth_table(alpha_mag: float = 0.2, phi_a: float = 0.0, m: float = 1.0, nu=CatSymmetry.PLUS):
    """Bob's state for ``phi_c - phi_a`` in ``{0, pi, pi/2, 3 pi/2}``, both detectors, sidebands +-1.

    Each state is labelled by the closest of ``|alpha>``, ``|-alpha>``,
    ``|i alpha>``, ``|-i alpha>``.
    """
    rows = []
    for offset in (0.0, math.pi, math.pi / 2, 3 * math.pi / 2):
        for det in ("D1", "D2"):
            for sb in (1, -1):
                cfg = TeleportConfig(alpha_mag, alpha_mag, alpha_mag, phi_a + offset, phi_a, nu, m, sb, det)
                bob = teleport_outcome(cfg).bob
                fids = {c: bob.fidelity_coherent(c * alpha_mag) for c in _LABELS}
                best = max(fids, key=fids.get)
                rows.append(TruthEntry(offset, det, sb, best, fids[best]))
    return rows
