"""Quantum repeater model built on phase-modulated multimode cat states.

Modules, bottom-up: ``modes`` (modulator sidebands, cat norms), ``link_gen``
(relay outcome probabilities), ``photodetect`` (loss and click statistics),
``herald`` (success probabilities and fidelities), ``swap`` (entanglement
swapping), ``timing`` (attempt statistics, Monte Carlo), ``teleport`` (phase
teleportation) and ``fock_oracle`` (truncated Fock-space cross-checks).
"""

__version__ = "0.1.0"

from .errors import DegenerateInputError, TailBoundError, UndefinedFidelityError
from .herald import HeraldResult, LinkConfig, heralded_fidelity, heralded_state, success_prob
from .link_gen import OutcomeProbs, PairSymmetry, outcome_probs
from .modes import CatSymmetry, ModulatorSettings, ModeVector, modulate, split_modes
from .photodetect import ClickParity, RelayStateLabel, parity_prob, photocount_prob
from .swap import LinkState, SwapConfig, swap_chain
from .teleport import TeleportConfig, phase_fidelity, teleport_outcome, truth_table
from .timing import AttemptModel, FiberModel, attempt_stats, simulate_attempts, transmittance

__all__ = [
    "__version__",
    "AttemptModel",
    "CatSymmetry",
    "ClickParity",
    "DegenerateInputError",
    "FiberModel",
    "HeraldResult",
    "LinkConfig",
    "LinkState",
    "ModeVector",
    "ModulatorSettings",
    "OutcomeProbs",
    "PairSymmetry",
    "RelayStateLabel",
    "SwapConfig",
    "TailBoundError",
    "TeleportConfig",
    "UndefinedFidelityError",
    "attempt_stats",
    "heralded_fidelity",
    "heralded_state",
    "modulate",
    "outcome_probs",
    "parity_prob",
    "phase_fidelity",
    "photocount_prob",
    "simulate_attempts",
    "split_modes",
    "success_prob",
    "swap_chain",
    "teleport_outcome",
    "transmittance",
    "truth_table",
]
