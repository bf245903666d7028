"""
Sidebands of a phase-modulated cat and the relay outcomes
=========================================================

A phase modulator spreads a coherent carrier over sidebands with Bessel
weights. Part of the sidebands goes to the relay, the rest stays in memory.
"""

import numpy as np

from catrepeater.link_gen import PairSymmetry, outcome_probs_from_partition, outcome_probs
from catrepeater.modes import ModulatorSettings, default_sideband_cutoff, modulate, split_modes

# modulation index 1 keeps almost all light within a few sidebands
m = 1.0
S = default_sideband_cutoff(m)
modes = modulate(1.0, ModulatorSettings(m, 0.0, S))
print(f"sidebands kept: |mu| <= {S}, total photons {modes.mean_photons:.15f}")
for mu in range(-3, 4):
    print(f"  mu={mu:+d}  |alpha_mu|^2 = {abs(modes[mu]) ** 2:.6f}")

# send the first sidebands to the relay, keep carrier and the rest
part = split_modes(modes, [-1, 1])
print(f"\nfraction sent to the relay r_bs = {part.r_bs:.6f}")

# the relay sees a 50:50 beam splitter; three orthogonal outcomes per port
for label in ("--", "++", "+-"):
    pr = outcome_probs_from_partition(PairSymmetry.parse(label), part)
    print(f"  {label}: P+ = {pr.p_plus:.4f}  P- = {pr.p_minus:.4f}  P0 = {pr.p_vac:.4f}  sum rule {pr.total:.12f}")

# an even split makes the odd-pair antisymmetric outcome amplitude independent
print("\nodd pair at r_bs = 1/2:")
for a in np.geomspace(0.01, 100, 5):
    print(f"  a = {a:8.2f}   P- = {outcome_probs(PairSymmetry(-1, -1), 0.5, a).p_minus:.15f}")
