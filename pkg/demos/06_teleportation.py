"""
Teleporting a modulation phase
==============================

Charlie's modulated coherent state interferes with Alice's half of a shared
cat. One photon in sideband mu at D1 or D2 leaves Bob with a state carrying
the phase difference.
"""

import math

from catrepeater.teleport import (
    TeleportConfig,
    phase_fidelity,
    success_equal_amplitudes,
    teleport_outcome,
    truth_table,
)

print("truth table at |alpha| = 0.2:")
names = {0.0: "0", math.pi: "pi", math.pi / 2: "pi/2", 3 * math.pi / 2: "3pi/2"}
for row in truth_table(0.2):
    print(f"  phi_c - phi_a = {names[row.phase_offset]:5s} {row.detector} sideband {row.sideband:+d}: "
          f"{row.label_text:11s} (fidelity {row.fidelity:.4f})")

out = teleport_outcome(TeleportConfig(0.2, 0.2, phi_c=0.7))
print(f"\nBob's state for phi = 0.7: {out.bob.c_plus:.4f} |b> + {out.bob.c_minus:.4f} |-b>")
print(f"sideband probability {out.p_sideband:.5f}, inside validity range: {out.within_validity}")

print("\nsuccess probability (one detector, all sidebands):")
for a in (1e-4, 0.01, 0.1, 0.5):
    print(f"  a={a:<6}  even cat {success_equal_amplitudes(a, 1):.4f}  odd cat {success_equal_amplitudes(a, -1):.4f}")

print(f"\ncoherent-state approximation at |alpha| = 0.25: {phase_fidelity(-math.pi / 2, -math.pi / 2, 0.0625):.5f}")
