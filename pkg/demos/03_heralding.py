"""
Heralding an entangled link
===========================

Click parity at the relay heralds a mixture of the two entangled cat states
held in the memories. Loss and detector inefficiency only enter through
zeta = xi * eta * r_bs.
"""

import numpy as np

from catrepeater.herald import LinkConfig, herald, ratio_for_zeta, success_prob, success_prob_bayes

eta, xi = 0.95, 0.9
r_half = ratio_for_zeta(0.5, eta, xi)
print(f"split ratio giving zeta = 1/2: {r_half:.4f}")

print("\n  a      2Ps(odd)  F-(odd)   2Ps(even)  F+(even)")
for a in (0.0, 0.1, 0.5, 1.0, 2.0, 5.0):
    cfg = LinkConfig(a, r_half, eta, xi)
    odd = herald("--", "odd", cfg, both_detectors=True)
    even = herald("--", "even", cfg, both_detectors=True)
    print(f"  {a:4.1f}   {odd.p_success:.4f}    {odd.f_minus:.4f}    {even.p_success:.4f}     {even.f_plus:.4f}")

# the closed form is the lossless formula at zeta; check it against the definition
cfg = LinkConfig(0.7, 0.3, eta, xi)
print(f"\nclosed form {success_prob('--', 'odd', cfg):.15f}")
print(f"Bayes sum   {success_prob_bayes('--', 'odd', cfg):.15f}")

# fidelities drift to 1/2 as the cats grow
print("\nF-(odd) versus a at three split ratios:")
for r in (r_half - 0.2, r_half, r_half + 0.2):
    vals = [herald("--", "odd", LinkConfig(a, r, eta, xi)).f_minus for a in np.linspace(0, 4, 5)]
    print(f"  r_bs={r:.3f}: " + " ".join(f"{v:.3f}" for v in vals))
