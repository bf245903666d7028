"""
Counting photons from a lossy relay cat
=======================================

The relay cat passes a lossy fiber and hits a photon-number-resolving
detector of finite efficiency. Even and odd cats then stop being perfectly
distinguishable by click parity.
"""

from catrepeater.photodetect import RelayStateLabel, parity_prob, photocount_prob

n = 0.8
print("perfect channel and detector:")
for state in (RelayStateLabel.PLUS_CAT, RelayStateLabel.MINUS_CAT):
    row = {p: parity_prob(p, state, n, 1.0, 1.0) for p in ("noclick", "even", "odd")}
    print(f"  {state.name:9s}", "  ".join(f"{k}={v:.3f}" for k, v in row.items()))

print("\nwith transmittance 0.8 and efficiency 0.9:")
for state in (RelayStateLabel.PLUS_CAT, RelayStateLabel.MINUS_CAT):
    row = {p: parity_prob(p, state, n, 0.8, 0.9) for p in ("noclick", "even", "odd")}
    print(f"  {state.name:9s}", "  ".join(f"{k}={v:.3f}" for k, v in row.items()))

# photocount distribution of the odd cat
print("\nodd cat photocounts:")
for k in range(6):
    print(f"  k={k}  {photocount_prob(k, RelayStateLabel.MINUS_CAT, n, 0.8, 0.9):.6f}")
