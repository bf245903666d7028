"""
Brute-force cross-check in the number basis
===========================================

Every closed form can be recomputed by building the states photon by photon,
applying beam splitters and loss, and projecting. Small instances only.
"""

from catrepeater.fock_oracle import verify

cases = [
    ("link_probs", {"pair": "--", "r_bs": 0.2, "a": 1.0}),
    ("link_probs", {"pair": "+-", "r_bs": 0.5, "a": 2.0}),
    ("parity_probs", {"sign": -1, "a": 1.0, "eta": 0.8, "xi": 0.9}),
    ("swap", {"link1": [0.7, 0.3], "link2": [0.6, 0.4], "parity": "odd", "a": 0.5, "r_bs": 0.2, "eta_m": 0.8, "xi": 0.9}),
    ("teleport_state", {"gamma_mag": 0.3, "alpha_mag": 0.3, "phi_c": 1.0}),
    ("link_probs", {"pair": "--", "r_bs": 0.2, "a": 9.0}),
]
for selector, params in cases:
    rep = verify(selector, params, tol=5e-3 if selector == "teleport_state" else 1e-8)
    status = "ok" if rep.passed else ("out of reach: " + rep.message if not rep.feasible else "MISMATCH")
    print(f"{selector:15s} diff {rep.abs_diff:9.2e}  cutoff {rep.cutoff:3d}  {status}")
