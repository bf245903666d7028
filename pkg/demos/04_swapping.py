"""
Swapping two links at a repeater node
=====================================

The node releases both memories onto its own beam splitter and looks at the
click parity. Memory efficiency plays the role of transmittance there.
"""

from catrepeater.herald import LinkConfig, herald
from catrepeater.swap import LinkState, SwapConfig, node_params, swap, swap_chain

link_cfg = LinkConfig(a=0.5, r_bs=0.2, eta=0.95, xi=0.9)
cfg = SwapConfig(link_cfg, eta_m=0.8)
print("node (r, zeta_m, a_node):", tuple(round(v, 4) for v in node_params(cfg)))

link = LinkState.of(herald("--", "odd", link_cfg))
print(f"heralded link: F+ = {link.f_plus:.4f}, F- = {link.f_minus:.4f}")

for parity in ("odd", "even"):
    res = swap(link, link, parity, cfg, both_detectors=True)
    print(f"swap on {parity:4s} clicks: P = {res.p_success:.4f}  F+ = {res.f_plus_12:.4f}  F- = {res.f_minus_12:.4f}")

# repeated swaps reuse the same node formulas; this goes beyond two links
chain = swap_chain([link] * 4, "odd", cfg)
print(f"\nfour links folded left to right (extrapolated={chain.extrapolated}):")
print("  per-swap probabilities", [round(p, 4) for p in chain.p_success])
print(f"  final F- = {chain.final.f_minus:.4f}")
