"""
How long does a memory wait?
============================

Two links retry independently until each succeeds. The memory of the faster
link waits for the slower one. Analytic expectations are checked against a
seeded Monte Carlo run.
"""

from catrepeater.herald import LinkConfig
from catrepeater.timing import AttemptModel, FiberModel, attempt_stats, link_success_from_distance, simulate_attempts

cfg = LinkConfig(a=0.01, r_bs=0.2, eta=1.0, xi=0.9)
print("   L [km]   p_link    T_w [ms]   T_prep [ms]")
for L in (10, 20, 30, 40, 50, 60):
    fiber = FiberModel(L=L)
    p = link_success_from_distance(cfg, fiber, "--", "odd")
    s = attempt_stats(AttemptModel(p, p), fiber)
    print(f"   {L:5d}    {p:.5f}   {1e3 * s.t_wait:8.3f}   {1e3 * s.t_prep:8.3f}")

fiber = FiberModel(L=50)
p = link_success_from_distance(cfg, fiber, "--", "odd")
model = AttemptModel(p, p)
exact = attempt_stats(model)
mc = simulate_attempts(model, 1_000_000, seed=1)
print("\nMonte Carlo at L = 50 km (10^6 trials):")
for name, m, se in zip(mc.names, mc.mean, mc.stderr):
    ref = getattr(exact, name)
    print(f"  {name:5s} analytic {ref:9.4f}   sampled {m:9.4f} +- {se:.4f}")
