"""The lower-bound witnesses in one place: shell modes, packet clouds, and
the unmodulated packet stack, each with its normalized companion.  All of
them live just outside the cross, so projecting onto it annihilates them.
"""

from stepcross import (
    BesovParams, MajorantParams, WitnessConfig, besov_norm, g1_single_mode,
    g2_shell_modes, g3_shell_normalized, g4_packet_cloud,
    g5_packet_normalized, g6_packet_stack, g6_peak_value,
    g7_stack_normalized, lp_norm, packet_layout, project_q,
)

n = 2.0 ** 12
smooth = MajorantParams(d=2, r=1.5, b=(0.0, 0.0), l=2)
plain = MajorantParams(d=2, r=1.0, b=(0.0, 0.0), l=2)


def show(name, f, om, bp):
    gone = project_q(f, om, n).is_zero
    print(f"  {name}: {f.n_terms:>5} terms, ||.||_2 = {lp_norm(f, 2.0):.4e}, "
          f"smoothness norm = {besov_norm(f, om, bp):.4e}, "
          f"killed by projection: {gone}")


print("shell-mode family (mean-square regime)")
cfg = WitnessConfig(omega=smooth, bp=BesovParams(p=2.0, theta=4.0), n=n)
show("g1", g1_single_mode(cfg), smooth, cfg.bp)
show("g2", g2_shell_modes(cfg), smooth, cfg.bp)
show("g3", g3_shell_normalized(cfg), smooth, cfg.bp)

print("packet cloud (averaged regime, q below p)")
cfg = WitnessConfig(omega=plain, bp=BesovParams(p=2.0, theta=3.0), n=n)
lay = packet_layout(cfg)
print(f"  layout: half-width u = {lay.u}, {lay.v}^2 boxes of the shell")
show("g4", g4_packet_cloud(cfg), plain, cfg.bp)
show("g5", g5_packet_normalized(cfg), plain, cfg.bp)

print("packet stack (uniform regime)")
cfg = WitnessConfig(omega=smooth, bp=BesovParams(p=2.0, theta=2.0), n=n)
g6 = g6_packet_stack(cfg)
show("g6", g6, smooth, cfg.bp)
show("g7", g7_stack_normalized(cfg), smooth, cfg.bp)

# nonnegative coefficients put the peak at the origin, in closed form
peak = g6_peak_value(cfg)
print(f"  g6 peak: closed form {peak:.1f}, sup estimate "
      f"{lp_norm(g6, float('inf')):.6f}")
