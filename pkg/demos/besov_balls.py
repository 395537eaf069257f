"""Majorant-weighted smoothness norms: dyadic-block form vs smoothed-band
form, and what normalizing into the unit ball does to a polynomial.
"""

from stepcross import (
    BesovParams, MajorantParams, besov_norm, besov_norm_blocks,
    besov_norm_vp, dyadic_blocks, lp_norm, normalize_to_ball, q_set,
    random_in_spectrum,
)

om = MajorantParams(d=2, r=1.5, b=(0.5, 0.25), l=2)
f = random_in_spectrum(q_set(om, 2.0 ** 8), seed=3)
print(f"polynomial: {f.n_terms} terms, degrees {f.degrees}")

blocks = dyadic_blocks(f)
print(f"occupied octave boxes: {len(blocks)}")

# for 1 < p < infinity the raw block norm is the natural object; at the
# endpoints it is replaced by a smoothed-band variant, and the two stay
# within a fixed band of each other in between
for theta_ in (1.0, 2.0, float("inf")):
    bp = BesovParams(p=2.0, theta=theta_)
    via_blocks = besov_norm_blocks(f, om, bp)
    via_bands = besov_norm_vp(f, om, bp)
    print(f"  theta={theta_:<4} blocks {via_blocks:10.4f}   "
          f"bands {via_bands:10.4f}   ratio {via_bands / via_blocks:.4f}")

# endpoint p values dispatch to the band form automatically
for p in (1.0, 2.0, float("inf")):
    bp = BesovParams(p=p, theta=2.0)
    print(f"  dispatch p={p:<4}: {besov_norm(f, om, bp):10.4f}")

bp = BesovParams(p=2.0, theta=2.0)
g, original = normalize_to_ball(f, om, bp)
print(f"after normalization (was {original:.4f}): "
      f"norm = {besov_norm(g, om, bp):.12f}, ||g||_2 = {lp_norm(g, 2.0):.6f}")
