"""Norms on trigonometric polynomials and the smoothed dyadic band system:
quadrature vs Parseval, a different-metrics inequality check, and the exact
partition of unity.
"""

import numpy as np

from stepcross import (
    MajorantParams, QuadratureSpec, band_kernel, fejer, lp_norm,
    nikolskii_check, q_set, random_in_spectrum, vallee_poussin,
)

om = MajorantParams(d=2, r=1.0, b=(0.0, 0.0), l=2)
spectrum = q_set(om, 2.0 ** 8)
f = random_in_spectrum(spectrum, seed=42)
print(f"random polynomial on the cross at n=2^8: {f.n_terms} terms, "
      f"degrees {f.degrees}")

# p = 2 comes from Parseval, even integers from an exact grid, the rest
# from adaptive doubling with a relative tolerance
quad = QuadratureSpec()
for p in (1.0, 1.5, 2.0, 4.0, float("inf")):
    print(f"  ||f||_{p:<4} = {lp_norm(f, p, quad):.8f}")
parseval = float(np.sqrt(np.sum(np.abs(f.cs) ** 2)))
print(f"  Parseval check at p=2: {parseval:.8f}")

# sup over q_1 < ... < p: the p-norm pays at most a power of the degree
res = nikolskii_check(f, q=1.0, p=4.0, quad=quad)
print(f"nikolskii q=1 p=4: lhs {res.lhs:.6f} <= rhs {res.rhs:.6f}, "
      f"margin {res.margin:.3f}, holds: {res.passed}")

# kernel peaks are closed-form: K_n(0) = n+1, V_n(0) = 3n
n = 32
print(f"fejer({n})(0) = {float(np.sum(fejer(n).cs).real):.1f}, "
      f"vp({n})(0) = {float(np.sum(vallee_poussin(n).cs).real):.1f}")

# the band multipliers are dyadic rationals and telescope to exactly 1
ks = np.arange(-128, 129)
total = np.zeros(ks.shape)
for s in range(1, 9):
    kern = band_kernel((s,))
    prof = np.zeros(ks.shape)
    lookup = {int(k): c.real for k, c in zip(kern.ks[:, 0], kern.cs)}
    for i, k in enumerate(ks):
        prof[i] = lookup.get(int(k), 0.0)
    total += prof
print(f"partition of unity over 8 bands, |k| <= 128: "
      f"exact = {bool(np.all(total == 1.0))}")
