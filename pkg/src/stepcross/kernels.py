"""Classical summation kernels and the dyadic band machinery built on them.

All constructions are coordinatewise tensor products.  The band multiplier
for index s is a de la Vallee Poussin difference supported on
2^{s-1} < |k| <= 2^{s+1} - 1, peaking at |k| = 2^s with linear ramps on both
sides; a frequency in octave sigma is touched only by the bands s in
{sigma - 1, sigma}, and the family over s in [1, S]^d telescopes to exactly
1 on frequencies |k_j| <= 2^S (ramp values are dyadic rationals, so the sum
is exact in floating point).
"""

from __future__ import annotations

import math

import numpy as np

from .errors import ParameterError
from .trigpoly import TrigPolynomial

__all__ = [
    "fejer_coefficient",
    "vp_coefficient",
    "fejer",
    "vallee_poussin",
    "band_multiplier",
    "band_kernel",
    "band_apply",
    "ks_vector",
    "k_packet",
]


def _check_order(n: int) -> int:
    if not isinstance(n, (int, np.integer)) or n < 1:
        raise ParameterError(f"kernel order must be a positive integer, got {n!r}")
    return int(n)


def fejer_coefficient(n: int, k) -> np.ndarray:
    """Fejer spectrum: 1 - |k|/(n+1) on |k| <= n, zero beyond."""
    n = _check_order(n)
    k = np.abs(np.asarray(k, dtype=np.float64))
    return np.where(k <= n, 1.0 - k / (n + 1), 0.0)


def vp_coefficient(n: int, k) -> np.ndarray:
    """De la Vallee Poussin spectrum: 1 on |k| <= n, linear ramp
    (2n - |k|)/n on n < |k| <= 2n - 1, zero beyond."""
    n = _check_order(n)
    k = np.abs(np.asarray(k, dtype=np.float64))
    ramp = (2.0 * n - k) / n
    return np.where(k <= n, 1.0, np.where(k <= 2 * n - 1, ramp, 0.0))


def fejer(n: int) -> TrigPolynomial:
    """The univariate Fejer kernel of order n; K_n(0) = n + 1, L1 norm 1."""
    n = _check_order(n)
    ks = np.arange(-n, n + 1, dtype=np.int64)
    return TrigPolynomial(ks.reshape(-1, 1), fejer_coefficient(n, ks))


def vallee_poussin(n: int) -> TrigPolynomial:
    """The univariate de la Vallee Poussin kernel of order n; V_n(0) = 3n."""
    n = _check_order(n)
    ks = np.arange(-(2 * n - 1), 2 * n, dtype=np.int64)
    return TrigPolynomial(ks.reshape(-1, 1), vp_coefficient(n, ks))


def _band_factor(sj: int, k: np.ndarray) -> np.ndarray:
    # Octave 1 keeps the full V_2 profile (DC included); deeper octaves use
    # the telescoping difference, supported on 2^{s-1} < |k| <= 2^{s+1} - 1.
    if sj == 1:
        return vp_coefficient(2, k)
    return vp_coefficient(2 ** sj, k) - vp_coefficient(2 ** (sj - 1), k)


def _check_octave_index(s) -> tuple[int, ...]:
    s = tuple(int(x) for x in np.atleast_1d(np.asarray(s)).tolist())
    if any(x < 1 for x in s):
        raise ParameterError(f"octave index coordinates must be >= 1, got {s}")
    return s


def band_multiplier(s, ks) -> np.ndarray:
    """Tensor band multiplier values at the given frequencies (m, d)."""
    s = _check_octave_index(s)
    ks = np.asarray(ks, dtype=np.int64)
    if ks.ndim == 1:
        ks = ks.reshape(-1, len(s)) if len(s) > 1 else ks.reshape(-1, 1)
    if ks.shape[1] != len(s):
        raise ParameterError(f"frequencies have {ks.shape[1]} coordinates, expected {len(s)}")
    out = np.ones(ks.shape[0])
    for j, sj in enumerate(s):
        out *= _band_factor(sj, ks[:, j])
    return out


def band_kernel(s) -> TrigPolynomial:
    """The band multiplier materialized as a polynomial (tensor product of
    univariate profiles)."""
    s = _check_octave_index(s)
    axes = []
    for sj in s:
        hi = 2 ** (sj + 1) - 1
        k = np.arange(-hi, hi + 1, dtype=np.int64)
        v = _band_factor(sj, k)
        keep = v != 0
        axes.append((k[keep], v[keep]))
    mesh = np.meshgrid(*[a[0] for a in axes], indexing="ij")
    ks = np.stack([m.reshape(-1) for m in mesh], axis=1)
    prof = axes[0][1]
    for _, v in axes[1:]:
        prof = np.multiply.outer(prof, v)
    return TrigPolynomial(ks, prof.reshape(-1))


def band_apply(f: TrigPolynomial, s) -> TrigPolynomial:
    """Multiply f's coefficients by the band multiplier for octave s."""
    s = _check_octave_index(s)
    if f.d != len(s):
        raise ParameterError(f"octave index has {len(s)} coordinates, expected {f.d}")
    if f.is_zero:
        return f
    return TrigPolynomial(f.ks, f.cs * band_multiplier(s, f.ks))


def ks_vector(s) -> np.ndarray:
    """The anchor frequency of octave s: 3 * 2^{s_j - 2} when s_j >= 2
    (midpoint of the dyadic block), 1 when s_j = 1."""
    s = _check_octave_index(s)
    return np.array([3 * 2 ** (sj - 2) if sj >= 2 else 1 for sj in s], dtype=np.int64)


def k_packet(s, x_center=None, u=None) -> TrigPolynomial:
    """A modulated Fejer packet inside octave s.

    The spectrum is the cube k^s + [-u, u]^d around the anchor k^s, with
    tensor Fejer weights w(delta) = prod(1 - |delta_j|/(u_j + 1)) and phases
    e^{-i (delta, x_center)}, so the modulus peaks at x_center with value
    prod(u_j + 1).  The default u_j = 2^{s_j - 2} (needs s_j >= 2) keeps the
    packet inside the two octaves at and above s.  Frequencies with a zero
    coordinate are rejected.
    """
    s = _check_octave_index(s)
    d = len(s)
    anchor = ks_vector(s)
    if u is None:
        if any(sj < 2 for sj in s):
            raise ParameterError(
                f"default packet width needs every s_j >= 2, got {s}")
        us = [2 ** (sj - 2) for sj in s]
    else:
        if isinstance(u, (int, np.integer)):
            us = [int(u)] * d
        else:
            us = [int(x) for x in u]
        if len(us) != d or any(x < 1 for x in us):
            raise ParameterError(f"packet width must be a positive integer per coordinate, got {u!r}")
    if x_center is None:
        x_center = np.zeros(d)
    x_center = np.asarray(x_center, dtype=float).reshape(-1)
    if x_center.size != d:
        raise ParameterError(f"center has {x_center.size} coordinates, expected {d}")

    for j, (aj, uj) in enumerate(zip(anchor, us)):
        if aj - uj <= 0:
            raise ParameterError(
                f"packet width {uj} reaches a zero frequency coordinate "
                f"(anchor {int(aj)} in coordinate {j})")

    axes = [np.arange(-uj, uj + 1, dtype=np.int64) for uj in us]
    mesh = np.meshgrid(*axes, indexing="ij")
    deltas = np.stack([m.reshape(-1) for m in mesh], axis=1)
    weights = np.ones(deltas.shape[0])
    for j, uj in enumerate(us):
        weights *= 1.0 - np.abs(deltas[:, j]) / (uj + 1.0)
    phases = np.exp(-1j * (deltas.astype(float) @ x_center))
    return TrigPolynomial(anchor[None, :] + deltas, weights * phases)
