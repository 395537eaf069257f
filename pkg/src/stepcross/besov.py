"""Mixed-smoothness Besov-type norms driven by the power-log majorant.

Two computable forms are provided.  The block form measures the dyadic
coefficient blocks delta_s(f) directly:

    ||f|| = ( sum_s omega(2^{-s})^{-theta} ||delta_s f||_p^theta )^{1/theta},

with the sup over s at theta = inf.  The smoothed form replaces delta_s by
the de la Vallee Poussin band pieces, which is the standard equivalent
expression at the integrability endpoints; the dispatcher uses blocks for
1 < p < inf and bands for p in {1, inf}.  Values of the two forms differ
(they are equivalent, not equal); each is deterministic.

Functions with a frequency on a coordinate hyperplane (some k_j = 0) carry
no octave index and are rejected.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .errors import ParameterError
from .kernels import band_apply
from .majorant import MajorantParams, omega_dyadic
from .trigpoly import QuadratureSpec, TrigPolynomial, lp_norm

__all__ = [
    "BesovParams",
    "dyadic_blocks",
    "besov_norm_blocks",
    "besov_norm_vp",
    "besov_norm",
    "normalize_to_ball",
]


@dataclass(frozen=True)
class BesovParams:
    """Integrability p and summation exponent theta, both in [1, inf]."""

    p: float
    theta: float

    def __post_init__(self):
        for name, v in (("p", self.p), ("theta", self.theta)):
            if v != math.inf and not (1 <= v < math.inf):
                raise ParameterError(f"{name} must lie in [1, inf], got {v}")


def _checked_octaves(f: TrigPolynomial, d_expected: int) -> np.ndarray:
    if f.d != d_expected:
        raise ParameterError(f"function has dimension {f.d}, majorant expects {d_expected}")
    octs = f.octaves()
    flat = np.flatnonzero(np.any(octs == 0, axis=1))
    if flat.size:
        k = tuple(int(v) for v in f.ks[flat[0]])
        raise ParameterError(
            f"frequency {k} has a zero coordinate and belongs to no dyadic octave")
    return octs


def dyadic_blocks(f: TrigPolynomial) -> dict[tuple[int, ...], TrigPolynomial]:
    """Split f into octave blocks delta_s, keyed by the octave index."""
    octs = _checked_octaves(f, f.d)
    out: dict[tuple[int, ...], TrigPolynomial] = {}
    if f.is_zero:
        return out
    uniq, inverse = np.unique(octs, axis=0, return_inverse=True)
    for i, row in enumerate(uniq):
        out[tuple(int(v) for v in row)] = f.restrict(inverse == i)
    return out


def _accumulate(terms, theta: float) -> float:
    if theta == math.inf:
        return max(terms, default=0.0)
    total = sum(t ** theta for t in terms)
    return total ** (1.0 / theta)


def besov_norm_blocks(f: TrigPolynomial, omega: MajorantParams, bp: BesovParams,
                      quad: QuadratureSpec | None = None) -> float:
    """The coefficient-block form of the norm."""
    _checked_octaves(f, omega.d)
    if f.is_zero:
        return 0.0
    terms = []
    for s, block in sorted(dyadic_blocks(f).items()):
        terms.append(lp_norm(block, bp.p, quad) / omega_dyadic(omega, s))
    return _accumulate(terms, bp.theta)


def besov_norm_vp(f: TrigPolynomial, omega: MajorantParams, bp: BesovParams,
                  quad: QuadratureSpec | None = None) -> float:
    """The band form of the norm: de la Vallee Poussin pieces in place of
    raw blocks.  Only bands adjacent to an occupied octave can be nonzero,
    so the candidate set is finite and cheap."""
    octs = _checked_octaves(f, omega.d)
    if f.is_zero:
        return 0.0
    candidates: set[tuple[int, ...]] = set()
    for row in np.unique(octs, axis=0):
        choices = [sorted({max(1, int(sj) - 1), int(sj)}) for sj in row]
        grid = [()]
        for opts in choices:
            grid = [g + (o,) for g in grid for o in opts]
        candidates.update(grid)
    terms = []
    for s in sorted(candidates):
        piece = band_apply(f, s)
        if piece.is_zero:
            continue
        terms.append(lp_norm(piece, bp.p, quad) / omega_dyadic(omega, s))
    return _accumulate(terms, bp.theta)


def besov_norm(f: TrigPolynomial, omega: MajorantParams, bp: BesovParams,
               quad: QuadratureSpec | None = None) -> float:
    """Dispatch: block form for 1 < p < inf, band form at p in {1, inf}."""
    if 1 < bp.p < math.inf:
        return besov_norm_blocks(f, omega, bp, quad)
    return besov_norm_vp(f, omega, bp, quad)


def normalize_to_ball(f: TrigPolynomial, omega: MajorantParams, bp: BesovParams,
                      quad: QuadratureSpec | None = None) -> tuple[TrigPolynomial, float]:
    """Scale f onto the unit ball of the norm; returns (scaled f, original norm)."""
    norm = besov_norm(f, omega, bp, quad)
    if norm == 0.0:
        raise ParameterError("cannot normalize the zero function")
    return f * (1.0 / norm), norm
