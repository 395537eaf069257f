"""Projection onto the step hyperbolic cross, theoretical error rates, and
numerical rate experiments.

The rate of best approximation by M cross frequencies splits into three
regimes by the relation between the error metric q and the ball metric p:
a mean-square-like regime for p >= 2, a small-integrability regime for
p <= 2 (they agree at p = 2), and a separate uniform regime for q = inf.
Rates are M^{-rho} (log2 M)^{lambda} with regime-specific exponents.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .besov import BesovParams, besov_norm, normalize_to_ball
from .errors import ParameterError, UnsupportedRegimeError
from .extremal import (
    WitnessConfig,
    g3_shell_normalized,
    g5_packet_normalized,
    g7_stack_normalized,
)
from .indexsets import q_set, q_size, rho, theta
from .majorant import MajorantParams, log2_omega_dyadic, omega_dyadic
from .trigpoly import QuadratureSpec, TrigPolynomial, lp_norm, random_in_spectrum

__all__ = [
    "RateRegime",
    "classify_regime",
    "theoretical_rate",
    "project_q",
    "approx_error",
    "ExperimentRecord",
    "rate_experiment",
    "RateFit",
    "fit_rate",
    "SAMPLE_FAMILIES",
]

SAMPLE_FAMILIES = ("random_ball", "shell", "g3", "g5", "g7")


@dataclass(frozen=True)
class RateRegime:
    """A resolved error regime: the metric pair, the tag, and the exponents
    of the predicted rate M^{-main} (log2 M)^{log_expo}."""

    p: float
    q: float
    theta: float
    tag: str
    main_exponent: float
    log_exponent: float


def _plus(x: float) -> float:
    return x if x > 0 else 0.0


def _inv(x: float) -> float:
    return 0.0 if x == math.inf else 1.0 / x


def classify_regime(omega: MajorantParams, p: float, q: float, theta_: float) -> RateRegime:
    """Pick the regime for error metric q against the ball B_{p,theta}.

    q = inf needs p < inf and r > 1/p (uniform regime); finite q needs
    q <= p, with p = 1, q = 1 excluded from the small-integrability regime.
    Anything else has no supported rate.
    """
    for name, v in (("p", p), ("q", q), ("theta", theta_)):
        if v != math.inf and not (1 <= v < math.inf):
            raise ParameterError(f"{name} must lie in [1, inf], got {v}")
    d, r, b = omega.d, omega.r, omega.b

    if q == math.inf:
        if p == math.inf:
            raise UnsupportedRegimeError("uniform-error regime needs p < inf")
        if not (r > 1.0 / p):
            raise UnsupportedRegimeError(
                f"uniform-error regime needs r > 1/p, got r={r}, p={p}")
        main = r - 1.0 / p
        lam = -sum(b) + (d - 1) * (r + 1.0 - 1.0 / p - _inv(theta_))
        return RateRegime(p, q, theta_, "sup_norm", main, lam)

    if p == math.inf:
        raise UnsupportedRegimeError("finite-q rates need p < inf")
    if q > p:
        raise UnsupportedRegimeError(
            f"no supported rate for q > p (q={q}, p={p})")
    if p >= 2:
        main = r
        lam = -sum(b) + (d - 1) * (r + _plus(0.5 - _inv(theta_)))
        return RateRegime(p, q, theta_, "large_p", main, lam)
    if p == 1 and q == 1:
        raise UnsupportedRegimeError("the pair p = q = 1 has no supported rate")
    main = r
    lam = -sum(b) + (d - 1) * (r + _plus(1.0 / p - _inv(theta_)))
    return RateRegime(p, q, theta_, "small_p", main, lam)


def theoretical_rate(omega: MajorantParams, regime: RateRegime, m: float) -> float:
    """Predicted error M^{-main} (log2 M)^{log_expo} for M >= 4 frequencies."""
    if not (m >= 4):
        raise ParameterError(f"rate formula needs M >= 4, got {m}")
    check = classify_regime(omega, regime.p, regime.q, regime.theta)
    if (check.main_exponent, check.log_exponent) != (regime.main_exponent, regime.log_exponent):
        raise ParameterError("regime exponents do not match the given majorant")
    return float(m) ** (-regime.main_exponent) * math.log2(m) ** regime.log_exponent


def project_q(f: TrigPolynomial, omega: MajorantParams, n: float) -> TrigPolynomial:
    """Keep exactly the coefficients whose frequencies lie in the cross Q(N).

    Membership is tested per coefficient through its octave vector, so no
    enumeration of Q(N) takes place.  Frequencies with a zero coordinate
    belong to no octave box and are always dropped.
    """
    if f.is_zero:
        return f
    if f.d != omega.d:
        raise ParameterError(f"function has dimension {f.d}, majorant expects {omega.d}")
    target = math.log2(float(n))
    octs = f.octaves()
    inside = np.all(octs >= 1, axis=1)
    if np.any(inside):
        sel = octs[inside].astype(float)
        logw = omega.r * sel.sum(axis=1)
        for j, bj in enumerate(omega.b):
            logw += bj * np.log2(sel[:, j])
        ok = np.zeros(f.n_terms, dtype=bool)
        ok[np.flatnonzero(inside)] = logw <= target
    else:
        ok = np.zeros(f.n_terms, dtype=bool)
    return f.restrict(ok)


def approx_error(f: TrigPolynomial, omega: MajorantParams, n: float, q: float,
                 quad: QuadratureSpec | None = None) -> float:
    """L_q distance from f to its cross projection."""
    return lp_norm(f - project_q(f, omega, n), q, quad)


@dataclass(frozen=True)
class ExperimentRecord:
    """One grid point of a rate experiment."""

    n: float
    m: int
    error: float
    theory: float

    @property
    def ratio(self) -> float:
        return self.error / self.theory if self.theory > 0 else math.inf


def _shell_sample(omega: MajorantParams, bp: BesovParams, n: float,
                  rng: np.random.Generator, quad) -> TrigPolynomial:
    # sum over shell boxes of omega(2^{-s}) * (random unit-p-norm block)
    fam = theta(omega, n)
    if len(fam) == 0:
        raise ParameterError(f"shell is empty at N={n}")
    total = TrigPolynomial.zero(omega.d)
    for s in fam:
        block = random_in_spectrum(rho(s), seed=rng, law="gaussian")
        norm = lp_norm(block, bp.p, quad)
        if norm == 0.0:
            continue
        total = total + block * (omega_dyadic(omega, s) / norm)
    return total


def _witness_sample(family: str, omega: MajorantParams, bp: BesovParams,
                    n: float) -> TrigPolynomial:
    cfg = WitnessConfig(omega=omega, bp=bp, n=n)
    if family == "g3":
        return g3_shell_normalized(cfg)
    if family == "g5":
        return g5_packet_normalized(cfg)
    return g7_stack_normalized(cfg)


def _validate_family(family: str, regime: RateRegime, bp: BesovParams):
    if family not in SAMPLE_FAMILIES:
        raise ParameterError(
            f"unknown sample family {family!r}; choose one of {SAMPLE_FAMILIES}")
    if family == "g3" and not (regime.tag == "large_p" and bp.theta >= 2):
        raise UnsupportedRegimeError(
            "the shell-mode witness targets the large-p regime with theta >= 2")
    if family == "g5" and not (regime.tag == "small_p" and bp.theta >= bp.p):
        raise UnsupportedRegimeError(
            "the packet-cloud witness targets the small-p regime with theta >= p")
    if family == "g7" and regime.tag != "sup_norm":
        raise UnsupportedRegimeError(
            "the packet-stack witness targets the uniform-error regime")


def rate_experiment(omega: MajorantParams, bp: BesovParams, q: float, family: str,
                    n_grid, samples: int = 1, seed: int = 0,
                    quad: QuadratureSpec | None = None) -> list[ExperimentRecord]:
    """Measure projection error against the predicted rate over an N grid.

    Every sample is normalized onto the unit ball before its error is taken;
    with several samples per N the worst error is recorded.  Witness
    families are deterministic, so their sample loop collapses to one
    evaluation.  Per-(N, sample) generator streams keep results independent
    of evaluation order.
    """
    regime = classify_regime(omega, bp.p, q, bp.theta)
    _validate_family(family, regime, bp)
    n_grid = [float(v) for v in n_grid]
    if not n_grid:
        raise ParameterError("empty N grid")
    if samples < 1:
        raise ParameterError("samples must be >= 1")

    records = []
    eff_samples = 1 if family in ("g3", "g5", "g7") else samples
    for i, n in enumerate(n_grid):
        m = q_size(omega, n)
        if m < 4:
            raise ParameterError(
                f"cross at N={n} has only {m} frequencies; the rate needs M >= 4")
        worst = 0.0
        for j in range(eff_samples):
            if family == "random_ball":
                spectrum = q_set(omega, n * 2.0 ** omega.l)
                f = random_in_spectrum(
                    spectrum, seed=np.random.default_rng([seed, i, j]), law="gaussian")
            elif family == "shell":
                f = _shell_sample(omega, bp, n, np.random.default_rng([seed, i, j]), quad)
            else:
                f = _witness_sample(family, omega, bp, n)
            f, _ = normalize_to_ball(f, omega, bp, quad)
            worst = max(worst, approx_error(f, omega, n, q, quad))
        records.append(ExperimentRecord(
            n=n, m=m, error=worst, theory=theoretical_rate(omega, regime, m)))
    return records


@dataclass(frozen=True)
class RateFit:
    """Least-squares fit of log2 error = c - rho log2 M + lam log2 log2 M."""

    rho_hat: float
    log_hat: float
    intercept: float
    residual_rms: float
    condition: float
    two_point_slope: float

    @property
    def collinear_warning(self) -> bool:
        return self.condition > 1e4


def fit_rate(records: list[ExperimentRecord]) -> RateFit:
    """Recover the main and logarithmic exponents from experiment records.

    Needs at least 5 records spanning at least 3 octaves in M, with strictly
    positive errors.  The two-point slope across the largest span is
    reported alongside as a design-insensitive check; the regression
    condition number flags near-collinearity of the log-log design.
    """
    if len(records) < 5:
        raise ParameterError(f"need at least 5 records, got {len(records)}")
    ms = np.array([rec.m for rec in records], dtype=float)
    errors = np.array([rec.error for rec in records], dtype=float)
    if np.any(errors <= 0):
        raise ParameterError("all record errors must be positive to fit rates")
    if np.min(ms) <= 0 or np.max(ms) / np.min(ms) < 8:
        raise ParameterError("records must span at least 3 octaves in M")

    lm = np.log2(ms)
    llm = np.log2(lm)
    design = np.stack([np.ones_like(lm), lm, llm], axis=1)
    y = np.log2(errors)
    coef, _, _, _ = np.linalg.lstsq(design, y, rcond=None)
    resid = design @ coef - y
    cond = float(np.linalg.cond(design))

    i_lo = int(np.argmin(ms))
    i_hi = int(np.argmax(ms))
    slope = (y[i_hi] - y[i_lo]) / (lm[i_hi] - lm[i_lo])
    return RateFit(
        rho_hat=float(-coef[1]),
        log_hat=float(coef[2]),
        intercept=float(coef[0]),
        residual_rms=float(np.sqrt(np.mean(resid ** 2))),
        condition=cond,
        two_point_slope=float(-slope),
    )
