"""Truncated discrete power-law model and its two non-private estimators.

The model puts probability d^(-alpha) / Z(alpha) on integer degrees d in
[d_min, d_max], where Z is the truncated zeta sum. Fitting consumes only the
sufficient statistics (T_disc, N): the shifted log-sum of tail degrees and the
tail count. Two estimators are provided, a closed-form discrete approximation
and the maximum-likelihood estimate found by numerical optimization.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Optional

import numpy as np

# Numerical-optimization search interval and tolerances. Noisy statistics can
# push the maximizer below zero, so the scan extends below zero; estimates that
# optimize to a negative value are clamped and flagged invalid.
SEARCH_LO = -10.0
SEARCH_HI = 50.0
SCAN_STEP = 0.25
ALPHA_TOL = 1e-8
_BOUNDARY_TOL = 1e-6

METHOD_DISCRETE = "discrete-approx"
METHOD_NUMERICAL = "numerical-opt"
METHOD_BASELINE = "baseline"

MODEL_NON_PRIVATE = "non-private"
MODEL_CENTRAL = "central"
MODEL_LOCAL = "local"

RELEASE_NONE = "none"
RELEASE_DEGREE = "degree"
RELEASE_LOG_STAT = "log-stat"


@dataclass(frozen=True)
class TailConfig:
    """Degree window [d_min, d_max] over which the power law is fit."""

    d_min: int
    d_max: int

    def __post_init__(self) -> None:
        if not (1 <= self.d_min <= self.d_max):
            raise ValueError(f"require 1 <= d_min <= d_max, got ({self.d_min}, {self.d_max})")

    @property
    def shift(self) -> float:
        return self.d_min - 0.5


@dataclass(frozen=True)
class TailStats:
    """Exact sufficient statistics of a degree sequence over a tail window.

    t_disc is the sum of ln(d_i / (d_min - 0.5)) over tail degrees, n the
    number of tail nodes.
    """

    t_disc: float
    n: int
    config: TailConfig


@dataclass(frozen=True)
class AlphaEstimate:
    """A fitted scaling parameter with validity and provenance tags.

    When valid is False, alpha carries the pre-clamp value for diagnostics
    (for the numerical path, the unclamped maximizer; it may be negative).
    boundary_suspect marks a valid estimate pinned at the upper search bound.
    """

    alpha: float
    valid: bool
    method: str
    model: str = MODEL_NON_PRIVATE
    release: str = RELEASE_NONE
    seed: Optional[int] = None
    boundary_suspect: bool = False


def shifted_log_sum(values: np.ndarray, d_min: int) -> float:
    """Sum of ln(value / (d_min - 0.5)) with addends accumulated in ascending order.

    Sorting before summation makes the result a function of the value multiset
    alone, so every pipeline that sums the same values (in any source order)
    produces bit-identical totals.
    """
    if len(values) == 0:
        return 0.0
    logs = np.log(np.asarray(values, dtype=np.float64) / (d_min - 0.5))
    logs.sort()
    return float(logs.sum())


def tail_stats(degree_seq: np.ndarray, config: TailConfig) -> TailStats:
    """Compute (T_disc, N) for the degrees falling inside the tail window."""
    d = np.asarray(degree_seq)
    mask = (d >= config.d_min) & (d <= config.d_max)
    tail = d[mask].astype(np.float64)
    return TailStats(t_disc=shifted_log_sum(tail, config.d_min), n=int(mask.sum()), config=config)


def zeta_trunc(alpha: float, config: TailConfig) -> float:
    """Truncated zeta sum Z(alpha) = sum_{d=d_min}^{d_max} d^(-alpha).

    Uses error-compensated summation with terms accumulated from d_max down,
    so the small terms are added first. Overflow for large negative alpha is
    reported as a non-finite result rather than raised.
    """
    d = np.arange(config.d_max, config.d_min - 1, -1, dtype=np.float64)
    with np.errstate(over="ignore"):
        terms = np.power(d, -float(alpha))
    # terms are non-negative, so the only non-finite outcome is +inf: either a
    # single overflowed term (largest first, at d_max for negative alpha) or an
    # intermediate overflow inside the compensated sum
    if not np.isfinite(terms[0]):
        return math.inf
    try:
        return math.fsum(terms)
    except OverflowError:
        return math.inf


def log_likelihood(t_disc: float, n: float, config: TailConfig, alpha: float) -> float:
    """Log-likelihood of the tail sample expressed in sufficient statistics.

    Evaluates -alpha * S - n * ln Z(alpha) where S = t_disc + n * ln(d_min - 0.5)
    reconstructs the raw log-sum of tail degrees. Returns -inf when Z(alpha) is
    non-positive or non-finite. The statistics may be noisy, so any real values
    are accepted.
    """
    z = zeta_trunc(alpha, config)
    if not math.isfinite(z) or z <= 0.0:
        return -math.inf
    s = t_disc + n * math.log(config.shift)
    return -alpha * s - n * math.log(z)


def fit_discrete_approx(stats) -> AlphaEstimate:
    """Closed-form estimate alpha = 1 + N / T_disc.

    Accepts exact TailStats or noisy statistics exposing t_tilde / n_tilde.
    The estimate is valid only when both statistics are strictly positive and
    the result is finite and non-negative; otherwise the raw value (possibly
    nan) is kept for diagnostics with valid=False.
    """
    t, n = _extract_stats(stats)
    if t == 0.0 or not (math.isfinite(t) and math.isfinite(n)):
        alpha = math.nan
    else:
        alpha = 1.0 + n / t
    valid = t > 0.0 and n > 0.0 and math.isfinite(alpha) and alpha >= 0.0
    return AlphaEstimate(alpha=alpha, valid=valid, method=METHOD_DISCRETE)


def fit_numerical(t_disc: float, n: float, config: TailConfig) -> AlphaEstimate:
    """Maximum-likelihood estimate via coarse scan plus golden-section refinement.

    The score is scanned over [SEARCH_LO, SEARCH_HI] at step SCAN_STEP, then the
    bracket around the best grid point is refined by golden-section search to
    an absolute tolerance of ALPHA_TOL. For positive statistics the score is
    strictly concave in alpha, so the scan-then-refine scheme finds the global
    maximizer; for degenerate statistics the scan still picks the best grid
    region. A maximizer below zero is flagged invalid (alpha keeps the
    unclamped value); a maximizer pinned at the upper bound is flagged
    boundary_suspect but stays valid.
    """
    if not (math.isfinite(t_disc) and math.isfinite(n)):
        return AlphaEstimate(alpha=math.nan, valid=False, method=METHOD_NUMERICAL)

    def score(a: float) -> float:
        return log_likelihood(t_disc, n, config, a)

    grid = np.arange(SEARCH_LO, SEARCH_HI + SCAN_STEP / 2, SCAN_STEP)
    values = [score(a) for a in grid]
    best = int(np.argmax(values))
    lo = grid[max(best - 1, 0)]
    hi = grid[min(best + 1, len(grid) - 1)]
    alpha = _golden_section(score, float(lo), float(hi))

    if not math.isfinite(values[best]) or (n == 0.0 and t_disc == 0.0):
        # identically flat or everywhere -inf score has no meaningful maximizer
        return AlphaEstimate(alpha=alpha, valid=False, method=METHOD_NUMERICAL)
    if alpha < 0.0:
        return AlphaEstimate(alpha=alpha, valid=False, method=METHOD_NUMERICAL)
    suspect = SEARCH_HI - alpha <= _BOUNDARY_TOL
    return AlphaEstimate(alpha=alpha, valid=True, method=METHOD_NUMERICAL, boundary_suspect=suspect)


def pmf(d: int, alpha: float, config: TailConfig) -> float:
    """Model probability of degree d: d^(-alpha) / Z(alpha)."""
    if not (config.d_min <= d <= config.d_max):
        raise ValueError(f"degree {d} outside support [{config.d_min}, {config.d_max}]")
    return float(d) ** (-alpha) / zeta_trunc(alpha, config)


def _extract_stats(stats) -> tuple[float, float]:
    if hasattr(stats, "t_disc"):
        return float(stats.t_disc), float(stats.n)
    return float(stats.t_tilde), float(stats.n_tilde)


_INV_PHI = (math.sqrt(5.0) - 1.0) / 2.0


def _golden_section(score, lo: float, hi: float) -> float:
    c = hi - _INV_PHI * (hi - lo)
    d = lo + _INV_PHI * (hi - lo)
    fc, fd = score(c), score(d)
    while hi - lo > ALPHA_TOL:
        if fc > fd:
            hi, d, fd = d, c, fc
            c = hi - _INV_PHI * (hi - lo)
            fc = score(c)
        else:
            lo, c, fc = c, d, fd
            d = lo + _INV_PHI * (hi - lo)
            fd = score(d)
    return (lo + hi) / 2.0
