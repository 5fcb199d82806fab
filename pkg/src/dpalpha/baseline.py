"""Comparison method: release the whole sorted degree sequence, then fit.

This is the classical degree-distribution route. The curator sorts the degree
sequence ascending and perturbs every order statistic with Laplace(2/eps);
under edge neighbors the sorted sequence has L1 sensitivity 2, because adding
or removing one edge moves exactly two order statistics by one each. The noisy
sequence is then repaired by isotonic (pool-adjacent-violators) projection,
clamped to the feasible degree range, and fed to the closed-form fit.

Entries clamped down to d_max stay inside the fitting window, unlike the exact
tail statistics which exclude degrees above d_max, so the noise-off identity
with the non-private fit holds only when no degree exceeds d_max.
"""

from __future__ import annotations

from dataclasses import dataclass, replace

import numpy as np
from scipy.optimize import isotonic_regression

from .mechanisms import STREAM_BASELINE, RngSeed, laplace_vector
from .powerlaw import (
    METHOD_BASELINE,
    MODEL_CENTRAL,
    AlphaEstimate,
    TailConfig,
    TailStats,
    fit_discrete_approx,
    shifted_log_sum,
)


@dataclass(frozen=True)
class NoisySortedDegrees:
    """Per-node released values in sorted-position order, plus the budget used."""

    values: np.ndarray
    eps: float


def baseline_release(
    degree_seq: np.ndarray, eps: float, rng: RngSeed, noise_off: bool = False
) -> NoisySortedDegrees:
    """Sort degrees ascending and add Laplace(2/eps) to each entry."""
    if eps <= 0:
        raise ValueError(f"eps must be positive, got {eps}")
    values = np.sort(np.asarray(degree_seq)).astype(np.float64)
    if not noise_off:
        values = values + laplace_vector(2.0 / eps, values.size, rng.stream(STREAM_BASELINE))
    return NoisySortedDegrees(values=values, eps=eps)


def isotonic_postprocess(s: NoisySortedDegrees) -> NoisySortedDegrees:
    """L2 projection onto non-decreasing sequences (pool adjacent violators).

    Idempotent; already-sorted input passes through unchanged.
    """
    if s.values.size == 0:
        return s
    projected = isotonic_regression(s.values, increasing=True).x
    return replace(s, values=np.asarray(projected, dtype=np.float64))


def baseline_fit(s: NoisySortedDegrees, config: TailConfig) -> AlphaEstimate:
    """Clamp to [0, d_max], window to [d_min, d_max], closed-form fit."""
    clamped = np.clip(s.values, 0.0, float(config.d_max))
    window = clamped[(clamped >= config.d_min) & (clamped <= config.d_max)]
    stats = TailStats(
        t_disc=shifted_log_sum(window, config.d_min), n=int(window.size), config=config
    )
    est = fit_discrete_approx(stats)
    return replace(est, method=METHOD_BASELINE, model=MODEL_CENTRAL)


def baseline_run(
    degree_seq: np.ndarray,
    config: TailConfig,
    eps: float,
    rng: RngSeed,
    noise_off: bool = False,
) -> AlphaEstimate:
    """Release, project, and fit in one call."""
    released = baseline_release(degree_seq, eps, rng, noise_off=noise_off)
    est = baseline_fit(isotonic_postprocess(released), config)
    return replace(est, seed=rng.root())
