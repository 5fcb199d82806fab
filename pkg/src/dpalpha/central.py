"""Centralized edge-DP estimation: privatize (T_disc, N) once, then fit.

A trusted curator computes the exact sufficient statistics, adds Laplace noise
calibrated to their sensitivities, and hands the noisy pair to one of the two
estimators. Everything after the noise addition is post-processing: the fit
stage consumes only the NoisyTailStats record and never sees raw degrees.
"""

from __future__ import annotations

from dataclasses import dataclass, replace
from typing import Optional

import numpy as np

from .mechanisms import (
    STREAM_N_NOISE,
    STREAM_T_NOISE,
    PrivacyBudget,
    RngSeed,
    laplace_sample,
    sensitivity_n,
    sensitivity_t_disc,
)
from .powerlaw import (
    METHOD_DISCRETE,
    METHOD_NUMERICAL,
    MODEL_CENTRAL,
    AlphaEstimate,
    TailConfig,
    TailStats,
    fit_discrete_approx,
    fit_numerical,
    tail_stats,
)


@dataclass(frozen=True)
class NoisyTailStats:
    """Privatized sufficient statistics plus the budget that produced them.

    No projection is applied: both fields may be negative. budget is None only
    when an aggregator could not know it (local reports aggregated directly).
    """

    t_tilde: float
    n_tilde: float
    config: TailConfig
    budget: Optional[PrivacyBudget] = None


def noisy_tail_stats(
    stats: TailStats,
    budget: PrivacyBudget,
    rng: RngSeed,
    noise_off: bool = False,
) -> NoisyTailStats:
    """Add Laplace noise to (t_disc, n) at scales sensitivity/budget.

    T noise and N noise come from separate fixed-purpose substreams of rng.
    With noise_off the exact statistics pass through unchanged (diagnostic
    mode; no stream state is consumed).
    """
    if noise_off:
        return NoisyTailStats(
            t_tilde=stats.t_disc, n_tilde=float(stats.n), config=stats.config, budget=budget
        )
    scale_t = sensitivity_t_disc(stats.config.d_min) / budget.eps_t
    scale_n = sensitivity_n() / budget.eps_n
    dt = laplace_sample(scale_t, rng.stream(STREAM_T_NOISE))
    dn = laplace_sample(scale_n, rng.stream(STREAM_N_NOISE))
    return NoisyTailStats(
        t_tilde=stats.t_disc + dt, n_tilde=stats.n + dn, config=stats.config, budget=budget
    )


def fit_noisy(noisy: NoisyTailStats, method: str) -> AlphaEstimate:
    """Fit from privatized statistics alone (the post-processing stage)."""
    if method == METHOD_DISCRETE:
        est = fit_discrete_approx(noisy)
    elif method == METHOD_NUMERICAL:
        est = fit_numerical(noisy.t_tilde, noisy.n_tilde, noisy.config)
    else:
        raise ValueError(f"unknown method {method!r}")
    return est


def central_da(
    degree_seq: np.ndarray,
    config: TailConfig,
    budget: PrivacyBudget,
    rng: RngSeed,
    noise_off: bool = False,
) -> AlphaEstimate:
    """Discrete-approximation estimate from noisy statistics: 1 + N~ / T~.

    Consumes eps_t + eps_n of budget by sequential composition. Invalid when
    either noisy statistic is non-positive.
    """
    stats = tail_stats(degree_seq, config)
    noisy = noisy_tail_stats(stats, budget, rng, noise_off=noise_off)
    est = fit_noisy(noisy, METHOD_DISCRETE)
    return replace(est, model=MODEL_CENTRAL, seed=rng.root())


def central_no(
    degree_seq: np.ndarray,
    config: TailConfig,
    budget: PrivacyBudget,
    rng: RngSeed,
    noise_off: bool = False,
) -> AlphaEstimate:
    """Numerical-optimization estimate from noisy statistics.

    Consumes eps_t + eps_n of budget; the optimizer sees only (T~, N~, config),
    so the estimation step is pure post-processing. Invalidity (maximizer
    below zero) propagates from the fit.
    """
    stats = tail_stats(degree_seq, config)
    noisy = noisy_tail_stats(stats, budget, rng, noise_off=noise_off)
    est = fit_noisy(noisy, METHOD_NUMERICAL)
    return replace(est, model=MODEL_CENTRAL, seed=rng.root())
