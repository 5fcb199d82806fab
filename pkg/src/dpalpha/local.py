"""Local edge-DP protocol: per-node releases, aggregation, and fitting.

Each node releases one noisy value about its own degree, so no curator ever
sees the graph. Two release kinds exist. A degree release perturbs the degree
itself with Laplace(2/eps); the factor 2 appears because every edge is counted
by both of its endpoints, so each node can only claim half the budget for its
own report. A log-stat release perturbs the node's shifted-log contribution
ln(d_v / (d_min - 0.5)) with Laplace(2 * ln((d_min+1)/d_min) / eps); nodes
below d_min contribute 0 before noise (gating on the true degree, which is
what the sensitivity bound prices in).

Aggregation thresholds reports from below only (no upper cap) and produces a
NoisyTailStats whose n_tilde is an integer-valued count. Fitting is shared
with the central path and is pure post-processing, so the whole pipeline
spends exactly eps per node.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, replace
from typing import Optional, Sequence, Union

import numpy as np

from .central import NoisyTailStats, fit_noisy
from .mechanisms import (
    STREAM_NODE_NOISE,
    PrivacyBudget,
    RngSeed,
    laplace_sample,
    laplace_vector,
    sensitivity_degree,
    sensitivity_log_stat,
)
from .powerlaw import (
    MODEL_LOCAL,
    RELEASE_DEGREE,
    RELEASE_LOG_STAT,
    AlphaEstimate,
    TailConfig,
    shifted_log_sum,
)

KIND_DEGREE = "degree"
KIND_LOG_STAT = "log-stat"


class ProtocolError(ValueError):
    """Raised when a report batch mixes release kinds."""


@dataclass(frozen=True)
class NodeReport:
    """One node's released value. kind is uniform across a protocol run."""

    kind: str
    value: float


def node_release_degree(
    d_v: int, eps: float, rng: np.random.Generator, noise_off: bool = False
) -> NodeReport:
    """Release d_v + Laplace(2/eps). Consumes one draw from rng."""
    if noise_off:
        return NodeReport(kind=KIND_DEGREE, value=float(d_v))
    scale = sensitivity_degree() / (eps / 2.0)
    return NodeReport(kind=KIND_DEGREE, value=d_v + laplace_sample(scale, rng))


def node_release_log(
    d_v: int,
    config: TailConfig,
    eps: float,
    rng: np.random.Generator,
    noise_off: bool = False,
) -> NodeReport:
    """Release the node's shifted-log statistic plus Laplace noise.

    The pre-noise value is ln(d_v / (d_min - 0.5)) when d_v >= d_min and 0
    otherwise; the noise scale is 2 * sensitivity_log_stat(d_min) / eps.
    """
    base = math.log(d_v / config.shift) if d_v >= config.d_min else 0.0
    if noise_off:
        return NodeReport(kind=KIND_LOG_STAT, value=base)
    scale = 2.0 * sensitivity_log_stat(config.d_min) / eps
    return NodeReport(kind=KIND_LOG_STAT, value=base + laplace_sample(scale, rng))


def release_degrees(
    degree_seq: np.ndarray, eps: float, rng: RngSeed, noise_off: bool = False
) -> np.ndarray:
    """All nodes' degree releases at once; element v is node v's report value.

    Node v's noise is draw v of the trial's node-noise substream, so the batch
    is a pure function of (base_seed, stream_index, v) and replays
    deterministically regardless of how trials are scheduled.
    """
    d = np.asarray(degree_seq, dtype=np.float64)
    if noise_off:
        return d
    scale = sensitivity_degree() / (eps / 2.0)
    return d + laplace_vector(scale, d.shape[0], rng.stream(STREAM_NODE_NOISE))


def release_log_stats(
    degree_seq: np.ndarray,
    config: TailConfig,
    eps: float,
    rng: RngSeed,
    noise_off: bool = False,
) -> np.ndarray:
    """All nodes' log-stat releases at once; element v is node v's report value."""
    d = np.asarray(degree_seq)
    base = np.zeros(d.shape[0], dtype=np.float64)
    in_tail = d >= config.d_min
    base[in_tail] = np.log(d[in_tail] / config.shift)
    if noise_off:
        return base
    scale = 2.0 * sensitivity_log_stat(config.d_min) / eps
    return base + laplace_vector(scale, d.shape[0], rng.stream(STREAM_NODE_NOISE))


Reports = Union[Sequence[NodeReport], np.ndarray]


def aggregate_degree_reports(
    reports: Reports, config: TailConfig, budget: Optional[PrivacyBudget] = None
) -> NoisyTailStats:
    """Fold degree reports into noisy sufficient statistics.

    A report enters the tail when its value is at least d_min; there is no
    upper cap. t_tilde sums ln(value / (d_min - 0.5)) over entrants, n_tilde
    counts them. Permutation-invariant in the report order.
    """
    values = _values(reports, KIND_DEGREE)
    included = values[values >= config.d_min]
    return NoisyTailStats(
        t_tilde=shifted_log_sum(included, config.d_min),
        n_tilde=float(included.size),
        config=config,
        budget=budget,
    )


def aggregate_log_reports(
    reports: Reports, config: TailConfig, budget: Optional[PrivacyBudget] = None
) -> NoisyTailStats:
    """Fold log-stat reports into noisy sufficient statistics.

    A report enters when its value is at least ln(d_min / (d_min - 0.5)), the
    smallest statistic an in-tail node can hold before noise; t_tilde sums the
    entrant values themselves. Permutation-invariant in the report order.
    """
    values = _values(reports, KIND_LOG_STAT)
    threshold = math.log(config.d_min / config.shift)
    included = np.sort(values[values >= threshold])
    return NoisyTailStats(
        t_tilde=float(included.sum()), n_tilde=float(included.size), config=config, budget=budget
    )


def local_fit(noisy: NoisyTailStats, method: str, release: str) -> AlphaEstimate:
    """Fit from aggregated reports; tags the estimate as local."""
    if release not in (RELEASE_DEGREE, RELEASE_LOG_STAT):
        raise ValueError(f"unknown release {release!r}")
    est = fit_noisy(noisy, method)
    return replace(est, model=MODEL_LOCAL, release=release)


def local_run(
    degree_seq: np.ndarray,
    config: TailConfig,
    eps: float,
    release: str,
    method: str,
    rng: RngSeed,
    noise_off: bool = False,
) -> AlphaEstimate:
    """End-to-end protocol run: release every node, aggregate, fit.

    Each node consumes exactly eps; aggregation and fitting add nothing.
    """
    budget = PrivacyBudget(eps=eps, eps_t=eps / 2.0, eps_n=eps / 2.0)
    if release == RELEASE_DEGREE:
        values = release_degrees(degree_seq, eps, rng, noise_off=noise_off)
        noisy = aggregate_degree_reports(values, config, budget=budget)
    elif release == RELEASE_LOG_STAT:
        values = release_log_stats(degree_seq, config, eps, rng, noise_off=noise_off)
        noisy = aggregate_log_reports(values, config, budget=budget)
    else:
        raise ValueError(f"unknown release {release!r}")
    est = local_fit(noisy, method, release)
    return replace(est, seed=rng.root())


def _values(reports: Reports, expected_kind: str) -> np.ndarray:
    if isinstance(reports, np.ndarray):
        return reports.astype(np.float64, copy=False)
    kinds = {r.kind for r in reports}
    if kinds - {expected_kind}:
        raise ProtocolError(f"expected only {expected_kind!r} reports, got kinds {sorted(kinds)}")
    return np.array([r.value for r in reports], dtype=np.float64)
