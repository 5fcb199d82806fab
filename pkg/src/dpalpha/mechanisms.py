"""Laplace mechanism, privacy-budget bookkeeping, and closed-form sensitivities.

Noise streams are value-typed: an RngSeed names a stream as (base_seed,
stream_index) and every generator derived from it is reproducible. Within an
experiment, stream_index 0 is reserved for dataset generation and trial k uses
stream_index k (k >= 1). Substream purposes are fixed module constants so
parallel trials never share generator state.

Laplace draws are plain float64 via inverse-CDF transform of one uniform; the
mechanisms here are real-valued and floating-point side channels are out of
scope.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

# Fixed substream purposes, spawned per trial.
STREAM_T_NOISE = 0
STREAM_N_NOISE = 1
STREAM_NODE_NOISE = 2
STREAM_BASELINE = 3
STREAM_GENERATOR = 4

# Reserved stream_index for dataset generation inside an experiment.
DATASET_STREAM = 0


@dataclass(frozen=True)
class PrivacyBudget:
    """Total budget eps split into eps_t (for T_disc) and eps_n (for N)."""

    eps: float
    eps_t: float
    eps_n: float

    def __post_init__(self) -> None:
        if not (self.eps > 0 and self.eps_t > 0 and self.eps_n > 0):
            raise ValueError("all budget components must be positive")
        if abs((self.eps_t + self.eps_n) - self.eps) > 1e-12:
            raise ValueError("eps_t + eps_n must equal eps")


@dataclass(frozen=True)
class RngSeed:
    """Deterministic name of one noise stream: (base_seed, stream_index).

    root() collapses the pair into a single 64-bit value that is recorded in
    experiment output; feeding that value back through substream() replays
    every draw of the stream.
    """

    base_seed: int
    stream_index: int

    def root(self) -> int:
        ss = np.random.SeedSequence(self.base_seed, spawn_key=(self.stream_index,))
        return int(ss.generate_state(1, np.uint64)[0])

    def stream(self, *purpose: int) -> np.random.Generator:
        return substream(self.root(), *purpose)


def substream(root: int, *purpose: int) -> np.random.Generator:
    """Generator for a purpose-keyed substream of a recorded trial root."""
    return np.random.default_rng(np.random.SeedSequence(root, spawn_key=tuple(purpose)))


def laplace_from_uniform(u, scale: float):
    """Inverse Laplace(0, scale) CDF applied to uniform draws in (0, 1).

    u < 0.5 maps to scale*ln(2u), u >= 0.5 to -scale*ln(2(1-u)); u = 0.5 maps
    to exactly 0. Vectorized; both branches are finite for u in [2^-53, 1).
    """
    u = np.asarray(u, dtype=np.float64)
    return np.where(u < 0.5, scale * np.log(2.0 * u), -scale * np.log(2.0 * (1.0 - u)))


def _checked_scale(scale: float) -> float:
    if not (math.isfinite(scale) and scale > 0):
        raise ValueError(f"Laplace scale must be positive and finite, got {scale}")
    return float(scale)


def laplace_sample(scale: float, rng: np.random.Generator) -> float:
    """One Laplace(0, scale) draw from the given stream."""
    b = _checked_scale(scale)
    u = max(rng.random(), 2.0 ** -53)
    return float(laplace_from_uniform(u, b))


def laplace_vector(scale: float, size: int, rng: np.random.Generator) -> np.ndarray:
    """size independent Laplace(0, scale) draws; element i is draw i of the stream."""
    b = _checked_scale(scale)
    u = np.maximum(rng.random(size), 2.0 ** -53)
    return laplace_from_uniform(u, b)


def sensitivity_t_disc(d_min: int) -> float:
    """Worst-case change of T_disc when one edge is toggled: 2*ln((d_min+1)/d_min).

    One edge changes the degree of its two endpoints by one each, and each
    endpoint's shifted-log contribution moves by at most ln((d_min+1)/d_min);
    the bound decreases in d_min. Requires d_max to sit at the maximum possible
    degree so the upper window edge cannot be crossed.
    """
    _check_d_min(d_min)
    return 2.0 * math.log((d_min + 1) / d_min)


def sensitivity_log_stat(d_min: int) -> float:
    """Worst-case change of one node's shifted-log statistic: ln((d_min+1)/d_min)."""
    _check_d_min(d_min)
    return math.log((d_min + 1) / d_min)


def sensitivity_n() -> float:
    """Worst-case change of the tail count N when one edge is toggled (both endpoints may cross d_min)."""
    return 2.0


def sensitivity_degree() -> float:
    """Worst-case change of a single node's degree when one edge is toggled."""
    return 1.0


def split_budget(eps: float, fraction_t: float = 0.5) -> PrivacyBudget:
    """Split a total budget into (eps_t, eps_n) with eps_t = fraction_t * eps."""
    if not (math.isfinite(eps) and eps > 0):
        raise ValueError(f"eps must be positive and finite, got {eps}")
    if not (0.0 < fraction_t < 1.0):
        raise ValueError(f"fraction_t must lie in (0, 1), got {fraction_t}")
    eps_t = fraction_t * eps
    return PrivacyBudget(eps=eps, eps_t=eps_t, eps_n=eps - eps_t)


def _check_d_min(d_min: int) -> None:
    if d_min < 1:
        raise ValueError(f"d_min must be at least 1, got {d_min}")
