"""Independent reference implementations used to cross-check the package.

Everything here is written directly against the math, with different
algorithms and summation orders than the library (mpmath extended precision,
naive ascending-order sums, numeric CDF inversion, quadratic programming), so
a defect in the implementation cannot hide inside its own oracle.
"""

from __future__ import annotations

import math

import mpmath as mp
import numpy as np
from scipy.optimize import brentq, nnls

mp.mp.dps = 50


def zeta_trunc_mp(alpha, d_min: int, d_max: int) -> mp.mpf:
    """Truncated zeta sum at 50 decimal digits."""
    a = mp.mpf(alpha)
    return mp.fsum(mp.power(d, -a) for d in range(d_min, d_max + 1))


def log_likelihood_mp(t_disc, n, d_min: int, d_max: int, alpha) -> mp.mpf:
    """Score -alpha*S - n*ln Z at 50 decimal digits, S = t + n*ln(d_min - 0.5)."""
    a = mp.mpf(alpha)
    s = mp.mpf(t_disc) + mp.mpf(n) * mp.log(mp.mpf(d_min) - mp.mpf("0.5"))
    return -a * s - mp.mpf(n) * mp.log(zeta_trunc_mp(a, d_min, d_max))


def score_grid(
    t_disc: float, n: float, d_min: int, d_max: int, grid: np.ndarray
) -> np.ndarray:
    """Score values over a grid of alpha, via plain ascending summation.

    Vectorized float64 route independent of the library's compensated
    descending sum; non-positive or non-finite Z maps to -inf.
    """
    log_d = np.log(np.arange(d_min, d_max + 1, dtype=np.float64))
    s = t_disc + n * math.log(d_min - 0.5)
    out = np.empty(grid.size, dtype=np.float64)
    chunk = 20000
    for i in range(0, grid.size, chunk):
        g = grid[i : i + chunk]
        with np.errstate(over="ignore"):
            z = np.exp(-np.outer(g, log_d)).sum(axis=1)
        with np.errstate(divide="ignore", invalid="ignore"):
            vals = -g * s - n * np.log(z)
        vals[~np.isfinite(z) | (z <= 0.0)] = -np.inf
        out[i : i + chunk] = vals
    return out


def grid_argmax(
    t_disc: float,
    n: float,
    d_min: int,
    d_max: int,
    lo: float = -5.0,
    hi: float = 50.0,
    step: float = 1e-4,
) -> tuple[float, float]:
    """Dense-grid maximizer of the score; returns (alpha, score value).

    The full grid is evaluated literally; no refinement shortcuts. np.argmax
    returns the first index on a numerically flat plateau.
    """
    num = int(round((hi - lo) / step)) + 1
    grid = np.linspace(lo, hi, num)
    vals = score_grid(t_disc, n, d_min, d_max, grid)
    k = int(np.argmax(vals))
    return float(grid[k]), float(vals[k])


def grid_argmax_concave(
    t_disc: float, n: float, d_min: int, d_max: int, lo: float = -10.0, hi: float = 50.0
) -> float:
    """Two-stage grid maximizer: coarse 1e-2 pass, then 1e-4 near the peak.

    Valid only for strictly concave scores (t_disc > 0 and n > 0), where the
    global maximizer cannot hide outside the coarse peak's bracket.
    """
    assert t_disc > 0 and n > 0, "two-stage refinement requires a concave score"
    coarse = np.arange(lo, hi + 5e-3, 1e-2)
    k = int(np.argmax(score_grid(t_disc, n, d_min, d_max, coarse)))
    a0 = float(coarse[k])
    fine = np.arange(a0 - 2e-2, a0 + 2e-2 + 5e-5, 1e-4)
    vals = score_grid(t_disc, n, d_min, d_max, fine)
    return float(fine[int(np.argmax(vals))])


def agrees_with_grid(
    alpha_hat: float,
    t_disc: float,
    n: float,
    d_min: int,
    d_max: int,
    lo: float = -5.0,
    hi: float = 50.0,
    tol: float = 1e-4,
) -> bool:
    """Grid-argmax agreement, aware of numerically flat maximizer plateaus.

    Either the estimate lies within tol of the first grid maximizer, or it
    scores at least as high as the grid maximum (minus one part in 1e12 of its
    magnitude), which identifies it as a point of the same flat plateau.
    """
    a_star, v_star = grid_argmax(t_disc, n, d_min, d_max, lo=lo, hi=hi)
    if abs(alpha_hat - a_star) <= tol:
        return True
    v_hat = float(score_grid(t_disc, n, d_min, d_max, np.array([alpha_hat]))[0])
    return v_hat >= v_star - 1e-12 * max(1.0, abs(v_star))


def isotonic_l2_nnls(y: np.ndarray) -> np.ndarray:
    """L2 projection of y onto non-decreasing sequences via an NNLS program.

    Parametrizes x_i = x_1 + sum_{j<i} z_j with z >= 0; for fixed z the free
    intercept is eliminated by centering, leaving min ||C z - b|| over z >= 0.
    """
    y = np.asarray(y, dtype=np.float64)
    m = y.size
    if m <= 1:
        return y.copy()
    design = np.tril(np.ones((m, m - 1)), k=-1)
    centered = design - design.mean(axis=0)
    z, _ = nnls(centered, y - y.mean())
    x = design @ z
    return x + (y.mean() - x.mean())


def laplace_cdf(x: float, scale: float) -> float:
    if x < 0:
        return 0.5 * math.exp(x / scale)
    return 1.0 - 0.5 * math.exp(-x / scale)


def laplace_ppf_numeric(u: float, scale: float) -> float:
    """Quantile of Laplace(0, scale) by numeric root finding on the CDF."""
    if u == 0.5:
        return 0.0
    lo, hi = -scale, scale
    while laplace_cdf(lo, scale) > u:
        lo *= 2.0
    while laplace_cdf(hi, scale) < u:
        hi *= 2.0
    return brentq(lambda x: laplace_cdf(x, scale) - u, lo, hi, xtol=1e-13, rtol=1e-15)


def replay_laplace(rng: np.random.Generator, scale: float, size: int) -> np.ndarray:
    """The draws a Laplace stream should produce, per the numeric quantile oracle.

    Consumes the generator exactly like the library does: one uniform batch,
    floored at 2^-53 to dodge log(0).
    """
    u = np.maximum(rng.random(size), 2.0 ** -53)
    return np.array([laplace_ppf_numeric(float(ui), scale) for ui in u])
