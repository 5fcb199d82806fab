import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from dpalpha import (
    METHOD_BASELINE,
    MODEL_CENTRAL,
    STREAM_BASELINE,
    ExperimentSpec,
    NoisySortedDegrees,
    RngSeed,
    TailConfig,
    baseline_fit,
    baseline_release,
    baseline_run,
    fit_discrete_approx,
    isotonic_postprocess,
    laplace_vector,
    run_experiment,
    tail_stats,
)
from oracles import isotonic_l2_nnls

DEGS = np.array([3, 1, 4, 1, 5, 9, 2, 6])


# ------------------------------------------------------------------ release


def test_release_sorts_ascending_noise_off():
    rel = baseline_release(DEGS, eps=1.0, rng=RngSeed(1, 1), noise_off=True)
    assert np.array_equal(rel.values, np.sort(DEGS).astype(np.float64))
    assert rel.eps == 1.0


def test_release_noise_is_laplace_two_over_eps_seeded():
    seed = RngSeed(6, 2)
    rel = baseline_release(DEGS, eps=0.5, rng=seed)
    noise = laplace_vector(4.0, DEGS.size, seed.stream(STREAM_BASELINE))
    assert np.array_equal(rel.values, np.sort(DEGS) + noise)
    again = baseline_release(DEGS, eps=0.5, rng=RngSeed(6, 2))
    assert np.array_equal(rel.values, again.values)


def test_release_rejects_non_positive_eps():
    with pytest.raises(ValueError):
        baseline_release(DEGS, eps=0.0, rng=RngSeed(1, 1))
    with pytest.raises(ValueError):
        baseline_release(DEGS, eps=-2.0, rng=RngSeed(1, 1))


# ----------------------------------------------------------------- isotonic


def test_isotonic_two_point_example():
    s = NoisySortedDegrees(values=np.array([2.0, 1.0]), eps=1.0)
    out = isotonic_postprocess(s)
    assert np.allclose(out.values, [1.5, 1.5], rtol=1e-14)


def test_isotonic_four_point_example():
    s = NoisySortedDegrees(values=np.array([1.0, 3.0, 2.0, 4.0]), eps=1.0)
    out = isotonic_postprocess(s)
    assert np.allclose(out.values, [1.0, 2.5, 2.5, 4.0], rtol=1e-14)


def test_isotonic_passthrough_and_idempotence():
    sorted_vals = np.array([0.5, 1.0, 1.0, 7.25])
    s = NoisySortedDegrees(values=sorted_vals, eps=1.0)
    assert np.array_equal(isotonic_postprocess(s).values, sorted_vals)
    noisy = NoisySortedDegrees(values=np.array([4.0, 1.0, 2.0, 8.0, 3.0]), eps=1.0)
    once = isotonic_postprocess(noisy)
    twice = isotonic_postprocess(once)
    assert np.allclose(once.values, twice.values, rtol=1e-14)


def test_isotonic_empty_passthrough():
    s = NoisySortedDegrees(values=np.array([]), eps=1.0)
    assert isotonic_postprocess(s).values.size == 0


@given(
    st.lists(
        st.floats(min_value=-20.0, max_value=20.0, allow_nan=False),
        min_size=1,
        max_size=8,
    )
)
@settings(max_examples=80, deadline=None)
def test_isotonic_matches_quadratic_program_oracle(vals):
    """The projection agrees with an independently solved non-negative
    least-squares formulation of the same constrained problem."""
    y = np.array(vals)
    got = isotonic_postprocess(NoisySortedDegrees(values=y, eps=1.0)).values
    want = isotonic_l2_nnls(y)
    assert np.allclose(got, want, atol=1e-9)


@given(
    st.lists(
        st.floats(min_value=-50.0, max_value=50.0, allow_nan=False),
        min_size=1,
        max_size=40,
    )
)
@settings(max_examples=60, deadline=None)
def test_isotonic_output_monotone_and_sum_preserving(vals):
    """Pool-adjacent-violators replaces runs by their means, so the output is
    non-decreasing and keeps the total mass of the input."""
    y = np.array(vals)
    out = isotonic_postprocess(NoisySortedDegrees(values=y, eps=1.0)).values
    assert np.all(np.diff(out) >= -1e-12)
    assert math.fsum(out) == pytest.approx(math.fsum(y), abs=1e-8)


# ---------------------------------------------------------------------- fit


def test_fit_clamps_into_window_from_above_and_drops_below():
    cfg = TailConfig(1, 5)
    s = NoisySortedDegrees(values=np.array([0.2, 1.5, 7.0]), eps=1.0)
    est = baseline_fit(s, cfg)
    t = math.log(1.5 / 0.5) + math.log(5.0 / 0.5)
    assert est.valid
    assert est.alpha == pytest.approx(1.0 + 2.0 / t, rel=1e-12)
    assert est.method == METHOD_BASELINE
    assert est.model == MODEL_CENTRAL


def test_noise_off_run_equals_closed_form_fit():
    cfg = TailConfig(1, 20)
    est = baseline_run(DEGS, cfg, eps=1.0, rng=RngSeed(3, 1), noise_off=True)
    exact = fit_discrete_approx(tail_stats(DEGS, cfg))
    assert est.alpha == exact.alpha
    assert est.seed == RngSeed(3, 1).root()


def test_run_is_deterministic_per_seed():
    cfg = TailConfig(1, 20)
    a = baseline_run(DEGS, cfg, eps=1.0, rng=RngSeed(3, 7))
    b = baseline_run(DEGS, cfg, eps=1.0, rng=RngSeed(3, 7))
    c = baseline_run(DEGS, cfg, eps=1.0, rng=RngSeed(3, 8))
    assert a == b
    assert a.alpha != c.alpha


# ------------------------------------- error magnitudes on the 2.5 reference


@pytest.fixture(scope="module")
def baseline_cells(canonical_degrees):
    cells = run_experiment(
        ExperimentSpec(
            dataset=canonical_degrees,
            model=MODEL_CENTRAL,
            method=METHOD_BASELINE,
            eps_list=[1.0],
            dmin_list=[1, 3],
            dmax=1000,
            trials=20,
            base_seed=1,
        )
    )
    return {cell.config.d_min: cell for cell in cells}


def test_error_magnitude_dmin_one(baseline_cells):
    """Mean l1 error near 6.5% at eps=1, d_min=1 on the 2.5 reference sample
    (within a factor of two)."""
    got = baseline_cells[1].mean_l1_pct
    assert 6.53 / 2.0 <= got <= 6.53 * 2.0, f"baseline mean l1 {got:.3f}%"


def test_error_grows_with_dmin(baseline_cells):
    """Shrinking the window from below costs the baseline accuracy: d_min=3
    should be worse than d_min=1."""
    lo, hi = baseline_cells[1].mean_l1_pct, baseline_cells[3].mean_l1_pct
    assert hi > lo, f"d_min=3 mean l1 {hi:.3f}% vs d_min=1 {lo:.3f}%"
