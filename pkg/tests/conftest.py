import pytest

from dpalpha import (
    METHOD_DISCRETE,
    METHOD_NUMERICAL,
    MODEL_LOCAL,
    RELEASE_DEGREE,
    RELEASE_LOG_STAT,
    ExperimentSpec,
    GeneratorSpec,
    TailConfig,
    materialize_dataset,
    run_experiment,
)

# Seed of the shared synthetic dataset; fits on it are frozen in several tests.
CANONICAL_SEED = 1


@pytest.fixture(scope="session")
def canonical_degrees():
    """100,000 i.i.d. power-law degrees, alpha=2.5, support [1, 1000]."""
    spec = GeneratorSpec(n=100_000, alpha=2.5, config=TailConfig(1, 1000))
    seq, _ = materialize_dataset(spec, CANONICAL_SEED)
    return seq


@pytest.fixture(scope="session")
def local_variant_means(canonical_degrees):
    """Mean l1 error (%) of the four local pipelines at eps=1, d_min=1, 200 trials.

    Computed once and shared: the acceptance gate checks the smallest entry and
    its magnitude, the local-protocol tests check the full ordering.
    """
    variants = [
        (METHOD_NUMERICAL, RELEASE_DEGREE),
        (METHOD_NUMERICAL, RELEASE_LOG_STAT),
        (METHOD_DISCRETE, RELEASE_DEGREE),
        (METHOD_DISCRETE, RELEASE_LOG_STAT),
    ]
    means = {}
    for method, release in variants:
        cell = run_experiment(
            ExperimentSpec(
                dataset=canonical_degrees,
                model=MODEL_LOCAL,
                method=method,
                release=release,
                eps_list=[1.0],
                dmin_list=[1],
                dmax=1000,
                trials=200,
                base_seed=CANONICAL_SEED,
            )
        )[0]
        assert cell.invalid_count == 0
        means[(method, release)] = cell.mean_l1_pct
    return means


@pytest.fixture(scope="session")
def announce(request):
    """Print a line through pytest's output capture (for PASS/FAIL verdicts)."""
    capman = request.config.pluginmanager.getplugin("capturemanager")

    def _announce(line: str) -> None:
        if capman is None:
            print(line, flush=True)
            return
        with capman.global_and_fixture_disabled():
            print(line, flush=True)

    return _announce
