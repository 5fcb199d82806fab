"""Experiment harness: repeated-trial runs, error tables, plots, sensitivity audit.

A run fixes a dataset, an estimator pipeline, and a privacy-budget grid, then
executes seed-derived independent trials and reports per-trial and aggregate
l1 error against the non-private reference fit on the same data and window.
Output is a fixed-schema CSV (plus an optional SVG chart); identical specs
with identical base seeds produce byte-identical output regardless of how many
worker threads execute the trials.
"""

from __future__ import annotations

import csv
import math
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from itertools import combinations
from pathlib import Path
from typing import IO, Iterable, Optional, Sequence, Union

import numpy as np

from .baseline import baseline_run
from .central import central_da, central_no
from .graphio import degrees as graph_degrees
from .graphio import load_edge_list
from .local import local_run
from .mechanisms import (
    DATASET_STREAM,
    STREAM_GENERATOR,
    RngSeed,
    sensitivity_degree,
    sensitivity_log_stat,
    sensitivity_n,
    sensitivity_t_disc,
    split_budget,
)
from .powerlaw import (
    METHOD_BASELINE,
    METHOD_DISCRETE,
    METHOD_NUMERICAL,
    MODEL_CENTRAL,
    MODEL_LOCAL,
    MODEL_NON_PRIVATE,
    RELEASE_DEGREE,
    RELEASE_LOG_STAT,
    RELEASE_NONE,
    TailConfig,
    fit_discrete_approx,
    fit_numerical,
    tail_stats,
)
from .syngen import GeneratorSpec, realize_graph, sample_degree_sequence

CSV_COLUMNS = [
    "dataset",
    "model",
    "method",
    "release",
    "eps",
    "eps_t",
    "eps_n",
    "dmin",
    "dmax",
    "trial",
    "seed",
    "alpha_ref",
    "alpha_hat",
    "valid",
    "l1_abs",
    "l1_pct",
    "std_l1_pct",
    "invalid_count",
]

# Marker for aggregates that cannot be computed because no trial was valid.
ABSENT = "--"


@dataclass(frozen=True)
class ExperimentSpec:
    """One experiment: dataset x pipeline x budget grid x trial count."""

    dataset: Union[str, Path, GeneratorSpec, np.ndarray]
    model: str = MODEL_CENTRAL
    method: str = METHOD_NUMERICAL
    release: str = RELEASE_NONE
    eps_list: Sequence[float] = ()
    dmin_list: Sequence[int] = (1,)
    dmax: Optional[int] = None  # None resolves to n - 1
    trials: int = 20
    base_seed: int = 0
    fraction_t: float = 0.5
    noise_off: bool = False
    workers: int = 1

    def __post_init__(self) -> None:
        if self.trials < 1:
            raise ValueError("trials must be at least 1")
        if self.workers < 1:
            raise ValueError("workers must be at least 1")
        if any(e <= 0 for e in self.eps_list):
            raise ValueError("all eps values must be positive")
        if self.model == MODEL_LOCAL and self.release == RELEASE_NONE:
            raise ValueError("local model requires a release kind")
        if self.method == METHOD_BASELINE and self.model != MODEL_CENTRAL:
            raise ValueError("baseline method runs in the central model")
        if self.model != MODEL_NON_PRIVATE and not self.eps_list:
            raise ValueError("private models need at least one eps")


@dataclass(frozen=True)
class TrialRecord:
    trial: int
    seed: int
    alpha_hat: float
    valid: bool
    l1_abs: float
    l1_pct: float


@dataclass(frozen=True)
class TrialResults:
    """All trials of one (dataset, pipeline, eps, window) cell plus aggregates."""

    dataset: str
    model: str
    method: str
    release: str
    eps: Optional[float]
    eps_t: Optional[float]
    eps_n: Optional[float]
    config: TailConfig
    alpha_ref: float
    records: list[TrialRecord] = field(default_factory=list)

    @property
    def valid_records(self) -> list[TrialRecord]:
        return [r for r in self.records if r.valid]

    @property
    def invalid_count(self) -> int:
        return len(self.records) - len(self.valid_records)

    def _valid_column(self, name: str) -> Optional[np.ndarray]:
        vals = [getattr(r, name) for r in self.valid_records]
        return np.asarray(vals, dtype=np.float64) if vals else None

    @property
    def mean_alpha(self) -> Optional[float]:
        col = self._valid_column("alpha_hat")
        return None if col is None else float(np.mean(col))

    @property
    def mean_l1_abs(self) -> Optional[float]:
        col = self._valid_column("l1_abs")
        return None if col is None else float(np.mean(col))

    @property
    def mean_l1_pct(self) -> Optional[float]:
        col = self._valid_column("l1_pct")
        return None if col is None else float(np.mean(col))

    @property
    def std_l1_pct(self) -> Optional[float]:
        col = self._valid_column("l1_pct")
        if col is None or col.size < 2:
            return None
        return float(np.std(col, ddof=1))


def run_experiment(spec: ExperimentSpec) -> list[TrialResults]:
    """Execute the full grid of (dmin, eps) cells defined by the spec.

    The reference alpha of each cell is the non-private numerical fit on the
    same data and window, computed once. Trial k draws its noise from streams
    derived from (base_seed, k), so results do not depend on worker count or
    scheduling order.
    """
    degree_seq, label = materialize_dataset(spec.dataset, spec.base_seed)
    results: list[TrialResults] = []
    for d_min in spec.dmin_list:
        d_max = spec.dmax if spec.dmax is not None else max(len(degree_seq) - 1, d_min)
        config = TailConfig(d_min=int(d_min), d_max=int(d_max))
        stats = tail_stats(degree_seq, config)
        ref_est = fit_numerical(stats.t_disc, stats.n, config)
        alpha_ref = ref_est.alpha if ref_est.valid else math.nan

        if spec.model == MODEL_NON_PRIVATE:
            results.append(_non_private_cell(spec, label, config, stats, alpha_ref))
            continue

        for eps in spec.eps_list:
            results.append(
                _private_cell(spec, label, config, degree_seq, alpha_ref, float(eps))
            )
    return results


def _non_private_cell(spec, label, config, stats, alpha_ref) -> TrialResults:
    if spec.method == METHOD_DISCRETE:
        est = fit_discrete_approx(stats)
    else:
        est = fit_numerical(stats.t_disc, stats.n, config)
    record = _record(1, -1, est.alpha, est.valid, alpha_ref)
    return TrialResults(
        dataset=label,
        model=MODEL_NON_PRIVATE,
        method=spec.method,
        release=RELEASE_NONE,
        eps=None,
        eps_t=None,
        eps_n=None,
        config=config,
        alpha_ref=alpha_ref,
        records=[record],
    )


def _private_cell(spec, label, config, degree_seq, alpha_ref, eps) -> TrialResults:
    budget = split_budget(eps, spec.fraction_t) if spec.model == MODEL_CENTRAL else None

    def one_trial(trial: int) -> TrialRecord:
        rng = RngSeed(spec.base_seed, trial)
        if spec.model == MODEL_CENTRAL and spec.method == METHOD_BASELINE:
            est = baseline_run(degree_seq, config, eps, rng, noise_off=spec.noise_off)
        elif spec.model == MODEL_CENTRAL:
            runner = central_da if spec.method == METHOD_DISCRETE else central_no
            est = runner(degree_seq, config, budget, rng, noise_off=spec.noise_off)
        else:
            est = local_run(
                degree_seq,
                config,
                eps,
                spec.release,
                spec.method,
                rng,
                noise_off=spec.noise_off,
            )
        return _record(trial, rng.root(), est.alpha, est.valid, alpha_ref)

    trial_ids = range(1, spec.trials + 1)
    if spec.workers > 1:
        with ThreadPoolExecutor(max_workers=spec.workers) as pool:
            records = list(pool.map(one_trial, trial_ids))
    else:
        records = [one_trial(t) for t in trial_ids]

    return TrialResults(
        dataset=label,
        model=spec.model,
        method=spec.method,
        release=spec.release if spec.model == MODEL_LOCAL else RELEASE_NONE,
        eps=eps,
        eps_t=budget.eps_t if budget else eps / 2.0,
        eps_n=budget.eps_n if budget else eps / 2.0,
        config=config,
        alpha_ref=alpha_ref,
        records=records,
    )


def _record(trial, seed, alpha_hat, valid, alpha_ref) -> TrialRecord:
    l1_abs = abs(alpha_hat - alpha_ref)
    return TrialRecord(
        trial=trial,
        seed=seed,
        alpha_hat=alpha_hat,
        valid=valid,
        l1_abs=l1_abs,
        l1_pct=100.0 * l1_abs / alpha_ref,
    )


def materialize_dataset(
    dataset: Union[str, Path, GeneratorSpec, np.ndarray], base_seed: int
) -> tuple[np.ndarray, str]:
    """Resolve a dataset reference into a degree sequence and a label.

    Generator specs draw from the reserved dataset stream of base_seed, so the
    same spec and seed always yield the same data. With realize set, the
    sampled sequence is additionally run through stub matching and the degrees
    of the realized simple graph are used.
    """
    if isinstance(dataset, np.ndarray):
        return dataset, f"degrees:n={dataset.size}"
    if isinstance(dataset, GeneratorSpec):
        rng = RngSeed(base_seed, DATASET_STREAM).stream(STREAM_GENERATOR)
        seq = sample_degree_sequence(dataset, rng)
        if dataset.realize:
            seq = graph_degrees(realize_graph(seq, rng).graph)
        return seq, dataset.label()
    path = Path(dataset)
    with open(path, "r", encoding="utf-8") as fh:
        loaded = load_edge_list(fh)
    return graph_degrees(loaded.graph), str(dataset)


def emit_csv(results: Iterable[TrialResults], out: Union[str, Path, IO[str]]) -> None:
    """Write trial rows plus one aggregate row per cell in the fixed schema.

    Aggregate rows carry trial=-1 and seed=-1; their statistics cover valid
    trials only, and every statistic is replaced by the absent marker when no
    trial was valid. Floats are rendered with shortest round-trip formatting,
    so equal runs emit byte-identical files. An empty result list is an error
    and creates no file.
    """
    results = list(results)
    if not results or all(not r.records for r in results):
        raise ValueError("no results to write")

    if hasattr(out, "write"):
        _write_csv(results, out)
    else:
        with open(out, "w", encoding="utf-8", newline="") as fh:
            _write_csv(results, fh)


def _write_csv(results: list[TrialResults], fh: IO[str]) -> None:
    writer = csv.writer(fh, lineterminator="\n")
    writer.writerow(CSV_COLUMNS)
    for cell in results:
        base = [
            cell.dataset,
            cell.model,
            cell.method,
            cell.release,
            _fmt(cell.eps),
            _fmt(cell.eps_t),
            _fmt(cell.eps_n),
            str(cell.config.d_min),
            str(cell.config.d_max),
        ]
        for r in cell.records:
            writer.writerow(
                base
                + [
                    str(r.trial),
                    str(r.seed),
                    _fmt(cell.alpha_ref),
                    _fmt(r.alpha_hat),
                    "true" if r.valid else "false",
                    _fmt(r.l1_abs),
                    _fmt(r.l1_pct),
                    "",
                    "",
                ]
            )
        std = cell.std_l1_pct
        writer.writerow(
            base
            + [
                "-1",
                "-1",
                _fmt(cell.alpha_ref),
                _fmt(cell.mean_alpha, absent=ABSENT),
                "",
                _fmt(cell.mean_l1_abs, absent=ABSENT),
                _fmt(cell.mean_l1_pct, absent=ABSENT),
                ABSENT if cell.mean_l1_pct is None else ("" if std is None else _fmt(std)),
                str(cell.invalid_count),
            ]
        )


def _fmt(x: Optional[float], absent: str = "") -> str:
    if x is None:
        return absent
    return repr(float(x))


def _cell_label(r: TrialResults) -> str:
    release = f"/{r.release}" if r.release != RELEASE_NONE else ""
    return f"{r.model}/{r.method}{release} dmin={r.config.d_min}"


def emit_plot(results: Iterable[TrialResults], path: Union[str, Path]) -> None:
    """Render mean l1 % per eps as a grouped bar chart into a static SVG.

    Bars are grouped by eps along the x axis, one series per pipeline cell
    label; the error bars show the per-cell standard deviation. Cells with no
    valid trials are drawn with zero-height hatched bars. Output is metadata
    free and uses a fixed hash salt, so repeated renders are byte-identical.
    """
    import matplotlib as mpl
    from matplotlib.backends.backend_svg import FigureCanvasSVG
    from matplotlib.figure import Figure

    results = list(results)
    if not results:
        raise ValueError("no results to plot")

    eps_values = sorted({r.eps for r in results}, key=lambda e: (e is None, e or 0.0))
    labels = []
    for r in results:
        lab = _cell_label(r)
        if lab not in labels:
            labels.append(lab)

    fig = Figure(figsize=(8.0, 4.5))
    FigureCanvasSVG(fig)
    ax = fig.add_subplot(111)
    x = np.arange(len(eps_values), dtype=np.float64)
    width = 0.8 / max(len(labels), 1)

    for i, lab in enumerate(labels):
        heights, errs, hatches = [], [], []
        for e in eps_values:
            cell = next(
                (r for r in results if r.eps == e and _cell_label(r) == lab), None
            )
            if cell is None or cell.mean_l1_pct is None:
                heights.append(0.0)
                errs.append(0.0)
                hatches.append("//")
            else:
                heights.append(cell.mean_l1_pct)
                errs.append(cell.std_l1_pct or 0.0)
                hatches.append("")
        bars = ax.bar(x + i * width, heights, width, yerr=errs, capsize=2, label=lab)
        for bar, h in zip(bars, hatches):
            if h:
                bar.set_hatch(h)

    ax.set_xticks(x + width * (len(labels) - 1) / 2)
    ax.set_xticklabels(["exact" if e is None else repr(float(e)) for e in eps_values])
    ax.set_xlabel("privacy budget eps")
    ax.set_ylabel("mean l1 error (%)")
    ax.legend(fontsize=8)
    fig.tight_layout()
    with mpl.rc_context({"svg.hashsalt": "dpalpha"}):
        fig.savefig(path, format="svg", metadata={"Date": None})


@dataclass(frozen=True)
class SensBound:
    d_min: int
    quantity: str
    observed_max: float
    bound: float
    ok: bool


@dataclass(frozen=True)
class SensReport:
    """Exhaustive neighbor-pair audit of the four sensitivity bounds."""

    max_nodes: int
    rows: list[SensBound]
    # first (edge-set bitmask, toggled edge index) attaining |dN| = 2
    n_witness: Optional[tuple[int, int]]
    degree_witness: Optional[tuple[int, int]]

    @property
    def ok(self) -> bool:
        return all(r.ok for r in self.rows)


def sens_check(max_nodes: int, d_min_list: Sequence[int]) -> SensReport:
    """Enumerate every graph on max_nodes nodes and every single-edge toggle.

    For each d_min the window is [d_min, max_nodes - 1]; the upper edge sits at
    the largest possible simple-graph degree, so only the lower threshold can
    be crossed, matching how the bounds are derived. Observed maxima are
    compared against the closed-form bounds with 1e-12 slack on the float
    quantities. max_nodes above 6 is rejected to keep the enumeration exact
    and quick.
    """
    if not (2 <= max_nodes <= 6):
        raise ValueError("max_nodes must lie in [2, 6]")
    n = max_nodes
    edge_list = list(combinations(range(n), 2))
    m = len(edge_list)
    masks = np.arange(1 << m, dtype=np.uint32)

    incident = np.zeros(n, dtype=np.uint32)
    for idx, (u, v) in enumerate(edge_list):
        incident[u] |= np.uint32(1 << idx)
        incident[v] |= np.uint32(1 << idx)
    deg = np.bitwise_count(masks[:, None] & incident[None, :]).astype(np.int64)

    partners = np.empty((m, masks.size), dtype=np.int64)
    for e in range(m):
        partners[e] = masks ^ np.uint32(1 << e)

    max_d_deg = 0
    degree_witness = None
    for e in range(m):
        diffs = np.abs(deg - deg[partners[e]])
        local_max = int(diffs.max())
        if local_max > max_d_deg or degree_witness is None:
            max_d_deg = max(max_d_deg, local_max)
            g = int(np.argmax(diffs.max(axis=1)))
            degree_witness = (g, e)

    rows: list[SensBound] = []
    n_witness = None
    for d_min in d_min_list:
        d_max = n - 1
        contrib = np.zeros(n, dtype=np.float64)
        for d in range(n):
            if d_min <= d <= d_max:
                contrib[d] = math.log(d / (d_min - 0.5))
        c = contrib[deg]
        in_window = (deg >= d_min) & (deg <= d_max)
        t = (c * in_window).sum(axis=1)
        counts = in_window.sum(axis=1)
        cw = c * in_window

        max_dt = 0.0
        max_dn = 0
        max_dc = 0.0
        for e in range(m):
            p = partners[e]
            max_dt = max(max_dt, float(np.abs(t - t[p]).max()))
            dn = np.abs(counts - counts[p])
            local_dn = int(dn.max())
            if local_dn > max_dn:
                max_dn = local_dn
                if local_dn == 2:
                    n_witness = (int(np.argmax(dn)), e)
            max_dc = max(max_dc, float(np.abs(cw - cw[p]).max()))

        slack = 1e-12
        rows.extend(
            [
                SensBound(d_min, "T_disc", max_dt, sensitivity_t_disc(d_min), max_dt <= sensitivity_t_disc(d_min) + slack),
                SensBound(d_min, "N", float(max_dn), sensitivity_n(), max_dn <= sensitivity_n()),
                SensBound(d_min, "log-stat", max_dc, sensitivity_log_stat(d_min), max_dc <= sensitivity_log_stat(d_min) + slack),
                SensBound(d_min, "degree", float(max_d_deg), sensitivity_degree(), max_d_deg <= sensitivity_degree()),
            ]
        )

    return SensReport(
        max_nodes=max_nodes, rows=rows, n_witness=n_witness, degree_witness=degree_witness
    )
