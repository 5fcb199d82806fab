"""Command-line front end.

Subcommands: fit, dp-fit, ldp-fit, baseline, gen, sweep, sens-check.
Exit codes: 0 success, 1 usage error, 2 I/O error, 3 sensitivity violation.
"""

from __future__ import annotations

import argparse
import sys
from pathlib import Path

from .graphio import EdgeListParseError, write_edge_list
from .harness import (
    ExperimentSpec,
    emit_csv,
    emit_plot,
    materialize_dataset,
    run_experiment,
    sens_check,
)
from .mechanisms import DATASET_STREAM, STREAM_GENERATOR, RngSeed
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
)
from .syngen import GeneratorSpec, realize_graph, sample_degree_sequence

USAGE_EXIT = 1
IO_EXIT = 2
SENS_EXIT = 3

_METHODS = {"da": METHOD_DISCRETE, "no": METHOD_NUMERICAL}
_RELEASES = {"degree": RELEASE_DEGREE, "log": RELEASE_LOG_STAT}


class _Parser(argparse.ArgumentParser):
    # argparse exits 2 on bad usage by default; this tool reserves 2 for I/O
    def error(self, message: str):
        self.print_usage(sys.stderr)
        self.exit(USAGE_EXIT, f"{self.prog}: error: {message}\n")


def parse_generator_arg(text: str) -> GeneratorSpec:
    """Parse 'alpha=2.5,n=100000[,dmin=1][,dmax=1000][,realize=0|1]'."""
    fields = {"dmin": 1, "dmax": 1000, "realize": 0}
    required = {"alpha", "n"}
    for part in text.split(","):
        if "=" not in part:
            raise ValueError(f"malformed generator field {part!r}")
        key, value = part.split("=", 1)
        key = key.strip()
        if key not in ("alpha", "n", "dmin", "dmax", "realize"):
            raise ValueError(f"unknown generator field {key!r}")
        fields[key] = float(value) if key == "alpha" else int(value)
    missing = required - fields.keys()
    if missing:
        raise ValueError(f"generator spec needs {sorted(missing)}")
    return GeneratorSpec(
        n=int(fields["n"]),
        alpha=float(fields["alpha"]),
        config=TailConfig(d_min=int(fields["dmin"]), d_max=int(fields["dmax"])),
        realize=bool(fields["realize"]),
    )


def _add_dataset_flags(p: argparse.ArgumentParser) -> None:
    src = p.add_mutually_exclusive_group(required=True)
    src.add_argument("--input", metavar="PATH", help="edge-list file to ingest")
    src.add_argument(
        "--gen",
        metavar="SPEC",
        help="synthetic degrees, e.g. alpha=2.5,n=100000,dmin=1,dmax=1000",
    )


def _add_common_flags(p: argparse.ArgumentParser) -> None:
    p.add_argument("--dmin", default="1", help="tail lower cutoff(s), comma separated")
    p.add_argument("--dmax", default="auto", help="tail upper cutoff, integer or 'auto' (n-1)")
    p.add_argument("--seed", type=int, default=0, help="base seed for all streams")
    p.add_argument("--out", metavar="PATH", help="CSV output path (default: stdout)")
    p.add_argument("--plot", metavar="PATH.svg", help="also render an SVG error chart")
    p.add_argument("--noise-off", action="store_true", help="diagnostic mode, skip all noise")


def _add_trial_flags(p: argparse.ArgumentParser) -> None:
    p.add_argument("--eps", default="1", help="privacy budget(s), comma separated")
    p.add_argument("--trials", type=int, default=20, help="independent trials per cell")


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="dpalpha", description=__doc__)
    sub = parser.add_subparsers(dest="command", required=True)

    p_fit = sub.add_parser("fit", help="non-private estimate")
    _add_dataset_flags(p_fit)
    _add_common_flags(p_fit)
    p_fit.add_argument("--method", choices=["da", "no"], default="no")

    p_dp = sub.add_parser("dp-fit", help="centralized DP estimate")
    _add_dataset_flags(p_dp)
    _add_common_flags(p_dp)
    _add_trial_flags(p_dp)
    p_dp.add_argument("--method", choices=["da", "no"], default="no")
    p_dp.add_argument(
        "--eps-split", type=float, default=0.5, metavar="F", help="fraction of eps spent on T"
    )

    p_ldp = sub.add_parser("ldp-fit", help="local DP estimate")
    _add_dataset_flags(p_ldp)
    _add_common_flags(p_ldp)
    _add_trial_flags(p_ldp)
    p_ldp.add_argument("--method", choices=["da", "no"], default="no")
    p_ldp.add_argument("--release", choices=["degree", "log"], required=True)

    p_base = sub.add_parser("baseline", help="noisy-degree-sequence baseline")
    _add_dataset_flags(p_base)
    _add_common_flags(p_base)
    _add_trial_flags(p_base)

    p_gen = sub.add_parser("gen", help="emit a synthetic graph as an edge list")
    p_gen.add_argument("--gen", metavar="SPEC", required=True)
    p_gen.add_argument("--seed", type=int, default=0)
    p_gen.add_argument("--out", metavar="PATH", required=True)

    p_sweep = sub.add_parser("sweep", help="grid of eps x dmin cells")
    _add_dataset_flags(p_sweep)
    _add_common_flags(p_sweep)
    _add_trial_flags(p_sweep)
    p_sweep.add_argument(
        "--model", choices=["central", "local", "baseline"], default="central"
    )
    p_sweep.add_argument("--method", choices=["da", "no"], default="no")
    p_sweep.add_argument("--release", choices=["degree", "log"])
    p_sweep.add_argument("--eps-split", type=float, default=0.5, metavar="F")
    p_sweep.add_argument("--workers", type=int, default=1, help="trial pool size")

    p_sens = sub.add_parser("sens-check", help="exhaustive sensitivity audit")
    p_sens.add_argument("--max-nodes", type=int, default=5)
    p_sens.add_argument("--dmin", default="1,2,3", help="cutoffs to audit, comma separated")

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        if args.command == "sens-check":
            return _cmd_sens_check(args)
        if args.command == "gen":
            return _cmd_gen(args)
        return _cmd_experiment(parser, args)
    except (ValueError,) as exc:
        parser.exit(USAGE_EXIT, f"dpalpha: error: {exc}\n")
    except OSError as exc:
        print(f"dpalpha: i/o error: {exc}", file=sys.stderr)
        return IO_EXIT


def _cmd_sens_check(args) -> int:
    d_mins = _parse_int_list(args.dmin, "dmin")
    report = sens_check(args.max_nodes, d_mins)
    print(f"sensitivity audit on all graphs with {report.max_nodes} nodes")
    for row in report.rows:
        mark = "PASS" if row.ok else "VIOLATION"
        print(
            f"  d_min={row.d_min} {row.quantity:<9} observed={row.observed_max:.12f} "
            f"bound={row.bound:.12f} {mark}"
        )
    if report.n_witness is not None:
        g, e = report.n_witness
        print(f"  tight witness |dN|=2: graph mask {g}, toggled edge {e}")
    if report.degree_witness is not None:
        g, e = report.degree_witness
        print(f"  tight witness |d degree|=1: graph mask {g}, toggled edge {e}")
    if not report.ok:
        return SENS_EXIT
    return 0


def _cmd_gen(args) -> int:
    spec = parse_generator_arg(args.gen)
    if not spec.realize:
        spec = GeneratorSpec(n=spec.n, alpha=spec.alpha, config=spec.config, realize=True)
    rng = RngSeed(args.seed, DATASET_STREAM).stream(STREAM_GENERATOR)
    seq = sample_degree_sequence(spec, rng)
    report = realize_graph(seq, rng)
    with open(args.out, "w", encoding="utf-8") as fh:
        write_edge_list(report.graph, fh)
    print(
        f"wrote {report.graph.num_edges} edges on {report.graph.n} nodes to {args.out} "
        f"(erased {report.self_loops_erased} self-loops, "
        f"{report.duplicate_edges_erased} duplicates; degree diff l1={report.degree_diff_l1})",
        file=sys.stderr,
    )
    return 0


def _cmd_experiment(parser, args) -> int:
    dataset = args.input if args.input else parse_generator_arg(args.gen)
    dmax = None if args.dmax == "auto" else int(args.dmax)
    common = dict(
        dataset=dataset,
        dmin_list=_parse_int_list(args.dmin, "dmin"),
        dmax=dmax,
        base_seed=args.seed,
        noise_off=getattr(args, "noise_off", False),
    )

    if args.command == "fit":
        spec = ExperimentSpec(
            model=MODEL_NON_PRIVATE, method=_METHODS[args.method], trials=1, **common
        )
    elif args.command == "dp-fit":
        spec = ExperimentSpec(
            model=MODEL_CENTRAL,
            method=_METHODS[args.method],
            eps_list=_parse_float_list(args.eps, "eps"),
            trials=args.trials,
            fraction_t=args.eps_split,
            **common,
        )
    elif args.command == "ldp-fit":
        spec = ExperimentSpec(
            model=MODEL_LOCAL,
            method=_METHODS[args.method],
            release=_RELEASES[args.release],
            eps_list=_parse_float_list(args.eps, "eps"),
            trials=args.trials,
            **common,
        )
    elif args.command == "baseline":
        spec = ExperimentSpec(
            model=MODEL_CENTRAL,
            method=METHOD_BASELINE,
            eps_list=_parse_float_list(args.eps, "eps"),
            trials=args.trials,
            **common,
        )
    else:  # sweep
        model = {
            "central": MODEL_CENTRAL,
            "local": MODEL_LOCAL,
            "baseline": MODEL_CENTRAL,
        }[args.model]
        method = METHOD_BASELINE if args.model == "baseline" else _METHODS[args.method]
        release = RELEASE_NONE
        if args.model == "local":
            if not args.release:
                parser.error("sweep --model local requires --release")
            release = _RELEASES[args.release]
        spec = ExperimentSpec(
            model=model,
            method=method,
            release=release,
            eps_list=_parse_float_list(args.eps, "eps"),
            trials=args.trials,
            fraction_t=args.eps_split,
            workers=args.workers,
            **common,
        )

    try:
        results = run_experiment(spec)
    except EdgeListParseError as exc:
        print(f"dpalpha: i/o error: {exc}", file=sys.stderr)
        return IO_EXIT

    if args.out:
        emit_csv(results, args.out)
    else:
        emit_csv(results, sys.stdout)
    if args.plot:
        emit_plot(results, args.plot)
    return 0


def _parse_int_list(text: str, name: str) -> list[int]:
    try:
        values = [int(p) for p in text.split(",") if p.strip()]
    except ValueError:
        raise ValueError(f"{name} expects comma-separated integers, got {text!r}") from None
    if not values:
        raise ValueError(f"{name} list is empty")
    return values


def _parse_float_list(text: str, name: str) -> list[float]:
    try:
        values = [float(p) for p in text.split(",") if p.strip()]
    except ValueError:
        raise ValueError(f"{name} expects comma-separated numbers, got {text!r}") from None
    if not values:
        raise ValueError(f"{name} list is empty")
    return values


if __name__ == "__main__":
    sys.exit(main())
