"""Command-line interface.

Subcommands: gen (seeded random graph file), mpe (metric summary),
predict / apply (transformation deltas), experiment (pile runs to CSV),
verify (randomized differential self-test), ingest (node manifest to
graph file). Machine output goes to files, human summaries to stdout.

Exit codes: 0 success, 1 user or input error, 2 oracle mismatch (an
internal assertion failed, which signals a bug in this package).
"""

from __future__ import annotations

import argparse
import sys
from pathlib import Path

from .experiment import (
    ExperimentConfig,
    PileMode,
    PRESETS,
    SourcePolicy,
    generate_random_graph,
    run_batch,
)
from .formats import ingest_manifest, read_graph, write_graph, write_series_csv
from .graph import (
    BRUTE_FORCE_LIMIT,
    EncapsulatedGraph,
    configuration_efficiency,
    hidden_stddev,
    mpe,
    violational_stddev,
)
from .transform import (
    FUNDAMENTAL_KINDS,
    OracleMismatchError,
    TransformKind,
    Transformation,
    apply_checked,
    predict_delta,
)
from .verify import run_verification

EXIT_OK = 0
EXIT_USER_ERROR = 1
EXIT_ORACLE_FAILURE = 2


class _UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    # argparse exits with status 2 on bad arguments; that status is
    # reserved for oracle failures here, so route usage problems through
    # the normal error path instead.
    def error(self, message):
        raise _UsageError(message)


def _fmt(value: float) -> str:
    return f"{value:.6f}"


def _load_graph(path: Path) -> EncapsulatedGraph:
    return read_graph(path.read_text(encoding="utf-8"))


def _print_metrics(graph: EncapsulatedGraph) -> None:
    breakdown = mpe(graph)
    if graph.regions:
        hidden_spread = hidden_stddev(graph).stddev
        violational_spread = violational_stddev(graph).stddev
    else:
        hidden_spread = violational_spread = 0.0
    print(f"regions: {graph.region_count}")
    print(f"nodes: {graph.node_count}")
    print(f"violational: {graph.violational_count}")
    print(f"internal-mpe: {breakdown.internal}")
    print(f"external-mpe: {breakdown.external}")
    print(f"total-mpe: {breakdown.total}")
    print(f"hidden-stddev: {_fmt(hidden_spread)}")
    print(f"violational-stddev: {_fmt(violational_spread)}")
    print(f"configuration-efficiency: {_fmt(configuration_efficiency(graph))}")


def _transformation_from_args(args: argparse.Namespace) -> Transformation:
    kind = TransformKind(args.kind)
    if kind in (TransformKind.ADD_VIOLATIONAL, TransformKind.ADD_HIDDEN, TransformKind.CONVERT):
        return Transformation(kind, args.magnitude, region=args.region)
    return Transformation(kind, args.magnitude, source=args.source, target=args.target)


def _print_delta(graph, transformation, report) -> None:
    total_before = mpe(graph).total
    print(f"kind: {transformation.kind.value}")
    print(f"delta: {report.total:+d}")
    if report.internal is not None:
        print(f"delta-internal: {report.internal:+d}")
        print(f"delta-external: {report.external:+d}")
    print(f"total-mpe-before: {total_before}")
    print(f"total-mpe-after: {total_before + report.total}")


def _cmd_gen(args: argparse.Namespace) -> int:
    config = ExperimentConfig(
        regions=args.regions,
        hidden_min=args.hidden_min,
        hidden_max=args.hidden_max,
        violational_min=args.viol_min,
        violational_max=args.viol_max,
        seed=args.seed,
    )
    graph = generate_random_graph(config)
    text = write_graph(graph)
    if args.out is None:
        sys.stdout.write(text)
    else:
        args.out.write_text(text, encoding="utf-8", newline="\n")
        print(
            f"wrote {args.out}: regions={graph.region_count} "
            f"nodes={graph.node_count} violational={graph.violational_count}"
        )
    return EXIT_OK


def _cmd_mpe(args: argparse.Namespace) -> int:
    _print_metrics(_load_graph(args.graphfile))
    return EXIT_OK


def _cmd_predict(args: argparse.Namespace) -> int:
    graph = _load_graph(args.graphfile)
    transformation = _transformation_from_args(args)
    report = predict_delta(graph, transformation)
    _print_delta(graph, transformation, report)
    return EXIT_OK


def _cmd_apply(args: argparse.Namespace) -> int:
    graph = _load_graph(args.graphfile)
    transformation = _transformation_from_args(args)
    node_delta = (
        transformation.magnitude if transformation.kind in FUNDAMENTAL_KINDS else 0
    )
    deep = (
        graph.node_count <= BRUTE_FORCE_LIMIT
        and graph.node_count + node_delta <= BRUTE_FORCE_LIMIT
    )
    after_graph, report = apply_checked(graph, transformation, deep=deep)
    args.out.write_text(write_graph(after_graph), encoding="utf-8", newline="\n")
    _print_delta(graph, transformation, report)
    print(f"checked: {'deep' if deep else 'shallow'}")
    print(f"wrote {args.out}")
    return EXIT_OK


def _cmd_experiment(args: argparse.Namespace) -> int:
    params = dict(PRESETS[args.preset]) if args.preset else {}
    overrides = {
        "mode": PileMode(args.mode) if args.mode else None,
        "regions": args.regions,
        "hidden_min": args.hidden_min,
        "hidden_max": args.hidden_max,
        "violational_min": args.viol_min,
        "violational_max": args.viol_max,
    }
    for name, value in overrides.items():
        if value is not None:
            params[name] = value
    missing = [name for name in
               ("mode", "regions", "hidden_min", "hidden_max", "violational_min", "violational_max")
               if name not in params]
    if missing:
        raise _UsageError(
            f"missing {', '.join(missing)}; pass the flags or use --preset"
        )
    config = ExperimentConfig(
        **params,
        policy=SourcePolicy(args.policy),
        target=args.target,
        seed=args.seed,
    )
    batch = run_batch(config, args.runs)
    args.out_dir.mkdir(parents=True, exist_ok=True)
    for index, series in enumerate(batch):
        path = args.out_dir / f"run_{index:03d}.csv"
        path.write_text(write_series_csv(series), encoding="utf-8", newline="\n")
        first, last = series.points[0], series.points[-1]
        print(
            f"run {index}: steps={last.step} initial-ce={_fmt(first.ce)} "
            f"final-ce={_fmt(last.ce)} csv={path}"
        )
    return EXIT_OK


def _cmd_verify(args: argparse.Namespace) -> int:
    result = run_verification(
        cases=args.cases,
        max_regions=args.max_regions,
        max_count=args.max_count,
        seed=args.seed,
    )
    print(f"cases: {result.cases}")
    print(f"seed: {result.seed}")
    for name in sorted(result.passed):
        print(f"{name}: {result.passed[name]} passed")
    print("result: PASS")
    return EXIT_OK


def _cmd_ingest(args: argparse.Namespace) -> int:
    graph = ingest_manifest(args.manifestfile.read_text(encoding="utf-8"))
    args.out.write_text(write_graph(graph), encoding="utf-8", newline="\n")
    _print_metrics(graph)
    print(f"wrote {args.out}")
    return EXIT_OK


def _add_bounds_arguments(parser: argparse.ArgumentParser, required: bool) -> None:
    parser.add_argument("--regions", type=int, required=required)
    parser.add_argument("--hidden-min", type=int, required=required)
    parser.add_argument("--hidden-max", type=int, required=required)
    parser.add_argument("--viol-min", type=int, required=required)
    parser.add_argument("--viol-max", type=int, required=required)


def _add_transformation_subparsers(parser, func, with_out: bool) -> None:
    sub = parser.add_subparsers(dest="kind", required=True, metavar="transformation")

    def make(kind: TransformKind, two_regions: bool):
        p = sub.add_parser(kind.value)
        if two_regions:
            p.add_argument("--from", dest="source", type=int, required=True,
                           help="source region index")
            p.add_argument("--to", dest="target", type=int, required=True,
                           help="target region index")
        else:
            p.add_argument("--region", type=int, required=True)
        p.add_argument("-m", "--magnitude", type=int, required=True)
        if with_out:
            p.add_argument("--out", type=Path, required=True)
        p.set_defaults(func=func)

    make(TransformKind.ADD_VIOLATIONAL, two_regions=False)
    make(TransformKind.ADD_HIDDEN, two_regions=False)
    make(TransformKind.CONVERT, two_regions=False)
    make(TransformKind.TRANSLATE_VIOLATIONAL, two_regions=True)
    make(TransformKind.TRANSLATE_HIDDEN, two_regions=True)


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="encgraph", description="Encapsulated-graph metrics and transformations")
    sub = parser.add_subparsers(dest="command", required=True, metavar="command")

    gen = sub.add_parser("gen", help="write a seeded random graph file")
    _add_bounds_arguments(gen, required=True)
    gen.add_argument("--seed", type=int, default=0)
    gen.add_argument("--out", type=Path, help="output path (default: stdout)")
    gen.set_defaults(func=_cmd_gen)

    summary = sub.add_parser("mpe", help="print the metric summary of a graph file")
    summary.add_argument("graphfile", type=Path)
    summary.set_defaults(func=_cmd_mpe)

    predict = sub.add_parser("predict", help="predict a transformation's MPE delta")
    predict.add_argument("graphfile", type=Path)
    _add_transformation_subparsers(predict, _cmd_predict, with_out=False)

    apply_cmd = sub.add_parser("apply", help="apply a transformation and write the result")
    apply_cmd.add_argument("graphfile", type=Path)
    _add_transformation_subparsers(apply_cmd, _cmd_apply, with_out=True)

    experiment = sub.add_parser("experiment", help="run pile experiments, one CSV per run")
    experiment.add_argument("--preset", choices=sorted(PRESETS),
                            help="canned experiment family; explicit flags override")
    experiment.add_argument("--mode", choices=[mode.value for mode in PileMode])
    _add_bounds_arguments(experiment, required=False)
    experiment.add_argument("--seed", type=int, default=0)
    experiment.add_argument("--runs", type=int, default=1)
    experiment.add_argument("--target", type=int,
                            help="target region index (default: seeded random)")
    experiment.add_argument("--policy", choices=[p.value for p in SourcePolicy],
                            default=SourcePolicy.DRAIN.value)
    experiment.add_argument("--out-dir", type=Path, required=True)
    experiment.set_defaults(func=_cmd_experiment)

    verify = sub.add_parser("verify", help="randomized differential self-test")
    verify.add_argument("--cases", type=int, default=1000)
    verify.add_argument("--max-regions", type=int, default=10)
    verify.add_argument("--max-count", type=int, default=8)
    verify.add_argument("--seed", type=int, default=0)
    verify.set_defaults(func=_cmd_verify)

    ingest = sub.add_parser("ingest", help="derive a graph file from a node manifest")
    ingest.add_argument("manifestfile", type=Path)
    ingest.add_argument("--out", type=Path, required=True)
    ingest.set_defaults(func=_cmd_ingest)

    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
        return args.func(args)
    except _UsageError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USER_ERROR
    except OracleMismatchError as exc:
        print(f"mismatch: {exc}", file=sys.stderr)
        return EXIT_ORACLE_FAILURE
    except (ValueError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USER_ERROR


if __name__ == "__main__":
    sys.exit(main())
