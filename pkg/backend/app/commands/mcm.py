import argparse
from pathlib import Path

from app.commands.utils import (
    OBJECTIVES,
    add_solver_arguments,
    add_test_arguments,
    budget_from_args,
    settings_from_args,
    write_text,
)
from app.core.utils import get_app_logger
from app.ecc.cover import format_cover
from app.graph.io import format_udg, read_udg
from app.independence.estimate import format_report
from app.independence.samples import read_samples
from app.mcm.export import format_model, to_dot
from app.pipeline.runner import PipelineBudgetError, run_pipeline, run_pipeline_from_udg

SAMPLE_SUFFIXES = {".csv", ".tsv", ".txt"}


def register(subparsers, parent: argparse.ArgumentParser) -> None:
    parser = subparsers.add_parser(
        "mcm",
        parents=[parent],
        help="build a minimal measurement causal model from samples or a dependency graph",
        formatter_class=argparse.ArgumentDefaultsHelpFormatter,
    )
    parser.add_argument("input", type=Path, help="sample file or dependency graph")
    parser.add_argument(
        "--input-kind",
        choices=["auto", "samples", "udg"],
        default="auto",
        help="auto treats .csv/.tsv/.txt as samples and anything else as a graph",
    )
    add_test_arguments(parser)
    add_solver_arguments(parser)
    parser.add_argument("--dot", type=Path, default=None, help="write a DOT rendering of the model here")
    parser.add_argument("--cover", type=Path, default=None, help="write the cover document here")
    parser.add_argument("--udg-output", type=Path, default=None, help="write the dependency graph here")
    parser.add_argument("--report", type=Path, default=None, help="write the per-pair test report here")
    parser.set_defaults(handler=cmd_mcm)


def _is_samples(args: argparse.Namespace) -> bool:
    if args.input_kind == "auto":
        return args.input.suffix.lower() in SAMPLE_SUFFIXES
    return args.input_kind == "samples"


def _write_intermediates(args: argparse.Namespace, udg, report) -> None:
    if args.udg_output is not None:
        write_text(format_udg(udg, args.format), args.udg_output)
    if args.report is not None and report is not None:
        write_text(format_report(report), args.report)


def cmd_mcm(args: argparse.Namespace) -> int:
    logger = get_app_logger()
    cfg = settings_from_args(args)
    objective = OBJECTIVES[args.objective]
    budget = budget_from_args(args)

    try:
        if _is_samples(args):
            samples = read_samples(args.input, header=args.header)
            result = run_pipeline(
                samples,
                objective,
                budget,
                dcorr_threshold=cfg.dcorr_threshold,
                p_threshold=cfg.p_threshold,
                num_permutations=cfg.num_permutations,
                seed=cfg.seed,
                strict_exceedance=cfg.strict_exceedance,
                threads=cfg.threads,
            )
        else:
            result = run_pipeline_from_udg(read_udg(args.input), objective, budget)
    except PipelineBudgetError as exc:
        _write_intermediates(args, exc.udg, exc.report)
        raise

    _write_intermediates(args, result.udg, result.report)
    if args.cover is not None:
        write_text(format_cover(result.cover), args.cover)
    if args.dot is not None:
        write_text(to_dot(result.model), args.dot)
    write_text(format_model(result.model), args.output)
    logger.info(
        "cli:mcm done latents=%s measurements=%s",
        result.model.num_latents,
        result.model.num_measurements,
    )
    return 0
