import argparse
import json
from pathlib import Path

from app.commands.utils import add_test_arguments, settings_from_args, write_text
from app.core.utils import get_app_logger
from app.graph.io import UDGDocument, format_edge_list
from app.independence.estimate import estimate_udg, format_report
from app.independence.linear import linear_comparison
from app.independence.samples import read_samples


def register(subparsers, parent: argparse.ArgumentParser) -> None:
    parser = subparsers.add_parser(
        "udg",
        parents=[parent],
        help="estimate the undirected dependency graph from samples",
        formatter_class=argparse.ArgumentDefaultsHelpFormatter,
    )
    parser.add_argument("samples", type=Path, help="comma-separated samples, one observation per row")
    add_test_arguments(parser)
    parser.add_argument("--report", type=Path, default=None, help="write the per-pair test report here")
    parser.add_argument(
        "--linear-report",
        type=Path,
        default=None,
        help="write how many dependencies a Pearson test would miss here",
    )
    parser.set_defaults(handler=cmd_udg)


def cmd_udg(args: argparse.Namespace) -> int:
    logger = get_app_logger()
    cfg = settings_from_args(args)
    samples = read_samples(args.samples, header=args.header)
    udg, report = estimate_udg(
        samples,
        dcorr_threshold=cfg.dcorr_threshold,
        p_threshold=cfg.p_threshold,
        num_permutations=cfg.num_permutations,
        seed=cfg.seed,
        strict_exceedance=cfg.strict_exceedance,
        threads=cfg.threads,
    )

    if args.format == "json":
        document = {
            "udg": UDGDocument.from_graph(udg).model_dump(),
            "report": report.model_dump(),
        }
        write_text(json.dumps(document, indent=2) + "\n", args.output)
    else:
        write_text(format_edge_list(udg), args.output)

    if args.report is not None:
        write_text(format_report(report), args.report)
    if args.linear_report is not None:
        comparison = linear_comparison(samples, report, cfg.p_threshold)
        write_text(comparison.model_dump_json(indent=2) + "\n", args.linear_report)
        logger.info("cli:udg linear undetectable_fraction=%.3f", comparison.undetectable_fraction)
    logger.info("cli:udg done edges=%s", udg.num_edges)
    return 0
