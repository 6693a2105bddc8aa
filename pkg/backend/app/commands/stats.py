import argparse
from pathlib import Path

from app.analysis.stats import histogram_csv, matrix_csv, model_stats
from app.commands.utils import write_text
from app.core.utils import get_app_logger
from app.mcm.export import read_model


def register(subparsers, parent: argparse.ArgumentParser) -> None:
    parser = subparsers.add_parser(
        "stats",
        parents=[parent],
        help="degree histograms, shared-parent matrices and a summary of a model",
        formatter_class=argparse.ArgumentDefaultsHelpFormatter,
    )
    parser.add_argument("model", type=Path, help="model document written by the mcm command")
    parser.add_argument(
        "--output-dir",
        type=Path,
        default=None,
        help="also write indegree.csv, outdegree.csv, shared_latents.csv, shared_measurements.csv and summary.json here",
    )
    parser.set_defaults(handler=cmd_stats)


def cmd_stats(args: argparse.Namespace) -> int:
    logger = get_app_logger()
    model = read_model(args.model)
    report = model_stats(model)

    if args.output_dir is not None:
        out = args.output_dir
        write_text(histogram_csv(report.indegree_histogram, "indegree"), out / "indegree.csv")
        write_text(histogram_csv(report.outdegree_histogram, "outdegree"), out / "outdegree.csv")
        write_text(matrix_csv(report.shared_latents), out / "shared_latents.csv")
        write_text(matrix_csv(report.shared_measurements), out / "shared_measurements.csv")
        write_text(report.summary.model_dump_json(indent=2) + "\n", out / "summary.json")

    if args.format == "json":
        write_text(report.model_dump_json(indent=2) + "\n", args.output)
    else:
        summary = report.summary
        text = (
            histogram_csv(report.indegree_histogram, "indegree")
            + "\n"
            + histogram_csv(report.outdegree_histogram, "outdegree")
            + "\n"
            + f"measurements,{summary.num_measurements}\n"
            + f"latents,{summary.num_latents}\n"
            + f"edges,{summary.num_edges}\n"
            + f"indegree_median,{summary.indegree_median}\n"
            + f"outdegree_median,{summary.outdegree_median}\n"
            + f"latent_pairs_disjoint_fraction,{summary.latent_pairs_disjoint_fraction:.4f}\n"
        )
        write_text(text, args.output)
    logger.info("cli:stats done latents=%s", model.num_latents)
    return 0
