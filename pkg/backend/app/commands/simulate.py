import argparse
from pathlib import Path

from app.analysis.structures import STRUCTURE_ALIASES, STRUCTURES, resolve_structure
from app.analysis.synthetic import LinkFunction, SyntheticModel, simulate
from app.commands.utils import write_text
from app.core.utils import get_app_logger
from app.independence.samples import format_samples
from app.mcm.export import read_model


def register(subparsers, parent: argparse.ArgumentParser) -> None:
    parser = subparsers.add_parser(
        "simulate",
        parents=[parent],
        help="draw samples from a functional causal model over a structure",
        formatter_class=argparse.ArgumentDefaultsHelpFormatter,
    )
    parser.add_argument(
        "--structure",
        default="triangle_tail",
        help=f"built-in structure ({', '.join(sorted([*STRUCTURES, *STRUCTURE_ALIASES]))}) or a model document path",
    )
    parser.add_argument("--n", type=int, default=2000, help="number of observations")
    parser.add_argument("--weight", type=float, default=1.0, help="coefficient on every latent-to-measurement edge")
    parser.add_argument("--noise-sd", type=float, default=0.1, help="measurement noise standard deviation")
    parser.add_argument("--link", choices=[link.value for link in LinkFunction], default=LinkFunction.LINEAR.value)
    parser.set_defaults(handler=cmd_simulate)


def cmd_simulate(args: argparse.Namespace) -> int:
    logger = get_app_logger()
    structure = resolve_structure(str(args.structure))
    if structure is None:
        structure = read_model(Path(args.structure))
    model = SyntheticModel.create(structure, weights=args.weight, noise_sd=args.noise_sd, link=args.link)
    samples = simulate(model, args.n, seed=args.seed)
    write_text(format_samples(samples), args.output)
    logger.info("cli:simulate done samples=%s variables=%s", samples.num_samples, samples.num_variables)
    return 0
