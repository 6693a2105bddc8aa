import argparse
from pathlib import Path

from app.commands.utils import OBJECTIVES, add_solver_arguments, budget_from_args, write_text
from app.core.utils import get_app_logger
from app.ecc.cover import format_cover
from app.ecc.solver import solve_ecc
from app.graph.io import read_udg


def register(subparsers, parent: argparse.ArgumentParser) -> None:
    parser = subparsers.add_parser(
        "ecc",
        parents=[parent],
        help="minimum edge clique cover of a dependency graph",
        formatter_class=argparse.ArgumentDefaultsHelpFormatter,
    )
    parser.add_argument("udg", type=Path, help="graph in edge-list, dense or JSON form")
    add_solver_arguments(parser)
    parser.add_argument("--stats", type=Path, default=None, help="write search statistics here")
    parser.set_defaults(handler=cmd_ecc)


def cmd_ecc(args: argparse.Namespace) -> int:
    logger = get_app_logger()
    udg = read_udg(args.udg)
    cover, stats = solve_ecc(udg, OBJECTIVES[args.objective], budget_from_args(args))
    write_text(format_cover(cover), args.output)
    if args.stats is not None:
        write_text(stats.model_dump_json(indent=2) + "\n", args.stats)
    logger.info("cli:ecc done objective=%s value=%s", cover.objective.value, cover.objective_value)
    return 0
