import argparse
from pathlib import Path

from app.analysis.sensitivity import edge_flip_sensitivity
from app.commands.utils import OBJECTIVES, add_solver_arguments, budget_from_args, write_text
from app.core.config import settings
from app.graph.io import read_udg


def register(subparsers, parent: argparse.ArgumentParser) -> None:
    parser = subparsers.add_parser(
        "fragility",
        parents=[parent],
        help="re-solve after flipping each single dependence and flag precarious pairs",
        formatter_class=argparse.ArgumentDefaultsHelpFormatter,
    )
    parser.add_argument("udg", type=Path, help="graph in edge-list, dense or JSON form")
    add_solver_arguments(parser)
    parser.add_argument(
        "--max-vertices",
        type=int,
        default=settings.sensitivity_max_vertices,
        help="refuse larger graphs; every pair needs a fresh exact solve",
    )
    parser.set_defaults(handler=cmd_fragility)


def cmd_fragility(args: argparse.Namespace) -> int:
    udg = read_udg(args.udg)
    report = edge_flip_sensitivity(udg, OBJECTIVES[args.objective], args.max_vertices, budget_from_args(args))
    write_text(report.model_dump_json(indent=2) + "\n", args.output)
    return 0
