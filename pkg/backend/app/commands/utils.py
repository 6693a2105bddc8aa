import argparse
import sys
from pathlib import Path
from typing import Optional

from app.core.config import Settings, settings
from app.core.errors import InputError
from app.ecc.cover import CoverObjective
from app.ecc.solver import SearchBudget

OBJECTIVES = {
    "clique": CoverObjective.CLIQUE_COUNT,
    "assignment": CoverObjective.ASSIGNMENT_COUNT,
}


def common_parser() -> argparse.ArgumentParser:
    """Flags every subcommand accepts."""
    parent = argparse.ArgumentParser(add_help=False)
    group = parent.add_argument_group("global options")
    group.add_argument("--seed", type=int, default=settings.seed, help="global random seed")
    group.add_argument(
        "--threads",
        type=int,
        default=settings.threads,
        help="worker threads, -1 for all cores; results do not depend on it",
    )
    group.add_argument("--format", choices=["text", "json"], default="text", help="output format where applicable")
    group.add_argument("--log-level", default=settings.log_level, help="logging level")
    group.add_argument("-o", "--output", type=Path, default=None, help="write the main output here instead of stdout")
    return parent


def add_test_arguments(parser: argparse.ArgumentParser) -> None:
    group = parser.add_argument_group("independence testing")
    group.add_argument(
        "--dcorr-threshold",
        type=float,
        default=settings.dcorr_threshold,
        help="independent only if distance correlation is below this (default: 0.1)",
    )
    group.add_argument(
        "--p-threshold",
        type=float,
        default=settings.p_threshold,
        help="independent only if the permutation p-value is above this (default: 0.1)",
    )
    group.add_argument(
        "--permutations",
        type=int,
        default=settings.num_permutations,
        help="permutations per pair (default: 1000)",
    )
    group.add_argument(
        "--strict-exceedance",
        action="store_true",
        default=settings.strict_exceedance,
        help="count only permutations strictly above the observed statistic",
    )
    group.add_argument(
        "--header",
        action=argparse.BooleanOptionalAction,
        default=None,
        help="sample file has a header row (default: detect)",
    )


def add_solver_arguments(parser: argparse.ArgumentParser) -> None:
    group = parser.add_argument_group("cover solver")
    group.add_argument("--objective", choices=sorted(OBJECTIVES), default="clique", help="what the cover minimises")
    group.add_argument(
        "--budget",
        type=float,
        default=settings.solver_time_budget,
        help="wall-clock seconds before the solver gives up (exit code 2)",
    )
    group.add_argument(
        "--node-budget",
        type=int,
        default=settings.solver_node_budget,
        help="search nodes before the solver gives up (exit code 2)",
    )


def settings_from_args(args: argparse.Namespace) -> Settings:
    try:
        return _overrides(args)
    except ValueError as exc:
        raise InputError(f"invalid option: {exc}") from exc


def _overrides(args: argparse.Namespace) -> Settings:
    return settings.with_overrides(
        seed=args.seed,
        threads=args.threads,
        log_level=args.log_level,
        dcorr_threshold=getattr(args, "dcorr_threshold", None),
        p_threshold=getattr(args, "p_threshold", None),
        num_permutations=getattr(args, "permutations", None),
        strict_exceedance=getattr(args, "strict_exceedance", None),
        solver_time_budget=getattr(args, "budget", None),
        solver_node_budget=getattr(args, "node_budget", None),
    )


def budget_from_args(args: argparse.Namespace) -> SearchBudget:
    try:
        return SearchBudget(time_limit=args.budget, node_limit=args.node_budget)
    except ValueError as exc:
        raise InputError(f"invalid solver budget: {exc}") from exc


def write_text(text: str, path: Optional[Path]) -> None:
    if path is None:
        sys.stdout.write(text)
        return
    try:
        path.parent.mkdir(parents=True, exist_ok=True)
        path.write_text(text, encoding="utf-8")
    except OSError as exc:
        raise InputError(f"cannot write output: {exc.strerror}", source=str(path)) from exc
