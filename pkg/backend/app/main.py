import sys
from pathlib import Path

# Ensure backend directory is on sys.path before imports so `app` package resolves
BACKEND_DIR = Path(__file__).resolve().parent.parent
if str(BACKEND_DIR) not in sys.path:
    sys.path.insert(0, str(BACKEND_DIR))

import argparse
from typing import Optional, Sequence

from app.commands import COMMANDS
from app.commands.utils import common_parser
from app.core.errors import MinMCMError
from app.core.utils import get_error_logger, init_logging


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="minmcm",
        description=(
            "Minimal measurement causal models: estimate pairwise dependencies, "
            "cover them with a minimum set of cliques and emit the latent structure."
        ),
    )
    subparsers = parser.add_subparsers(dest="command", required=True, metavar="COMMAND")
    parent = common_parser()
    for command in COMMANDS:
        command.register(subparsers, parent)
    return parser


def main(argv: Optional[Sequence[str]] = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    init_logging(args.log_level)
    error_logger = get_error_logger()

    try:
        return args.handler(args)
    except MinMCMError as exc:
        print(f"minmcm {args.command}: {exc}", file=sys.stderr)
        return exc.exit_code
    except Exception as exc:
        error_logger.exception("cli:%s unexpected error %s", args.command, exc)
        return 3


if __name__ == "__main__":
    sys.exit(main())
