import argparse
import logging
from typing import Optional, Sequence

from gedgm import __version__
from gedgm.cli.commands import equivalence, export_lp, ged, gen, gm, transform
from gedgm.config.logging import initialize_logging
from gedgm.config.settings import settings

logger = logging.getLogger(__name__)

COMMANDS = (ged, gm, transform, export_lp, equivalence, gen)


def build_parser() -> argparse.ArgumentParser:
    """
    Create the gedgm argument parser with every command registered
    """
    parser = argparse.ArgumentParser(
        prog=settings.PROJECT_NAME,
        description="Graph edit distance and graph matching: exact and heuristic solvers, "
        "the GED to GM transform and LP export",
    )
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    parser.add_argument(
        "--log-level",
        choices=("DEBUG", "INFO", "WARNING", "ERROR"),
        type=str.upper,
        default=None,
        help="Logging level (default: GEDGM_LOG_LEVEL)",
    )
    parser.add_argument("-v", "--verbose", action="store_true", help="Shorthand for --log-level INFO")

    subparsers = parser.add_subparsers(dest="command", metavar="COMMAND", required=True)
    for command in COMMANDS:
        command.register(subparsers)
    return parser


def main(argv: Optional[Sequence[str]] = None) -> int:
    """Parse arguments, run the selected command and return its exit code"""
    parser = build_parser()
    args = parser.parse_args(argv)
    initialize_logging(args.log_level or ("INFO" if args.verbose else None))
    logger.debug("Running %s", args.command)
    return args.handler(args)
