import argparse
import logging

from gedgm.cli.deps import add_generator_flags, get_generator_params
from gedgm.config.settings import settings
from gedgm.core.exceptions import EXIT_OK, handle_cli_errors
from gedgm.db.file_store import save_dataset
from gedgm.services.experiment_service import generate_dataset

logger = logging.getLogger(__name__)


def register(subparsers: argparse._SubParsersAction) -> None:
    parser = subparsers.add_parser("gen", help="Write seeded random graph files g00.json, g01.json, ...")
    parser.add_argument("--output", required=True, help="Directory to write the graphs into")
    add_generator_flags(parser)
    parser.add_argument("--seed", type=int, default=settings.SEED, help="Random seed")
    parser.set_defaults(handler=cmd_gen)


@handle_cli_errors
def cmd_gen(args: argparse.Namespace) -> int:
    params = get_generator_params(args, args.seed)
    paths = save_dataset(args.output, generate_dataset(params))
    for path in paths:
        print(path)
    logger.info("Wrote %d graphs to %s", len(paths), args.output)
    return EXIT_OK
