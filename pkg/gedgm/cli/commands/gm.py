import argparse
import logging

from gedgm.cli.commands.ged import format_result
from gedgm.cli.deps import (
    add_common_flags,
    add_graph_pair,
    add_warm_start_flag,
    emit,
    get_cost_model,
    get_graph_pair,
    get_solver_config,
    get_warm_start,
    require_solver,
)
from gedgm.core.exceptions import EXIT_OK, CostConfigError, handle_cli_errors
from gedgm.db.file_store import load_similarity
from gedgm.services.exact_solver_service import solve_oracle_gm
from gedgm.services.heuristic_service import solve_ipfp
from gedgm.services.result_service import serialize_result
from gedgm.services.similarity_service import build_similarity, similarity_from_document

logger = logging.getLogger(__name__)

SOLVERS = {
    "oracle": solve_oracle_gm,
    "ipfp": solve_ipfp,
}


def register(subparsers: argparse._SubParsersAction) -> None:
    parser = subparsers.add_parser(
        "gm", help="Maximize the graph matching score and report gamma - score as GED"
    )
    add_graph_pair(parser)
    add_common_flags(parser, solver_default="oracle")
    add_warm_start_flag(parser)
    parser.add_argument("--similarity", help="Similarity dump from `transform` to use instead of --cost")
    parser.add_argument(
        "--pure-gm", action="store_true", help="Zero deletion and insertion costs before transforming"
    )
    parser.add_argument("--output", help="Write the result document here instead of standard output")
    parser.set_defaults(handler=cmd_gm)


@handle_cli_errors
def cmd_gm(args: argparse.Namespace) -> int:
    """
    Solve the matching side: maximize S'' over assignments
    """
    solver = SOLVERS[require_solver(args.solver, tuple(SOLVERS))]
    if args.similarity and (args.cost or args.pure_gm):
        raise CostConfigError("--similarity cannot be combined with --cost or --pure-gm")
    cfg = get_solver_config(args)
    g1, g2 = get_graph_pair(args)

    if args.similarity:
        model = None
        sim = similarity_from_document(load_similarity(args.similarity), g1, g2)
    else:
        model = get_cost_model(args)
        sim = build_similarity(model, g1, g2)

    warm_start = get_warm_start(args, model, g1, g2, cfg)
    options = {} if warm_start is None else {"warm_start": warm_start}
    result = solver(sim, g1, g2, cfg, **options)
    logger.info("%s found score %r, derived GED %r", args.solver, result.gm_score, result.ged_value)

    if args.output or args.format == "machine":
        emit(serialize_result(result, model, g1, g2), args.output)
    if args.format == "table":
        print(format_result(result, g1, g2))
    return EXIT_OK
