import argparse
import logging
from typing import Callable, Dict

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
from gedgm.core.exceptions import EXIT_OK, handle_cli_errors
from gedgm.models.result import SolveResult
from gedgm.services.exact_solver_service import solve_bnb, solve_oracle
from gedgm.services.heuristic_service import solve_bipartite_ub, solve_ipfp
from gedgm.services.result_service import serialize_result
from gedgm.services.similarity_service import build_similarity

logger = logging.getLogger(__name__)


def _ipfp(model, g1, g2, cfg, warm_start=None) -> SolveResult:
    return solve_ipfp(build_similarity(model, g1, g2), g1, g2, cfg, warm_start=warm_start)


SOLVERS: Dict[str, Callable[..., SolveResult]] = {
    "oracle": solve_oracle,
    "bnb": solve_bnb,
    "bipartite": solve_bipartite_ub,
    "ipfp": _ipfp,
}


def register(subparsers: argparse._SubParsersAction) -> None:
    parser = subparsers.add_parser("ged", help="Compute the graph edit distance of two graphs")
    add_graph_pair(parser)
    add_common_flags(parser, solver_default="bnb")
    add_warm_start_flag(parser)
    parser.add_argument("--output", help="Write the result document here instead of standard output")
    parser.set_defaults(handler=cmd_ged)


def format_result(result: SolveResult, g1, g2) -> str:
    lines = [
        f"solver:    {result.stats.solver}",
        f"status:    {result.status.value}",
        f"GED:       {result.ged_value!r}",
        f"gamma:     {result.gamma!r}",
        f"GM score:  {result.gm_score!r}",
        f"time:      {result.stats.wall_time:.6f}s",
        "assignment:",
    ]
    for i in range(g1.num_vertices):
        k = result.assignment.forward.get(i)
        lines.append(f"  {g1.vertex_ids[i]} -> {'eps' if k is None else g2.vertex_ids[k]}")
    for k in range(g2.num_vertices):
        if k not in result.assignment.backward:
            lines.append(f"  eps -> {g2.vertex_ids[k]}")
    return "\n".join(lines)


@handle_cli_errors
def cmd_ged(args: argparse.Namespace) -> int:
    """
    Solve GED for a pair of graph files with the chosen solver
    """
    solver = SOLVERS[require_solver(args.solver, tuple(SOLVERS))]
    cfg = get_solver_config(args)
    g1, g2 = get_graph_pair(args)
    model = get_cost_model(args)

    warm_start = get_warm_start(args, model, g1, g2, cfg)
    options = {} if warm_start is None else {"warm_start": warm_start}
    result = solver(model, g1, g2, cfg, **options)
    logger.info("%s finished with GED %r", args.solver, result.ged_value)

    if args.output or args.format == "machine":
        emit(serialize_result(result, model, g1, g2), args.output)
    if args.format == "table":
        print(format_result(result, g1, g2))
    return EXIT_OK
