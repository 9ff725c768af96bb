import argparse
from typing import Optional, Sequence, Tuple

from pydantic import ValidationError

from gedgm.core.exceptions import CostConfigError, SolverConfigError, UnknownSolverError
from gedgm.db.file_store import dump_json, load_cost_model, load_graph, write_text
from gedgm.models.assignment import Assignment
from gedgm.models.cost import CostModel
from gedgm.models.graph import AttributedGraph
from gedgm.schemas.report import GeneratorParams
from gedgm.schemas.solver import SolverConfig
from gedgm.services.heuristic_service import solve_bipartite_ub

__all__ = [
    "FORMATS",
    "WARM_STARTS",
    "add_common_flags",
    "add_generator_flags",
    "add_graph_pair",
    "add_warm_start_flag",
    "emit",
    "get_cost_model",
    "get_generator_params",
    "get_graph_pair",
    "get_solver_config",
    "get_warm_start",
    "require_solver",
]

FORMATS = ("table", "machine")
WARM_STARTS = ("barycenter", "bipartite")


def add_graph_pair(parser: argparse.ArgumentParser) -> None:
    parser.add_argument("graph1", help="First graph file (JSON)")
    parser.add_argument("graph2", help="Second graph file (JSON)")


def add_common_flags(
    parser: argparse.ArgumentParser,
    solver_default: Optional[str] = None,
    format_default: str = "machine",
) -> None:
    """
    Flags shared by the solving verbs

    The solver is a free string validated by require_solver so that unknown names
    map to their own exit code instead of an argparse usage error.
    """
    parser.add_argument("--cost", help="Cost configuration file (JSON); unit costs when omitted")
    if solver_default is not None:
        parser.add_argument("--solver", default=solver_default, help=f"Solver name (default: {solver_default})")
    parser.add_argument("--seed", type=int, default=None, help="Random seed")
    parser.add_argument("--time-limit", type=float, default=None, help="Branch and bound time limit in seconds")
    parser.add_argument("--oracle-limit", type=int, default=None, help="Largest graph the exhaustive oracle accepts")
    parser.add_argument("--max-iters", type=int, default=None, help="IPFP iteration cap")
    parser.add_argument("--tolerance", type=float, default=None, help="Floating-point comparison tolerance")
    parser.add_argument("--format", choices=FORMATS, default=format_default, help="Output format")


def add_generator_flags(parser: argparse.ArgumentParser) -> None:
    defaults = GeneratorParams()
    parser.add_argument("--count", type=int, default=defaults.count, help="Number of graphs")
    parser.add_argument("--min-vertices", type=int, default=defaults.min_vertices)
    parser.add_argument("--max-vertices", type=int, default=defaults.max_vertices)
    parser.add_argument("--edge-probability", type=float, default=defaults.edge_probability)
    parser.add_argument("--attr-dim", type=int, default=defaults.attr_dim, help="Vertex attribute length")
    parser.add_argument("--edge-attr-dim", type=int, default=defaults.edge_attr_dim, help="Edge attribute length")
    parser.add_argument("--directed", action="store_true", help="Generate directed graphs")


def require_solver(name: str, valid: Sequence[str]) -> str:
    """
    Raises:
        UnknownSolverError: name is not one of valid
    """
    if name not in valid:
        raise UnknownSolverError(name, valid)
    return name


def get_solver_config(args: argparse.Namespace) -> SolverConfig:
    try:
        return SolverConfig.from_overrides(
            oracle_limit=getattr(args, "oracle_limit", None),
            bnb_time_limit=getattr(args, "time_limit", None),
            ipfp_max_iters=getattr(args, "max_iters", None),
            seed=getattr(args, "seed", None),
            tolerance=getattr(args, "tolerance", None),
        )
    except ValidationError as exc:
        error = exc.errors()[0]
        field = ".".join(str(part) for part in error["loc"])
        raise SolverConfigError(f"Invalid solver option {field}: {error['msg']}") from exc


def get_cost_model(args: argparse.Namespace) -> CostModel:
    model = CostModel() if args.cost is None else load_cost_model(args.cost)
    if getattr(args, "pure_gm", False):
        model = model.without_deletions()
    return model


def get_graph_pair(args: argparse.Namespace) -> Tuple[AttributedGraph, AttributedGraph]:
    return load_graph(args.graph1), load_graph(args.graph2)


def get_generator_params(args: argparse.Namespace, seed: int) -> GeneratorParams:
    try:
        return GeneratorParams(
            count=args.count,
            min_vertices=args.min_vertices,
            max_vertices=args.max_vertices,
            edge_probability=args.edge_probability,
            attr_dim=args.attr_dim,
            edge_attr_dim=args.edge_attr_dim,
            directed=args.directed,
            seed=seed,
        )
    except ValidationError as exc:
        raise SolverConfigError(f"Invalid generator options: {exc.errors()[0]['msg']}") from exc


def emit(document, output: Optional[str] = None) -> None:
    """Write a pydantic document as JSON to a file or standard output"""
    text = dump_json(document)
    if output:
        write_text(output, text)
    else:
        print(text, end="")


def add_warm_start_flag(parser: argparse.ArgumentParser) -> None:
    parser.add_argument(
        "--warm-start",
        choices=WARM_STARTS,
        default="barycenter",
        help="IPFP starting point (default: barycenter)",
    )


def get_warm_start(
    args: argparse.Namespace,
    model: Optional[CostModel],
    g1: AttributedGraph,
    g2: AttributedGraph,
    cfg: SolverConfig,
) -> Optional[Assignment]:
    """
    IPFP starting assignment, or None for the barycenter

    Raises:
        SolverConfigError: A warm start was asked for a solver other than ipfp
        CostConfigError: No edit costs to run the bipartite bound with
    """
    if args.warm_start == "barycenter":
        return None
    if args.solver != "ipfp":
        raise SolverConfigError(f"--warm-start {args.warm_start} only applies to the ipfp solver")
    if model is None:
        raise CostConfigError("--warm-start bipartite needs edit costs and cannot be combined with --similarity")
    return solve_bipartite_ub(model, g1, g2, cfg).assignment
