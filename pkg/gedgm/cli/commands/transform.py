import argparse

from gedgm.cli.deps import add_graph_pair, emit, get_cost_model, get_graph_pair
from gedgm.core.exceptions import EXIT_OK, handle_cli_errors
from gedgm.services.similarity_service import build_similarity, similarity_to_document


def register(subparsers: argparse._SubParsersAction) -> None:
    parser = subparsers.add_parser(
        "transform", help="Emit gamma and the transformed similarity tables for external GM solvers"
    )
    add_graph_pair(parser)
    parser.add_argument("--cost", help="Cost configuration file (JSON); unit costs when omitted")
    parser.add_argument("--pure-gm", action="store_true", help="Zero deletion and insertion costs first")
    parser.add_argument("--output", help="Write the similarity dump here instead of standard output")
    parser.set_defaults(handler=cmd_transform)


@handle_cli_errors
def cmd_transform(args: argparse.Namespace) -> int:
    g1, g2 = get_graph_pair(args)
    sim = build_similarity(get_cost_model(args), g1, g2)
    emit(similarity_to_document(sim, g1, g2), args.output)
    return EXIT_OK
