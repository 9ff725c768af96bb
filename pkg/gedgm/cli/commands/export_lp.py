import argparse
import logging
from pathlib import Path

from gedgm.cli.deps import add_graph_pair, get_cost_model, get_graph_pair
from gedgm.core.exceptions import EXIT_OK, handle_cli_errors
from gedgm.db.file_store import dump_json, write_text
from gedgm.services.formulation_service import build_f1, build_f2
from gedgm.services.lp_export_service import export_lp, lp_sidecar

logger = logging.getLogger(__name__)

FORMULATIONS = {
    "f2": build_f2,
    "f1": build_f1,
}


def sidecar_path(output: str) -> Path:
    """model.lp -> model.lp.json"""
    return Path(f"{output}.json")


def register(subparsers: argparse._SubParsersAction) -> None:
    parser = subparsers.add_parser("export-lp", help="Write the GED integer program in CPLEX LP format")
    add_graph_pair(parser)
    parser.add_argument("--cost", help="Cost configuration file (JSON); unit costs when omitted")
    parser.add_argument("--output", required=True, help="LP file to write; the sidecar goes to <output>.json")
    parser.add_argument(
        "--formulation", choices=tuple(FORMULATIONS), default="f2", help="Model to export (default: f2)"
    )
    parser.set_defaults(handler=cmd_export_lp)


@handle_cli_errors
def cmd_export_lp(args: argparse.Namespace) -> int:
    g1, g2 = get_graph_pair(args)
    model = FORMULATIONS[args.formulation](get_cost_model(args), g1, g2)

    write_text(args.output, export_lp(model, with_gamma=args.formulation == "f2"))
    write_text(sidecar_path(args.output), dump_json(lp_sidecar(model)))
    logger.info(
        "Exported %s with %d variables and %d constraints to %s",
        model.name,
        model.variable_count,
        model.constraint_count,
        args.output,
    )
    return EXIT_OK
