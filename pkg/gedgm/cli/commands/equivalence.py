import argparse
import asyncio
import logging
import sys

from gedgm.cli.deps import (
    add_common_flags,
    add_generator_flags,
    add_warm_start_flag,
    get_cost_model,
    get_generator_params,
    get_solver_config,
)
from gedgm.config.settings import settings
from gedgm.core.exceptions import EXIT_FAILURE, EXIT_OK, handle_cli_errors
from gedgm.db.file_store import load_dataset, save_report
from gedgm.services.experiment_service import (
    format_report_table,
    generate_dataset,
    report_to_csv,
    run_equivalence,
    summarize,
)

logger = logging.getLogger(__name__)


def register(subparsers: argparse._SubParsersAction) -> None:
    parser = subparsers.add_parser(
        "equivalence",
        help="Compare exact GED with gamma - max S'' over every ordered pair of a dataset",
    )
    parser.add_argument("--dataset", help="Directory of *.json graphs; generated graphs are used when omitted")
    add_generator_flags(parser)
    add_common_flags(parser, format_default="table")
    add_warm_start_flag(parser)
    parser.add_argument(
        "--workers", type=int, default=settings.EQUIVALENCE_WORKERS, help="Pairs compared concurrently"
    )
    parser.add_argument("--output", help="Also write the machine-readable report to this file")
    parser.set_defaults(handler=cmd_equivalence)


@handle_cli_errors
def cmd_equivalence(args: argparse.Namespace) -> int:
    """
    Run the equivalence experiment

    Exits non-zero when any included pair differs by more than the tolerance or a
    heuristic undercuts the exact value.
    """
    cfg = get_solver_config(args)
    model = get_cost_model(args)

    if args.dataset:
        graphs = load_dataset(args.dataset)
        parameters = {"dataset": args.dataset}
    else:
        params = get_generator_params(args, cfg.seed)
        graphs = generate_dataset(params)
        parameters = params.header()
    parameters["cost"] = args.cost or "unit"
    parameters["ipfp_start"] = args.warm_start

    report = asyncio.run(
        run_equivalence(
            graphs,
            model,
            cfg,
            workers=args.workers,
            parameters=parameters,
            ipfp_warm_start=args.warm_start == "bipartite",
        )
    )

    if args.output:
        save_report(args.output, report)
    if args.format == "table":
        print(format_report_table(report, cfg.tolerance), end="")
    else:
        print(report_to_csv(report), end="")

    summary = summarize(report, cfg.tolerance)
    logger.info("Equivalence summary: %s", summary)
    if summary["max_abs_difference"] > cfg.tolerance or summary["sandwich_violations"]:
        print(
            f"error: equivalence check failed: max |difference| {summary['max_abs_difference']!r}, "
            f"sandwich violations {summary['sandwich_violations']}",
            file=sys.stderr,
        )
        return EXIT_FAILURE
    return EXIT_OK
