import asyncio
import io
import logging
import time
from typing import Dict, List, Optional, Sequence, Tuple

import numpy as np
import pandas as pd

from gedgm.core.exceptions import DatasetError, ExperimentError, SizeLimitError
from gedgm.core.guards import require_compatible
from gedgm.models.cost import CostModel
from gedgm.models.graph import AttributedGraph
from gedgm.models.result import SolveStatus
from gedgm.schemas.report import ExperimentReport, GeneratorParams, ReportRow
from gedgm.schemas.solver import SolverConfig
from gedgm.services.exact_solver_service import solve_bnb, solve_oracle_gm
from gedgm.services.graph_service import generate_random_graph
from gedgm.services.heuristic_service import solve_bipartite_ub, solve_ipfp
from gedgm.services.similarity_service import build_similarity

logger = logging.getLogger(__name__)

NamedGraph = Tuple[str, AttributedGraph]

# Report column order; difference is derived and only exists on disk
REPORT_COLUMNS = [
    "pair_id",
    "graph1",
    "graph2",
    "n1",
    "n2",
    "gamma",
    "exact_ged",
    "derived_ged",
    "difference",
    "excluded",
    "exclusion_reason",
    "bipartite_ged",
    "ipfp_ged",
    "bnb_time",
    "oracle_time",
    "bipartite_time",
    "ipfp_time",
]

TABLE_COLUMNS = ["pair_id", "n1", "n2", "gamma", "exact_ged", "derived_ged", "difference", "bipartite_ged", "ipfp_ged"]


def generate_dataset(params: GeneratorParams) -> List[NamedGraph]:
    """
    Seeded random graphs named g00, g01, ...

    One numpy Generator drives every draw, so the dataset is a pure function of params.
    """
    rng = np.random.default_rng(params.seed)
    width = max(2, len(str(params.count - 1)))
    graphs = []
    for index in range(params.count):
        size = int(rng.integers(params.min_vertices, params.max_vertices + 1))
        graph = generate_random_graph(
            size,
            params.edge_probability,
            rng,
            attr_dim=params.attr_dim,
            edge_attr_dim=params.edge_attr_dim,
            directed=params.directed,
        )
        graphs.append((f"g{index:0{width}d}", graph))
    logger.info("Generated %d graphs with seed %d", params.count, params.seed)
    return graphs


def pair_id(first: int, second: int) -> str:
    return f"{first:03d}-{second:03d}"


def compare_pair(
    identifier: str,
    left: NamedGraph,
    right: NamedGraph,
    model: CostModel,
    cfg: SolverConfig,
    warm_start: bool = False,
) -> ReportRow:
    """
    Exact GED from branch and bound against gamma - max S'' from the GM oracle

    Pairs whose exact side does not finish (time limit or oracle size limit) are
    kept in the report but marked excluded. With warm_start, IPFP starts from the
    bipartite assignment instead of the barycenter.
    """
    (name1, g1), (name2, g2) = left, right
    require_compatible(g1, g2)
    sim = build_similarity(model, g1, g2)
    row = ReportRow(
        pair_id=identifier,
        graph1=name1,
        graph2=name2,
        n1=g1.num_vertices,
        n2=g2.num_vertices,
        gamma=sim.gamma,
    )

    exact = solve_bnb(model, g1, g2, cfg)
    row.bnb_time = exact.stats.wall_time
    if exact.status is not SolveStatus.OPTIMAL:
        row.excluded, row.exclusion_reason = True, "bnb time limit"
    else:
        row.exact_ged = exact.ged_value

    try:
        derived = solve_oracle_gm(sim, g1, g2, cfg)
    except SizeLimitError:
        row.excluded, row.exclusion_reason = True, row.exclusion_reason or "oracle size limit"
    else:
        row.derived_ged = derived.ged_value
        row.oracle_time = derived.stats.wall_time

    bipartite = solve_bipartite_ub(model, g1, g2, cfg)
    row.bipartite_ged, row.bipartite_time = bipartite.ged_value, bipartite.stats.wall_time
    ipfp = solve_ipfp(sim, g1, g2, cfg, warm_start=bipartite.assignment if warm_start else None)
    row.ipfp_ged, row.ipfp_time = ipfp.ged_value, ipfp.stats.wall_time

    if row.excluded:
        logger.warning("Pair %s (%s, %s) excluded: %s", identifier, name1, name2, row.exclusion_reason)
    else:
        logger.debug("Pair %s difference %r", identifier, row.difference)
    return row


async def run_equivalence(
    graphs: Sequence[NamedGraph],
    model: CostModel,
    cfg: SolverConfig,
    workers: int = 1,
    parameters: Optional[Dict[str, str]] = None,
    ipfp_warm_start: bool = False,
) -> ExperimentReport:
    """
    Compare every ordered pair of graphs, self-pairs included

    Pairs run concurrently on worker threads, at most `workers` at a time. Rows
    are ordered by pair id whatever the completion order.

    Raises:
        DatasetError: No graphs were given
        ExperimentError: Every pair was excluded
    """
    if not graphs:
        raise DatasetError("Dataset is empty")
    limiter = asyncio.Semaphore(max(1, workers))
    start = time.perf_counter()

    async def run_one(first: int, second: int) -> ReportRow:
        async with limiter:
            return await asyncio.to_thread(
                compare_pair,
                pair_id(first, second),
                graphs[first],
                graphs[second],
                model,
                cfg,
                ipfp_warm_start,
            )

    tasks = [run_one(a, b) for a in range(len(graphs)) for b in range(len(graphs))]
    rows = sorted(await asyncio.gather(*tasks), key=lambda row: row.pair_id)

    report = ExperimentReport(parameters=dict(parameters or {}), rows=rows)
    if not report.included:
        raise ExperimentError(f"All {len(rows)} pairs were excluded")
    logger.info(
        "Compared %d pairs in %.3fs, mean |difference| %r, max %r",
        len(rows),
        time.perf_counter() - start,
        report.mean_abs_difference,
        report.max_abs_difference,
    )
    return report


def _report_frame(report: ExperimentReport) -> pd.DataFrame:
    records = []
    for row in report.rows:
        record = row.model_dump()
        record["difference"] = row.difference
        records.append(record)
    return pd.DataFrame.from_records(records, columns=REPORT_COLUMNS)


def report_to_csv(report: ExperimentReport) -> str:
    """
    Machine format: `# key=value` header lines then CSV with 17 significant digits
    """
    lines = [f"# {key}={value}" for key, value in report.parameters.items()]
    body = _report_frame(report).to_csv(index=False, float_format="%.17g", lineterminator="\n")
    return "".join(line + "\n" for line in lines) + body


def _optional(value) -> Optional[float]:
    return None if pd.isna(value) else float(value)


def parse_report(text: str) -> ExperimentReport:
    """Inverse of report_to_csv; the difference column is recomputed, not read"""
    parameters: Dict[str, str] = {}
    body: List[str] = []
    for line in text.splitlines():
        if line.startswith("#"):
            key, _, value = line[1:].strip().partition("=")
            parameters[key] = value
        elif line.strip():
            body.append(line)
    if not body:
        raise ExperimentError("Report has no table")

    try:
        frame = pd.read_csv(
            io.StringIO("\n".join(body)),
            float_precision="round_trip",
            dtype={"pair_id": str, "graph1": str, "graph2": str, "exclusion_reason": str},
            keep_default_na=False,
            na_values=[""],
        )
    except (ValueError, pd.errors.ParserError) as exc:
        raise ExperimentError(f"Malformed report: {exc}") from exc
    missing = set(REPORT_COLUMNS) - set(frame.columns)
    if missing:
        raise ExperimentError(f"Report is missing columns: {', '.join(sorted(missing))}")

    rows = []
    for record in frame.to_dict(orient="records"):
        reason = record["exclusion_reason"]
        rows.append(
            ReportRow(
                pair_id=record["pair_id"],
                graph1=record["graph1"],
                graph2=record["graph2"],
                n1=int(record["n1"]),
                n2=int(record["n2"]),
                gamma=float(record["gamma"]),
                exact_ged=_optional(record["exact_ged"]),
                derived_ged=_optional(record["derived_ged"]),
                excluded=str(record["excluded"]).lower() == "true",
                exclusion_reason="" if pd.isna(reason) else reason,
                bipartite_ged=_optional(record["bipartite_ged"]),
                ipfp_ged=_optional(record["ipfp_ged"]),
                bnb_time=float(record["bnb_time"]),
                oracle_time=float(record["oracle_time"]),
                bipartite_time=float(record["bipartite_time"]),
                ipfp_time=float(record["ipfp_time"]),
            )
        )
    return ExperimentReport(parameters=parameters, rows=rows)


def format_report_table(report: ExperimentReport, tolerance: float) -> str:
    """Human-readable table followed by aggregate lines"""
    frame = _report_frame(report)
    shown = frame.loc[:, TABLE_COLUMNS]
    lines = [f"# {key}={value}" for key, value in report.parameters.items()]
    lines.append(shown.to_string(index=False, na_rep="-"))
    lines.append("")
    lines.append(f"pairs: {len(report.rows)}  included: {len(report.included)}")
    lines.append(f"mean |difference|: {report.mean_abs_difference!r}")
    lines.append(f"max |difference|: {report.max_abs_difference!r}")
    lines.append(f"sandwich violations: {report.sandwich_violations(tolerance)}")
    return "\n".join(lines) + "\n"


def summarize(report: ExperimentReport, tolerance: float) -> Dict[str, object]:
    return {
        "pairs": len(report.rows),
        "included": len(report.included),
        "mean_abs_difference": report.mean_abs_difference,
        "max_abs_difference": report.max_abs_difference,
        "sandwich_violations": report.sandwich_violations(tolerance),
    }
