import json
import logging
from pathlib import Path
from typing import List, Tuple, Union

from pydantic import ValidationError

from gedgm.core.exceptions import DatasetError, GraphParseError, InputFileError
from gedgm.models.cost import CostModel
from gedgm.models.graph import AttributedGraph
from gedgm.schemas.report import ExperimentReport
from gedgm.schemas.similarity import SimilarityDocument
from gedgm.services.cost_service import parse_cost_model
from gedgm.services.experiment_service import parse_report, report_to_csv
from gedgm.services.graph_service import parse_graph, serialize_graph

logger = logging.getLogger(__name__)

PathLike = Union[str, Path]

GRAPH_SUFFIX = ".json"


def read_text(path: PathLike) -> str:
    """
    Read a UTF-8 file

    Raises:
        InputFileError: The file is missing or unreadable
    """
    try:
        return Path(path).read_text(encoding="utf-8")
    except FileNotFoundError as exc:
        raise InputFileError(f"File not found: {path}") from exc
    except (OSError, UnicodeDecodeError) as exc:
        raise InputFileError(f"Cannot read {path}: {exc}") from exc


def write_text(path: PathLike, text: str) -> None:
    target = Path(path)
    try:
        if target.parent != Path("."):
            target.parent.mkdir(parents=True, exist_ok=True)
        # newline="" keeps bytes identical across platforms
        with target.open("w", encoding="utf-8", newline="") as handle:
            handle.write(text)
    except OSError as exc:
        raise InputFileError(f"Cannot write {path}: {exc}") from exc
    logger.debug("Wrote %d characters to %s", len(text), target)


def load_graph(path: PathLike) -> AttributedGraph:
    """Parse a graph file; parse errors carry the file name"""
    try:
        return parse_graph(read_text(path))
    except GraphParseError as exc:
        raise GraphParseError(f"{path}: {exc.message}", line=exc.line, field=exc.field) from exc


def save_graph(path: PathLike, graph: AttributedGraph) -> None:
    write_text(path, serialize_graph(graph))


def load_cost_model(path: PathLike) -> CostModel:
    return parse_cost_model(read_text(path))


def load_dataset(directory: PathLike) -> List[Tuple[str, AttributedGraph]]:
    """
    Every *.json graph in a directory, sorted by file name

    Raises:
        DatasetError: The directory does not exist or holds no graph files
    """
    root = Path(directory)
    if not root.is_dir():
        raise DatasetError(f"Dataset directory not found: {directory}")
    files = sorted(root.glob(f"*{GRAPH_SUFFIX}"))
    if not files:
        raise DatasetError(f"Dataset is empty: no {GRAPH_SUFFIX} files in {directory}")
    logger.info("Loading %d graphs from %s", len(files), root)
    return [(file.stem, load_graph(file)) for file in files]


def save_dataset(directory: PathLike, graphs: List[Tuple[str, AttributedGraph]]) -> List[Path]:
    root = Path(directory)
    paths = []
    for name, graph in graphs:
        path = root / f"{name}{GRAPH_SUFFIX}"
        save_graph(path, graph)
        paths.append(path)
    return paths


def load_similarity(path: PathLike) -> SimilarityDocument:
    try:
        return SimilarityDocument.model_validate_json(read_text(path))
    except ValidationError as exc:
        raise GraphParseError(f"{path}: invalid similarity dump: {exc.errors()[0]['msg']}") from exc


def dump_json(document) -> str:
    """Stable JSON text for a pydantic document"""
    return json.dumps(document.model_dump(mode="json"), indent=2) + "\n"


def load_report(path: PathLike) -> ExperimentReport:
    return parse_report(read_text(path))


def save_report(path: PathLike, report: ExperimentReport) -> None:
    write_text(path, report_to_csv(report))
