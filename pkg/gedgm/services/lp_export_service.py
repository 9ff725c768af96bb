import logging
from typing import Iterable, List, Tuple

from gedgm.models.formulation import LinearModel
from gedgm.schemas.lp import LpSidecarDocument

logger = logging.getLogger(__name__)

# Terms per line; CPLEX LP readers cap line length
TERMS_PER_LINE = 8


def _format_number(value: float) -> str:
    return repr(float(value))


def _format_terms(terms: Iterable[Tuple[str, float]]) -> List[str]:
    rendered = []
    for name, coefficient in terms:
        sign = "-" if coefficient < 0 else "+"
        rendered.append(f"{sign} {_format_number(abs(coefficient))} {name}")
    return rendered


def _wrap(label: str, terms: List[str], suffix: str = "") -> List[str]:
    lines = []
    for start in range(0, max(len(terms), 1), TERMS_PER_LINE):
        chunk = " ".join(terms[start:start + TERMS_PER_LINE])
        prefix = f" {label}: " if start == 0 else "   "
        lines.append((prefix + chunk).rstrip())
    if suffix:
        lines[-1] = f"{lines[-1]} {suffix}"
    return lines


def export_lp(model: LinearModel, with_gamma: bool = True) -> str:
    """
    Render a binary linear model in CPLEX LP format

    LP has no objective constant, so the constant (gamma for F2) is written as a
    comment; the LP optimum plus that constant is the model's optimum. Output is
    byte-identical for identical models.

    Args:
        model: Model to export
        with_gamma: Whether to write the constant comment

    Returns:
        LP text
    """
    lines = [f"\\* gedgm {model.name} model *\\"]
    if with_gamma:
        lines.append(f"\\* gamma = {_format_number(model.constant)} *\\")
        lines.append("\\* model objective = gamma + LP objective *\\")

    lines.append("Minimize")
    objective_terms = _format_terms((name, model.objective[name]) for name in model.variables)
    lines.extend(_wrap("obj", objective_terms))

    lines.append("Subject To")
    skipped = 0
    for constraint in model.constraints:
        if not constraint.terms:
            skipped += 1
            continue
        terms = _format_terms(constraint.terms)
        suffix = f"{constraint.sense.value} {_format_number(constraint.rhs)}"
        lines.extend(_wrap(constraint.name, terms, suffix))
    if skipped:
        logger.debug("Skipped %d empty rows of %s", skipped, model.name)

    if model.variables:
        lines.append("Binary")
        lines.extend(f" {name}" for name in model.variables)
    lines.append("End")
    return "\n".join(lines) + "\n"


def lp_sidecar(model: LinearModel) -> LpSidecarDocument:
    """Machine-readable companion of an exported model carrying its constant"""
    return LpSidecarDocument(
        model=model.name,
        gamma=model.constant,
        variable_count=model.variable_count,
        constraint_count=model.constraint_count,
    )
