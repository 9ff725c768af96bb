from gedgm.core.exceptions import GraphValidationError, InfeasibleAssignmentError, SizeLimitError
from gedgm.models.assignment import Assignment
from gedgm.models.graph import AttributedGraph


def require_compatible(g1: AttributedGraph, g2: AttributedGraph) -> None:
    """
    Both graphs of an instance must share one edge convention

    Raises:
        GraphValidationError: One graph is directed and the other is not
    """
    if g1.directed != g2.directed:
        raise GraphValidationError("cannot compare a directed graph with an undirected graph")


def require_feasible(assignment: Assignment, g1: AttributedGraph, g2: AttributedGraph) -> None:
    """
    Raises:
        InfeasibleAssignmentError: The assignment breaks range or injectivity
    """
    # Imported here because the services package imports this module
    from gedgm.services.graph_service import check_assignment

    if not check_assignment(assignment, g1, g2):
        raise InfeasibleAssignmentError(f"infeasible assignment {sorted(assignment.forward.items())}")


def require_oracle_size(g1: AttributedGraph, g2: AttributedGraph, limit: int) -> None:
    """
    Raises:
        SizeLimitError: A graph has more vertices than the exhaustive solvers accept
    """
    if g1.num_vertices > limit or g2.num_vertices > limit:
        raise SizeLimitError(
            f"exhaustive search is limited to {limit} vertices per graph, "
            f"got {g1.num_vertices} and {g2.num_vertices}"
        )
