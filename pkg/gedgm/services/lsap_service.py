import logging
import math
from typing import Sequence, Tuple

import numpy as np
from scipy.optimize import linear_sum_assignment

from gedgm.core.exceptions import LsapInputError
from gedgm.models.assignment import Assignment

logger = logging.getLogger(__name__)


def solve_lsap(costs: np.ndarray) -> Tuple[Tuple[int, ...], float]:
    """
    Minimum-cost perfect assignment of a square cost matrix

    Args:
        costs: (n, n) finite matrix

    Returns:
        (permutation with row r assigned to column permutation[r], total cost)

    Raises:
        LsapInputError: The matrix is not square or holds non-finite entries
    """
    matrix = np.asarray(costs, dtype=np.float64)
    if matrix.ndim != 2 or matrix.shape[0] != matrix.shape[1]:
        raise LsapInputError(f"LSAP needs a square matrix, got shape {matrix.shape}")
    if not np.all(np.isfinite(matrix)):
        raise LsapInputError("LSAP matrix holds non-finite entries")
    if matrix.shape[0] == 0:
        return (), 0.0

    rows, cols = linear_sum_assignment(matrix)
    permutation = tuple(int(c) for _, c in sorted(zip(rows.tolist(), cols.tolist())))
    total = math.fsum(matrix[r, c] for r, c in enumerate(permutation))
    return permutation, total


def forbid(matrix: np.ndarray) -> np.ndarray:
    """
    Replace +inf entries by a finite value no optimal assignment will pick
    """
    finite = matrix[np.isfinite(matrix)]
    big = 2.0 * float(np.abs(finite).sum()) + 1.0
    return np.where(np.isfinite(matrix), matrix, big)


def padded_cost_matrix(
    substitution: np.ndarray, deletion: Sequence[float], insertion: Sequence[float]
) -> np.ndarray:
    """
    (n1 + n2) square matrix: substitutions top-left, deletion diagonal top-right,
    insertion diagonal bottom-left, zero epsilon-epsilon block
    """
    n1, n2 = substitution.shape
    size = n1 + n2
    matrix = np.full((size, size), np.inf)
    matrix[:n1, :n2] = substitution
    for i in range(n1):
        matrix[i, n2 + i] = deletion[i]
    for k in range(n2):
        matrix[n1 + k, k] = insertion[k]
    matrix[n1:, n2:] = 0.0
    return forbid(matrix)


def padded_score_matrix(scores: np.ndarray) -> np.ndarray:
    """
    (n1 + n2) square maximization matrix around an (n1, n2) score block; matching
    a vertex to epsilon scores 0 and off-diagonal epsilon entries are forbidden
    """
    n1, n2 = scores.shape
    size = n1 + n2
    matrix = np.full((size, size), -np.inf)
    matrix[:n1, :n2] = scores
    for i in range(n1):
        matrix[i, n2 + i] = 0.0
    for k in range(n2):
        matrix[n1 + k, k] = 0.0
    matrix[n1:, n2:] = 0.0
    return matrix


def maximize_padded(scores: np.ndarray) -> Assignment:
    """
    Assignment maximizing the sum of `scores` over matched pairs, unmatched pairs scoring 0

    The maximization runs through solve_lsap on max(scores) - scores.
    """
    n1, n2 = scores.shape
    if n1 == 0 or n2 == 0:
        return Assignment.empty()
    matrix = padded_score_matrix(scores)
    shift = float(np.max(matrix[np.isfinite(matrix)]))
    costs = forbid(shift - matrix)
    permutation, _ = solve_lsap(costs)
    return assignment_from_permutation(permutation, n1, n2)


def assignment_from_permutation(permutation: Sequence[int], n1: int, n2: int) -> Assignment:
    """Keep the rows of G1 vertices that landed on real G2 columns"""
    return Assignment.from_pairs((i, permutation[i]) for i in range(n1) if permutation[i] < n2)
